#include "CLI11.hpp"

#include "cxhyp/io.hpp"

#include <algorithm>
#include <iostream>
#include <utility>
#include <vector>

using namespace cxhyp;

namespace {

std::string point_str(const HoroPoint& p) {
    if (p.infinity) return "inf";
    return format_real(p.xi.real()) + "," + format_real(p.xi.imag()) + "," + format_real(p.v);
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

RenderWindow make_window(const std::string& window, const std::string& size) {
    RenderWindow win;
    std::vector<std::string> w = split_on(window, ',');
    if (w.size() != 4) throw format_error("window: expected 'x0,x1,y0,y1'");
    win.x0 = parse_real(w[0]);
    win.x1 = parse_real(w[1]);
    win.y0 = parse_real(w[2]);
    win.y1 = parse_real(w[3]);
    std::vector<std::string> s = split_on(size, 'x');
    if (s.size() != 2) throw format_error("size: expected 'WxH'");
    try {
        win.width = static_cast<int>(std::stol(s[0]));
        win.height = static_cast<int>(std::stol(s[1]));
    } catch (const std::exception&) {
        throw format_error("size: expected 'WxH' with integer sides");
    }
    return win;
}

RenderProjection projection_of(const std::string& name) {
    if (name == "xi") return RenderProjection::Xi;
    if (name == "slice") return RenderProjection::Slice;
    throw format_error("projection: 'xi' or 'slice' expected, got '" + name + "'");
}

void check_radius(int radius) {
    int cap = word_ball_cap();
    if (radius < 1) throw invalid_input("radius must be at least 1");
    if (radius > cap)
        throw resource_error("radius " + std::to_string(radius) +
                             " exceeds the configured cap " + std::to_string(cap));
}

std::string stamp(const std::string& prefix, size_t index, size_t total) {
    if (total <= 1) return prefix;
    char buf[8];
    std::snprintf(buf, sizeof(buf), "-%03zu", index);
    return prefix + buf;
}

const char* type_name(IsometryType t) {
    switch (t) {
        case IsometryType::Elliptic: return "elliptic";
        case IsometryType::Parabolic: return "parabolic";
        case IsometryType::Loxodromic: return "loxodromic";
    }
    return "elliptic";
}

double max_abs_v(const LimitSample& s) {
    double m = 0.0;
    for (const HoroPoint& p : s.points) m = std::max(m, std::abs(p.v));
    return m;
}

double max_abs_xi(const LimitSample& s) {
    double m = 0.0;
    for (const HoroPoint& p : s.points) m = std::max(m, std::abs(p.xi));
    return m;
}

// First loxodromic generator on the list whose fixed points are finite and
// clear of `avoid`; used to anchor the bending certificate triple.
bool pick_lox_anchor(const std::vector<Isometry>& gens, const HoroPoint& avoid, HoroPoint& out) {
    for (const Isometry& g : gens) {
        Classification cl = classify(g);
        if (cl.antiholomorphic || cl.type != IsometryType::Loxodromic) continue;
        HoroPoint a = attractive_fixed_point(g);
        HoroPoint r = repelling_fixed_point(g);
        if (a.infinity || r.infinity) continue;
        if (!avoid.infinity && (cygan_distance(a, avoid) < 1e-6 || cygan_distance(r, avoid) < 1e-6))
            continue;
        out = a;
        return true;
    }
    return false;
}

QFCurveConfig load_qf_config(const std::string& path) {
    QFCurveConfig cfg = QFCurveConfig::minimal();
    if (path.empty()) return cfg;
    std::istringstream is(read_text_file(path));
    std::string raw;
    size_t lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = raw;
        size_t b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        size_t e = line.find_last_not_of(" \t\r\n");
        line = line.substr(b, e - b + 1);
        if (line.empty() || line[0] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw format_error("config line " + std::to_string(lineno) + ": expected 'key = value'");
        auto trim = [](std::string s) {
            size_t b2 = s.find_first_not_of(" \t");
            if (b2 == std::string::npos) return std::string();
            size_t e2 = s.find_last_not_of(" \t");
            return s.substr(b2, e2 - b2 + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "k")
            cfg.k = static_cast<int>(parse_real(value));
        else if (key == "s0")
            cfg.s0 = parse_real(value);
        else if (key == "s1")
            cfg.s1 = parse_real(value);
        else
            throw format_error("config line " + std::to_string(lineno) + ": unknown key '" + key +
                               "'");
    }
    return cfg;
}

struct Pending {
    std::vector<std::pair<std::string, std::string>> files;
    std::string stdout_text;

    void add(const std::string& path, const std::string& content) {
        files.emplace_back(path, content);
    }
    void flush() const {
        for (const auto& f : files) write_text_file(f.first, f.second);
        std::cout << stdout_text;
    }
};

// --- subcommands ----------------------------------------------------------

int run_classify(const std::string& file, const std::string& wordtext, const std::string& out) {
    GroupDocument doc = load_group_file(file);
    Word w = parse_word(doc.group, wordtext);
    Isometry g = evaluate_word(doc.group, w);
    Classification cl = classify(g);

    Report rep;
    rep.put("classify.word", word_to_string(doc.group, w));
    rep.put("classify.type", type_name(cl.type));
    rep.put("classify.identity", static_cast<long long>(cl.is_identity));
    rep.put("classify.antiholomorphic", static_cast<long long>(cl.antiholomorphic));
    rep.put("classify.low_confidence", static_cast<long long>(cl.low_confidence));
    if (cl.type == IsometryType::Loxodromic) {
        rep.put("classify.translation_length", translation_length(g));
        if (!cl.antiholomorphic) {
            rep.put("classify.attractive", point_str(attractive_fixed_point(g)));
            rep.put("classify.repelling", point_str(repelling_fixed_point(g)));
        }
    } else if (cl.type == IsometryType::Parabolic && !cl.antiholomorphic) {
        ParabolicNormalForm nf = parabolic_normal_form(g);
        rep.put("parabolic.angle", nf.rotation_angle);
        rep.put("parabolic.horizontal",
                format_real(nf.horizontal.real()) + "," + format_real(nf.horizontal.imag()));
        rep.put("parabolic.vertical", nf.vertical);
        rep.put("parabolic.axis",
                format_real(nf.axis_xi.real()) + "," + format_real(nf.axis_xi.imag()));
        std::vector<HoroPoint> fx = fixed_boundary_points(g);
        for (size_t i = 0; i < fx.size(); ++i)
            rep.put("classify.fixed." + std::to_string(i), point_str(fx[i]));
    }

    Pending pend;
    pend.stdout_text = rep.str();
    if (!out.empty()) pend.add(out, rep.str());
    pend.flush();
    return 0;
}

int run_limitset(const std::string& file, int radius, const std::string& out,
                 const std::string& render, const std::string& projection,
                 const std::string& window, const std::string& size) {
    check_radius(radius);
    RenderWindow win = make_window(window, size); // validate flags before work
    RenderProjection proj = projection_of(projection);
    GroupDocument doc = load_group_file(file);
    LimitSample sample = limit_set_sample(doc.group, radius);

    Pending pend;
    pend.add(out, serialize_point_cloud(sample));
    if (!render.empty()) pend.add(render, render_ppm(sample.points, proj, win));

    Report rep;
    rep.put("limitset.radius", static_cast<long long>(radius));
    rep.put("limitset.words", static_cast<long long>(sample.ball_words));
    rep.put("limitset.candidates", static_cast<long long>(sample.raw_candidates));
    rep.put("limitset.points", static_cast<long long>(sample.points.size()));
    rep.put("limitset.infinity", static_cast<long long>(sample.has_infinity ? 1 : 0));
    pend.stdout_text = rep.str();
    pend.flush();
    return 0;
}

int run_bend(const std::string& file, const std::string& eta_text, const std::string& prefix,
             int radius) {
    check_radius(radius);
    GroupDocument doc = load_group_file(file);
    BendingFamily fam = family_from_document(doc);
    std::vector<double> etas = parse_sweep(eta_text);

    // The certificate triple: the axis fixed point, an anchor from the rigid
    // factor, and the moving fixed point of the bent factor.
    HoroPoint axis_attr = attractive_fixed_point(fam.axis_generator);
    HoroPoint axis_rep = repelling_fixed_point(fam.axis_generator);
    HoroPoint axis_pt = axis_attr.infinity ? axis_rep : axis_attr;
    HoroPoint anchor;
    bool have_anchor = pick_lox_anchor(fam.gens1, axis_pt, anchor);

    Pending pend;
    for (size_t i = 0; i < etas.size(); ++i) {
        double eta = etas[i];
        GroupPresentation bent = bend(fam, eta);
        GroupDocument outdoc;
        outdoc.group = bent;
        outdoc.decomposition = doc.decomposition;
        outdoc.factor1 = doc.factor1;
        outdoc.factor2 = doc.factor2;
        outdoc.axis_label = doc.axis_label;
        LimitSample sample = limit_set_sample(bent, radius);

        Report rep;
        rep.put("family.eta", eta);
        rep.put("bend.kind",
                fam.kind == BendingFamily::Kind::Amalgam ? "amalgam" : "hnn");
        rep.put("limitset.points", static_cast<long long>(sample.points.size()));
        rep.put("limitset.infinity", static_cast<long long>(sample.has_infinity ? 1 : 0));
        rep.put("limitset.max_abs_v", max_abs_v(sample));

        // Second certificate: the marked Cartan triple before and after.
        const size_t off = fam.gens1.size();
        HoroPoint moving_base, moving_bent;
        bool have_moving = false;
        for (size_t j = 0; j < fam.gens2.size(); ++j) {
            Classification cl = classify(bent.gens[off + j]);
            if (cl.antiholomorphic || cl.type != IsometryType::Loxodromic) continue;
            Classification cb = classify(fam.gens2[j]);
            if (cb.antiholomorphic || cb.type != IsometryType::Loxodromic) continue;
            HoroPoint mb = attractive_fixed_point(bent.gens[off + j]);
            HoroPoint m0 = attractive_fixed_point(fam.gens2[j]);
            if (mb.infinity || m0.infinity) continue;
            moving_bent = mb;
            moving_base = m0;
            have_moving = true;
            break;
        }
        if (have_anchor && have_moving && !axis_pt.infinity) {
            double base_a = cartan_invariant(anchor, axis_pt, moving_base);
            double bent_a = cartan_invariant(anchor, axis_pt, moving_bent);
            rep.put("cartan.available", 1LL);
            rep.put("cartan.base", base_a);
            rep.put("cartan.bent", bent_a);
            rep.put("cartan.deviation", std::abs(bent_a - base_a));
        } else {
            rep.put("cartan.available", 0LL);
        }

        std::string base = stamp(prefix, i, etas.size());
        pend.add(base + ".group", serialize_group_file(outdoc));
        pend.add(base + ".csv", serialize_point_cloud(sample));
        pend.add(base + ".report", rep.str());
        pend.stdout_text += rep.str();
        if (i + 1 < etas.size()) pend.stdout_text += "\n";
    }
    pend.flush();
    return 0;
}

int run_qfcurve(const std::string& config, const std::string& t_text, const std::string& prefix,
                int radius) {
    check_radius(radius);
    QFCurveConfig cfg = load_qf_config(config);
    std::vector<double> ts = parse_sweep(t_text);

    Pending pend;
    for (size_t i = 0; i < ts.size(); ++i) {
        double t = ts[i];
        GroupPresentation G = qf_deform(cfg, t);
        LimitSample sample = limit_set_sample(G, radius);
        std::array<HoroPoint, 3> triple = qf_marked_triple(cfg, t);
        Isometry prod = compose(G.gens[0], G.gens[1]);
        ParabolicNormalForm nf = parabolic_normal_form(prod);

        Report rep;
        rep.put("family.t", t);
        rep.put("qfcurve.k", static_cast<long long>(cfg.k));
        rep.put("parabolic.angle", nf.rotation_angle);
        rep.put("parabolic.vertical", nf.vertical);
        rep.put("cartan.triple", cartan_invariant(triple[0], triple[1], triple[2]));
        rep.put("limitset.points", static_cast<long long>(sample.points.size()));
        rep.put("limitset.infinity", static_cast<long long>(sample.has_infinity ? 1 : 0));
        rep.put("limitset.max_abs_xi", max_abs_xi(sample));

        GroupDocument outdoc;
        outdoc.group = G;
        std::string base = stamp(prefix, i, ts.size());
        pend.add(base + ".group", serialize_group_file(outdoc));
        pend.add(base + ".csv", serialize_point_cloud(sample));
        pend.add(base + ".report", rep.str());
        pend.stdout_text += rep.str();
        if (i + 1 < ts.size()) pend.stdout_text += "\n";
    }
    pend.flush();
    return 0;
}

int run_cartan(const std::string& p0, const std::string& p1, const std::string& p2,
               const std::string& out) {
    double a = cartan_invariant(parse_boundary_point(p0), parse_boundary_point(p1),
                                parse_boundary_point(p2));
    Report rep;
    rep.put("cartan.value", a);
    Pending pend;
    pend.stdout_text = rep.str();
    if (!out.empty()) pend.add(out, rep.str());
    pend.flush();
    return 0;
}

int run_dimension(const std::string& file, const std::string& scales_text,
                  const std::string& out) {
    PointCloud cloud = load_point_cloud(file);
    if (cloud.points.size() < 1000)
        throw invalid_input("dimension: at least 1000 points required, got " +
                            std::to_string(cloud.points.size()));
    std::vector<double> scales = parse_sweep(scales_text);
    LimitSample sample;
    sample.points = cloud.points;
    BoxDimensionResult res = box_dimension(sample, scales);

    Report rep;
    rep.put("dimension.points", static_cast<long long>(cloud.points.size()));
    rep.put("dimension.slope", res.slope);
    rep.put("dimension.residual", res.residual);
    for (size_t i = 0; i < res.counts.size(); ++i) {
        rep.put("dimension.scale." + std::to_string(i), res.counts[i].first);
        rep.put("dimension.count." + std::to_string(i),
                static_cast<long long>(res.counts[i].second));
    }
    Pending pend;
    pend.stdout_text = rep.str();
    if (!out.empty()) pend.add(out, rep.str());
    pend.flush();
    return 0;
}

int run_render(const std::string& file, const std::string& out, const std::string& projection,
               const std::string& window, const std::string& size) {
    RenderWindow win = make_window(window, size);
    RenderProjection proj = projection_of(projection);
    PointCloud cloud = load_point_cloud(file);

    Pending pend;
    pend.add(out, render_ppm(cloud.points, proj, win));
    Report rep;
    rep.put("render.points", static_cast<long long>(cloud.points.size()));
    rep.put("render.width", static_cast<long long>(win.width));
    rep.put("render.height", static_cast<long long>(win.height));
    pend.stdout_text = rep.str();
    pend.flush();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Complex hyperbolic boundary geometry toolkit"};
    app.require_subcommand(1);

    std::string file, word = "id", out, render, prefix, config;
    std::string projection = "xi", window = "-1,1,-1,1", size = "256x256";
    std::string eta_text, t_text, scales_text = "0.05:0.4:8";
    std::string p0, p1, p2;
    int radius = 6;

    auto* classify_cmd = app.add_subcommand("classify", "Classify a word of a group");
    classify_cmd->add_option("group", file, "group file")->required();
    classify_cmd->add_option("word", word, "word over the declared labels ('id' for identity)");
    classify_cmd->add_option("--out", out, "also write the report to this file");

    auto* limitset_cmd = app.add_subcommand("limitset", "Sample the limit set of a group");
    limitset_cmd->add_option("group", file, "group file")->required();
    limitset_cmd->add_option("--radius", radius, "word-ball radius");
    limitset_cmd->add_option("--out", out, "CSV output path")->required();
    limitset_cmd->add_option("--render", render, "optional PPM output path");
    limitset_cmd->add_option("--projection", projection, "xi | slice");
    limitset_cmd->add_option("--window", window, "x0,x1,y0,y1");
    limitset_cmd->add_option("--size", size, "WxH");

    auto* bend_cmd = app.add_subcommand("bend", "Bend a decomposed group");
    bend_cmd->add_option("group", file, "group file with a decomposition block")->required();
    bend_cmd->add_option("--eta", eta_text, "angle or sweep first:last:count")->required();
    bend_cmd->add_option("--out", prefix, "output prefix")->required();
    bend_cmd->add_option("--radius", radius, "limit-set sampling radius");

    auto* qf_cmd = app.add_subcommand("qfcurve", "Walk the sphere-stack deformation curve");
    qf_cmd->add_option("--config", config, "configuration file (k, s0, s1)");
    qf_cmd->add_option("--t", t_text, "parameter or sweep first:last:count")->required();
    qf_cmd->add_option("--out", prefix, "output prefix")->required();
    qf_cmd->add_option("--radius", radius, "limit-set sampling radius");

    auto* cartan_cmd = app.add_subcommand("cartan", "Angular invariant of a boundary triple");
    cartan_cmd->add_option("p0", p0, "xi_re,xi_im,v or inf")->required();
    cartan_cmd->add_option("p1", p1, "xi_re,xi_im,v or inf")->required();
    cartan_cmd->add_option("p2", p2, "xi_re,xi_im,v or inf")->required();
    cartan_cmd->add_option("--out", out, "also write the report to this file");

    auto* dim_cmd = app.add_subcommand("dimension", "Box-counting dimension of a point cloud");
    dim_cmd->add_option("cloud", file, "CSV point cloud")->required();
    dim_cmd->add_option("--scales", scales_text, "scale sweep first:last:count");
    dim_cmd->add_option("--out", out, "also write the report to this file");

    auto* render_cmd = app.add_subcommand("render", "Render a point cloud to PPM");
    render_cmd->add_option("cloud", file, "CSV point cloud")->required();
    render_cmd->add_option("--out", out, "PPM output path")->required();
    render_cmd->add_option("--projection", projection, "xi | slice");
    render_cmd->add_option("--window", window, "x0,x1,y0,y1");
    render_cmd->add_option("--size", size, "WxH");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*classify_cmd) return run_classify(file, word, out);
        if (*limitset_cmd) return run_limitset(file, radius, out, render, projection, window, size);
        if (*bend_cmd) return run_bend(file, eta_text, prefix, radius);
        if (*qf_cmd) return run_qfcurve(config, t_text, prefix, radius);
        if (*cartan_cmd) return run_cartan(p0, p1, p2, out);
        if (*dim_cmd) return run_dimension(file, scales_text, out);
        if (*render_cmd) return run_render(file, out, projection, window, size);
    } catch (const Error& e) {
        std::cerr << "error(" << e.category() << "): " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error(internal): " << e.what() << "\n";
        return 1;
    }
    return 0;
}
