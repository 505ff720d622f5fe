#include "cxhyp/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <tuple>

namespace cxhyp {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
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

[[noreturn]] void fail_line(size_t lineno, const std::string& msg) {
    throw format_error("line " + std::to_string(lineno) + ": " + msg);
}

long long parse_integer(const std::string& token, const std::string& what) {
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(token.c_str(), &end, 10);
    if (errno != 0 || end == nullptr || *end != '\0' || token.empty())
        throw format_error(what + ": '" + token + "' is not an integer");
    return v;
}

} // namespace

double parse_real(const std::string& token) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(token.c_str(), &end);
    if (errno == ERANGE || end == nullptr || *end != '\0' || token.empty())
        throw format_error("'" + token + "' is not a real number");
    if (!std::isfinite(v)) throw format_error("'" + token + "' is not finite");
    return v;
}

std::string format_real(double x) {
    if (x == 0.0) x = 0.0; // normalize the sign of zero
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

GroupDocument parse_group_file(const std::string& text) {
    GroupDocument doc;
    std::vector<std::string> labels;
    std::vector<Isometry> gens;
    bool header_seen = false;
    bool have_f1 = false, have_f2 = false, have_axis = false;

    std::istringstream is(text);
    std::string raw;
    size_t lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "cxhyp-group v1") fail_line(lineno, "expected header 'cxhyp-group v1'");
            header_seen = true;
            continue;
        }
        std::vector<std::string> tok = tokens_of(line);
        if (tok[0] == "gen") {
            if (tok.size() != 3 + 18)
                fail_line(lineno, "expected 'gen <label> <holo|anti> <18 reals>'");
            const std::string& label = tok[1];
            bool anti;
            if (tok[2] == "holo")
                anti = false;
            else if (tok[2] == "anti")
                anti = true;
            else
                fail_line(lineno, "generator kind must be 'holo' or 'anti'");
            Mat3 m;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    double re, im;
                    try {
                        re = parse_real(tok[3 + 2 * (3 * i + j)]);
                        im = parse_real(tok[4 + 2 * (3 * i + j)]);
                    } catch (const Error& e) {
                        fail_line(lineno, e.what());
                    }
                    m(i, j) = Complex(re, im);
                }
            try {
                gens.push_back(make_isometry(m, anti));
            } catch (const Error&) {
                fail_line(lineno, "generator '" + label + "' does not preserve the form");
            }
            labels.push_back(label);
        } else if (tok[0] == "amalgam" || tok[0] == "hnn") {
            bool is_hnn = tok[0] == "hnn";
            GroupDocument::Decomposition kind =
                is_hnn ? GroupDocument::Decomposition::Hnn : GroupDocument::Decomposition::Amalgam;
            if (doc.decomposition != GroupDocument::Decomposition::None &&
                doc.decomposition != kind)
                fail_line(lineno, "mixed amalgam and hnn directives");
            doc.decomposition = kind;
            if (tok.size() < 3) fail_line(lineno, "decomposition directive needs labels");
            std::vector<std::string> rest(tok.begin() + 2, tok.end());
            const std::string& sub = tok[1];
            if ((!is_hnn && sub == "1") || (is_hnn && sub == "base")) {
                if (have_f1) fail_line(lineno, "duplicate factor declaration");
                doc.factor1 = rest;
                have_f1 = true;
            } else if ((!is_hnn && sub == "2") || (is_hnn && sub == "stable")) {
                if (have_f2) fail_line(lineno, "duplicate factor declaration");
                if (is_hnn && rest.size() != 1)
                    fail_line(lineno, "exactly one stable letter expected");
                doc.factor2 = rest;
                have_f2 = true;
            } else if (sub == "axis") {
                if (have_axis) fail_line(lineno, "duplicate axis declaration");
                if (rest.size() != 1) fail_line(lineno, "exactly one axis label expected");
                doc.axis_label = rest[0];
                have_axis = true;
            } else {
                fail_line(lineno, "unknown decomposition directive '" + sub + "'");
            }
        } else {
            fail_line(lineno, "unknown directive '" + tok[0] + "'");
        }
    }
    if (!header_seen) throw format_error("empty group file");
    if (labels.empty()) throw format_error("group file declares no generators");

    try {
        doc.group = GroupPresentation::from_generators(labels, gens);
    } catch (const Error& e) {
        throw format_error(e.what());
    }

    if (doc.decomposition != GroupDocument::Decomposition::None) {
        bool is_hnn = doc.decomposition == GroupDocument::Decomposition::Hnn;
        if (!have_f1 || !have_f2 || !have_axis)
            throw format_error(is_hnn ? "hnn block needs base, stable, and axis lines"
                                      : "amalgam block needs factor 1, factor 2, and axis lines");
        std::vector<int> owner(labels.size(), 0);
        auto claim = [&](const std::vector<std::string>& factor, int tag) {
            for (const std::string& l : factor) {
                auto it = std::find(labels.begin(), labels.end(), l);
                if (it == labels.end())
                    throw format_error("decomposition references unknown label '" + l + "'");
                int idx = static_cast<int>(it - labels.begin());
                if (owner[idx] != 0)
                    throw format_error("label '" + l + "' appears in both factors");
                owner[idx] = tag;
            }
        };
        claim(doc.factor1, 1);
        claim(doc.factor2, 2);
        for (size_t i = 0; i < owner.size(); ++i)
            if (owner[i] == 0)
                throw format_error("decomposition factors do not cover generator '" + labels[i] +
                                   "'");
        if (std::find(labels.begin(), labels.end(), doc.axis_label) == labels.end())
            throw format_error("axis label '" + doc.axis_label + "' is not a generator");
    }
    return doc;
}

GroupDocument load_group_file(const std::string& path) {
    return parse_group_file(read_text_file(path));
}

std::string serialize_group_file(const GroupDocument& doc) {
    std::string out = "cxhyp-group v1\n";
    for (int i = 0; i < doc.group.rank(); ++i) {
        const Isometry& g = doc.group.gens[i];
        out += "gen " + doc.group.labels[i] + (g.antiholo ? " anti" : " holo");
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                out += " " + format_real(g.m(r, c).real());
                out += " " + format_real(g.m(r, c).imag());
            }
        out += "\n";
    }
    if (doc.decomposition != GroupDocument::Decomposition::None) {
        bool is_hnn = doc.decomposition == GroupDocument::Decomposition::Hnn;
        auto join = [](const std::vector<std::string>& v) {
            std::string s;
            for (const std::string& x : v) s += " " + x;
            return s;
        };
        if (is_hnn) {
            out += "hnn base" + join(doc.factor1) + "\n";
            out += "hnn stable" + join(doc.factor2) + "\n";
            out += "hnn axis " + doc.axis_label + "\n";
        } else {
            out += "amalgam 1" + join(doc.factor1) + "\n";
            out += "amalgam 2" + join(doc.factor2) + "\n";
            out += "amalgam axis " + doc.axis_label + "\n";
        }
    }
    return out;
}

BendingFamily family_from_document(const GroupDocument& doc) {
    if (doc.decomposition == GroupDocument::Decomposition::None)
        throw invalid_input("group file carries no decomposition block");
    auto pick = [&](const std::vector<std::string>& names) {
        std::vector<Isometry> out;
        for (const std::string& l : names) {
            auto it = std::find(doc.group.labels.begin(), doc.group.labels.end(), l);
            out.push_back(doc.group.gens[it - doc.group.labels.begin()]);
        }
        return out;
    };
    auto axis_it = std::find(doc.group.labels.begin(), doc.group.labels.end(), doc.axis_label);
    const Isometry& axis = doc.group.gens[axis_it - doc.group.labels.begin()];
    if (doc.decomposition == GroupDocument::Decomposition::Hnn)
        return BendingFamily::hnn(doc.factor1, pick(doc.factor1), doc.factor2[0],
                                  pick(doc.factor2)[0], axis);
    return BendingFamily::amalgam(doc.factor1, pick(doc.factor1), doc.factor2, pick(doc.factor2),
                                  axis);
}

void Report::put(const std::string& key, const std::string& value) {
    for (const auto& row : rows_)
        if (row.first == key) throw invalid_input("report: duplicate key '" + key + "'");
    rows_.emplace_back(key, value);
}

void Report::put(const std::string& key, double value) { put(key, format_real(value)); }

void Report::put(const std::string& key, long long value) { put(key, std::to_string(value)); }

std::string Report::str() const {
    std::string out;
    for (const auto& row : rows_) out += row.first + " = " + row.second + "\n";
    return out;
}

std::string serialize_point_cloud(const LimitSample& sample) {
    std::vector<size_t> order(sample.points.size());
    std::iota(order.begin(), order.end(), 0);
    bool have_words = sample.words.size() == sample.points.size();
    auto key = [&](size_t i) {
        const HoroPoint& p = sample.points[i];
        return std::make_tuple(p.xi.real(), p.xi.imag(), p.v);
    };
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (have_words) {
            if (sample.words[a].size() != sample.words[b].size())
                return sample.words[a].size() < sample.words[b].size();
            if (sample.words[a] != sample.words[b]) return sample.words[a] < sample.words[b];
        }
        return key(a) < key(b);
    });
    std::string out = "xi_re,xi_im,v\n";
    for (size_t i : order) {
        const HoroPoint& p = sample.points[i];
        out += format_real(p.xi.real()) + "," + format_real(p.xi.imag()) + "," +
               format_real(p.v) + "\n";
    }
    return out;
}

PointCloud parse_point_cloud(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || trim(line) != "xi_re,xi_im,v")
        throw format_error("point cloud: expected header 'xi_re,xi_im,v'");
    PointCloud cloud;
    size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        std::string row = trim(line);
        if (row.empty()) continue;
        std::vector<std::string> f = split_on(row, ',');
        if (f.size() != 3) fail_line(lineno, "expected 3 comma-separated values");
        try {
            cloud.points.emplace_back(Complex(parse_real(f[0]), parse_real(f[1])),
                                      parse_real(f[2]));
        } catch (const Error& e) {
            fail_line(lineno, e.what());
        }
    }
    return cloud;
}

PointCloud load_point_cloud(const std::string& path) {
    return parse_point_cloud(read_text_file(path));
}

std::string render_ppm(const std::vector<HoroPoint>& points, RenderProjection proj,
                       const RenderWindow& win) {
    if (!(win.x1 > win.x0) || !(win.y1 > win.y0))
        throw invalid_input("render: window must have positive extent");
    if (win.width < 1 || win.height < 1 || win.width > 4096 || win.height > 4096)
        throw invalid_input("render: size must lie in [1, 4096] per side");
    const int w = win.width, h = win.height;
    std::string pixels(static_cast<size_t>(3) * w * h, '\xff');
    for (const HoroPoint& p : points) {
        if (p.infinity) continue;
        double x = p.xi.real();
        double y = proj == RenderProjection::Xi ? p.xi.imag() : p.v;
        if (x < win.x0 || x > win.x1 || y < win.y0 || y > win.y1) continue;
        int col = static_cast<int>(std::floor((x - win.x0) / (win.x1 - win.x0) * w));
        int row = static_cast<int>(std::floor((win.y1 - y) / (win.y1 - win.y0) * h));
        col = std::clamp(col, 0, w - 1);
        row = std::clamp(row, 0, h - 1);
        size_t off = 3 * (static_cast<size_t>(row) * w + col);
        pixels[off] = pixels[off + 1] = pixels[off + 2] = '\0';
    }
    std::string out = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    out += pixels;
    return out;
}

Word parse_word(const GroupPresentation& G, const std::string& text) {
    std::vector<std::string> tok = tokens_of(text);
    Word w;
    if (tok.empty() || (tok.size() == 1 && tok[0] == "id")) return w;
    for (size_t k = 0; k < tok.size(); ++k) {
        std::string name = tok[k];
        bool inv = !name.empty() && name.back() == '\'';
        if (inv) name.pop_back();
        auto it = std::find(G.labels.begin(), G.labels.end(), name);
        if (it == G.labels.end())
            throw format_error("word token " + std::to_string(k + 1) + ": unknown label '" +
                               tok[k] + "'");
        int i = static_cast<int>(it - G.labels.begin());
        w.push_back(inv ? i + G.rank() : i);
    }
    return w;
}

std::vector<double> parse_sweep(const std::string& text) {
    std::vector<std::string> parts = split_on(trim(text), ':');
    if (parts.size() == 1) return {parse_real(parts[0])};
    if (parts.size() != 3)
        throw format_error("sweep: expected 'value' or 'first:last:count', got '" + text + "'");
    double a = parse_real(parts[0]);
    double b = parse_real(parts[1]);
    long long n = parse_integer(parts[2], "sweep count");
    if (n < 1 || n > 100000) throw format_error("sweep: count must lie in [1, 100000]");
    if (n == 1) {
        if (a != b) throw format_error("sweep: a 1-point sweep needs matching endpoints");
        return {a};
    }
    std::vector<double> out;
    out.reserve(n);
    for (long long i = 0; i < n; ++i)
        out.push_back(i + 1 == n ? b : a + (b - a) * static_cast<double>(i) /
                                               static_cast<double>(n - 1));
    return out;
}

HoroPoint parse_boundary_point(const std::string& text) {
    std::string t = trim(text);
    if (t == "inf" || t == "infinity") return HoroPoint::at_infinity();
    std::vector<std::string> f = split_on(t, ',');
    if (f.size() != 3)
        throw format_error("point: expected 'xi_re,xi_im,v' or 'inf', got '" + text + "'");
    return HoroPoint(Complex(parse_real(f[0]), parse_real(f[1])), parse_real(f[2]));
}

int word_ball_cap() {
    const char* env = std::getenv("CXHYP_MAX_RADIUS");
    if (env == nullptr || *env == '\0') return 12;
    long long v;
    try {
        v = parse_integer(env, "CXHYP_MAX_RADIUS");
    } catch (const Error&) {
        throw config_error("CXHYP_MAX_RADIUS must be an integer");
    }
    return static_cast<int>(std::clamp<long long>(v, 0, 64));
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw resource_error("cannot read '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw resource_error("cannot write '" + path + "'");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw resource_error("failed writing '" + path + "'");
}

} // namespace cxhyp
