#include "cxhyp/group.hpp"
#include "cxhyp/parallel.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_map>

namespace cxhyp {

namespace {

uint64_t mix_key(int64_t a, int64_t b, int c) {
    uint64_t h = 1469598103934665603ull;
    for (uint64_t x : {static_cast<uint64_t>(a), static_cast<uint64_t>(b),
                       static_cast<uint64_t>(c)}) {
        h ^= x;
        h *= 1099511628211ull;
    }
    return h;
}

bool valid_label(const std::string& s) {
    if (s.empty() || s == "id") return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char ch : s)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '-')
            return false;
    return true;
}

// Bucketed lookup of group elements by canonical matrix, used for word-ball
// dedup and for Cayley-graph adjacency. Bucket width is well above the match
// tolerance so a true duplicate always lands in the same or a neighboring cell.
class ElementIndex {
public:
    explicit ElementIndex(double tol) : tol_(tol), cell_(std::max(tol * 100.0, 1e-6)) {}

    int find(const Mat3& canon, bool anti) const {
        Complex t = canon.trace();
        auto cr = static_cast<int64_t>(std::floor(t.real() / cell_));
        auto ci = static_cast<int64_t>(std::floor(t.imag() / cell_));
        for (int di = -1; di <= 1; ++di)
            for (int dj = -1; dj <= 1; ++dj) {
                auto it = buckets_.find(mix_key(cr + di, ci + dj, anti ? 1 : 0));
                if (it == buckets_.end()) continue;
                for (int idx : it->second)
                    if (anti_[idx] == anti && (canon_[idx] - canon).norm() < tol_)
                        return idx;
            }
        return -1;
    }

    void add(const Mat3& canon, bool anti) {
        Complex t = canon.trace();
        auto cr = static_cast<int64_t>(std::floor(t.real() / cell_));
        auto ci = static_cast<int64_t>(std::floor(t.imag() / cell_));
        int idx = static_cast<int>(canon_.size());
        buckets_[mix_key(cr, ci, anti ? 1 : 0)].push_back(idx);
        canon_.push_back(canon);
        anti_.push_back(anti);
    }

    int size() const { return static_cast<int>(canon_.size()); }

private:
    double tol_;
    double cell_;
    std::unordered_map<uint64_t, std::vector<int>> buckets_;
    std::vector<Mat3> canon_;
    std::vector<char> anti_;
};

// Cygan-metric deduper: buckets by the xi coordinate (Cygan-close points are
// xi-close, so neighbors cover all candidates); Infinity is the caller's job.
class CyganDeduper {
public:
    explicit CyganDeduper(double tol) : tol_(tol) {}

    // Returns the index of an existing point within tol, or -1 after
    // inserting p as a new entry.
    int insert(const HoroPoint& p) {
        auto cr = static_cast<int64_t>(std::floor(p.xi.real() / tol_));
        auto ci = static_cast<int64_t>(std::floor(p.xi.imag() / tol_));
        for (int di = -1; di <= 1; ++di)
            for (int dj = -1; dj <= 1; ++dj) {
                auto it = buckets_.find(mix_key(cr + di, ci + dj, 0));
                if (it == buckets_.end()) continue;
                for (int idx : it->second)
                    if (cygan_distance(pts_[idx], p) < tol_) return idx;
            }
        buckets_[mix_key(cr, ci, 0)].push_back(static_cast<int>(pts_.size()));
        pts_.push_back(p);
        return -1;
    }

private:
    double tol_;
    std::unordered_map<uint64_t, std::vector<int>> buckets_;
    std::vector<HoroPoint> pts_;
};

void require_interior(const HoroPoint& p, const char* who) {
    if (p.infinity || !(p.u > 0.0))
        throw invalid_input(std::string(who) + ": interior point (u > 0) required");
}

bool same_boundary_point(const HoroPoint& a, const HoroPoint& b, double tol) {
    if (a.infinity || b.infinity) return a.infinity == b.infinity;
    return cygan_distance(a, b) <= tol;
}

} // namespace

// --- presentation ----------------------------------------------------------

GroupPresentation GroupPresentation::from_generators(std::vector<std::string> labels,
                                                     std::vector<Isometry> gens) {
    if (labels.size() != gens.size())
        throw invalid_input("group: one label per generator required");
    GroupPresentation G;
    for (size_t i = 0; i < labels.size(); ++i) {
        if (!valid_label(labels[i]))
            throw invalid_input("group: bad generator label '" + labels[i] + "'");
        for (size_t j = 0; j < i; ++j)
            if (labels[j] == labels[i])
                throw invalid_input("group: duplicate generator label '" + labels[i] + "'");
        if (!preserves_form(gens[i].m))
            throw invalid_input("group: generator '" + labels[i] +
                                "' does not preserve the form");
    }
    G.labels = std::move(labels);
    G.gens = std::move(gens);
    G.gen_inverses.reserve(G.gens.size());
    for (size_t i = 0; i < G.gens.size(); ++i) {
        Isometry inv = inverse(G.gens[i]);
        if (iso_distance(compose(G.gens[i], inv), identity_isometry()) > 1e-9)
            throw invalid_input("group: generator '" + G.labels[i] +
                                "' has no accurate inverse");
        G.gen_inverses.push_back(inv);
    }
    return G;
}

const Isometry& GroupPresentation::letter(int i) const {
    int n = rank();
    if (i < 0 || i >= 2 * n) throw invalid_input("group: letter index out of range");
    return i < n ? gens[i] : gen_inverses[i - n];
}

std::string GroupPresentation::letter_label(int i) const {
    int n = rank();
    if (i < 0 || i >= 2 * n) throw invalid_input("group: letter index out of range");
    return i < n ? labels[i] : labels[i - n] + "'";
}

Isometry evaluate_word(const GroupPresentation& G, const Word& w) {
    Isometry g = identity_isometry();
    for (int l : w) g = compose(g, G.letter(l));
    return g;
}

std::string word_to_string(const GroupPresentation& G, const Word& w) {
    if (w.empty()) return "id";
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += G.letter_label(w[i]);
    }
    return out;
}

// --- word ball ---------------------------------------------------------------

std::vector<WordBallEntry> word_ball(const GroupPresentation& G, int R) {
    if (R < 0) throw invalid_input("word_ball: radius must be nonnegative");
    const int n = G.rank();
    std::vector<WordBallEntry> ball;
    ElementIndex index(1e-8);

    auto try_insert = [&](Word w, const Isometry& g) {
        Mat3 c = canonical_matrix(g);
        if (index.find(c, g.antiholo) >= 0) return; // shorter/earlier word wins
        index.add(c, g.antiholo);
        ball.push_back({std::move(w), g});
    };

    try_insert({}, identity_isometry());
    size_t prev_begin = 0, prev_end = ball.size();
    for (int len = 1; len <= R && prev_begin < prev_end; ++len) {
        for (size_t e = prev_begin; e < prev_end; ++e) {
            const Word w = ball[e].word; // copy: ball reallocates while growing
            const Isometry ge = ball[e].g;
            for (int l = 0; l < 2 * n; ++l) {
                if (!w.empty() && l == GroupPresentation::inverse_letter(w.back(), n))
                    continue; // freely reduced words only
                Word w2 = w;
                w2.push_back(l);
                try_insert(std::move(w2), compose(ge, G.letter(l)));
            }
        }
        prev_begin = prev_end;
        prev_end = ball.size();
    }
    return ball;
}

// --- orbits and limit sets ---------------------------------------------------

OrbitCloud orbit_cloud(const GroupPresentation& G, const HoroPoint& base, int R,
                       double dedup) {
    if (!(dedup > 0.0)) throw invalid_input("orbit_cloud: dedup radius must be positive");
    auto ball = word_ball(G, R);

    std::vector<HoroPoint> images(ball.size());
    parallel_for(static_cast<long>(ball.size()),
                 [&](long i) { images[i] = apply(ball[i].g, base); });

    OrbitCloud oc;
    oc.base = base;
    oc.radius = R;
    CyganDeduper dd(dedup);
    bool have_inf = false;
    for (size_t i = 0; i < ball.size(); ++i) {
        const HoroPoint& p = images[i];
        if (p.infinity) {
            if (have_inf) continue;
            have_inf = true;
        } else if (dd.insert(p) >= 0) {
            continue;
        }
        oc.words.push_back(ball[i].word);
        oc.points.push_back(p);
    }
    return oc;
}

LimitSample limit_set_sample(const GroupPresentation& G, int R) {
    if (R < 1) throw invalid_input("limit_set_sample: radius must be at least 1");
    auto ball = word_ball(G, R);

    struct Extract {
        bool lox = false;
        HoroPoint attr, rep;
    };
    std::vector<Extract> ex(ball.size());
    parallel_for(static_cast<long>(ball.size()), [&](long i) {
        if (ball[i].word.empty()) return;
        if (classify(ball[i].g).type != IsometryType::Loxodromic) return;
        ex[i].lox = true;
        ex[i].attr = attractive_fixed_point(ball[i].g);
        ex[i].rep = repelling_fixed_point(ball[i].g);
    });

    LimitSample out;
    out.ball_words = static_cast<int>(ball.size());
    CyganDeduper dd(1e-6);
    for (size_t i = 0; i < ball.size(); ++i) {
        if (!ex[i].lox) continue;
        for (const HoroPoint* p : {&ex[i].attr, &ex[i].rep}) {
            ++out.raw_candidates;
            if (p->infinity) {
                if (!out.has_infinity) {
                    out.has_infinity = true;
                    out.infinity_word = ball[i].word;
                }
            } else if (dd.insert(*p) < 0) {
                out.points.push_back(*p);
                out.words.push_back(ball[i].word);
            }
        }
    }
    return out;
}

// --- certificates ------------------------------------------------------------

bool dirichlet_membership(const HoroPoint& z, const HoroPoint& y,
                          const GroupPresentation& G, int R) {
    require_interior(z, "dirichlet_membership");
    require_interior(y, "dirichlet_membership");
    auto ball = word_ball(G, R);

    std::vector<double> dzy(ball.size()), dyy(ball.size());
    parallel_for(static_cast<long>(ball.size()), [&](long i) {
        if (ball[i].word.empty()) return;
        HoroPoint gy = apply(ball[i].g, y);
        dzy[i] = bergman_distance(z, gy);
        dyy[i] = bergman_distance(y, gy);
    });

    double to_center = bergman_distance(z, y);
    for (size_t i = 0; i < ball.size(); ++i) {
        if (ball[i].word.empty()) continue;
        if (dyy[i] <= 1e-12)
            throw invalid_input("dirichlet_membership: center fixed by word '" +
                                word_to_string(G, ball[i].word) + "'");
        // strict inequality with a rounding margin, so exact bisector points
        // deterministically report false
        if (!(to_center < dzy[i] - 1e-12)) return false;
    }
    return true;
}

bool collar_check(double l, double delta) {
    if (!(l > 0.0) || !(delta > 0.0) || !std::isfinite(l) || !std::isfinite(delta))
        throw invalid_input("collar_check: lengths must be positive and finite");
    return std::sinh(0.25 * l) * std::sinh(0.5 * delta) <= 0.5 + 1e-12;
}

GrowthReport growth_diagnostic(const GroupPresentation& G, int R, const HoroPoint& basepoint) {
    if (R < 2) throw invalid_input("growth_diagnostic: radius must be at least 2");
    require_interior(basepoint, "growth_diagnostic");
    auto ball = word_ball(G, R);

    std::vector<double> disp(ball.size(), 0.0);
    parallel_for(static_cast<long>(ball.size()), [&](long i) {
        if (ball[i].word.empty()) return;
        disp[i] = bergman_distance(basepoint, apply(ball[i].g, basepoint));
    });

    GrowthReport rep;
    std::vector<GrowthRow> rows(static_cast<size_t>(R) + 1);
    for (size_t i = 0; i < ball.size(); ++i) {
        int len = static_cast<int>(ball[i].word.size());
        if (len == 0) continue;
        GrowthRow& row = rows[len];
        if (row.count == 0) {
            row.length = len;
            row.min_d = row.max_d = disp[i];
        } else {
            row.min_d = std::min(row.min_d, disp[i]);
            row.max_d = std::max(row.max_d, disp[i]);
        }
        ++row.count;
    }
    for (auto& row : rows)
        if (row.count > 0) {
            rep.rows.push_back(row);
            rep.k_upper = std::max(rep.k_upper, row.max_d / row.length);
        }

    // Least-squares offset for the logarithmic lower envelope a + 2 ln n,
    // the shape the displacement of parabolic elements follows.
    double sum = 0.0;
    int m = 0;
    for (const auto& row : rep.rows)
        if (row.length >= 2) {
            sum += row.min_d - 2.0 * std::log(static_cast<double>(row.length));
            ++m;
        }
    if (m > 0) {
        rep.log_offset = sum / m;
        double ss = 0.0, scale = 0.0;
        for (const auto& row : rep.rows)
            if (row.length >= 2) {
                double pred = rep.log_offset + 2.0 * std::log(static_cast<double>(row.length));
                ss += (row.min_d - pred) * (row.min_d - pred);
                scale += row.min_d * row.min_d;
            }
        rep.log_residual = scale > 0.0 ? std::sqrt(ss / scale) : 0.0;
    }
    return rep;
}

// --- cusp neighborhoods --------------------------------------------------------

namespace {

// Cygan distance from a closure point to the model set in the frame where the
// cusp sits at Infinity.
double model_distance(const HoroPoint& x, CuspModel model) {
    if (x.infinity) return std::numeric_limits<double>::infinity();
    switch (model) {
    case CuspModel::FullBoundary:
        return std::sqrt(x.u);
    case CuspModel::VerticalLine:
        // inf over s of rho((xi,v,u),(0,s,0)) is attained at s = v
        return std::sqrt(std::norm(x.xi) + x.u);
    case CuspModel::HorizontalLine: {
        // minimize rho((xi,v,u),(t,0,0))^4, a quartic in t, by golden section
        double xr = x.xi.real(), xi = x.xi.imag();
        auto f = [&](double t) {
            double a = (xr - t) * (xr - t) + xi * xi + x.u;
            double b = x.v + 2.0 * t * xi;
            return a * a + b * b;
        };
        double span = 2.0 * (std::abs(x.xi) + std::abs(x.v) + x.u + 1.0);
        double lo = xr - span, hi = xr + span;
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
        double fc = f(c), fd = f(d);
        for (int it = 0; it < 180; ++it) {
            if (fc < fd) {
                hi = d;
                d = c;
                fd = fc;
                c = hi - gr * (hi - lo);
                fc = f(c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + gr * (hi - lo);
                fd = f(d);
            }
        }
        return std::pow(std::min(fc, fd), 0.25);
    }
    }
    return 0.0;
}

} // namespace

CuspResult cusp_neighborhood_test(const HoroPoint& p, const HoroPoint& x, double r,
                                  const GroupPresentation& G, int R, CuspModel model) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw invalid_input("cusp_neighborhood_test: radius must be positive");
    if (!p.infinity && p.u > 1e-9)
        throw invalid_input("cusp_neighborhood_test: p must be a boundary point");

    auto ball = word_ball(G, R);

    Isometry ip = identity_isometry();
    if (!p.infinity) {
        Isometry t = heisenberg_translation(p.xi, p.v);
        ip = compose(t, compose(heisenberg_inversion(), inverse(t)));
    }

    auto fixes_p = [&](const Isometry& g) {
        return same_boundary_point(apply(g, p), p, 1e-9 * (1.0 + (p.infinity ? 0.0 : std::norm(p.xi) + std::abs(p.v))));
    };

    bool fixed_by_any = false;
    for (const auto& e : ball)
        if (!e.word.empty() && fixes_p(e.g)) {
            fixed_by_any = true;
            break;
        }
    if (!fixed_by_any)
        throw invalid_input("cusp_neighborhood_test: p is fixed by no word in the ball");

    auto inside = [&](const HoroPoint& q) {
        HoroPoint y = apply(ip, q);
        double d = y.infinity ? std::numeric_limits<double>::infinity()
                              : model_distance(y, model);
        return d >= 1.0 / r - 1e-12;
    };

    // Deterministic sample of the neighborhood: points at graded distances
    // beyond 1/r from the model set, pulled back through the inversion.
    std::vector<HoroPoint> samples;
    double t0 = 1.0 / r;
    for (double su : {1.1, 2.0, 5.0}) {
        double u = (t0 * su) * (t0 * su);
        for (Complex xi : {Complex(0, 0), Complex(t0, 0), Complex(0, 1.5 * t0),
                           Complex(-2.0 * t0, t0)}) {
            for (double v : {0.0, t0 * t0, -4.0 * t0 * t0}) {
                HoroPoint y(xi, v, u);
                if (model_distance(y, model) >= 1.05 / r)
                    samples.push_back(apply(ip, y));
                if (samples.size() >= 36) break;
            }
            if (samples.size() >= 36) break;
        }
        if (samples.size() >= 36) break;
    }

    CuspResult res;
    for (const auto& e : ball) {
        if (e.word.empty() || fixes_p(e.g)) continue;
        for (const auto& s : samples) {
            if (inside(apply(e.g, s))) {
                res.verdict = CuspVerdict::Violated;
                res.violating_word = e.word;
                return res;
            }
        }
    }
    res.verdict = inside(x) ? CuspVerdict::Inside : CuspVerdict::Outside;
    return res;
}

std::vector<Word> margulis_test(const HoroPoint& x, const GroupPresentation& G, int R,
                                double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw invalid_input("margulis_test: eps must be positive");
    require_interior(x, "margulis_test");
    auto ball = word_ball(G, R);

    std::vector<double> disp(ball.size(), 0.0);
    parallel_for(static_cast<long>(ball.size()), [&](long i) {
        if (!ball[i].word.empty())
            disp[i] = bergman_distance(x, apply(ball[i].g, x));
    });

    std::vector<Word> out;
    for (size_t i = 0; i < ball.size(); ++i)
        if (!ball[i].word.empty() && disp[i] < eps) out.push_back(ball[i].word);
    return out;
}

// --- Floyd boundary ------------------------------------------------------------

FloydReport floyd_boundary_samples(const GroupPresentation& G, int R, double theta) {
    if (R < 2) throw invalid_input("floyd_boundary_samples: radius must be at least 2");
    auto ball = word_ball(G, R);
    const int n = G.rank();
    const int N = static_cast<int>(ball.size());

    ElementIndex index(1e-8);
    for (const auto& e : ball) index.add(canonical_matrix(e.g), e.g.antiholo);

    auto rho = [](size_t len) { return len == 0 ? 1.0 : 1.0 / double(len * len); };

    // Cayley ball graph, edges weighted min(rho(|a|), rho(|b|))
    std::vector<std::vector<std::pair<int, double>>> adj(N);
    for (int i = 0; i < N; ++i) {
        for (int l = 0; l < 2 * n; ++l) {
            Isometry h = compose(ball[i].g, G.letter(l));
            int j = index.find(canonical_matrix(h), h.antiholo);
            if (j < 0 || j == i) continue;
            double w = std::min(rho(ball[i].word.size()), rho(ball[j].word.size()));
            adj[i].push_back({j, w});
        }
    }

    std::vector<int> sphere;
    for (int i = 0; i < N; ++i)
        if (static_cast<int>(ball[i].word.size()) == R) sphere.push_back(i);

    FloydReport rep;
    rep.scale = theta > 0.0 ? theta : 4.0 / (double(R) * R);
    if (sphere.empty()) return rep;

    // Union sphere vertices within the clustering scale in the path metric.
    std::vector<int> parent(N);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };

    // Chunked so the distance rows never hold more than 64 x N doubles; union
    // operations stay sequential and deterministic.
    const size_t chunk = 64;
    std::vector<std::vector<double>> dist_rows(std::min(chunk, sphere.size()));
    for (size_t base_k = 0; base_k < sphere.size(); base_k += chunk) {
        size_t count = std::min(chunk, sphere.size() - base_k);
        parallel_for(static_cast<long>(count), [&](long off) {
            std::vector<double>& dist = dist_rows[off];
            dist.assign(N, std::numeric_limits<double>::infinity());
            using Item = std::pair<double, int>;
            std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
            int start = sphere[base_k + off];
            dist[start] = 0.0;
            pq.push({0.0, start});
            while (!pq.empty()) {
                auto [d, u] = pq.top();
                pq.pop();
                if (d > dist[u]) continue;
                if (d > rep.scale) continue; // weights positive: nothing closer beyond
                for (auto [v, w] : adj[u])
                    if (d + w < dist[v]) {
                        dist[v] = d + w;
                        pq.push({d + w, v});
                    }
            }
        });
        for (size_t off = 0; off < count; ++off)
            for (int j : sphere)
                if (dist_rows[off][j] <= rep.scale) {
                    int a = find(sphere[base_k + off]), b = find(j);
                    if (a != b) parent[std::max(a, b)] = std::min(a, b);
                }
    }
    dist_rows.clear();

    std::unordered_map<int, std::vector<int>> groups;
    for (int i : sphere) groups[find(i)].push_back(i);

    // Reference limit points: fixed points of loxodromic and parabolic words.
    struct Ref {
        std::vector<HoroPoint> finite;
        bool has_inf = false;
    } refs;
    {
        CyganDeduper dd(1e-6);
        for (const auto& e : ball) {
            if (e.word.empty()) continue;
            Classification c = classify(e.g);
            std::vector<HoroPoint> pts;
            if (c.type == IsometryType::Loxodromic)
                pts = {attractive_fixed_point(e.g), repelling_fixed_point(e.g)};
            else if (c.type == IsometryType::Parabolic && !e.g.antiholo)
                pts = fixed_boundary_points(e.g);
            for (const auto& p : pts) {
                if (p.infinity)
                    refs.has_inf = true;
                else if (dd.insert(p) < 0)
                    refs.finite.push_back(p);
            }
        }
    }

    HoroPoint base(Complex(0, 0), 0.0, 1.0);
    std::vector<std::pair<Word, std::vector<int>>> ordered;
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end(), [&](int a, int b) {
            return ball[a].word < ball[b].word;
        });
        ordered.push_back({ball[members.front()].word, members});
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::unordered_map<int, int> cluster_of; // ball index -> cluster id
    for (size_t c = 0; c < ordered.size(); ++c)
        for (int i : ordered[c].second) cluster_of[i] = static_cast<int>(c);

    for (auto& [repword, members] : ordered) {
        FloydCluster fc;
        for (int i : members) fc.words.push_back(ball[i].word);
        fc.orbit_point = apply(evaluate_word(G, repword), base);

        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : refs.finite) {
            double d = cygan_distance(fc.orbit_point, q);
            if (d < best) {
                best = d;
                fc.nearest_limit = q;
                fc.nearest_is_infinity = false;
            }
        }
        if (refs.has_inf) {
            // proximity to Infinity, measured through the norm inversion
            double d = 1.0 / std::max(cygan_norm(fc.orbit_point), 1e-12);
            if (d < best) {
                best = d;
                fc.nearest_limit = HoroPoint::at_infinity();
                fc.nearest_is_infinity = true;
            }
        }
        fc.limit_distance = std::isfinite(best) ? best : 0.0;
        rep.clusters.push_back(std::move(fc));
    }

    // Combinatorial equivariance: left multiplication by a letter, truncated
    // back to the sphere, must send whole clusters into single clusters.
    for (int l = 0; l < 2 * n && rep.equivariant; ++l) {
        for (const auto& fc : rep.clusters) {
            int target = -2;
            for (const auto& w : fc.words) {
                if (!w.empty() && w.front() == GroupPresentation::inverse_letter(l, n))
                    continue; // front cancellation leaves the sphere
                Word t;
                t.push_back(l);
                t.insert(t.end(), w.begin(), w.end());
                t.resize(static_cast<size_t>(R));
                Isometry h = evaluate_word(G, t);
                int idx = index.find(canonical_matrix(h), h.antiholo);
                if (idx < 0 || static_cast<int>(ball[idx].word.size()) != R) continue;
                auto it = cluster_of.find(idx);
                if (it == cluster_of.end()) continue;
                if (target == -2) target = it->second;
                else if (target != it->second) {
                    rep.equivariant = false;
                    break;
                }
            }
            if (!rep.equivariant) break;
        }
    }
    return rep;
}

// --- boundary map ---------------------------------------------------------------

BoundaryMapReport boundary_map_samples(const GroupPresentation& G, const GroupPresentation& H,
                                       const std::vector<int>& pairing, int R) {
    const int n = G.rank();
    if (H.rank() != n || static_cast<int>(pairing.size()) != n)
        throw invalid_input("boundary_map_samples: pairing must be a generator bijection");
    std::vector<char> seen(n, 0);
    for (int v : pairing) {
        if (v < 0 || v >= n || seen[v])
            throw invalid_input("boundary_map_samples: pairing must be a generator bijection");
        seen[v] = 1;
    }

    auto translate = [&](const Word& w) {
        Word out;
        out.reserve(w.size());
        for (int l : w)
            out.push_back(l < n ? pairing[l] : pairing[l - n] + n);
        return out;
    };

    auto ball = word_ball(G, R);

    struct Row {
        bool lox = false;
        bool mismatch = false;
        HoroPoint src, img;
    };
    std::vector<Row> rows(ball.size());
    parallel_for(static_cast<long>(ball.size()), [&](long i) {
        if (ball[i].word.empty()) return;
        if (classify(ball[i].g).type != IsometryType::Loxodromic) return;
        Isometry h = evaluate_word(H, translate(ball[i].word));
        if (classify(h).type != IsometryType::Loxodromic) {
            rows[i].mismatch = true;
            return;
        }
        rows[i].lox = true;
        rows[i].src = attractive_fixed_point(ball[i].g);
        rows[i].img = attractive_fixed_point(h);
    });

    BoundaryMapReport rep;
    CyganDeduper dd(1e-6);
    bool have_inf = false;
    for (size_t i = 0; i < ball.size(); ++i) {
        if (rows[i].mismatch)
            throw invalid_input("boundary_map_samples: type preservation fails at word '" +
                                word_to_string(G, ball[i].word) + "'");
        if (!rows[i].lox) continue;
        if (rows[i].src.infinity) {
            if (have_inf) continue;
            have_inf = true;
        } else if (dd.insert(rows[i].src) >= 0) {
            continue;
        }
        rep.words.push_back(ball[i].word);
        rep.source.push_back(rows[i].src);
        rep.image.push_back(rows[i].img);
    }

    // modulus-of-continuity table over the closest source pairs
    std::vector<std::tuple<double, double>> table;
    for (size_t i = 0; i < rep.source.size(); ++i)
        for (size_t j = i + 1; j < rep.source.size(); ++j) {
            if (rep.source[i].infinity || rep.source[j].infinity ||
                rep.image[i].infinity || rep.image[j].infinity)
                continue;
            table.emplace_back(cygan_distance(rep.source[i], rep.source[j]),
                               cygan_distance(rep.image[i], rep.image[j]));
        }
    std::sort(table.begin(), table.end());
    size_t keep = std::min<size_t>(table.size(), 200);
    rep.modulus.reserve(keep);
    for (size_t i = 0; i < keep; ++i)
        rep.modulus.emplace_back(std::get<0>(table[i]), std::get<1>(table[i]));
    return rep;
}

// --- box dimension ----------------------------------------------------------------

BoxDimensionResult box_dimension(const LimitSample& sample, const std::vector<double>& scales) {
    if (sample.points.empty())
        throw invalid_input("box_dimension: empty sample");
    if (scales.size() < 3)
        throw invalid_input("box_dimension: at least 3 scales required");
    for (double s : scales)
        if (!(s > 0.0) || !std::isfinite(s))
            throw invalid_input("box_dimension: scales must be positive");

    BoxDimensionResult res;
    std::vector<long> counts(scales.size());
    parallel_for(static_cast<long>(scales.size()), [&](long k) {
        double eps = scales[k];
        std::set<std::array<int64_t, 3>> cells;
        for (const auto& p : sample.points)
            cells.insert({static_cast<int64_t>(std::floor(p.xi.real() / eps)),
                          static_cast<int64_t>(std::floor(p.xi.imag() / eps)),
                          static_cast<int64_t>(std::floor(p.v / (eps * eps)))});
        counts[k] = static_cast<long>(cells.size());
    });

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto m = static_cast<double>(scales.size());
    std::vector<double> xs(scales.size()), ys(scales.size());
    for (size_t i = 0; i < scales.size(); ++i) {
        xs[i] = std::log(1.0 / scales[i]);
        ys[i] = std::log(static_cast<double>(counts[i]));
        res.counts.emplace_back(scales[i], counts[i]);
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double var = sxx - sx * sx / m;
    if (var <= 1e-12)
        throw invalid_input("box_dimension: scales must not be all equal");
    res.slope = (sxy - sx * sy / m) / var;
    double ss = 0.0;
    double intercept = (sy - res.slope * sx) / m;
    for (size_t i = 0; i < scales.size(); ++i) {
        double e = ys[i] - (intercept + res.slope * xs[i]);
        ss += e * e;
    }
    res.residual = std::sqrt(ss / m);
    return res;
}

} // namespace cxhyp
