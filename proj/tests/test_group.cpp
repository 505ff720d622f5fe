#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cxhyp/group.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

using namespace cxhyp;

namespace {

// A rank-2 free group of real Moebius maps: loxodromic generators with axis
// endpoints {-3,-1} and {1,3}, whose product b a is the parabolic r -> r+8.
// The quotient is a cusped surface, so the limit set contains Infinity.
Isometry schottky_a() { return real_moebius(0, -3, 1, 4); }
Isometry schottky_b() { return real_moebius(4, -3, 1, 0); }

GroupPresentation schottky() {
    return GroupPresentation::from_generators({"a", "b"}, {schottky_a(), schottky_b()});
}

GroupPresentation cyclic(const std::string& label, const Isometry& g) {
    return GroupPresentation::from_generators({label}, {g});
}

// The boundary-circle group generated by the unit translation and the
// inversion: its orbit closure fills the real axis of the first coordinate.
GroupPresentation real_modular() {
    return GroupPresentation::from_generators({"t", "s"},
                                              {real_moebius(1, 1, 0, 1), real_moebius(0, -1, 1, 0)});
}

// Same combinatorics transported to the vertical axis: the vertical unit
// translation and the inversion act on {xi = 0} by v -> v+1 and v -> -1/v.
GroupPresentation chain_modular() {
    return GroupPresentation::from_generators(
        {"t", "s"}, {heisenberg_translation({0, 0}, 1.0), heisenberg_inversion()});
}

HoroPoint base_point() { return HoroPoint({0, 0}, 0.0, 1.0); }

bool near_point(const HoroPoint& p, const HoroPoint& q, double tol) {
    if (p.infinity || q.infinity) return p.infinity == q.infinity;
    return cygan_distance(p, q) <= tol;
}

} // namespace

TEST_CASE("word balls enumerate freely reduced words shortest first") {
    auto G = schottky();

    auto b0 = word_ball(G, 0);
    REQUIRE(b0.size() == 1);
    CHECK(b0[0].word.empty());
    CHECK(classify(b0[0].g).is_identity);

    // 1 + 4 + 4*3 + 4*3^2 elements of the free group of rank 2
    CHECK(word_ball(G, 1).size() == 5);
    CHECK(word_ball(G, 2).size() == 17);
    auto b3 = word_ball(G, 3);
    CHECK(b3.size() == 53);

    // shortest-first enumeration, and words really evaluate to their matrices
    size_t prev = 0;
    for (const auto& e : b3) {
        CHECK(e.word.size() >= prev);
        prev = e.word.size();
        CHECK(iso_distance(e.g, evaluate_word(G, e.word)) < 1e-12);
    }

    // all 53 elements pairwise distinct
    for (size_t i = 0; i < b3.size(); ++i)
        for (size_t j = i + 1; j < std::min(b3.size(), i + 5); ++j)
            CHECK(iso_distance(b3[i].g, b3[j].g) > 1e-6);

    CHECK_THROWS(word_ball(G, -1));
}

TEST_CASE("word balls merge letters that coincide as elements") {
    // the inversion is an involution: its formal inverse letter gives the
    // same element, so the radius-2 ball holds just {id, s}
    auto G = cyclic("s", heisenberg_inversion());
    auto ball = word_ball(G, 2);
    REQUIRE(ball.size() == 2);
    CHECK(ball[1].word == Word{0});

    // the relator (s t)^3 = 1 of the modular group collapses the ball far
    // below the free count 53
    CHECK(word_ball(real_modular(), 3).size() < 40);
}

TEST_CASE("words compose left to right and print with labels") {
    auto G = schottky();
    Word w{0, 1, 2}; // a b a'
    CHECK(word_to_string(G, w) == "a b a'");
    CHECK(word_to_string(G, {}) == "id");
    CHECK(G.letter_label(0) == "a");
    CHECK(G.letter_label(3) == "b'");
    CHECK(GroupPresentation::inverse_letter(0, 2) == 2);
    CHECK(GroupPresentation::inverse_letter(3, 2) == 1);

    Isometry lhs = evaluate_word(G, w);
    Isometry rhs = compose(schottky_a(), compose(schottky_b(), inverse(schottky_a())));
    CHECK(iso_distance(lhs, rhs) < 1e-10);

    // "a b" acts as z -> a(b(z)); the Cygan comparison is a square-root
    // metric, so coordinate noise eps shows up as sqrt(eps)
    HoroPoint z({0.3, -0.2}, 0.7, 0.0);
    HoroPoint via_word = apply(evaluate_word(G, {0, 1}), z);
    HoroPoint via_maps = apply(schottky_a(), apply(schottky_b(), z));
    CHECK(cygan_distance(via_word, via_maps) < 1e-7);

    // the reversed product is the parabolic translation by 8 along the axis
    Isometry ba = evaluate_word(G, {1, 0});
    CHECK(classify(ba).type == IsometryType::Parabolic);
    HoroPoint moved = apply(ba, HoroPoint({-3.0, 0.0}, 0.0, 0.0));
    CHECK(moved.xi.real() == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(std::abs(moved.v) < 1e-10);
}

TEST_CASE("orbit clouds collect deduplicated translates") {
    auto G = schottky();
    HoroPoint base = base_point();
    auto oc = orbit_cloud(G, base, 2);
    CHECK(oc.radius == 2);
    CHECK(oc.points.size() == oc.words.size());
    // a generic interior point has trivial stabilizer in a free group
    CHECK(oc.points.size() == 17);
    // the identity word contributes the base point itself
    bool has_base = false;
    for (size_t i = 0; i < oc.points.size(); ++i)
        if (oc.words[i].empty()) {
            has_base = true;
            CHECK(bergman_distance(oc.points[i], base) < 1e-12);
        }
    CHECK(has_base);
    CHECK_THROWS(orbit_cloud(G, base, 2, 0.0));
}

TEST_CASE("limit sample of a cyclic loxodromic group is its fixed pair") {
    auto G = cyclic("d", dilation(2.0));
    auto ls = limit_set_sample(G, 3);
    CHECK(ls.ball_words == 7);
    // every nonidentity power is loxodromic: 6 words, 12 candidates
    CHECK(ls.raw_candidates == 12);
    REQUIRE(ls.points.size() == 1);
    CHECK(cygan_norm(ls.points[0]) < 1e-12);
    CHECK(ls.has_infinity);
    CHECK(ls.infinity_word == Word{0});
    CHECK_THROWS(limit_set_sample(G, 0));
}

TEST_CASE("limit sample of a real Schottky group lies on the real axis") {
    auto ls = limit_set_sample(schottky(), 5);
    CHECK(ls.points.size() > 100);
    CHECK_FALSE(ls.has_infinity);
    for (const auto& p : ls.points) {
        CHECK(std::abs(p.xi.imag()) < 1e-8);
        CHECK(std::abs(p.v) < 1e-8);
        CHECK(std::abs(p.xi.real()) < 1e3);
        CHECK(p.u < 1e-8); // extracted from eigenvectors, not exactly zero
    }
    // fixed points accumulate near both generator axes
    bool near_minus = false, near_plus = false;
    for (const auto& p : ls.points) {
        if (std::abs(p.xi.real() + 3.0) < 0.2) near_minus = true;
        if (std::abs(p.xi.real() - 3.0) < 0.2) near_plus = true;
    }
    CHECK(near_minus);
    CHECK(near_plus);
}

TEST_CASE("limit sample of the vertical modular group lies on the chain") {
    auto ls = limit_set_sample(chain_modular(), 8);
    CHECK(ls.points.size() > 100);
    double max_xi = 0.0, max_v = 0.0;
    for (const auto& p : ls.points) {
        max_xi = std::max(max_xi, std::abs(p.xi));
        max_v = std::max(max_v, std::abs(p.v));
    }
    CHECK(max_xi < 1e-10);
    CHECK(max_v > 2.0);
    // infinity is a parabolic, not loxodromic, fixed point here
    CHECK_FALSE(ls.has_infinity);
}

TEST_CASE("limit samples transform equivariantly under conjugation") {
    auto G = schottky();
    Isometry h = compose(heisenberg_translation({0.5, 0.25}, 1.5), unitary_rotation(0.7));
    auto H = GroupPresentation::from_generators(
        {"a", "b"}, {compose(h, compose(schottky_a(), inverse(h))),
                     compose(h, compose(schottky_b(), inverse(h)))});

    auto lg = limit_set_sample(G, 4);
    auto lh = limit_set_sample(H, 4);
    CHECK(lg.has_infinity == lh.has_infinity);
    // deduplication keeps one representative per 1e-6 cluster, and the
    // eigenvector noise of conjugated words sits near that threshold, so the
    // representative counts drift; the sampled sets still have to agree as
    // sets, checked by a two-sided Hausdorff bound.
    CHECK(lh.points.size() > lg.points.size() / 2);
    CHECK(lh.points.size() < lg.points.size() * 2);

    double worst = 0.0;
    for (const auto& p : lg.points) {
        HoroPoint hp = apply(h, p);
        double best = 1e30;
        for (const auto& q : lh.points) best = std::min(best, cygan_distance(hp, q));
        worst = std::max(worst, best);
    }
    for (const auto& q : lh.points) {
        double best = 1e30;
        for (const auto& p : lg.points)
            best = std::min(best, cygan_distance(apply(h, p), q));
        worst = std::max(worst, best);
    }
    CHECK(worst < 2e-5);
}

TEST_CASE("dirichlet membership accepts the center and rejects translates") {
    auto G = schottky();
    HoroPoint y = base_point();
    CHECK(dirichlet_membership(y, y, G, 3));

    HoroPoint z = apply(schottky_a(), y);
    CHECK_FALSE(dirichlet_membership(z, y, G, 3));

    // boundary arguments are rejected
    CHECK_THROWS(dirichlet_membership(HoroPoint({1, 0}, 0.0, 0.0), y, G, 2));

    // a center fixed by a ball word is reported by name
    auto E = cyclic("u", unitary_rotation(3.14159 / 3.0));
    try {
        dirichlet_membership(y, y, E, 2);
        CHECK(false);
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("fixed by word 'u'") != std::string::npos);
    }
}

TEST_CASE("collar check matches the tube-width threshold") {
    // sinh(l/4) = 1 and sinh(delta/2) = 1/2 sit exactly on the boundary
    double l_eq = 4.0 * std::asinh(1.0);
    double d_eq = 2.0 * std::asinh(0.5);
    CHECK(collar_check(l_eq, d_eq));
    CHECK_FALSE(collar_check(l_eq, d_eq + 1e-6));
    CHECK_FALSE(collar_check(l_eq + 1e-6, d_eq));

    // short geodesics admit wide collars, long ones do not
    CHECK(collar_check(0.01, 2.0 * std::asinh(100.0)));
    CHECK_FALSE(collar_check(4.0, 4.0));
    CHECK(collar_check(3.4, 1.0));
    CHECK_FALSE(collar_check(3.5, 1.0));

    // monotone: once the pair fails, growing either length keeps it failing
    for (double l = 0.5; l < 6.0; l += 0.5)
        if (!collar_check(l, 1.0)) CHECK_FALSE(collar_check(l + 0.5, 1.0));

    CHECK_THROWS(collar_check(0.0, 1.0));
    CHECK_THROWS(collar_check(1.0, -2.0));
    CHECK_THROWS(collar_check(std::numeric_limits<double>::infinity(), 1.0));
}

TEST_CASE("growth of a cyclic loxodromic group is linear at its rate") {
    double ell = 2.0; // dilation(e) translates by 2 ln e
    auto G = cyclic("d", dilation(std::exp(1.0)));
    auto gr = growth_diagnostic(G, 6, base_point()); // base on the axis
    REQUIRE(gr.rows.size() == 6);
    for (const auto& row : gr.rows) {
        CHECK(row.count == 2);
        CHECK(row.min_d == doctest::Approx(ell * row.length).epsilon(1e-9));
        CHECK(row.max_d == doctest::Approx(ell * row.length).epsilon(1e-9));
    }
    CHECK(gr.k_upper == doctest::Approx(ell).epsilon(1e-9));
    CHECK(gr.k_upper == doctest::Approx(translation_length(dilation(std::exp(1.0)))).epsilon(1e-9));
    CHECK_THROWS(growth_diagnostic(G, 1, base_point()));
}

TEST_CASE("growth of a vertical translation group follows the log envelope") {
    auto G = cyclic("p", heisenberg_translation({0, 0}, 4.0));
    auto gr = growth_diagnostic(G, 30, base_point());
    REQUIRE(gr.rows.size() == 30);
    // displacement of the n-th power from (0,0,1) is 2 asinh(2n)
    for (const auto& row : gr.rows) {
        double expect = 2.0 * std::asinh(2.0 * row.length);
        CHECK(row.min_d == doctest::Approx(expect).epsilon(1e-9));
        CHECK(row.max_d == doctest::Approx(expect).epsilon(1e-9));
    }
    // asymptotically a + 2 ln n with a = 2 ln 4
    CHECK(std::abs(gr.log_offset - 2.0 * std::log(4.0)) < 0.05);
    CHECK(gr.log_residual < 0.01);
    CHECK(gr.k_upper == doctest::Approx(2.0 * std::asinh(2.0)).epsilon(1e-9));
}

TEST_CASE("cusp neighborhoods of an elementary vertical cusp") {
    auto G = cyclic("p", heisenberg_translation({0, 0}, 4.0));
    HoroPoint inf = HoroPoint::at_infinity();

    auto deep = cusp_neighborhood_test(inf, HoroPoint({0, 0}, 0.0, 100.0), 1.0, G, 3,
                                       CuspModel::VerticalLine);
    CHECK(deep.verdict == CuspVerdict::Inside);

    auto shallow = cusp_neighborhood_test(inf, HoroPoint({0.05, 0}, 0.0, 1e-4), 1.0, G, 3,
                                          CuspModel::VerticalLine);
    CHECK(shallow.verdict == CuspVerdict::Outside);

    // every word of the stabilizer fixes the cusp: no violation at any radius
    for (double r : {0.5, 1.0, 5.0, 100.0}) {
        auto res = cusp_neighborhood_test(inf, HoroPoint({0, 0}, 0.0, 1.0), r, G, 4,
                                          CuspModel::VerticalLine);
        CHECK(res.verdict != CuspVerdict::Violated);
    }
}

TEST_CASE("cusp neighborhoods at a finite parabolic point") {
    // conjugate the vertical translation so it fixes the origin
    Isometry i = heisenberg_inversion();
    Isometry g = compose(i, compose(heisenberg_translation({0, 0}, 4.0), i));
    auto G = cyclic("p", g);
    HoroPoint origin({0, 0}, 0.0, 0.0);
    CHECK(classify(g).type == IsometryType::Parabolic);

    auto deep = cusp_neighborhood_test(origin, HoroPoint({0, 0}, 0.0, 0.01), 1.0, G, 3,
                                       CuspModel::FullBoundary);
    CHECK(deep.verdict == CuspVerdict::Inside);
    auto far = cusp_neighborhood_test(origin, HoroPoint({0, 0}, 0.0, 100.0), 1.0, G, 3,
                                      CuspModel::FullBoundary);
    CHECK(far.verdict == CuspVerdict::Outside);
}

TEST_CASE("deep cusp neighborhoods of the cusped free group are invariant") {
    // infinity is the fixed point of the parabolic product b a, which
    // translates the real axis; the stabilizer model is a horizontal line
    auto G = schottky();
    HoroPoint inf = HoroPoint::at_infinity();
    HoroPoint deep({0, 0}, 0.0, 1e4);

    for (double r : {0.1, 0.2, 0.5}) {
        auto res = cusp_neighborhood_test(inf, deep, r, G, 3, CuspModel::HorizontalLine);
        CHECK(res.verdict == CuspVerdict::Inside);
    }
    // too shallow a neighborhood meets its own translates
    auto bad = cusp_neighborhood_test(inf, deep, 5.0, G, 3, CuspModel::HorizontalLine);
    REQUIRE(bad.verdict == CuspVerdict::Violated);
    CHECK_FALSE(bad.violating_word.empty());
}

TEST_CASE("cusp neighborhoods detect non-invariance and reject bad input") {
    auto G = cyclic("p", heisenberg_translation({0, 0}, 4.0));
    HoroPoint inf = HoroPoint::at_infinity();
    HoroPoint x({0, 0}, 0.0, 100.0);

    CHECK_THROWS(cusp_neighborhood_test(inf, x, 0.0, G, 3, CuspModel::VerticalLine));
    CHECK_THROWS(cusp_neighborhood_test(inf, x, -1.0, G, 3, CuspModel::VerticalLine));
    // p must be a boundary point
    CHECK_THROWS(
        cusp_neighborhood_test(HoroPoint({0, 0}, 0.0, 1.0), x, 1.0, G, 3, CuspModel::VerticalLine));
    // no power of a loxodromic with finite axis endpoints fixes infinity
    auto A = cyclic("a", schottky_a());
    CHECK_THROWS(cusp_neighborhood_test(inf, x, 1.0, A, 3, CuspModel::VerticalLine));

    // a loxodromic moving the cusp around violates a shallow neighborhood
    auto Mix = GroupPresentation::from_generators(
        {"p", "a"}, {heisenberg_translation({0, 0}, 4.0), schottky_a()});
    auto res = cusp_neighborhood_test(inf, x, 100.0, Mix, 2, CuspModel::VerticalLine);
    REQUIRE(res.verdict == CuspVerdict::Violated);
    CHECK(word_to_string(Mix, res.violating_word) == "a");
}

TEST_CASE("margulis displacement words") {
    // dilation(e^0.05) displaces points of its axis by exactly 0.1 per power
    auto G = cyclic("d", dilation(std::exp(0.05)));
    auto words = margulis_test(base_point(), G, 4, 0.35);
    CHECK(words.size() == 6); // d^{+-1}, d^{+-2}, d^{+-3}
    for (const auto& w : words) CHECK(w.size() <= 3);
    CHECK(margulis_test(base_point(), G, 4, 0.05).empty());

    // a horizontal translation displaces high horospheres arbitrarily little
    auto P = cyclic("p", heisenberg_translation({1, 0}, 0.0));
    CHECK(margulis_test(HoroPoint({0, 0}, 0.0, 1e4), P, 2, 0.1).size() == 4);
    CHECK(margulis_test(base_point(), P, 2, 0.5).empty());

    CHECK_THROWS(margulis_test(base_point(), G, 3, 0.0));
    CHECK_THROWS(margulis_test(HoroPoint({0, 0}, 0.0, 0.0), G, 3, 0.1));
}

TEST_CASE("floyd clusters of a cyclic loxodromic group are its two ends") {
    auto G = cyclic("d", dilation(2.0));
    auto fr = floyd_boundary_samples(G, 4);
    CHECK(fr.scale == doctest::Approx(0.25));
    CHECK(fr.equivariant);
    REQUIRE(fr.clusters.size() == 2);

    // positive powers drift to infinity, negative powers to the origin
    const auto& plus = fr.clusters[0];
    const auto& minus = fr.clusters[1];
    CHECK(plus.words.size() == 1);
    CHECK(word_to_string(G, plus.words[0]) == "d d d d");
    CHECK(plus.nearest_is_infinity);
    CHECK_FALSE(minus.nearest_is_infinity);
    CHECK(cygan_norm(minus.nearest_limit) < 1e-12);
    CHECK(minus.limit_distance == doctest::Approx(1.0 / 16.0).epsilon(1e-9));

    CHECK_THROWS(floyd_boundary_samples(G, 1));
}

TEST_CASE("floyd clusters of a parabolic group land on one point") {
    auto G = cyclic("p", heisenberg_translation({0, 0}, 4.0));
    auto fr = floyd_boundary_samples(G, 4);
    REQUIRE(fr.clusters.size() == 2);
    // both combinatorial ends sit over the single parabolic fixed point
    for (const auto& c : fr.clusters) CHECK(c.nearest_is_infinity);
}

TEST_CASE("floyd clusters of a Schottky group track the limit set") {
    auto fr = floyd_boundary_samples(schottky(), 5);
    CHECK(fr.scale == doctest::Approx(4.0 / 25.0));
    CHECK(fr.equivariant);
    CHECK(fr.clusters.size() > 200);
    int at_infinity = 0;
    for (const auto& c : fr.clusters) {
        REQUIRE_FALSE(c.words.empty());
        for (const auto& w : c.words) CHECK(w.size() == 5);
        if (c.nearest_is_infinity) ++at_infinity;
        CHECK(c.limit_distance < 0.15);
    }
    // a few clusters drift out along the cusp toward infinity
    CHECK(at_infinity > 0);
    CHECK(at_infinity < 20);
    // a coarser clustering scale merges sphere words into fewer clusters
    auto coarse = floyd_boundary_samples(schottky(), 5, 0.9);
    CHECK(coarse.scale == doctest::Approx(0.9));
    CHECK(coarse.clusters.size() < fr.clusters.size());
}

TEST_CASE("boundary map between conjugate groups is the conjugacy") {
    auto G = schottky();
    Isometry h = heisenberg_translation({2, 0}, 0.0);
    auto H = GroupPresentation::from_generators(
        {"a", "b"}, {compose(h, compose(schottky_a(), inverse(h))),
                     compose(h, compose(schottky_b(), inverse(h)))});

    auto rep = boundary_map_samples(G, H, {0, 1}, 4);
    REQUIRE(rep.words.size() == rep.source.size());
    REQUIRE(rep.words.size() == rep.image.size());
    CHECK(rep.source.size() > 50);
    // fixed points come out of two independent eigensolves, so the Cygan
    // agreement is sqrt of the coordinate noise
    for (size_t i = 0; i < rep.source.size(); ++i)
        CHECK(near_point(apply(h, rep.source[i]), rep.image[i], 1e-4));

    // modulus table is sorted by source distance with positive entries
    REQUIRE(!rep.modulus.empty());
    for (size_t i = 0; i + 1 < rep.modulus.size(); ++i)
        CHECK(rep.modulus[i].first <= rep.modulus[i + 1].first);
    for (const auto& [ds, di] : rep.modulus) {
        CHECK(ds >= 0.0);
        CHECK(di >= 0.0);
    }

    // the identity pairing on the same group gives the identity map
    auto self = boundary_map_samples(G, G, {0, 1}, 3);
    for (size_t i = 0; i < self.source.size(); ++i)
        CHECK(near_point(self.source[i], self.image[i], 1e-9));
}

TEST_CASE("boundary map validates the pairing and type preservation") {
    auto G = schottky();
    CHECK_THROWS(boundary_map_samples(G, G, {0, 0}, 3));
    CHECK_THROWS(boundary_map_samples(G, G, {0}, 3));
    CHECK_THROWS(boundary_map_samples(G, G, {0, 2}, 3));
    auto C = cyclic("d", dilation(2.0));
    CHECK_THROWS(boundary_map_samples(G, C, {0, 1}, 3));

    // pairing a loxodromic generator with a parabolic one fails by name
    auto H = GroupPresentation::from_generators(
        {"a", "b"}, {heisenberg_translation({1, 0}, 0.0), schottky_b()});
    try {
        boundary_map_samples(G, H, {0, 1}, 3);
        CHECK(false);
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("type preservation fails at word 'a'") !=
              std::string::npos);
    }
}

TEST_CASE("box dimension of synthetic line samples") {
    // a segment of the real axis: one-dimensional at horizontal scales
    LimitSample line;
    for (int k = -2000; k <= 2000; ++k)
        line.points.push_back(HoroPoint({k / 2000.0, 0.0}, 0.0, 0.0));
    auto horiz = box_dimension(line, {0.1, 0.05, 0.02, 0.01});
    CHECK(std::abs(horiz.slope - 1.0) < 0.05);
    CHECK(horiz.residual < 0.05);
    REQUIRE(horiz.counts.size() == 4);
    CHECK(horiz.counts[0].first == doctest::Approx(0.1));
    CHECK(horiz.counts[0].second < horiz.counts[3].second);

    // a segment of the vertical axis: the grid is eps^2 in v, so the count
    // scales like eps^{-2}
    LimitSample vert;
    for (int k = -2000; k <= 2000; ++k)
        vert.points.push_back(HoroPoint({0.0, 0.0}, k / 1000.0, 0.0));
    auto vertical = box_dimension(vert, {0.35, 0.3, 0.25, 0.2});
    CHECK(std::abs(vertical.slope - 2.0) < 0.1);

    // a single point occupies one box at every scale
    LimitSample dot;
    dot.points.push_back(HoroPoint({0.3, 0.1}, -0.2, 0.0));
    auto point = box_dimension(dot, {0.4, 0.2, 0.1});
    CHECK(point.slope == doctest::Approx(0.0));
    CHECK(point.residual == doctest::Approx(0.0));
}

TEST_CASE("box dimension of a Schottky limit sample is a fractal value") {
    auto ls = limit_set_sample(schottky(), 6);
    auto res = box_dimension(ls, {0.4, 0.2, 0.1, 0.05});
    CHECK(res.slope > 0.02);
    CHECK(res.slope < 1.0);
}

TEST_CASE("box dimension rejects degenerate input") {
    LimitSample empty;
    CHECK_THROWS(box_dimension(empty, {0.4, 0.2, 0.1}));
    LimitSample one;
    one.points.push_back(HoroPoint({0, 0}, 0.0, 0.0));
    CHECK_THROWS(box_dimension(one, {0.4, 0.2}));
    CHECK_THROWS(box_dimension(one, {0.4, -0.2, 0.1}));
    CHECK_THROWS(box_dimension(one, {0.2, 0.2, 0.2}));
}
