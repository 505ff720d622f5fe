#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cxhyp/heisenberg.hpp"

#include <cmath>
#include <random>

using namespace cxhyp;

namespace {

std::mt19937_64& rng() {
    static std::mt19937_64 gen(20260816ull);
    return gen;
}

double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

Complex rand_complex(double scale = 2.0) {
    return {uniform(-scale, scale), uniform(-scale, scale)};
}

HoroPoint rand_boundary() {
    return HoroPoint(rand_complex(), uniform(-4.0, 4.0));
}

} // namespace

TEST_CASE("Cygan norm: frozen values and the boundary restriction") {
    CHECK(cygan_norm(HoroPoint(Complex(1, 0), 0.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cygan_norm(HoroPoint(Complex(0, 0), 1.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cygan_norm(HoroPoint(Complex(0, 0), 16.0)) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(cygan_norm(HoroPoint(Complex(2, 0), 0.0)) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(cygan_norm(HoroPoint(Complex(0, 0), 0.0)) == 0.0);
    CHECK_THROWS_AS((void)cygan_norm(HoroPoint::at_infinity()), Error);
}

TEST_CASE("Cygan distance: metric axioms and invariances") {
    for (int i = 0; i < 50; ++i) {
        HoroPoint p = rand_boundary();
        CHECK(cygan_distance(p, p) == 0.0);
        CHECK(cygan_distance(p, HoroPoint(Complex(0, 0), 0.0)) ==
              doctest::Approx(cygan_norm(p)).epsilon(1e-12));
    }

    // Symmetry and the triangle inequality.
    for (int i = 0; i < 100; ++i) {
        HoroPoint p = rand_boundary(), q = rand_boundary(), r = rand_boundary();
        double pq = cygan_distance(p, q);
        CHECK(pq == doctest::Approx(cygan_distance(q, p)).epsilon(1e-12));
        CHECK(pq + cygan_distance(q, r) + 1e-10 >= cygan_distance(p, r));
    }

    // Invariance under the similarity stabilizer of Infinity minus dilations.
    for (int i = 0; i < 100; ++i) {
        HoroPoint p = rand_boundary(), q = rand_boundary();
        Isometry g = compose(heisenberg_translation(rand_complex(), uniform(-4, 4)),
                             unitary_rotation(uniform(-kPi, kPi)));
        CHECK(cygan_distance(apply(g, p), apply(g, q)) ==
              doctest::Approx(cygan_distance(p, q)).epsilon(1e-10));
    }

    // Dilations scale the metric exactly by their factor.
    for (double r : {0.5, 2.0, 7.5}) {
        Isometry d = dilation(r);
        HoroPoint p = rand_boundary(), q = rand_boundary();
        CHECK(cygan_distance(apply(d, p), apply(d, q)) ==
              doctest::Approx(r * cygan_distance(p, q)).epsilon(1e-11));
    }
}

TEST_CASE("standard circle membership via the defining quartic") {
    RCircle k = RCircle::standard();
    // (i, 0): r = 1, theta = pi/2, r^2 - iv = 1 = -e^{i pi} holds.
    CHECK(on_r_circle(HoroPoint(Complex(0, 1), 0.0), k));
    CHECK(on_r_circle(HoroPoint(Complex(0, -1), 0.0), k));
    CHECK_FALSE(on_r_circle(HoroPoint(Complex(1, 0), 0.0), k));
    CHECK_FALSE(on_r_circle(HoroPoint::at_infinity(), k));

    // Polar solution of r^2 - iv = -e^{2 i theta}: r^2 = -cos(2 theta),
    // v = sin(2 theta); the horizontal projection is the lemniscate
    // (x^2+y^2)^2 = y^2 - x^2 and v^2 = 1 - r^4 along it.
    for (int j = 0; j < 360; ++j) {
        double theta = kPi * j / 180.0;
        double c2 = -std::cos(2.0 * theta);
        if (c2 < 1e-8) continue; // no circle point above this direction
        double r = std::sqrt(c2);
        Complex xi = r * std::polar(1.0, theta);
        double v = std::sin(2.0 * theta);
        CHECK(on_r_circle(HoroPoint(xi, v), k, 1e-10));
        CHECK(v * v == doctest::Approx(1.0 - r * r * r * r).epsilon(1e-12));
        CHECK_FALSE(on_r_circle(HoroPoint(xi * 1.05 + Complex(0.01, 0), v), k, 1e-3));
    }
}

TEST_CASE("straight circles are boundary lines with forced slope") {
    RCircle axis = RCircle::line(Complex(0, 0), 0.0, Complex(1, 0));
    CHECK(on_r_circle(HoroPoint(Complex(2.5, 0), 0.0), axis));
    CHECK(on_r_circle(HoroPoint::at_infinity(), axis));
    CHECK_FALSE(on_r_circle(HoroPoint(Complex(0, 0.3), 0.0), axis));
    CHECK_FALSE(on_r_circle(HoroPoint(Complex(1, 0), 0.5), axis));

    // A line anchored off the vertical axis picks up the twisted v-slope: the
    // involution of the real axis conjugated by a translation moves the line
    // to t -> (xi0 + t d, v0 + 2 t Im(xi0 conj(d))).
    Complex xi0(1, 1);
    Complex dir = std::polar(1.0, 0.3);
    RCircle moved = RCircle::line(xi0, 0.5, dir);
    for (double t : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
        HoroPoint p(xi0 + t * dir, 0.5 + 2.0 * t * std::imag(xi0 * std::conj(dir)));
        CHECK(on_r_circle(p, moved, 1e-9));
    }
}

TEST_CASE("real involutions fix their circle and square to the identity") {
    // The involution of the real axis conjugates (xi, v) to (conj(xi), -v).
    RCircle axis = RCircle::line(Complex(0, 0), 0.0, Complex(1, 0));
    Isometry inv = real_involution(axis);
    CHECK(classify(inv).antiholomorphic);
    HoroPoint image = apply(inv, HoroPoint(Complex(1, 2), 3.0));
    CHECK(std::abs(image.xi - Complex(1, -2)) < 1e-12);
    CHECK(image.v == doctest::Approx(-3.0).epsilon(1e-12));

    // Fixes a point of the standard circle.
    Isometry std_inv = real_involution(RCircle::standard());
    HoroPoint pole(Complex(0, 1), 0.0);
    HoroPoint fixed = apply(std_inv, pole);
    CHECK(std::abs(fixed.xi - pole.xi) < 1e-10);
    CHECK(std::abs(fixed.v - pole.v) < 1e-10);

    // Order two and fixing the circle, for random finite circles.
    for (int i = 0; i < 20; ++i) {
        RCircle c = RCircle::finite(rand_complex(), uniform(-3, 3), uniform(0.3, 2.5),
                                    uniform(-kPi, kPi));
        Isometry ic = real_involution(c);
        CHECK(classify(compose(ic, ic)).is_identity);
        // The Cygan metric is a square root of coordinate differences, so
        // coordinate rounding of 1e-10 (points that swing near Infinity and
        // back lose a few digits) shows up as ~1e-5 distances.
        for (int j = 0; j < 5; ++j) {
            HoroPoint p = rand_boundary();
            HoroPoint pp = apply(ic, apply(ic, p));
            CHECK(cygan_distance(p, pp) < 1e-5);
        }
        // The frame maps circle points to circle points fixed by the involution.
        Isometry frame = r_circle_frame(c);
        HoroPoint on_c = apply(frame, HoroPoint(Complex(0, 1), 0.0));
        CHECK(on_r_circle(on_c, c, 1e-8));
        CHECK(cygan_distance(apply(ic, on_c), on_c) < 1e-6);
    }
}

TEST_CASE("chain membership") {
    Chain vert = Chain::vertical(Complex(1, 0));
    CHECK(on_chain(HoroPoint(Complex(1, 0), -7.0), vert));
    CHECK(on_chain(HoroPoint::at_infinity(), vert));
    CHECK_FALSE(on_chain(HoroPoint(Complex(1.001, 0), 0.0), vert));

    Chain circ = Chain::finite(Complex(1, 0), 0.5, 2.0);
    for (double phi : {0.0, 0.7, 2.0, -1.3}) {
        Complex off = 2.0 * std::polar(1.0, phi);
        HoroPoint p(Complex(1, 0) + off, 0.5 + 2.0 * std::imag(Complex(1, 0) * std::conj(off)));
        CHECK(on_chain(p, circ, 1e-9));
    }
    CHECK_FALSE(on_chain(HoroPoint::at_infinity(), circ));
    CHECK_FALSE(on_chain(HoroPoint(Complex(3, 0), 0.6), circ));
}

TEST_CASE("angular invariant: frozen triples and range") {
    HoroPoint inf = HoroPoint::at_infinity();
    CHECK(cartan_invariant(HoroPoint(Complex(-1, 0), 0.0), HoroPoint(Complex(1, 0), 0.0),
                           inf) == doctest::Approx(0.0).epsilon(1e-14));
    double a_chain = cartan_invariant(HoroPoint(Complex(0, 0), -1.0),
                                      HoroPoint(Complex(0, 0), 1.0), inf);
    CHECK(std::abs(std::abs(a_chain) - kPi / 2) < 1e-12);

    for (int i = 0; i < 200; ++i) {
        HoroPoint a = rand_boundary(), b = rand_boundary(), c = rand_boundary();
        double inv = cartan_invariant(a, b, c);
        CHECK(inv <= kPi / 2 + 1e-12);
        CHECK(inv >= -kPi / 2 - 1e-12);
    }

    CHECK_THROWS_AS((void)cartan_invariant(inf, inf, HoroPoint(Complex(1, 0), 0.0)), Error);
    HoroPoint p(Complex(1, 0), 0.0);
    CHECK_THROWS_AS((void)cartan_invariant(p, p, HoroPoint(Complex(0, 1), 0.0)), Error);
}

TEST_CASE("angular invariant transforms with the isometry group") {
    for (int i = 0; i < 100; ++i) {
        HoroPoint a = rand_boundary(), b = rand_boundary(), c = rand_boundary();
        double base = cartan_invariant(a, b, c);

        Isometry g = compose(heisenberg_translation(rand_complex(), uniform(-3, 3)),
                             compose(unitary_rotation(uniform(-kPi, kPi)),
                                     dilation(std::exp(uniform(-0.7, 0.7)))));
        if (uniform(0, 1) > 0.7) g = compose(g, heisenberg_inversion());
        double moved = cartan_invariant(apply(g, a), apply(g, b), apply(g, c));
        CHECK(moved == doctest::Approx(base).epsilon(1e-9));

        Isometry anti = real_involution(RCircle::line(Complex(0, 0), 0.0, Complex(1, 0)));
        double flipped = cartan_invariant(apply(anti, a), apply(anti, b), apply(anti, c));
        CHECK(flipped == doctest::Approx(-base).epsilon(1e-9));
    }

    // R-circle triples give zero; chain triples give +-pi/2.
    RCircle c = RCircle::finite(Complex(0.4, -0.2), 1.0, 1.7, 0.9);
    Isometry frame = r_circle_frame(c);
    auto kpt = [&](double theta) {
        double r = std::sqrt(-std::cos(2.0 * theta));
        return apply(frame, HoroPoint(r * std::polar(1.0, theta), std::sin(2.0 * theta)));
    };
    double a0 = cartan_invariant(kpt(1.0), kpt(1.4), kpt(2.0));
    CHECK(std::abs(a0) < 1e-9);

    Chain vert = Chain::vertical(Complex(0.3, 0.2));
    double a1 = cartan_invariant(HoroPoint(Complex(0.3, 0.2), -2.0),
                                 HoroPoint(Complex(0.3, 0.2), 0.5),
                                 HoroPoint(Complex(0.3, 0.2), 3.0));
    CHECK(std::abs(std::abs(a1) - kPi / 2) < 1e-9);
    CHECK(on_chain(HoroPoint(Complex(0.3, 0.2), -2.0), vert));
}

TEST_CASE("sphere membership and tangency classification") {
    HeisSphere unit{Complex(0, 0), 0.0, 1.0};
    CHECK(on_sphere(HoroPoint(Complex(1, 0), 0.0), unit));
    CHECK(on_sphere(HoroPoint(Complex(0, 0), 1.0), unit));
    CHECK_FALSE(on_sphere(HoroPoint(Complex(0, 0), 0.0), unit));

    // Two unit spheres centered at vertical separation 2 touch at the origin.
    HeisSphere up{Complex(0, 0), 1.0, 1.0};
    HeisSphere down{Complex(0, 0), -1.0, 1.0};
    Tangency t = sphere_tangency(up, down);
    CHECK(t.kind == TangencyKind::Tangent);
    CHECK(cygan_norm(t.point) < 1e-6);

    HeisSphere far{Complex(5, 5), 0.0, 1.0};
    CHECK(sphere_tangency(unit, far).kind == TangencyKind::Disjoint);
    CHECK(sphere_tangency(unit, unit).kind == TangencyKind::Overlapping);
    HeisSphere close{Complex(0.2, 0), 0.0, 1.0};
    CHECK(sphere_tangency(unit, close).kind == TangencyKind::Overlapping);
}
