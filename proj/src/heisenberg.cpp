#include "cxhyp/heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cxhyp {

namespace {

void require_finite_point(const HoroPoint& p, const char* who) {
    if (p.infinity)
        throw invalid_input(std::string(who) + ": Infinity has no Cygan coordinates");
}

// Boundary action of T_{(a,s)}: (xi, v) -> (a + xi, s + v + 2 Im(a conj(xi))).
HoroPoint translate_boundary(Complex a, double s, const HoroPoint& p) {
    return HoroPoint(a + p.xi,
                     s + p.v + 2.0 * std::imag(a * std::conj(p.xi)),
                     p.u);
}

} // namespace

double cygan_norm(const HoroPoint& p) {
    require_finite_point(p, "cygan_norm");
    return std::sqrt(std::abs(Complex(std::norm(p.xi) + p.u, -p.v)));
}

double cygan_distance(const HoroPoint& p, const HoroPoint& q) {
    require_finite_point(p, "cygan_distance");
    require_finite_point(q, "cygan_distance");
    double re = std::norm(p.xi - q.xi) + std::abs(p.u - q.u);
    double im = p.v - q.v + 2.0 * std::imag(p.xi * std::conj(q.xi));
    return std::sqrt(std::abs(Complex(re, -im)));
}

// --- R-circles -------------------------------------------------------------

RCircle RCircle::standard() { return finite(Complex(0, 0), 0.0, 1.0, 0.0); }

RCircle RCircle::finite(Complex center_xi, double center_v, double radius, double phase) {
    if (!(radius > 0.0) || !std::isfinite(radius) || !std::isfinite(center_v) ||
        !std::isfinite(center_xi.real()) || !std::isfinite(center_xi.imag()) ||
        !std::isfinite(phase))
        throw invalid_input("RCircle: finite circle needs finite data and radius > 0");
    RCircle c;
    c.kind = Kind::Finite;
    c.center_xi = center_xi;
    c.center_v = center_v;
    c.radius = radius;
    c.phase = phase;
    return c;
}

RCircle RCircle::line(Complex anchor_xi, double anchor_v, Complex direction) {
    double n = std::abs(direction);
    if (!(n > 0.0) || !std::isfinite(n) || !std::isfinite(anchor_v) ||
        !std::isfinite(anchor_xi.real()) || !std::isfinite(anchor_xi.imag()))
        throw invalid_input("RCircle: line needs finite anchor and nonzero direction");
    RCircle c;
    c.kind = Kind::InfiniteLine;
    c.anchor_xi = anchor_xi;
    c.anchor_v = anchor_v;
    c.direction = direction / n;
    return c;
}

Isometry r_circle_frame(const RCircle& c) {
    if (c.kind == RCircle::Kind::Finite)
        return compose(heisenberg_translation(c.center_xi, c.center_v),
                       compose(dilation(c.radius), unitary_rotation(c.phase)));
    return compose(heisenberg_translation(c.anchor_xi, c.anchor_v),
                   unitary_rotation(std::arg(c.direction)));
}

bool on_r_circle(const HoroPoint& p, const RCircle& c, double tol) {
    if (p.infinity) return c.kind == RCircle::Kind::InfiniteLine;
    if (p.u > tol)
        throw invalid_input("on_r_circle: boundary point required");
    HoroPoint q = apply(inverse(r_circle_frame(c)), HoroPoint(p.xi, p.v));
    if (q.infinity) return false;
    if (c.kind == RCircle::Kind::InfiniteLine)
        return std::abs(q.xi.imag()) <= tol && std::abs(q.v) <= tol;
    // Standard circle: r^2 - iv = -e^{2 i theta}. Written without arguments:
    // |xi|^2 (|xi|^2 - iv) = -xi^2 together with | |xi|^2 - iv | = 1, which
    // keeps the poles (0, +-1) and rejects the rest of the vertical axis.
    Complex s(std::norm(q.xi), -q.v);
    return std::abs(std::norm(q.xi) * s + q.xi * q.xi) <= tol &&
           std::abs(std::abs(s) - 1.0) <= tol;
}

Isometry real_involution(const RCircle& c) {
    Isometry seed;
    seed.antiholo = true;
    if (c.kind == RCircle::Kind::Finite) {
        // Fixed set of z -> diag(-1,-1,1) conj(z) is the standard circle;
        // it swaps the origin and Infinity and preserves the unit sphere.
        seed.m = Mat3::Identity();
        seed.m(0, 0) = -1.0;
        seed.m(1, 1) = -1.0;
    } else {
        // z -> conj(z) fixes the real axis line (xi, v) -> (conj(xi), -v).
        seed.m = Mat3::Identity();
    }
    Isometry h = r_circle_frame(c);
    return compose(h, compose(seed, inverse(h)));
}

// --- chains ----------------------------------------------------------------

Chain Chain::vertical(Complex xi0) {
    if (!std::isfinite(xi0.real()) || !std::isfinite(xi0.imag()))
        throw invalid_input("Chain: vertical chain needs a finite base point");
    Chain c;
    c.kind = Kind::Vertical;
    c.center_xi = xi0;
    c.center_v = 0.0;
    c.radius = 0.0;
    return c;
}

Chain Chain::finite(Complex center_xi, double center_v, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius) || !std::isfinite(center_v) ||
        !std::isfinite(center_xi.real()) || !std::isfinite(center_xi.imag()))
        throw invalid_input("Chain: finite chain needs finite data and radius > 0");
    Chain c;
    c.kind = Kind::Finite;
    c.center_xi = center_xi;
    c.center_v = center_v;
    c.radius = radius;
    return c;
}

bool on_chain(const HoroPoint& p, const Chain& c, double tol) {
    if (p.infinity) return c.kind == Chain::Kind::Vertical;
    if (p.u > tol)
        throw invalid_input("on_chain: boundary point required");
    if (c.kind == Chain::Kind::Vertical)
        return std::abs(p.xi - c.center_xi) <= tol;
    Complex d = p.xi - c.center_xi;
    double ring = std::abs(std::abs(d) - c.radius);
    double tilt = std::abs(p.v - c.center_v - 2.0 * std::imag(c.center_xi * std::conj(d)));
    return ring <= tol && tilt <= tol;
}

// --- spheres ---------------------------------------------------------------

bool on_sphere(const HoroPoint& p, const HeisSphere& s, double tol) {
    if (p.infinity) return false;
    HoroPoint c(s.center_xi, s.center_v);
    return std::abs(cygan_distance(p, c) - s.radius) <= tol;
}

double cartan_invariant(const HoroPoint& x0, const HoroPoint& x1, const HoroPoint& x2) {
    const HoroPoint* pts[3] = {&x0, &x1, &x2};
    Vec3 z[3];
    for (int i = 0; i < 3; ++i) {
        if (!pts[i]->infinity && pts[i]->u > 1e-9)
            throw invalid_input("cartan_invariant: boundary points required");
        z[i] = horo_to_projective(*pts[i]);
    }
    Complex h01 = herm(z[0], z[1]);
    Complex h12 = herm(z[1], z[2]);
    Complex h20 = herm(z[2], z[0]);
    double s01 = z[0].norm() * z[1].norm();
    double s12 = z[1].norm() * z[2].norm();
    double s20 = z[2].norm() * z[0].norm();
    if (std::abs(h01) <= 1e-12 * s01 || std::abs(h12) <= 1e-12 * s12 ||
        std::abs(h20) <= 1e-12 * s20)
        throw invalid_input("cartan_invariant: points must be pairwise distinct");
    return std::arg(-h01 * h12 * h20);
}

// --- sphere tangency --------------------------------------------------------

namespace {

// Point of S(s1) at latitude alpha (v-direction) and longitude phi.
HoroPoint sphere_point(const HeisSphere& s, double alpha, double phi) {
    double ca = std::max(std::cos(alpha), 0.0);
    Complex xi = std::sqrt(ca) * std::polar(s.radius, phi);
    double v = std::sin(alpha) * s.radius * s.radius;
    return translate_boundary(s.center_xi, s.center_v, HoroPoint(xi, v));
}

} // namespace

Tangency sphere_tangency(const HeisSphere& s1, const HeisSphere& s2, double tol) {
    HoroPoint c2(s2.center_xi, s2.center_v);
    auto gap = [&](double alpha, double phi) {
        return cygan_distance(sphere_point(s1, alpha, phi), c2) - s2.radius;
    };

    const int na = 61, np = 96;
    bool any_pos = false, any_neg = false;
    double best = std::numeric_limits<double>::infinity();
    double ba = 0.0, bp = 0.0;
    for (int i = 0; i < na; ++i) {
        double alpha = -0.5 * kPi + kPi * i / (na - 1);
        for (int j = 0; j < np; ++j) {
            double phi = 2.0 * kPi * j / np;
            double g = gap(alpha, phi);
            if (g > tol) any_pos = true;
            if (g < -tol) any_neg = true;
            if (std::abs(g) < best) {
                best = std::abs(g);
                ba = alpha;
                bp = phi;
            }
        }
    }

    Tangency out;
    if (any_pos && any_neg) {
        out.kind = TangencyKind::Overlapping;
        return out;
    }
    if (!any_pos && !any_neg) {
        // every sample sits on the second sphere as well
        out.kind = TangencyKind::Overlapping;
        return out;
    }

    // One-sided: refine the closest approach until the grid resolution is
    // exhausted, then decide between a grazing contact and a true gap.
    double wa = kPi / (na - 1), wp = 2.0 * kPi / np;
    for (int round = 0; round < 60; ++round) {
        double na2 = ba, np2 = bp, nb = best;
        for (int i = -3; i <= 3; ++i)
            for (int j = -3; j <= 3; ++j) {
                double alpha = std::clamp(ba + wa * i / 3.0, -0.5 * kPi, 0.5 * kPi);
                double phi = bp + wp * j / 3.0;
                double g = std::abs(gap(alpha, phi));
                if (g < nb) {
                    nb = g;
                    na2 = alpha;
                    np2 = phi;
                }
            }
        ba = na2;
        bp = np2;
        best = nb;
        // keep the next window wider than this round's sampling step so the
        // true minimum cannot escape between rounds
        wa *= 0.45;
        wp *= 0.45;
    }

    double g_ref = gap(ba, bp);
    double rtol = std::max(tol, 1e-10);
    if (std::abs(g_ref) <= rtol) {
        out.kind = TangencyKind::Tangent;
        HoroPoint p = sphere_point(s1, ba, bp);
        // snap coordinates that are pure refinement residue (a pole hit at
        // alpha = pi/2 leaves |xi| ~ sqrt(eps) behind)
        if (std::abs(p.xi) <= 1e-7) p.xi = Complex(0.0, 0.0);
        if (std::abs(p.v) <= 1e-7) p.v = 0.0;
        out.point = p;
        return out;
    }
    if ((any_pos && g_ref < -rtol) || (any_neg && g_ref > rtol)) {
        out.kind = TangencyKind::Overlapping;
        return out;
    }
    out.kind = TangencyKind::Disjoint;
    return out;
}

} // namespace cxhyp
