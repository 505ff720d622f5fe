#pragma once

#include "cxhyp/core.hpp"

namespace cxhyp {

// Hermitian form of signature (2,1) on C^3:
//   <z,w> = z1*conj(w1) + z2*conj(w2) - z3*conj(w3)
// Negative lines are points of the complex hyperbolic plane, null lines its
// boundary sphere, positive lines polar points.
Complex herm(const Vec3& z, const Vec3& w);

enum class PointClass { Interior, Boundary, Exterior };

// Sign of <z,z> relative to |z|^2 at tolerance `tol` (relative, default 1e-9).
PointClass point_class(const Vec3& z, double tol = 1e-9);

// Boundary-adapted coordinates: a finite point is (xi in C, v in R) on the
// boundary when u = 0, and an interior point when u > 0; Infinity is the
// distinguished boundary point at height infinity on the vertical axis.
struct HoroPoint {
    bool infinity = false;
    Complex xi{0.0, 0.0};
    double v = 0.0;
    double u = 0.0;

    HoroPoint() = default;
    HoroPoint(Complex xi_, double v_, double u_ = 0.0)
        : infinity(false), xi(xi_), v(v_), u(u_) {}

    static HoroPoint at_infinity() {
        HoroPoint p;
        p.infinity = true;
        return p;
    }
    bool boundary() const { return infinity || u == 0.0; }
};

// Standard lift: (xi,v,u) |-> [xi, (1-|xi|^2-u+iv)/2, (1+|xi|^2+u-iv)/2],
// Infinity |-> (0,-1,1). Satisfies <z,z> = -u.
Vec3 horo_to_projective(const HoroPoint& p);

// Inverse of the lift on the closure (interior + boundary). Errors with
// invalid-input when <z,z> > tol (exterior vector). A vector with
// |z2 + z3| <= inf_tol * |z| maps to Infinity; callers converting
// eigensolver output pass a looser inf_tol to absorb eigenvector noise.
HoroPoint projective_to_horo(const Vec3& z, double tol = 1e-9, double inf_tol = 1e-14);

// Canonical representative of a projective point: largest-modulus component
// rescaled to 1 (ties broken by lowest index within a relative epsilon).
// Used for deduplication and deterministic ordering.
Vec3 normalize_projective(const Vec3& z);

// Distance between two interior points,
//   cosh^2(d/2) = <z,w><w,z> / (<z,z><w,w>).
// Errors with invalid-input unless both points are interior.
double bergman_distance(const HoroPoint& x, const HoroPoint& y, double tol = 1e-9);
double bergman_distance(const Vec3& z, const Vec3& w, double tol = 1e-9);

// Horospherical distance between (0,0,u) and (xi,v,u) on the height-u
// horosphere: d0^2 = |xi|^2/u + v^2/(4u^2). Requires matching heights and the
// first point at the horosphere origin. Related to the ambient distance by
// sinh^2(d/2) = d0^2 + |xi|^4/(4u^2), so d = 2 asinh(d0) on the vertical axis.
double horospherical_path_metric(const HoroPoint& x, const HoroPoint& y, double tol = 1e-9);

} // namespace cxhyp
