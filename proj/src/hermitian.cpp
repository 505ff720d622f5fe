#include "cxhyp/hermitian.hpp"

#include <cmath>

namespace cxhyp {

Complex herm(const Vec3& z, const Vec3& w) {
    return z(0) * std::conj(w(0)) + z(1) * std::conj(w(1)) - z(2) * std::conj(w(2));
}

PointClass point_class(const Vec3& z, double tol) {
    double n2 = z.squaredNorm();
    if (n2 == 0.0) throw invalid_input("point_class: zero vector");
    double q = herm(z, z).real() / n2; // <z,z> is real by construction
    if (q < -tol) return PointClass::Interior;
    if (q > tol) return PointClass::Exterior;
    return PointClass::Boundary;
}

Vec3 horo_to_projective(const HoroPoint& p) {
    if (p.infinity) return Vec3(Complex(0, 0), Complex(-1, 0), Complex(1, 0));
    if (p.u < 0.0) throw invalid_input("horo_to_projective: negative height u");
    double a = std::norm(p.xi) + p.u;
    return Vec3(p.xi,
                0.5 * Complex(1.0 - a, p.v),
                0.5 * Complex(1.0 + a, -p.v));
}

HoroPoint projective_to_horo(const Vec3& z, double tol, double inf_tol) {
    double n2 = z.squaredNorm();
    if (n2 == 0.0) throw invalid_input("projective_to_horo: zero vector");
    if (herm(z, z).real() > tol * n2)
        throw invalid_input("projective_to_horo: exterior vector has no boundary-adapted coordinates");

    Complex denom = z(1) + z(2);
    // The only closure line with z2+z3 = 0 is (0,-1,1): Infinity.
    if (std::abs(denom) <= inf_tol * std::sqrt(n2)) return HoroPoint::at_infinity();

    Complex xi = z(0) / denom;
    Complex w2 = z(1) / denom;
    double v = 2.0 * w2.imag();
    double u = 1.0 - std::norm(xi) - 2.0 * w2.real();
    if (u < 0.0) u = 0.0; // clamp rounding residue; exterior was rejected above
    return HoroPoint(xi, v, u);
}

Vec3 normalize_projective(const Vec3& z) {
    double n = z.cwiseAbs().maxCoeff();
    if (n == 0.0) throw invalid_input("normalize_projective: zero vector");
    int k = 0;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(z(i)) >= n * (1.0 - 1e-12)) { k = i; break; }
    }
    return z / z(k);
}

double bergman_distance(const Vec3& z, const Vec3& w, double tol) {
    if (point_class(z, tol) != PointClass::Interior || point_class(w, tol) != PointClass::Interior)
        throw invalid_input("bergman_distance: both points must be interior");
    double num = std::norm(herm(z, w)); // <z,w><w,z> = |<z,w>|^2
    double den = herm(z, z).real() * herm(w, w).real();
    double c2 = num / den;
    if (c2 < 1.0) c2 = 1.0; // cosh^2(d/2) >= 1 up to rounding
    return 2.0 * std::acosh(std::sqrt(c2));
}

double bergman_distance(const HoroPoint& x, const HoroPoint& y, double tol) {
    if (x.infinity || y.infinity || x.u <= 0.0 || y.u <= 0.0)
        throw invalid_input("bergman_distance: both points must be interior (u > 0)");
    return bergman_distance(horo_to_projective(x), horo_to_projective(y), tol);
}

double horospherical_path_metric(const HoroPoint& x, const HoroPoint& y, double tol) {
    if (x.infinity || y.infinity)
        throw invalid_input("horospherical_path_metric: finite points required");
    if (x.u <= 0.0 || y.u <= 0.0)
        throw invalid_input("horospherical_path_metric: points must lie on a horosphere (u > 0)");
    if (std::abs(x.u - y.u) > tol * std::max(x.u, y.u))
        throw invalid_input("horospherical_path_metric: mismatched horosphere heights");
    if (std::abs(x.xi) > tol || std::abs(x.v) > tol)
        throw invalid_input("horospherical_path_metric: first point must sit at (0,0,u)");
    double u = x.u;
    double d2 = std::norm(y.xi) / u + y.v * y.v / (4.0 * u * u);
    return std::sqrt(d2);
}

} // namespace cxhyp
