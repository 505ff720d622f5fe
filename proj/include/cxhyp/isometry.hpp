#pragma once

#include "cxhyp/hermitian.hpp"

#include <optional>
#include <vector>

namespace cxhyp {

// An isometry is a form-preserving matrix plus an antiholomorphy flag:
// holomorphic elements act on lifts as z -> m z, antiholomorphic ones as
// z -> m conj(z). Matrices are kept |det| = 1 to stop drift in long products.
struct Isometry {
    Mat3 m = Mat3::Identity();
    bool antiholo = false;
};

// Validates m^* J m = lambda J with lambda > 0 (relative tolerance `tol`)
// and returns the normalized isometry. Throws invalid-input otherwise.
Isometry make_isometry(const Mat3& m, bool antiholo = false, double tol = 1e-9);

Isometry identity_isometry();
bool preserves_form(const Mat3& m, double tol = 1e-9);

// (m1,a1)(m2,a2) = (m1 * sigma^{a1}(m2), a1 xor a2), sigma = entrywise conj.
Isometry compose(const Isometry& a, const Isometry& b);
Isometry inverse(const Isometry& a);

// Action on lifts (named apart from the HoroPoint overload: an unqualified
// call with Eigen arguments would drag std::apply into overload resolution).
Vec3 apply_lift(const Isometry& g, const Vec3& z);
HoroPoint apply(const Isometry& g, const HoroPoint& p);

// --- standard generators -------------------------------------------------

// Left translation by (xi0, v0): (xi,v) -> (xi0+xi, v0+v+2 Im(xi0 conj(xi))).
Isometry heisenberg_translation(Complex xi0, double v0);

// (xi,v) -> (e^{i eta} xi, v); fixes the vertical axis pointwise.
Isometry unitary_rotation(double eta);

// (xi,v) -> (xi/(|xi|^2 - iv), -v/(v^2 + |xi|^4)); order two, swaps 0 and
// Infinity, preserves the unit sphere about the origin.
Isometry heisenberg_inversion();

// (xi,v) -> (r xi, r^2 v); loxodromic with fixed points {0, Infinity}.
Isometry dilation(double r);

// Lift of a real Moebius map r -> (ar+b)/(cr+d) on the boundary real axis to
// the real form of the isometry group, via the symmetric-square representation.
// Pre: ad - bc > 0.
Isometry real_moebius(double a, double b, double c, double d);

// --- classification ------------------------------------------------------

enum class IsometryType { Elliptic, Parabolic, Loxodromic };

struct Classification {
    IsometryType type = IsometryType::Elliptic;
    bool is_identity = false;
    // For antiholomorphic inputs the type describes the square of the element.
    bool antiholomorphic = false;
    // Set when eigenvalue moduli or rank decisions fall near their tolerance
    // thresholds (near-parabolic inputs).
    bool low_confidence = false;
};

Classification classify(const Isometry& g);

// Pre: classify(g) = Loxodromic. Equals 2 ln(max eigenvalue modulus) for the
// |det|=1 representative; infimum of displacement, attained on the axis.
double translation_length(const Isometry& g);

// Fixed points on the boundary sphere: 2 for loxodromic, 1 for parabolic,
// none for elliptic (interior or polar fixed points are not reported, and
// neither are pointwise-fixed chains of boundary-elliptic elements).
// Pre: g holomorphic, not the identity.
std::vector<HoroPoint> fixed_boundary_points(const Isometry& g);

// Attractive (largest eigenvalue modulus) and repelling boundary fixed
// points of a loxodromic element. Pre: classify(g) = Loxodromic.
HoroPoint attractive_fixed_point(const Isometry& g);
HoroPoint repelling_fixed_point(const Isometry& g);

// --- parabolic normal form ----------------------------------------------

// A parabolic element conjugated to the stabilizer of Infinity acts on the
// boundary as xi -> e^{i angle} xi + horizontal (affine) plus a vertical
// translation. For a screw (angle != 0) the invariant vertical axis sits at
// axis_xi and `vertical` is the translation along it; for a straight
// translation (angle == 0) axis_xi is 0 and (horizontal, vertical) are the
// translation components at the origin.
struct ParabolicNormalForm {
    double rotation_angle = 0.0;
    Complex horizontal{0.0, 0.0};
    double vertical = 0.0;
    Complex axis_xi{0.0, 0.0};
    Isometry conjugator; // w = conjugator maps the fixed point to Infinity
};

// Pre: classify(g) = Parabolic (holomorphic). Works for any fixed point; the
// conjugating similarity is recorded so reconstruction is possible.
ParabolicNormalForm parabolic_normal_form(const Isometry& g);

// Rebuilds the isometry from its normal form data (inverse of the above up to
// numerical tolerance).
Isometry reconstruct(const ParabolicNormalForm& nf);

// --- comparison ----------------------------------------------------------

// Phase-canonical matrix representative (det = 1, distinguished entry phase
// reduced), so equal group elements compare equal up to rounding.
Mat3 canonical_matrix(const Isometry& g);

// Frobenius distance of canonical representatives; +inf for mixed flags.
double iso_distance(const Isometry& a, const Isometry& b);

} // namespace cxhyp
