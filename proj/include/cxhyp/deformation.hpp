#pragma once

#include "cxhyp/group.hpp"

#include <array>

namespace cxhyp {

// --- bending families -------------------------------------------------------

// A group split along the cyclic subgroup stabilizing the axis (0, Infinity),
// either as an amalgam (two generator lists) or an HNN extension (one list
// plus a stable letter). Bending rotates one side around the axis.
struct BendingFamily {
    enum class Kind { Amalgam, Hnn };
    Kind kind = Kind::Amalgam;

    std::vector<std::string> labels1;
    std::vector<Isometry> gens1;
    std::vector<std::string> labels2; // Hnn: exactly one entry, the stable letter
    std::vector<Isometry> gens2;
    Isometry axis_generator; // loxodromic with fixed points {0, Infinity}
    double eta_range = kPi / 4.0;

    static BendingFamily amalgam(std::vector<std::string> labels1, std::vector<Isometry> gens1,
                                 std::vector<std::string> labels2, std::vector<Isometry> gens2,
                                 const Isometry& axis_generator, double eta_range = kPi / 4.0);
    static BendingFamily hnn(std::vector<std::string> labels1, std::vector<Isometry> gens1,
                             std::string stable_label, const Isometry& stable,
                             const Isometry& axis_generator, double eta_range = kPi / 4.0);
};

// Rotates the second factor by the axis rotation U_eta: amalgam generators h
// become U_eta h U_eta^{-1}, an HNN stable letter becomes U_eta g. eta = 0
// returns the base group verbatim.
GroupPresentation bend(const BendingFamily& f, double eta);

// --- planar bending map -------------------------------------------------------

// Piecewise-rotation homeomorphism of C: identity on the cone about the
// negative real axis (|arg z| >= pi - zeta), rotation by eta on the cone
// about the positive real axis (|arg z| <= zeta), linear interpolation of
// arguments in between. Modulus is always preserved.
// Pre: 0 < zeta < pi/2 and |eta| < pi - 2 zeta.
Complex phi_bend(Complex z, double eta, double zeta);

// Linear distortion of phi_bend: 1 on both cones, the argument-stretching
// factor of the active sector elsewhere.
double phi_distortion(Complex z, double eta, double zeta);

// Extension of phi_bend to the boundary (and, fiberwise, the interior): the
// punctured boundary is foliated by pole-to-pole meridian arcs of the Cygan
// spheres about the origin; the arc through p is labeled by a direction
// angle beta, and the point moves by the axis rotation carrying beta to
// arg phi_bend(e^{i beta}). Fixes the origin, Infinity, and the vertical
// axis; commutes with every dilation.
HoroPoint elementary_bending(const HoroPoint& p, double eta, double zeta);

// --- reflection-group curve ----------------------------------------------------

// Symmetric stack of tangent spheres pinched between the horizontal planes
// at heights +-s0: k-2 unit spheres with consecutive tangencies, the middle
// pair touching at height s1 = 0. Tangency forces s0 = k - 2.
struct QFCurveConfig {
    int k = 4;
    double s0 = 2.0;
    double s1 = 0.0;

    static QFCurveConfig minimal() { return QFCurveConfig{}; }
};

// The base reflection group: one antiholomorphic involution per sphere plus
// two fixing the horizontal boundary lines through (0, +-s0). Its limit set
// lies on the vertical chain.
GroupPresentation qf_base(const QFCurveConfig& c);

// One-parameter deformation: the two line involutions pivot to the points of
// the top/bottom circles at arc offset t/4 from the tangency poles, and the
// lower half of the stack is conjugated by the axis rotation U_{t/2}.
// t = 0 reproduces qf_base exactly; admissible range is [0, pi/2).
GroupPresentation qf_deform(const QFCurveConfig& c, double t);

// The boundary triple tracked along the curve: the two involution pivots and
// the cusp at infinity. At t = 0 it lies on the vertical chain (invariant
// +-pi/2); for t > 0 its Cartan invariant leaves {0, +-pi/2} at first order.
std::array<HoroPoint, 3> qf_marked_triple(const QFCurveConfig& c, double t);

// --- conjugacy certificates -----------------------------------------------------

// A group plus the marked data a conjugation would have to transport:
// parabolic words (their screw rotation angles are conjugacy invariants)
// and boundary triples (their Cartan invariants are).
struct MarkedGroup {
    GroupPresentation group;
    std::vector<Word> parabolic_marks;
    std::vector<std::array<HoroPoint, 3>> triple_marks;
};

struct NonConjugacyReport {
    std::vector<double> angles_a, angles_b; // screw angles per parabolic mark
    std::vector<double> cartan_a, cartan_b; // invariants per triple mark
    bool differ = false;
    double deviation = 0.0; // smallest orientation-adjusted max mismatch
    std::string detail;     // human-readable reason for a DIFFER verdict
};

// Compares marked invariants; a deviation beyond 1e-6 (after allowing one
// global orientation flip, which negates angles and Cartan values) certifies
// that no isometry conjugates a to b respecting the marking.
NonConjugacyReport nonconjugacy_certificate(const MarkedGroup& a, const MarkedGroup& b);

// --- quasiconformal obstruction ---------------------------------------------------

struct QcObstructionRow {
    double radius = 0.0; // distance from the invariant vertical axis
    double bound = 0.0;  // lower bound for the image curve's Cygan length
};

struct QcObstructionReport {
    double screw_angle = 0.0;          // rotation angle of gamma_1,t gamma_2,t
    double vertical_translation = 0.0; // its vertical translation part
    double source_length = 0.0;        // endpoint Cygan distance of the source intervals
    std::vector<QcObstructionRow> rows;
    double slope = 0.0;  // least-squares growth of bound in radius
    double fit_r2 = 1.0; // quality of the linear fit
};

// The computable core of the no-quasiconformal-conjugacy argument: the source
// family of vertical intervals has constant Cygan size, while any conjugating
// map must join translate pairs whose chord 2 r sin(theta/2) grows linearly
// with the distance r from the axis.
QcObstructionReport qc_obstruction_diagnostic(const QFCurveConfig& c, double t);

} // namespace cxhyp
