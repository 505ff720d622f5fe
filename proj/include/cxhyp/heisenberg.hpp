#pragma once

#include "cxhyp/isometry.hpp"

namespace cxhyp {

// Cygan norm |(|xi|^2 + u) - iv|^{1/2}; finite points only.
double cygan_norm(const HoroPoint& p);

// Left-invariant metric: group-law difference at u=0, extended to interior
// points by |xi-xi'|^2 + |u-u'| - i(v-v' + 2 Im(xi conj(xi'))) under the norm.
// Invariant under translations and rotations, scales by r under dilation(r).
double cygan_distance(const HoroPoint& p, const HoroPoint& q);

// An R-circle is the fixed boundary set of an antiholomorphic involution.
// Finite ones are images of the standard circle
//   K = {(r e^{i theta}, v) : r^2 - iv = -e^{2 i theta}}
// under the similarity T_center . dilation(radius) . rotation(phase); the
// straight ones through Infinity are Euclidean lines determined by an anchor
// point and a unit horizontal direction (their v-slope is forced).
struct RCircle {
    enum class Kind { Finite, InfiniteLine };
    Kind kind = Kind::Finite;

    // Finite fields
    Complex center_xi{0.0, 0.0};
    double center_v = 0.0;
    double radius = 1.0;
    double phase = 0.0;

    // InfiniteLine fields
    Complex anchor_xi{0.0, 0.0};
    double anchor_v = 0.0;
    Complex direction{1.0, 0.0};

    static RCircle standard();
    static RCircle finite(Complex center_xi, double center_v, double radius, double phase);
    static RCircle line(Complex anchor_xi, double anchor_v, Complex direction);
};

// The orienting similarity: maps the standard circle (resp. the real axis
// R x {0}) onto c.
Isometry r_circle_frame(const RCircle& c);

// Membership of a finite boundary point, tested in the similarity-normalized
// frame. Infinity lies on straight R-circles only.
bool on_r_circle(const HoroPoint& p, const RCircle& c, double tol = 1e-9);

// The antiholomorphic involution whose boundary fixed-point set is c.
Isometry real_involution(const RCircle& c);

// Chains: boundaries of complex geodesics. Vertical(xi0) is the line
// {xi0} x R plus Infinity; a finite chain of center (a,s) and radius r is the
// affine circle {(a + r e^{i phi}, s + 2 Im(a conj(r e^{i phi})))}.
struct Chain {
    enum class Kind { Vertical, Finite };
    Kind kind = Kind::Vertical;
    Complex center_xi{0.0, 0.0};
    double center_v = 0.0;
    double radius = 1.0;

    static Chain vertical(Complex xi0);
    static Chain finite(Complex center_xi, double center_v, double radius);
};

bool on_chain(const HoroPoint& p, const Chain& c, double tol = 1e-9);

// Cygan sphere S(center, radius) = { x : cygan_distance(center, x) = radius }.
struct HeisSphere {
    Complex center_xi{0.0, 0.0};
    double center_v = 0.0;
    double radius = 1.0;
};

bool on_sphere(const HoroPoint& p, const HeisSphere& s, double tol = 1e-9);

// Angular invariant of an ordered boundary triple,
//   A = arg(-<z0,z1><z1,z2><z2,z0>) in [-pi/2, pi/2].
// Zero exactly on R-circle triples, +-pi/2 exactly on chain triples; invariant
// under holomorphic isometries and negated by antiholomorphic ones.
double cartan_invariant(const HoroPoint& x0, const HoroPoint& x1, const HoroPoint& x2);

enum class TangencyKind { Disjoint, Tangent, Overlapping };

struct Tangency {
    TangencyKind kind = TangencyKind::Disjoint;
    HoroPoint point; // set for Tangent: the common boundary point
};

// Classifies the relative position of two Cygan spheres by sampling the
// first sphere and measuring the signed distance to the second: a sign change
// means overlap, a grazing zero is a tangency (the touching point is refined
// and returned), identical spheres count as overlapping.
Tangency sphere_tangency(const HeisSphere& s1, const HeisSphere& s2, double tol = 1e-9);

} // namespace cxhyp
