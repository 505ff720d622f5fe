#include "cxhyp/deformation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cxhyp {

namespace {

// Real matrix up to a global phase: rotate the largest entry onto the real
// axis and every other entry must follow.
bool real_up_to_phase(const Mat3& m) {
    double best = 0.0;
    Complex pivot{1.0, 0.0};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double a = std::abs(m(i, j));
            if (a > best) {
                best = a;
                pivot = m(i, j);
            }
        }
    }
    if (best == 0.0) return false;
    Complex phase = pivot / std::abs(pivot);
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            worst = std::max(worst, std::abs(std::imag(m(i, j) / phase)));
    return worst <= 1e-9 * best;
}

bool fixes_axis_endpoints(const Isometry& g) {
    Classification cl = classify(g);
    if (cl.type != IsometryType::Loxodromic || cl.antiholomorphic) return false;
    HoroPoint a = attractive_fixed_point(g);
    HoroPoint r = repelling_fixed_point(g);
    bool one_infinite = a.infinity != r.infinity;
    const HoroPoint& fin = a.infinity ? r : a;
    return one_infinite && cygan_norm(fin) <= 1e-7;
}

void validate_family_side(const std::vector<std::string>& labels,
                          const std::vector<Isometry>& gens, const char* side) {
    if (labels.size() != gens.size())
        throw invalid_input(std::string("bending family: label/generator count mismatch on ") +
                            side);
    for (const Isometry& g : gens) {
        if (g.antiholo)
            throw invalid_input(std::string("bending family: ") + side +
                                " contains an antiholomorphic generator");
        if (!real_up_to_phase(g.m))
            throw invalid_input(std::string("bending family: ") + side +
                                " leaves the real form of the isometry group");
    }
}

void validate_family(const BendingFamily& f) {
    validate_family_side(f.labels1, f.gens1, "factor 1");
    validate_family_side(f.labels2, f.gens2, "factor 2");
    if (f.kind == BendingFamily::Kind::Hnn && f.gens2.size() != 1)
        throw invalid_input("bending family: an HNN family has exactly one stable letter");
    if (!(f.eta_range > 0.0 && f.eta_range <= kPi))
        throw invalid_input("bending family: admissible range must lie in (0, pi]");
    if (!fixes_axis_endpoints(f.axis_generator))
        throw invalid_input(
            "bending family: axis generator must be loxodromic with fixed points 0 and Infinity");
}

std::vector<std::string> joined_labels(const BendingFamily& f) {
    std::vector<std::string> labels = f.labels1;
    labels.insert(labels.end(), f.labels2.begin(), f.labels2.end());
    return labels;
}

void check_bend_params(double eta, double zeta) {
    if (!(zeta > 0.0 && zeta < kPi / 2.0))
        throw invalid_input("bending map: zeta must lie in (0, pi/2)");
    if (!(std::abs(eta) < kPi - 2.0 * zeta))
        throw invalid_input("bending map: eta must lie in (-(pi - 2 zeta), pi - 2 zeta)");
}

double wrap_pi(double a) {
    a = std::fmod(a + kPi, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    return a - kPi;
}

void validate_qf(const QFCurveConfig& c) {
    if (c.k < 4 || c.k % 2 != 0)
        throw config_error("sphere stack: k must be even and at least 4");
    if (std::abs(c.s0 - static_cast<double>(c.k - 2)) > 1e-9)
        throw config_error("sphere stack: unit spheres pinched between the planes force s0 = k - 2");
    if (std::abs(c.s1) > 1e-9)
        throw config_error("sphere stack: the middle tangency sits at s1 = 0");
}

// Chain action sanity for one reflection generator: preserves the vertical
// chain and fixes its two assigned corner heights.
void check_loop_generator(const Isometry& g, double c0, double c1, bool fixes_infinity,
                          const std::string& label) {
    Chain axis = Chain::vertical(Complex(0.0, 0.0));
    const double heights[] = {0.37, -1.91, 2.63, 5.0, -4.4};
    for (double v : heights) {
        HoroPoint q = apply(g, HoroPoint(Complex(0.0, 0.0), v));
        if (!on_chain(q, axis, 1e-7))
            throw config_error("loop condition: generator " + label +
                               " moves the vertical chain off itself");
    }
    for (double corner : {c0, c1}) {
        HoroPoint q = apply(g, HoroPoint(Complex(0.0, 0.0), corner));
        if (q.infinity || cygan_distance(q, HoroPoint(Complex(0.0, 0.0), corner)) > 1e-7)
            throw config_error("loop condition: generator " + label +
                               " does not fix its arc endpoint");
    }
    HoroPoint qi = apply(g, HoroPoint::at_infinity());
    if (qi.infinity != fixes_infinity)
        throw config_error("loop condition: generator " + label +
                           " has the wrong behavior at Infinity");
}

// Point of the top circle at arc offset tau from its pole (0, s0).
HoroPoint qf_pivot(double tau) {
    double theta = kPi / 4.0 + tau;
    double rsq = -std::cos(2.0 * theta); // = sin(2 tau)
    Complex kxi = std::polar(std::sqrt(std::max(rsq, 0.0)), theta);
    double kv = std::sin(2.0 * theta); // = cos(2 tau)
    return HoroPoint(std::polar(1.0, -kPi / 4.0) * kxi, 1.0 + kv);
}

} // namespace

BendingFamily BendingFamily::amalgam(std::vector<std::string> l1, std::vector<Isometry> g1,
                                     std::vector<std::string> l2, std::vector<Isometry> g2,
                                     const Isometry& axis, double eta_range) {
    BendingFamily f;
    f.kind = Kind::Amalgam;
    f.labels1 = std::move(l1);
    f.gens1 = std::move(g1);
    f.labels2 = std::move(l2);
    f.gens2 = std::move(g2);
    f.axis_generator = axis;
    f.eta_range = eta_range;
    validate_family(f);
    // Label rules and inverse accuracy are the presentation's business;
    // surface problems at construction time rather than at the first bend.
    (void)GroupPresentation::from_generators(joined_labels(f), [&] {
        std::vector<Isometry> all = f.gens1;
        all.insert(all.end(), f.gens2.begin(), f.gens2.end());
        return all;
    }());
    return f;
}

BendingFamily BendingFamily::hnn(std::vector<std::string> l1, std::vector<Isometry> g1,
                                 std::string stable_label, const Isometry& stable,
                                 const Isometry& axis, double eta_range) {
    BendingFamily f;
    f.kind = Kind::Hnn;
    f.labels1 = std::move(l1);
    f.gens1 = std::move(g1);
    f.labels2 = {std::move(stable_label)};
    f.gens2 = {stable};
    f.axis_generator = axis;
    f.eta_range = eta_range;
    validate_family(f);
    (void)GroupPresentation::from_generators(joined_labels(f), [&] {
        std::vector<Isometry> all = f.gens1;
        all.push_back(f.gens2[0]);
        return all;
    }());
    return f;
}

GroupPresentation bend(const BendingFamily& f, double eta) {
    validate_family(f);
    if (!(std::abs(eta) < f.eta_range))
        throw invalid_input("bend: eta outside the admissible range");
    std::vector<Isometry> gens = f.gens1;
    if (eta == 0.0) {
        // Verbatim: the base group, bit for bit.
        gens.insert(gens.end(), f.gens2.begin(), f.gens2.end());
        return GroupPresentation::from_generators(joined_labels(f), gens);
    }
    Isometry u = unitary_rotation(eta);
    if (f.kind == BendingFamily::Kind::Amalgam) {
        Isometry uinv = unitary_rotation(-eta);
        for (const Isometry& h : f.gens2) gens.push_back(compose(compose(u, h), uinv));
    } else {
        gens.push_back(compose(u, f.gens2[0]));
    }
    return GroupPresentation::from_generators(joined_labels(f), gens);
}

Complex phi_bend(Complex z, double eta, double zeta) {
    check_bend_params(eta, zeta);
    if (eta == 0.0) return z;
    if (eta < 0.0) return std::conj(phi_bend(std::conj(z), -eta, zeta));
    double r = std::abs(z);
    if (r == 0.0) return z;
    double b = std::arg(z);
    double span = kPi - 2.0 * zeta;
    double out;
    if (std::abs(b) >= kPi - zeta) {
        out = b; // cone about the negative axis: fixed
    } else if (std::abs(b) <= zeta) {
        out = b + eta; // cone about the positive axis: rotated
    } else if (b > 0.0) {
        // [zeta, pi - zeta] -> [zeta + eta, pi - zeta], compressed
        out = zeta + eta + (b - zeta) * (span - eta) / span;
    } else {
        // [-(pi - zeta), -zeta] -> [-(pi - zeta), -zeta + eta], stretched
        out = -(kPi - zeta) + (b + kPi - zeta) * (span + eta) / span;
    }
    return std::polar(r, out);
}

double phi_distortion(Complex z, double eta, double zeta) {
    check_bend_params(eta, zeta);
    if (z == Complex(0.0, 0.0))
        throw invalid_input("bending map distortion: undefined at the origin");
    if (eta == 0.0) return 1.0;
    if (eta < 0.0) return phi_distortion(std::conj(z), -eta, zeta);
    double b = std::arg(z);
    double span = kPi - 2.0 * zeta;
    if (std::abs(b) >= kPi - zeta || std::abs(b) <= zeta) return 1.0;
    if (b > 0.0) return span / (span - eta);
    return (span + eta) / span;
}

HoroPoint elementary_bending(const HoroPoint& p, double eta, double zeta) {
    check_bend_params(eta, zeta);
    if (p.infinity) return p;
    if (p.xi == Complex(0.0, 0.0)) return p; // vertical axis: every slice rotation fixes it
    // Meridian-arc label of p on its Cygan sphere about the origin; the
    // interior term +u keeps the label constant along each bisector fiber.
    Complex s(std::norm(p.xi) + p.u, -p.v);
    double beta = std::arg(p.xi) - 0.5 * std::arg(s);
    double delta = std::arg(phi_bend(std::polar(1.0, beta), eta, zeta)) - beta;
    return HoroPoint(std::polar(1.0, delta) * p.xi, p.v, p.u);
}

GroupPresentation qf_base(const QFCurveConfig& c) {
    validate_qf(c);
    const int n = c.k - 2;

    std::vector<std::string> labels;
    std::vector<Isometry> gens;
    labels.reserve(c.k);
    gens.reserve(c.k);

    labels.push_back("r1");
    gens.push_back(real_involution(RCircle::line(Complex(0.0, 0.0), c.s0, Complex(1.0, 0.0))));
    labels.push_back("r2");
    gens.push_back(real_involution(RCircle::line(Complex(0.0, 0.0), -c.s0, Complex(1.0, 0.0))));

    std::vector<HeisSphere> spheres(n);
    for (int j = 0; j < n; ++j) {
        double h = c.s0 - 1.0 - 2.0 * j;
        double psi = -kPi / 4.0 - static_cast<double>(j) * kPi / 2.0;
        spheres[j] = HeisSphere{Complex(0.0, 0.0), h, 1.0};
        labels.push_back("r" + std::to_string(j + 3));
        gens.push_back(real_involution(RCircle::finite(Complex(0.0, 0.0), h, 1.0, psi)));
    }

    // Contact pattern: plane - sphere - ... - sphere - plane, each contact a
    // single point on the vertical axis.
    if (std::abs((spheres.front().center_v + spheres.front().radius) - c.s0) > 1e-9 ||
        std::abs((spheres.back().center_v - spheres.back().radius) + c.s0) > 1e-9)
        throw config_error("sphere stack: end spheres miss the bounding planes");
    for (int j = 0; j + 1 < n; ++j) {
        Tangency tg = sphere_tangency(spheres[j], spheres[j + 1]);
        if (tg.kind != TangencyKind::Tangent)
            throw config_error("sphere stack: spheres " + std::to_string(j + 3) + " and " +
                               std::to_string(j + 4) + " are not tangent");
        HoroPoint expected(Complex(0.0, 0.0), spheres[j].center_v - 1.0);
        if (tg.point.infinity || cygan_distance(tg.point, expected) > 1e-6)
            throw config_error("sphere stack: tangency point off the vertical axis");
    }

    // Loop condition along the vertical chain: the two line reflections fix
    // Infinity and their plane height; sphere reflection j fixes its two
    // contact heights and swaps the inside/outside arcs.
    check_loop_generator(gens[0], c.s0, c.s0, true, labels[0]);
    check_loop_generator(gens[1], -c.s0, -c.s0, true, labels[1]);
    for (int j = 0; j < n; ++j)
        check_loop_generator(gens[j + 2], spheres[j].center_v + 1.0, spheres[j].center_v - 1.0,
                             false, labels[j + 2]);

    return GroupPresentation::from_generators(std::move(labels), std::move(gens));
}

GroupPresentation qf_deform(const QFCurveConfig& c, double t) {
    validate_qf(c);
    if (!(t >= 0.0 && t < kPi / 2.0))
        throw invalid_input("deformation parameter t must lie in [0, pi/2)");
    GroupPresentation base = qf_base(c);
    if (t == 0.0) return base;
    if (c.k != 4)
        throw config_error("the deformation curve is implemented for the minimal stack k = 4");

    // Pivot: the point of the top circle at arc offset t/4 from its pole
    // (0, s0); its antipode serves the bottom circle.
    HoroPoint p1 = qf_pivot(0.25 * t);
    Complex p1xi = p1.xi;
    double p1v = p1.v;

    // The line directions keep each line tangent to its pivot circle's arc.
    Isometry g1 = real_involution(
        RCircle::line(p1xi, p1v, std::polar(1.0, 0.75 * t)));
    Isometry g2 = real_involution(
        RCircle::line(-p1xi, -p1v, std::polar(1.0, -0.25 * t)));
    Isometry a = unitary_rotation(0.5 * t);
    Isometry g4 = compose(compose(a, base.gens[3]), inverse(a));

    return GroupPresentation::from_generators(base.labels,
                                              {g1, g2, base.gens[2], g4});
}

std::array<HoroPoint, 3> qf_marked_triple(const QFCurveConfig& c, double t) {
    validate_qf(c);
    if (!(t >= 0.0 && t < kPi / 2.0))
        throw invalid_input("deformation parameter t must lie in [0, pi/2)");
    if (c.k != 4)
        throw config_error("the deformation curve is implemented for the minimal stack k = 4");
    // The two involution pivots plus the cusp at infinity.  At t = 0 both
    // pivots sit on the vertical axis, so the triple lies on a chain and the
    // invariant is exactly +pi/2; for t > 0 it moves away at first order in t
    // (the pivot separation grows like sqrt(t) while the twist term stays
    // quadratic), which makes the certificate numerically robust even for
    // small t.
    HoroPoint p1 = qf_pivot(0.25 * t);
    HoroPoint p2(-p1.xi, -p1.v);
    return {p2, p1, HoroPoint::at_infinity()};
}

NonConjugacyReport nonconjugacy_certificate(const MarkedGroup& a, const MarkedGroup& b) {
    if (a.parabolic_marks.size() != b.parabolic_marks.size() ||
        a.triple_marks.size() != b.triple_marks.size())
        throw invalid_input("conjugacy certificate: marked data of the two groups must pair up");
    if (a.parabolic_marks.empty() && a.triple_marks.empty())
        throw invalid_input("conjugacy certificate: at least one marked invariant is required");

    auto screw_angles = [](const MarkedGroup& m) {
        std::vector<double> out;
        for (std::size_t i = 0; i < m.parabolic_marks.size(); ++i) {
            Isometry g = evaluate_word(m.group, m.parabolic_marks[i]);
            Classification cl = classify(g);
            if (cl.antiholomorphic || cl.type != IsometryType::Parabolic)
                throw invalid_input("conjugacy certificate: marked word " +
                                    word_to_string(m.group, m.parabolic_marks[i]) +
                                    " is not holomorphic parabolic");
            out.push_back(parabolic_normal_form(g).rotation_angle);
        }
        return out;
    };

    NonConjugacyReport rep;
    rep.angles_a = screw_angles(a);
    rep.angles_b = screw_angles(b);
    for (const auto& tr : a.triple_marks) rep.cartan_a.push_back(cartan_invariant(tr[0], tr[1], tr[2]));
    for (const auto& tr : b.triple_marks) rep.cartan_b.push_back(cartan_invariant(tr[0], tr[1], tr[2]));

    // A conjugating isometry preserves every mark; an antiholomorphic one
    // negates screw angles and Cartan invariants together. Try both.
    double best = std::numeric_limits<double>::infinity();
    std::string best_detail;
    for (double sign : {1.0, -1.0}) {
        double dev = 0.0;
        std::string detail;
        for (std::size_t i = 0; i < rep.angles_a.size(); ++i) {
            double d = std::abs(wrap_pi(rep.angles_a[i] - sign * rep.angles_b[i]));
            if (d > dev) {
                dev = d;
                std::ostringstream os;
                os << "parabolic mark " << i << ": screw angle " << rep.angles_a[i] << " vs "
                   << rep.angles_b[i];
                detail = os.str();
            }
        }
        for (std::size_t i = 0; i < rep.cartan_a.size(); ++i) {
            double d = std::abs(rep.cartan_a[i] - sign * rep.cartan_b[i]);
            if (d > dev) {
                dev = d;
                std::ostringstream os;
                os << "triple mark " << i << ": Cartan invariant " << rep.cartan_a[i] << " vs "
                   << rep.cartan_b[i];
                detail = os.str();
            }
        }
        if (dev < best) {
            best = dev;
            best_detail = detail;
        }
    }
    rep.deviation = best;
    rep.differ = best > 1e-6;
    rep.detail = rep.differ ? best_detail : "all marked invariants agree within 1e-6";
    return rep;
}

QcObstructionReport qc_obstruction_diagnostic(const QFCurveConfig& c, double t) {
    GroupPresentation g = qf_deform(c, t); // validates c and t
    QcObstructionReport rep;
    rep.source_length = std::sqrt(4.0 * c.s0); // |Delta v| = 4 s0 across one period

    Isometry prod = compose(g.gens[0], g.gens[1]);
    ParabolicNormalForm nf = parabolic_normal_form(prod);
    rep.screw_angle = nf.rotation_angle;
    rep.vertical_translation = nf.vertical;

    double th = std::abs(rep.screw_angle);
    bool trivial = th <= 1e-9;
    for (int j = 0; j <= 10; ++j) {
        double r = std::ldexp(1.0, j); // 1, 2, 4, ..., 1024
        // At angle 0 the conjugation carries the interval family rigidly, so
        // the bound degenerates to the source size itself.
        double bound = trivial ? rep.source_length : 2.0 * r * std::sin(0.5 * th);
        rep.rows.push_back({r, bound});
    }

    double mr = 0.0, mb = 0.0;
    for (const auto& row : rep.rows) {
        mr += row.radius;
        mb += row.bound;
    }
    mr /= rep.rows.size();
    mb /= rep.rows.size();
    double cov = 0.0, var = 0.0, tot = 0.0;
    for (const auto& row : rep.rows) {
        cov += (row.radius - mr) * (row.bound - mb);
        var += (row.radius - mr) * (row.radius - mr);
        tot += (row.bound - mb) * (row.bound - mb);
    }
    rep.slope = var > 0.0 ? cov / var : 0.0;
    if (tot > 0.0) {
        double ssres = 0.0;
        for (const auto& row : rep.rows) {
            double pred = mb + rep.slope * (row.radius - mr);
            ssres += (row.bound - pred) * (row.bound - pred);
        }
        rep.fit_r2 = 1.0 - ssres / tot;
    } else {
        rep.fit_r2 = 1.0;
    }
    return rep;
}

} // namespace cxhyp
