#include "cxhyp/isometry.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace cxhyp {

namespace {

// Infinity-snap tolerance for points recovered from eigenvectors: eigensolver
// noise perturbs the z2+z3 coordinate of a fixed point at infinity well above
// the 1e-14 default (observed ~1e-10 relative on conjugated dilations), and an
// unsnapped near-infinity vector decodes to junk with |v| ~ 1e10.
constexpr double kEigenInfTol = 1e-8;

const Mat3& form_matrix() {
    static const Mat3 J = [] {
        Mat3 j = Mat3::Zero();
        j(0, 0) = 1.0;
        j(1, 1) = 1.0;
        j(2, 2) = -1.0;
        return j;
    }();
    return J;
}

Mat3 unit_det_scale(const Mat3& m) {
    double ad = std::abs(m.determinant());
    if (!(ad > 0.0) || !std::isfinite(ad))
        throw invalid_input("isometry: singular or non-finite matrix");
    // Idempotent: a matrix already settled at |det| = 1 is left bit-stable,
    // so serialization round trips and eta = 0 deformations stay verbatim.
    if (std::abs(ad - 1.0) <= 1e-12) return m;
    return m / std::cbrt(ad);
}

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    if (a > kPi) a -= 2.0 * kPi;
    return a;
}

} // namespace

bool preserves_form(const Mat3& m, double tol) {
    if (!m.allFinite()) return false;
    const Mat3& J = form_matrix();
    Mat3 g = m.adjoint() * J * m;
    double lambda = g(0, 0).real();
    double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    if (!(lambda > tol * scale)) return false;
    return (g - lambda * J).cwiseAbs().maxCoeff() <= tol * scale;
}

Isometry make_isometry(const Mat3& m, bool antiholo, double tol) {
    if (!preserves_form(m, tol))
        throw invalid_input("isometry: matrix does not preserve the signature (2,1) form");
    Isometry g;
    g.m = unit_det_scale(m);
    g.antiholo = antiholo;
    return g;
}

Isometry identity_isometry() { return Isometry{}; }

Isometry compose(const Isometry& a, const Isometry& b) {
    Isometry r;
    r.antiholo = a.antiholo != b.antiholo;
    r.m = a.antiholo ? (a.m * b.m.conjugate()).eval() : (a.m * b.m).eval();
    r.m = unit_det_scale(r.m); // keep long products from drifting off |det|=1
    return r;
}

Isometry inverse(const Isometry& a) {
    // For the form-preserving matrix, m^{-1} = J m^* J / lambda; the cofactor
    // inverse is just as accurate at 3x3 and needs no lambda bookkeeping.
    Mat3 mi = a.m.inverse();
    if (a.antiholo) mi = mi.conjugate();
    Isometry r;
    r.m = unit_det_scale(mi);
    r.antiholo = a.antiholo;
    return r;
}

Vec3 apply_lift(const Isometry& g, const Vec3& z) {
    return g.antiholo ? (g.m * z.conjugate()).eval() : (g.m * z).eval();
}

HoroPoint apply(const Isometry& g, const HoroPoint& p) {
    return projective_to_horo(apply_lift(g, horo_to_projective(p)), 1e-7);
}

Isometry heisenberg_translation(Complex xi0, double v0) {
    Complex q(std::norm(xi0), -v0);
    Mat3 m;
    m << Complex(1.0, 0.0), xi0, xi0,
        -std::conj(xi0), Complex(1.0, 0.0) - 0.5 * q, -0.5 * q,
        std::conj(xi0), 0.5 * q, Complex(1.0, 0.0) + 0.5 * q;
    Isometry g;
    g.m = m; // unipotent, det = 1 exactly
    return g;
}

Isometry unitary_rotation(double eta) {
    Mat3 m = Mat3::Identity();
    m(0, 0) = std::polar(1.0, eta);
    Isometry g;
    g.m = unit_det_scale(m);
    return g;
}

Isometry heisenberg_inversion() {
    Mat3 m = Mat3::Identity();
    m(1, 1) = -1.0;
    Isometry g;
    g.m = m;
    return g;
}

Isometry dilation(double r) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw invalid_input("dilation: factor must be positive and finite");
    double p = 0.5 * (1.0 / r + r);
    double q = 0.5 * (1.0 / r - r);
    Mat3 m = Mat3::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = p;
    m(1, 2) = q;
    m(2, 1) = q;
    m(2, 2) = p;
    Isometry g;
    g.m = m; // det = p^2 - q^2 = 1 exactly up to rounding
    return g;
}

Isometry real_moebius(double a, double b, double c, double d) {
    double det = a * d - b * c;
    if (!(det > 0.0) || !std::isfinite(det))
        throw invalid_input("real_moebius: need ad - bc > 0");
    double s = std::sqrt(det);
    a /= s;
    b /= s;
    c /= s;
    d /= s;

    // Symmetric square on the monomial basis (r^2, r, 1) of the boundary
    // real axis, conjugated into lift coordinates by the basis change B that
    // sends (r^2, r, 1) to the standard lift (r, (1-r^2)/2, (1+r^2)/2).
    Eigen::Matrix3d sym;
    sym << a * a, 2.0 * a * b, b * b,
        a * c, a * d + b * c, b * d,
        c * c, 2.0 * c * d, d * d;
    Eigen::Matrix3d basis;
    basis << 0.0, 1.0, 0.0,
        -0.5, 0.0, 0.5,
        0.5, 0.0, 0.5;
    Eigen::Matrix3d basis_inv;
    basis_inv << 0.0, -1.0, 1.0,
        1.0, 0.0, 0.0,
        0.0, 1.0, 1.0;
    Eigen::Matrix3d m = basis * sym * basis_inv;
    return make_isometry(m.cast<Complex>());
}

// --- classification ------------------------------------------------------

namespace {

struct EigenCluster {
    Complex value;            // representative (mean of members)
    int algebraic = 0;        // members in the cluster
    int kernel_dim = 0;       // numerical nullity of (m - value I)
    Mat3 kernel_basis;        // first kernel_dim columns are an ONB
    double rank_margin = 1e9; // smallest ratio distance to the rank cutoff
};

std::vector<EigenCluster> eigen_clusters(const Mat3& m, double cluster_tol, double rank_tol) {
    Eigen::ComplexEigenSolver<Mat3> es(m, /*computeEigenvectors=*/false);
    std::array<Complex, 3> ev{es.eigenvalues()(0), es.eigenvalues()(1), es.eigenvalues()(2)};

    std::array<int, 3> label{0, 1, 2};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(ev[i] - ev[j]) <= cluster_tol) {
                int from = std::max(label[i], label[j]);
                int to = std::min(label[i], label[j]);
                for (auto& l : label)
                    if (l == from) l = to;
            }

    std::vector<EigenCluster> out;
    for (int rep = 0; rep < 3; ++rep) {
        Complex sum = 0.0;
        int count = 0;
        for (int i = 0; i < 3; ++i)
            if (label[i] == rep) {
                sum += ev[i];
                ++count;
            }
        if (count == 0) continue;

        EigenCluster c;
        c.value = sum / static_cast<double>(count);
        c.algebraic = count;

        Mat3 shifted = m - c.value * Mat3::Identity();
        Eigen::JacobiSVD<Mat3> svd(shifted, Eigen::ComputeFullV);
        Eigen::Vector3d sv = svd.singularValues();
        double smax = std::max(sv(0), 1e-300);
        for (int i = 0; i < 3; ++i) {
            double ratio = sv(i) / smax;
            if (ratio <= rank_tol) ++c.kernel_dim;
            double margin = ratio > 0.0 ? std::abs(std::log10(ratio / rank_tol)) : 1e9;
            c.rank_margin = std::min(c.rank_margin, margin);
        }
        c.kernel_basis = svd.matrixV(); // kernel = trailing kernel_dim columns
        out.push_back(c);
    }
    return out;
}

} // namespace

Classification classify(const Isometry& g) {
    Classification c;
    c.antiholomorphic = g.antiholo;
    if (g.antiholo) {
        Classification sq = classify(compose(g, g));
        c.type = sq.type;
        c.is_identity = sq.is_identity;
        c.low_confidence = sq.low_confidence;
        return c;
    }

    Mat3 cm = canonical_matrix(g);
    if ((cm - Mat3::Identity()).cwiseAbs().maxCoeff() <= 1e-9) {
        c.type = IsometryType::Elliptic;
        c.is_identity = true;
        return c;
    }

    // Work on the det = 1 representative, whose inverse is the form-adjoint;
    // the characteristic polynomial is then
    //   chi(t) = t^3 - tau t^2 + conj(tau) t - 1,   tau = tr,
    // and the real function
    //   f(tau) = |tau|^4 - 8 Re(tau^3) + 18 |tau|^2 - 27
    // vanishes exactly on elements with a repeated eigenvalue, is positive on
    // loxodromic elements and negative on regular elliptic ones. The trace is
    // linear in the entries, so f dodges the sqrt-of-noise eigenvalue
    // splitting that defective matrices inflict on spectral methods; elements
    // assembled through large-entry conjugations (measured |f| noise around
    // 2e-12 per unit of entry scale) still land in the right regime.
    const double scale = std::max(1.0, cm.cwiseAbs().maxCoeff());
    const Complex tau = cm.trace();
    const double at = std::abs(tau);
    const double f = at * at * at * at - 8.0 * std::real(tau * tau * tau) +
                     18.0 * at * at - 27.0;
    const double tgrow = std::max(1.0, at / 3.0); // |grad f| ~ |tau|^3 at large trace
    const double f_tol = 3e-9 * scale * tgrow * tgrow * tgrow;

    if (f > f_tol) {
        c.type = IsometryType::Loxodromic;
        c.low_confidence = f < 10.0 * f_tol;
        return c;
    }
    if (f < -f_tol) {
        c.type = IsometryType::Elliptic;
        c.low_confidence = -f < 10.0 * f_tol;
        return c;
    }

    // Repeated-eigenvalue shell. The repeated root of chi is a root of chi',
    // so it is recovered from tau alone; the rank of (cm - lambda I) then
    // separates defective (parabolic) from semisimple (elliptic) elements.
    c.low_confidence = std::abs(f) > 0.1 * f_tol;
    auto chi = [&](Complex t) { return ((t - tau) * t + std::conj(tau)) * t - 1.0; };
    Complex s = std::sqrt(tau * tau - 3.0 * std::conj(tau));
    Complex tp = (tau + s) / 3.0;
    Complex tm = (tau - s) / 3.0;
    Complex lambda = std::abs(chi(tp)) <= std::abs(chi(tm)) ? tp : tm;
    Complex mu = tau - 2.0 * lambda; // the remaining simple root
    int algebraic = std::abs(lambda - mu) <= 1e-4 ? 3 : 2;
    if (algebraic == 3 && std::abs(lambda - mu) > 1e-7)
        c.low_confidence = true; // near the double/triple-root boundary

    // Kernel detection uses an absolute threshold proportional to the entry
    // scale, not a ratio against the largest singular value: conjugation
    // makes (cm - lambda I) anisotropic, with the genuine Jordan direction
    // orders of magnitude below the top singular value yet far above the
    // noise floor.
    constexpr double kRankAbs = 1e-10; // kernel cutoff per unit of entry scale
    Mat3 shifted = cm - lambda * Mat3::Identity();
    Eigen::JacobiSVD<Mat3> svd(shifted);
    Eigen::Vector3d sv = svd.singularValues();
    const double cutoff = kRankAbs * scale;
    int kernel_dim = 0;
    for (int i = 0; i < 3; ++i) {
        if (sv(i) <= cutoff) ++kernel_dim;
        if (sv(i) > 0.0 && std::abs(std::log10(sv(i) / cutoff)) < 1.0)
            c.low_confidence = true; // within 10x of the rank cutoff
    }

    if (kernel_dim == 0) {
        // lambda is not an eigenvalue to working precision: the element is
        // regular but sits too close to the repeated-root locus for f to
        // decide (e.g. a loxodromic of tiny translation length). Fall back
        // to the eigenvalue moduli.
        Eigen::ComplexEigenSolver<Mat3> es(cm, /*computeEigenvectors=*/false);
        double rmax = 0.0;
        for (int i = 0; i < 3; ++i) rmax = std::max(rmax, std::abs(es.eigenvalues()(i)));
        c.type = rmax - 1.0 > 2e-6 * scale ? IsometryType::Loxodromic
                                           : IsometryType::Elliptic;
        c.low_confidence = true;
        return c;
    }

    c.type = kernel_dim < algebraic ? IsometryType::Parabolic : IsometryType::Elliptic;
    return c;
}

double translation_length(const Isometry& g) {
    Classification c = classify(g);
    if (c.type != IsometryType::Loxodromic)
        throw invalid_input("translation_length: element is not loxodromic");
    Mat3 m = g.antiholo ? compose(g, g).m : g.m;
    Eigen::ComplexEigenSolver<Mat3> es(m, false);
    double rmax = 0.0;
    for (int i = 0; i < 3; ++i) rmax = std::max(rmax, std::abs(es.eigenvalues()(i)));
    double len = 2.0 * std::log(rmax);
    return g.antiholo ? 0.5 * len : len;
}

std::vector<HoroPoint> fixed_boundary_points(const Isometry& g) {
    if (g.antiholo)
        throw invalid_input("fixed_boundary_points: holomorphic input required");
    Classification cls = classify(g);
    if (cls.is_identity)
        throw invalid_input("fixed_boundary_points: identity fixes everything");

    constexpr double kNullTol = 1e-8;
    const double scale = std::max(1.0, g.m.cwiseAbs().maxCoeff());
    std::vector<Vec3> candidates;
    for (const auto& cl : eigen_clusters(g.m, 1e-6 * scale, 1e-5)) {
        if (cl.kernel_dim == 1) {
            candidates.push_back(cl.kernel_basis.col(2));
        } else if (cl.kernel_dim == 2) {
            if (cl.algebraic <= 2) continue; // pointwise-fixed chain, not reported
            // Defective triple eigenvalue with a plane of eigenvectors: the
            // restriction of the form to the plane is degenerate and its
            // radical is the unique fixed boundary line.
            Vec3 b1 = cl.kernel_basis.col(1);
            Vec3 b2 = cl.kernel_basis.col(2);
            Eigen::Matrix2cd h;
            h << herm(b1, b1), herm(b2, b1),
                herm(b1, b2), herm(b2, b2);
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es2(h);
            int k = std::abs(es2.eigenvalues()(0)) <= std::abs(es2.eigenvalues()(1)) ? 0 : 1;
            Eigen::Vector2cd dir = es2.eigenvectors().col(k);
            candidates.push_back(dir(0) * b1 + dir(1) * b2);
        }
        // kernel_dim == 3 is the identity, excluded above.
    }

    std::vector<HoroPoint> out;
    std::vector<Vec3> kept;
    for (const auto& z : candidates) {
        Vec3 zn = z.normalized();
        if (std::abs(herm(zn, zn).real()) > kNullTol) continue;
        bool dup = false;
        for (const auto& w : kept)
            if (std::abs(1.0 - std::abs(w.dot(zn))) <= 1e-8) {
                dup = true;
                break;
            }
        if (dup) continue;
        kept.push_back(zn);
        out.push_back(projective_to_horo(zn, 1e-6, kEigenInfTol));
    }
    return out;
}

namespace {

HoroPoint extremal_fixed_point(const Isometry& g, bool largest) {
    Isometry h = g.antiholo ? compose(g, g) : g;
    if (classify(h).type != IsometryType::Loxodromic)
        throw invalid_input("fixed points: element is not loxodromic");
    Eigen::ComplexEigenSolver<Mat3> es(h.m, /*computeEigenvectors=*/true);
    int k = 0;
    double bestmod = std::abs(es.eigenvalues()(0));
    for (int i = 1; i < 3; ++i) {
        double mod = std::abs(es.eigenvalues()(i));
        if (largest ? (mod > bestmod) : (mod < bestmod)) {
            bestmod = mod;
            k = i;
        }
    }
    Vec3 z = es.eigenvectors().col(k);
    return projective_to_horo(z, 1e-6, kEigenInfTol);
}

} // namespace

HoroPoint attractive_fixed_point(const Isometry& g) {
    return extremal_fixed_point(g, true);
}

HoroPoint repelling_fixed_point(const Isometry& g) {
    return extremal_fixed_point(g, false);
}

ParabolicNormalForm parabolic_normal_form(const Isometry& g) {
    if (g.antiholo)
        throw invalid_input("parabolic_normal_form: holomorphic input required");
    if (classify(g).type != IsometryType::Parabolic)
        throw invalid_input("parabolic_normal_form: element is not parabolic");

    std::vector<HoroPoint> fixed = fixed_boundary_points(g);
    if (fixed.empty())
        throw invalid_input("parabolic_normal_form: no fixed boundary point found");
    HoroPoint p = fixed.front();

    ParabolicNormalForm nf;
    nf.conjugator = identity_isometry();
    if (!p.infinity)
        nf.conjugator = compose(heisenberg_inversion(),
                                inverse(heisenberg_translation(p.xi, p.v)));
    Isometry h = compose(nf.conjugator, compose(g, inverse(nf.conjugator)));

    // h fixes Infinity, so it acts on the boundary as
    //   (xi, v) -> (e^{i t} xi + xi0, v + v0 + 2 Im(xi0 conj(e^{i t} xi))).
    HoroPoint q0 = apply(h, HoroPoint(Complex(0, 0), 0.0));
    HoroPoint q1 = apply(h, HoroPoint(Complex(1, 0), 0.0));
    if (q0.infinity || q1.infinity)
        throw invalid_input("parabolic_normal_form: conjugation did not fix Infinity");
    Complex xi0 = q0.xi;
    Complex rot = q1.xi - xi0;

    if (std::abs(rot - Complex(1.0, 0.0)) <= 1e-9) {
        nf.rotation_angle = 0.0;
        nf.horizontal = xi0;
        nf.vertical = q0.v;
        nf.axis_xi = Complex(0.0, 0.0);
        return nf;
    }

    nf.rotation_angle = std::arg(rot);
    nf.axis_xi = xi0 / (Complex(1.0, 0.0) - rot);
    Isometry t = heisenberg_translation(nf.axis_xi, 0.0);
    HoroPoint axis_image = apply(compose(inverse(t), compose(h, t)),
                                 HoroPoint(Complex(0, 0), 0.0));
    nf.horizontal = Complex(0.0, 0.0);
    nf.vertical = axis_image.v;
    return nf;
}

Isometry reconstruct(const ParabolicNormalForm& nf) {
    Isometry core = compose(heisenberg_translation(nf.horizontal, nf.vertical),
                            unitary_rotation(nf.rotation_angle));
    Isometry t = heisenberg_translation(nf.axis_xi, 0.0);
    Isometry h = compose(t, compose(core, inverse(t)));
    return compose(inverse(nf.conjugator), compose(h, nf.conjugator));
}

Mat3 canonical_matrix(const Isometry& g) {
    Mat3 m = unit_det_scale(g.m);
    Complex det = m.determinant(); // unit modulus
    m *= std::pow(det, -1.0 / 3.0); // principal root: det becomes exactly 1

    // Remaining gauge freedom is a cube root of unity; fix it by rotating the
    // largest-modulus entry as close to the positive real axis as possible.
    int bi = 0, bj = 0;
    double best = -1.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double a = std::abs(m(i, j));
            if (a > best * (1.0 + 1e-12)) {
                best = a;
                bi = i;
                bj = j;
            }
        }
    double phi = std::arg(m(bi, bj));
    int kbest = 0;
    double abest = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k) {
        double cand = std::abs(wrap_angle(phi + 2.0 * kPi * k / 3.0));
        if (cand < abest - 1e-15) {
            abest = cand;
            kbest = k;
        }
    }
    if (kbest != 0) m *= std::polar(1.0, 2.0 * kPi * kbest / 3.0);
    return m;
}

double iso_distance(const Isometry& a, const Isometry& b) {
    if (a.antiholo != b.antiholo) return std::numeric_limits<double>::infinity();
    return (canonical_matrix(a) - canonical_matrix(b)).norm();
}

} // namespace cxhyp
