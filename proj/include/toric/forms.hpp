#pragma once

/**
 * @file forms.hpp
 * @brief The canonical near-symplectic local models on S^1 x D^3 and their
 *        numeric verification toolkit: the form omega_A (and its glued
 *        variant omega_B), the L-matrix extracted at the vanishing locus,
 *        the splitting map q, the contraction solve, the fold moment maps,
 *        the CP^2 moment models with the Fubini-Study form, and the S^1
 *        moments.
 *
 * Differential forms are held as coefficient arrays in the ordered basis
 * (dtheta, dx1, dx2, dx3). Derivative checks use central finite differences
 * with step 1e-5.
 */

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace toric {

struct Point4 {
    double theta = 0;
    double x1 = 0, x2 = 0, x3 = 0;

    std::array<double, 4> coords() const { return {theta, x1, x2, x3}; }
    static Point4 from_coords(const std::array<double, 4>& c) {
        return {c[0], c[1], c[2], c[3]};
    }
};

/// A point of S^1 x D^3 in the cylindrical coordinates (alpha, r, theta, z)
/// of the standard fold; alpha is the circle along the vanishing locus.
struct CylPoint4 {
    double alpha = 0;
    double r = 0;
    double theta = 0;
    double z = 0;

    Point4 cartesian() const {
        return {alpha, r * std::cos(theta), r * std::sin(theta), z};
    }
};

using TwoForm4 = Eigen::Matrix4d;   // antisymmetric coefficients
using OneForm4 = Eigen::Vector4d;
using Vec4 = Eigen::Vector4d;

struct ThreeForm4 {
    double c012 = 0, c013 = 0, c023 = 0, c123 = 0;
};

// ---------------------------------------------------------------------------
// Form algebra in dimension 4

inline TwoForm4 two_form(double a01, double a02, double a03,
                         double a12, double a13, double a23) {
    TwoForm4 m;
    m <<    0,  a01,  a02,  a03,
         -a01,    0,  a12,  a13,
         -a02, -a12,    0,  a23,
         -a03, -a13, -a23,    0;
    return m;
}

inline ThreeForm4 wedge(const OneForm4& l, const TwoForm4& w) {
    auto comp = [&](int i, int j, int k) {
        return l[i] * w(j, k) - l[j] * w(i, k) + l[k] * w(i, j);
    };
    return {comp(0, 1, 2), comp(0, 1, 3), comp(0, 2, 3), comp(1, 2, 3)};
}

/// Volume coefficient of a 3-form wedged with a 1-form.
inline double wedge(const ThreeForm4& t, const OneForm4& n) {
    return -n[0] * t.c123 + n[1] * t.c023 - n[2] * t.c013 + n[3] * t.c012;
}

/// Volume coefficient of the wedge of two 2-forms.
inline double wedge(const TwoForm4& a, const TwoForm4& b) {
    return a(0, 1) * b(2, 3) - a(0, 2) * b(1, 3) + a(0, 3) * b(1, 2) +
           a(2, 3) * b(0, 1) - a(1, 3) * b(0, 2) + a(1, 2) * b(0, 3);
}

inline double pfaffian(const TwoForm4& m) {
    return m(0, 1) * m(2, 3) - m(0, 2) * m(1, 3) + m(0, 3) * m(1, 2);
}

/// Self-dual coefficients (L1, L2, L3) of a 2-form: the components along
/// dtheta dx_i + dx_j dx_k for (i,j,k) cyclic.
inline Eigen::Vector3d self_dual_coefficients(const TwoForm4& m) {
    return {0.5 * (m(0, 1) + m(2, 3)),
            0.5 * (m(0, 2) - m(1, 3)),
            0.5 * (m(0, 3) + m(1, 2))};
}

/// Hodge star for the flat metric, orientation dtheta dx1 dx2 dx3.
inline TwoForm4 hodge_star(const TwoForm4& m) {
    return two_form(m(2, 3), -m(1, 3), m(1, 2), m(0, 3), -m(0, 2), m(0, 1));
}

/// Coefficients of the 1-form i(X)w, i.e. w(X, .).
inline OneForm4 contract(const TwoForm4& w, const Vec4& x) {
    return w.transpose() * x;
}

/// Pullback of a 2-form by a linear change of coordinates with Jacobian j.
inline TwoForm4 pullback(const TwoForm4& w, const Eigen::Matrix4d& j) {
    return j.transpose() * w * j;
}

// ---------------------------------------------------------------------------
// Finite-difference exterior derivatives (central, step 1e-5)

constexpr double kFdStep = 1e-5;

template <class F>  // F: Point4 -> double
inline OneForm4 fd_gradient(const F& f, const Point4& p, double h = kFdStep) {
    OneForm4 g;
    for (int i = 0; i < 4; ++i) {
        auto cp = p.coords(), cm = p.coords();
        cp[i] += h;
        cm[i] -= h;
        g[i] = (f(Point4::from_coords(cp)) - f(Point4::from_coords(cm))) / (2 * h);
    }
    return g;
}

template <class F>  // F: Point4 -> OneForm4
inline TwoForm4 fd_exterior_derivative_1(const F& lambda, const Point4& p, double h = kFdStep) {
    Eigen::Matrix4d d;  // d(i,j) = partial_i lambda_j
    for (int i = 0; i < 4; ++i) {
        auto cp = p.coords(), cm = p.coords();
        cp[i] += h;
        cm[i] -= h;
        d.row(i) = ((lambda(Point4::from_coords(cp)) - lambda(Point4::from_coords(cm))) /
                    (2 * h)).transpose();
    }
    TwoForm4 w;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) w(i, j) = d(i, j) - d(j, i);
    return w;
}

template <class F>  // F: Point4 -> TwoForm4
inline ThreeForm4 fd_exterior_derivative_2(const F& w, const Point4& p, double h = kFdStep) {
    std::array<TwoForm4, 4> dw;  // dw[i] = partial_i w
    for (int i = 0; i < 4; ++i) {
        auto cp = p.coords(), cm = p.coords();
        cp[i] += h;
        cm[i] -= h;
        dw[i] = (w(Point4::from_coords(cp)) - w(Point4::from_coords(cm))) / (2 * h);
    }
    auto comp = [&](int i, int j, int k) {
        return dw[i](j, k) - dw[j](i, k) + dw[k](i, j);
    };
    return {comp(0, 1, 2), comp(0, 1, 3), comp(0, 2, 3), comp(1, 2, 3)};
}

inline double max_abs(const ThreeForm4& t) {
    return std::max({std::abs(t.c012), std::abs(t.c013), std::abs(t.c023), std::abs(t.c123)});
}

// ---------------------------------------------------------------------------
// The model forms

/// omega_A = x1(dth dx1 + dx2 dx3) + x2(dth dx2 + dx3 dx1) - 2x3(dth dx3 + dx1 dx2).
inline TwoForm4 omega_A(const Point4& p) {
    return two_form(p.x1, p.x2, -2 * p.x3, -2 * p.x3, -p.x2, p.x1);
}

/// omega_B evaluated in the covering chart [0, 2pi] x D^3; same coefficients
/// as omega_A with theta reduced mod 2pi. The gluing that distinguishes the
/// model is checked through omega_B_glue / omega_B_seam_defect.
inline TwoForm4 omega_B(const Point4& p) {
    double t = std::fmod(p.theta, 2 * M_PI);
    if (t < 0) t += 2 * M_PI;
    return omega_A({t, p.x1, p.x2, p.x3});
}

/// The gluing map {2pi} x D^3 -> {0} x D^3 of the unoriented model:
/// theta -> theta - 2pi, x1 -> x1, x2 -> -x2, x3 -> -x3.
inline Point4 omega_B_glue(const Point4& p) {
    return {p.theta - 2 * M_PI, p.x1, -p.x2, -p.x3};
}

/// Max coefficient difference between omega at a seam point (theta = 2pi)
/// and the pullback of omega at its glued partner. Zero means phi* Omega = Omega.
inline double omega_B_seam_defect(double x1, double x2, double x3) {
    Point4 upstairs{2 * M_PI, x1, x2, x3};
    Point4 glued = omega_B_glue(upstairs);
    Eigen::Matrix4d j = Eigen::Matrix4d::Identity();
    j(2, 2) = -1;
    j(3, 3) = -1;
    TwoForm4 pulled = pullback(omega_A(glued), j);
    return (pulled - omega_A(upstairs)).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// L-matrix extraction at the vanishing locus

struct LReport {
    Eigen::Matrix3d L;            // of partial derivatives of (L1,L2,L3) in x at x=0
    double symmetry_defect = 0;
    double trace = 0;
    int rank = 0;                 // via singular values, threshold 1e-6
    Eigen::Vector3d eigenvalues;  // of the symmetrized matrix, ascending
    int n_negative = 0;
    int n_positive = 0;
};

/// Differentiates the self-dual coefficients of a 2-form field at (theta, 0).
/// The field must vanish there.
template <class F>  // F: Point4 -> TwoForm4
inline LReport extract_L(const F& field, double theta, double h = kFdStep) {
    if (field(Point4{theta, 0, 0, 0}).cwiseAbs().maxCoeff() > 1e-9)
        throw std::domain_error("extract_L: not on vanishing locus");
    LReport rep;
    for (int j = 0; j < 3; ++j) {
        std::array<double, 4> cp{theta, 0, 0, 0}, cm{theta, 0, 0, 0};
        cp[j + 1] += h;
        cm[j + 1] -= h;
        Eigen::Vector3d d = (self_dual_coefficients(field(Point4::from_coords(cp))) -
                             self_dual_coefficients(field(Point4::from_coords(cm)))) / (2 * h);
        rep.L.col(j) = d;
    }
    rep.symmetry_defect = (rep.L - rep.L.transpose()).cwiseAbs().maxCoeff();
    rep.trace = rep.L.trace();
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(rep.L);
    rep.rank = 0;
    for (int i = 0; i < 3; ++i)
        if (svd.singularValues()[i] > 1e-6) ++rep.rank;
    Eigen::Matrix3d sym = 0.5 * (rep.L + rep.L.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(sym);
    rep.eigenvalues = es.eigenvalues();
    for (int i = 0; i < 3; ++i) {
        if (rep.eigenvalues[i] < -1e-6) ++rep.n_negative;
        if (rep.eigenvalues[i] > 1e-6) ++rep.n_positive;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// The splitting map q on (R^3, omega)

/// For omega = a dx dy + b dy dz + c dx dz and v = (x0,y0,z0):
/// q(v) = a z0 + b x0 - c y0 = omega(v', v'') for any oriented orthogonal
/// pair with |v'| = |v''| = |v|^(1/2).
inline double q_map(const Eigen::Matrix3d& omega, const Eigen::Vector3d& v) {
    double a = omega(0, 1), b = omega(1, 2), c = omega(0, 2);
    return a * v[2] + b * v[0] - c * v[1];
}

// ---------------------------------------------------------------------------
// Contraction solve against omega_A

/// Solves i(X) omega_A = -eta at p. The coefficient matrix A of omega_A
/// satisfies A^2 = -(L1^2+L2^2+L3^2) Id with (L1,L2,L3) = (x1,x2,-2x3),
/// so the inverse is -A / (L1^2+L2^2+L3^2); degenerate only at x = 0.
inline Vec4 solve_contraction(const Point4& p, const OneForm4& eta) {
    double c2 = p.x1 * p.x1 + p.x2 * p.x2 + 4 * p.x3 * p.x3;
    if (c2 == 0) throw std::domain_error("form degenerate on vanishing locus");
    TwoForm4 a = omega_A(p);
    // i(X)w = -eta reads X^T A = -eta^T, hence X^T = eta^T A / c2.
    return (a.transpose() * eta) / c2;
}

// ---------------------------------------------------------------------------
// Moment maps

/// Moment map of the standard fold: (alpha, r, theta, z) -> (z^2 - r^2/2, z r^2).
inline std::array<double, 2> moment_fold(const CylPoint4& p) {
    if (p.r < 0) throw std::domain_error("moment_fold: r must be >= 0");
    return {p.z * p.z - 0.5 * p.r * p.r, p.z * p.r * p.r};
}

/// CP^2 moment map in the affine chart [z1, z2, 1]:
/// scale * (|z1|^2, |z2|^2) / (1 + |z1|^2 + |z2|^2).
inline std::array<double, 2> moment_cp2(std::complex<double> z1, std::complex<double> z2,
                                        double scale = 1.0) {
    double u = std::norm(z1), v = std::norm(z2);
    double d = 1 + u + v;
    return {scale * u / d, scale * v / d};
}

/// The mirrored second model: image scaled and p1 negated,
/// (-scale |z1|^2, scale |z2|^2) / (1 + |z1|^2 + |z2|^2).
inline std::array<double, 2> moment_cp2_mirror(std::complex<double> z1, std::complex<double> z2,
                                               double scale = 2.0) {
    double u = std::norm(z1), v = std::norm(z2);
    double d = 1 + u + v;
    return {-scale * u / d, scale * v / d};
}

/// Fubini-Study form scale * i del delbar log(1+|z1|^2+|z2|^2) as a
/// coefficient matrix in the real coordinates (x1, y1, x2, y2). With this
/// normalization the induced moment image is the triangle with legs `scale`.
inline TwoForm4 fubini_study(std::complex<double> z1, std::complex<double> z2,
                             double scale = 1.0) {
    double u = std::norm(z1), v = std::norm(z2);
    double d2 = (1 + u + v) * (1 + u + v);
    double h11 = (1 + v) / d2;
    double h22 = (1 + u) / d2;
    std::complex<double> h12 = -std::conj(z1) * z2 / d2;
    double re = h12.real(), im = h12.imag();
    // basis (dx1, dy1, dx2, dy2)
    TwoForm4 m = TwoForm4::Zero();
    m(0, 1) = 2 * h11;            // dx1^dy1
    m(2, 3) = 2 * h22;            // dx2^dy2
    m(0, 3) = 2 * re;             // dx1^dy2
    m(2, 1) = 2 * re;             // dx2^dy1
    m(0, 2) = -2 * im;            // dx1^dx2
    m(1, 3) = -2 * im;            // dy1^dy2
    m(1, 0) = -m(0, 1);
    m(3, 2) = -m(2, 3);
    m(3, 0) = -m(0, 3);
    m(1, 2) = -m(2, 1);
    m(2, 0) = -m(0, 2);
    m(3, 1) = -m(1, 3);
    return m * scale;
}

// ---------------------------------------------------------------------------
// S^1 moment local models

enum class S1Moment { phi1, phi2, mixed };

/// Phi1 = z^2 - r^2/2 (trivial stabilizer), Phi2 = z r^2 (S^1 stabilizer),
/// k Phi1 + Phi2 (Z_k stabilizer, oriented splitting).
inline double s1_moment(const CylPoint4& p, int k, S1Moment variant) {
    if (p.r < 0) throw std::domain_error("s1_moment: r must be >= 0");
    double phi1 = p.z * p.z - 0.5 * p.r * p.r;
    double phi2 = p.z * p.r * p.r;
    switch (variant) {
        case S1Moment::phi1: return phi1;
        case S1Moment::phi2: return phi2;
        case S1Moment::mixed: return k * phi1 + phi2;
    }
    throw std::logic_error("s1_moment: bad variant");
}

// ---------------------------------------------------------------------------
// Torus generators of the standard fold model (basis (theta, x1, x2, x3);
// here the first coordinate is the alpha circle). The angle conventions are
// fixed so that omega_A = dp1^dq1 + dp2^dq2 with q1 = alpha and q2 the
// clockwise angle in the (x1,x2) plane, matching i(X) omega = -d(moment).

inline Vec4 fold_generator_q1(const Point4&) { return {1, 0, 0, 0}; }

inline Vec4 fold_generator_q2(const Point4& p) { return {0, p.x2, -p.x1, 0}; }

}  // namespace toric
