#pragma once

/**
 * @file morse.hpp
 * @brief Morse-Bott analysis of moment components Phi^xi on the standard
 *        fold: critical sets, Hessians, Bott-degeneracy detection, and
 *        separating-hypersurface tracing.
 *
 * For xi = (a,b) the component is
 *   Phi^xi(x,y,z) = a (z^2 - (x^2+y^2)/2) + b z (x^2+y^2)
 * (the alpha circle direction is suppressed by symmetry). For a != 0 the
 * critical set is the vanishing circle {x=y=z=0}, the normal Hessian at it
 * is diag(-a,-a,2a), and the stable manifold of the circle maps under the
 * fold moment map to a curve tangent to the p1-axis; for a = 0 the critical
 * set is the line {x=y=0} and the normal Hessian diag(2bz,2bz) changes sign
 * at z = 0, so the component is not Morse-Bott.
 */

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "toric/folded.hpp"

namespace toric {

struct XiVector {
    double a = 0;
    double b = 0;
};

inline double moment_component(const XiVector& xi, const Eigen::Vector3d& p) {
    double rho2 = p[0] * p[0] + p[1] * p[1];
    return xi.a * (p[2] * p[2] - 0.5 * rho2) + xi.b * p[2] * rho2;
}

inline Eigen::Vector3d moment_gradient(const XiVector& xi, const Eigen::Vector3d& p) {
    double rho2 = p[0] * p[0] + p[1] * p[1];
    double c = 2 * xi.b * p[2] - xi.a;
    return {c * p[0], c * p[1], 2 * xi.a * p[2] + xi.b * rho2};
}

/// H = [[2bz-a, 0, 2bx], [0, 2bz-a, 2by], [2bx, 2by, 2a]].
inline Eigen::Matrix3d moment_hessian(const XiVector& xi, const Eigen::Vector3d& p) {
    double c = 2 * xi.b * p[2] - xi.a;
    Eigen::Matrix3d h;
    h << c, 0, 2 * xi.b * p[0],
         0, c, 2 * xi.b * p[1],
         2 * xi.b * p[0], 2 * xi.b * p[1], 2 * xi.a;
    return h;
}

/// Max entry deviation between the closed-form Hessian and a central
/// finite-difference Hessian of moment_component.
inline double hessian_fd_check(const XiVector& xi, const Eigen::Vector3d& p, double h = 1e-4) {
    Eigen::Matrix3d fd;
    double f0 = moment_component(xi, p);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i == j) {
                Eigen::Vector3d pp = p, pm = p;
                pp[i] += h;
                pm[i] -= h;
                fd(i, i) = (moment_component(xi, pp) - 2 * f0 + moment_component(xi, pm)) /
                           (h * h);
            } else {
                Eigen::Vector3d a = p, b = p, c = p, d = p;
                a[i] += h; a[j] += h;
                b[i] += h; b[j] -= h;
                c[i] -= h; c[j] += h;
                d[i] -= h; d[j] -= h;
                fd(i, j) = (moment_component(xi, a) - moment_component(xi, b) -
                            moment_component(xi, c) + moment_component(xi, d)) /
                           (4 * h * h);
            }
        }
    }
    return (fd - moment_hessian(xi, p)).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Classification report

enum class CriticalSet { circle, line };  // {x=y=z=0} vs {x=y=0}

struct MorseReport {
    XiVector xi;
    CriticalSet critical_set = CriticalSet::circle;
    bool is_morse_bott = false;
    Eigen::Matrix3d hessian_at_origin;
    int n_negative = 0;  // eigenvalue signature of the normal Hessian at C
    int n_positive = 0;
    // a = 0 only: the normal Hessian eigenvalue 2bz on either side of z = 0,
    // witnessing the sign change that breaks the Morse-Bott condition.
    double normal_eigen_below = 0;
    double normal_eigen_above = 0;
};

inline MorseReport analyze(const XiVector& xi) {
    if (xi.a == 0 && xi.b == 0) throw std::domain_error("analyze: xi must be nonzero");
    MorseReport rep;
    rep.xi = xi;
    rep.hessian_at_origin = moment_hessian(xi, Eigen::Vector3d::Zero());
    if (xi.a != 0) {
        rep.critical_set = CriticalSet::circle;
        rep.is_morse_bott = true;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(rep.hessian_at_origin);
        for (int i = 0; i < 3; ++i) {
            if (es.eigenvalues()[i] < 0) ++rep.n_negative;
            if (es.eigenvalues()[i] > 0) ++rep.n_positive;
        }
    } else {
        rep.critical_set = CriticalSet::line;
        rep.is_morse_bott = false;
        rep.normal_eigen_below = 2 * xi.b * (-1.0);
        rep.normal_eigen_above = 2 * xi.b * (+1.0);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Separating hypersurface

/// Traces the invariant 2-manifold of the vanishing circle that is tangent
/// to {z = 0} (its stable or unstable manifold, by the sign of a) under the
/// flat-metric gradient flow, and maps it through the fold moment map.
/// Returns `samples` image points (p1, p2) ordered outward from the origin.
inline std::vector<std::array<double, 2>> separatrix(const XiVector& xi, int samples = 200) {
    if (xi.a == 0) throw std::domain_error("separatrix: requires a != 0");
    if (samples < 2) throw std::domain_error("separatrix: needs at least 2 samples");

    // By rotational symmetry work in the (rho, z) half-plane. Flowing against
    // the a-dictated direction expands the in-plane directions and contracts
    // z, so the trace converges onto the invariant manifold.
    const double dir = xi.a > 0 ? -1.0 : 1.0;
    const double dt = 1e-3;
    const double rho_max = 1.5;
    const int max_steps = 200000;

    auto vel = [&](const std::array<double, 2>& s) {
        double rho = s[0], z = s[1];
        return std::array<double, 2>{dir * ((2 * xi.b * z - xi.a) * rho),
                                     dir * (2 * xi.a * z + xi.b * rho * rho)};
    };

    std::array<double, 2> s{1e-3, 0.0};
    std::vector<std::array<double, 2>> trace{s};
    int steps = 0;
    while (s[0] < rho_max && steps < max_steps) {
        auto k1 = vel(s);
        auto k2 = vel({s[0] + dt / 2 * k1[0], s[1] + dt / 2 * k1[1]});
        auto k3 = vel({s[0] + dt / 2 * k2[0], s[1] + dt / 2 * k2[1]});
        auto k4 = vel({s[0] + dt * k3[0], s[1] + dt * k3[1]});
        s[0] += dt / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
        s[1] += dt / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
        trace.push_back(s);
        ++steps;
    }
    if (s[0] < rho_max)
        throw std::runtime_error("separatrix: trace did not leave the seed neighborhood");

    std::vector<std::array<double, 2>> image(samples);
    for (int i = 0; i < samples; ++i) {
        std::size_t idx = static_cast<std::size_t>(
            (static_cast<double>(i) / (samples - 1)) * (trace.size() - 1));
        const auto& t = trace[idx];
        image[i] = standard_fold(t[1], t[0] * t[0]);  // Phi_0(rho, z) = phi_0(z, rho^2)
    }
    return image;
}

/// Least-squares slope through the origin of the n image samples closest to
/// the origin; the tangency measure for the b != 0 separatrix.
inline double separatrix_origin_slope(const std::vector<std::array<double, 2>>& image,
                                      int n = 10) {
    std::vector<std::array<double, 2>> pts = image;
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a[0] * a[0] + a[1] * a[1] < b[0] * b[0] + b[1] * b[1];
    });
    double sxy = 0, sxx = 0;
    for (int i = 0; i < n && i < static_cast<int>(pts.size()); ++i) {
        sxy += pts[i][0] * pts[i][1];
        sxx += pts[i][0] * pts[i][0];
    }
    if (sxx == 0) return 0;
    return sxy / sxx;
}

}  // namespace toric
