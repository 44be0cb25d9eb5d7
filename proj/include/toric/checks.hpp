#pragma once

/**
 * @file checks.hpp
 * @brief Randomized invariant checks for the local models: closedness,
 *        flat-metric self-duality, the moment condition, the glued-chart
 *        seam, the contact suite, and the fold factorization. Seeds are
 *        fixed so every run samples the same points.
 */

#include <random>

#include "toric/forms.hpp"
#include "toric/reeb.hpp"
#include "toric/report.hpp"

namespace toric {

inline Point4 random_model_point(std::mt19937& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2 * M_PI);
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    return {angle(rng), box(rng), box(rng), box(rng)};
}

/// max |d omega_A| by finite differences over n random points.
inline double max_closedness_defect(int n = 100, unsigned seed = 12345) {
    std::mt19937 rng(seed);
    double worst = 0;
    for (int i = 0; i < n; ++i) {
        Point4 p = random_model_point(rng);
        worst = std::max(worst, max_abs(fd_exterior_derivative_2(
                                    [](const Point4& q) { return omega_A(q); }, p)));
    }
    return worst;
}

/// max |*omega_A - omega_A| for the flat metric over n random points.
inline double max_self_duality_defect(int n = 100, unsigned seed = 12345) {
    std::mt19937 rng(seed);
    double worst = 0;
    for (int i = 0; i < n; ++i) {
        TwoForm4 w = omega_A(random_model_point(rng));
        worst = std::max(worst, (hodge_star(w) - w).cwiseAbs().maxCoeff());
    }
    return worst;
}

/// Moment condition for the standard fold torus: i(X_qj) omega_A = -d p_j
/// with p1 = x3^2 - (x1^2+x2^2)/2 and p2 = x3 (x1^2+x2^2). Points with
/// r <= rmin are re-drawn.
inline double max_moment_condition_defect(int n = 100, unsigned seed = 23456,
                                          double rmin = 1e-3) {
    std::mt19937 rng(seed);
    auto p1f = [](const Point4& q) {
        return q.x3 * q.x3 - 0.5 * (q.x1 * q.x1 + q.x2 * q.x2);
    };
    auto p2f = [](const Point4& q) { return q.x3 * (q.x1 * q.x1 + q.x2 * q.x2); };
    double worst = 0;
    int kept = 0;
    while (kept < n) {
        Point4 p = random_model_point(rng);
        if (std::sqrt(p.x1 * p.x1 + p.x2 * p.x2) <= rmin) continue;
        ++kept;
        TwoForm4 w = omega_A(p);
        OneForm4 d1 = contract(w, fold_generator_q1(p)) + fd_gradient(p1f, p);
        OneForm4 d2 = contract(w, fold_generator_q2(p)) + fd_gradient(p2f, p);
        worst = std::max({worst, d1.cwiseAbs().maxCoeff(), d2.cwiseAbs().maxCoeff()});
    }
    return worst;
}

/// Pullback of omega_A across the gluing seam of the omega_B model.
inline double max_seam_defect(int n = 100, unsigned seed = 34567) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    double worst = 0;
    for (int i = 0; i < n; ++i)
        worst = std::max(worst, omega_B_seam_defect(box(rng), box(rng), box(rng)));
    return worst;
}

/// moment_fold factors through the standard fold: Phi_0 = phi_0(z, r^2).
inline double max_fold_factorization_defect(int n = 100, unsigned seed = 45678) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> rr(0.0, 1.5);
    std::uniform_real_distribution<double> zz(-1.5, 1.5);
    std::uniform_real_distribution<double> angle(0.0, 2 * M_PI);
    double worst = 0;
    for (int i = 0; i < n; ++i) {
        CylPoint4 c{angle(rng), rr(rng), angle(rng), zz(rng)};
        auto a = moment_fold(c);
        auto b = standard_fold(c.z, c.r * c.r);
        worst = std::max({worst, std::abs(a[0] - b[0]), std::abs(a[1] - b[1])});
    }
    return worst;
}

/// max |fd d lambda_A - omega_A| over n random points.
inline double max_dlambda_defect(int n = 100, unsigned seed = 56789) {
    std::mt19937 rng(seed);
    double worst = 0;
    for (int i = 0; i < n; ++i) {
        Point4 p = random_model_point(rng);
        TwoForm4 dl =
            fd_exterior_derivative_1([](const Point4& q) { return lambda_A(q); }, p);
        worst = std::max(worst, (dl - omega_A(p)).cwiseAbs().maxCoeff());
    }
    return worst;
}

/// Closed-form contact volume vs the numerically assembled triple wedge.
inline double max_contact_volume_defect(int n = 100, unsigned seed = 56789) {
    std::mt19937 rng(seed);
    double worst = 0;
    for (int i = 0; i < n; ++i) {
        Point4 p = random_model_point(rng);
        worst = std::max(worst, std::abs(contact_volume(p) - contact_volume_numeric(p)));
    }
    return worst;
}

inline ReebState random_sphere_state(std::mt19937& rng, double k = 1.0) {
    std::uniform_real_distribution<double> angle(0.0, 2 * M_PI);
    std::uniform_real_distribution<double> x3d(-0.95, 0.95);
    double x3 = x3d(rng) * std::sqrt(k);
    double r = std::sqrt(k - x3 * x3);
    double beta = angle(rng);
    return {r * std::cos(beta), r * std::sin(beta), x3, angle(rng), k};
}

/// max |lambda_A(X) - 1| over random boundary states.
inline double max_reeb_normalization_defect(int n = 100, unsigned seed = 67890) {
    std::mt19937 rng(seed);
    double worst = 0;
    for (int i = 0; i < n; ++i) {
        ReebState s = random_sphere_state(rng);
        ReebVelocity v = reeb_field(s);
        Point4 p{s.theta, s.x1, s.x2, s.x3};
        OneForm4 l = lambda_A(p);
        double pairing = l[0] * v.dtheta + l[1] * v.dx1 + l[2] * v.dx2 + l[3] * v.dx3;
        worst = std::max(worst, std::abs(pairing - 1.0));
    }
    return worst;
}

/// max |i(X) dlambda_A| on the tangent space of S^1 x S^2, dlambda by
/// finite differences.
inline double max_reeb_kernel_defect(int n = 100, unsigned seed = 67890) {
    std::mt19937 rng(seed);
    double worst = 0;
    for (int i = 0; i < n; ++i) {
        ReebState s = random_sphere_state(rng);
        Point4 p{s.theta, s.x1, s.x2, s.x3};
        ReebVelocity v = reeb_field(s);
        Vec4 x{v.dtheta, v.dx1, v.dx2, v.dx3};
        TwoForm4 dl =
            fd_exterior_derivative_1([](const Point4& q) { return lambda_A(q); }, p);
        OneForm4 c = contract(dl, x);
        // Tangent frame of the boundary: the theta circle plus two vectors
        // orthogonal to the sphere normal.
        Eigen::Vector3d nrm{s.x1, s.x2, s.x3};
        nrm.normalize();
        Eigen::Vector3d any = std::abs(nrm[0]) < 0.9 ? Eigen::Vector3d{1, 0, 0}
                                                     : Eigen::Vector3d{0, 1, 0};
        Eigen::Vector3d t1 = nrm.cross(any).normalized();
        Eigen::Vector3d t2 = nrm.cross(t1);
        double c_theta = c[0];
        double c_t1 = c[1] * t1[0] + c[2] * t1[1] + c[3] * t1[2];
        double c_t2 = c[1] * t2[0] + c[2] * t2[1] + c[3] * t2[2];
        worst = std::max({worst, std::abs(c_theta), std::abs(c_t1), std::abs(c_t2)});
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Packaged suite (the `forms check` subcommand)

struct SuiteResult {
    Report report;
    bool pass = false;
};

inline SuiteResult run_forms_suite() {
    SuiteResult res;
    bool ok = true;
    auto check = [&](const std::string& name, double defect, double tol) {
        bool p = defect <= tol;
        ok = ok && p;
        res.report.add(name, std::string(p ? "pass" : "fail") + " (defect " +
                                 fmt_double(defect) + ", tolerance " + fmt_double(tol) + ")");
    };
    check("closedness_d_omega_A", max_closedness_defect(), 1e-6);
    check("self_duality_flat_metric", max_self_duality_defect(), 1e-12);
    check("moment_condition", max_moment_condition_defect(), 1e-8);
    check("glued_chart_seam", max_seam_defect(), 1e-12);
    check("fold_factorization", max_fold_factorization_defect(), 1e-12);
    check("d_lambda_equals_omega_A", max_dlambda_defect(), 1e-6);
    check("contact_volume_closed_form", max_contact_volume_defect(), 1e-8);
    check("reeb_normalization", max_reeb_normalization_defect(), 1e-10);
    check("reeb_kernel_condition", max_reeb_kernel_defect(), 1e-8);

    LReport l = extract_L([](const Point4& q) { return omega_A(q); }, 0.3);
    Eigen::Matrix3d target = Eigen::Vector3d{1, 1, -2}.asDiagonal();
    double ldefect = (l.L - target).cwiseAbs().maxCoeff();
    bool lpass = ldefect <= 1e-5 && l.symmetry_defect <= 1e-6 && std::abs(l.trace) <= 1e-6 &&
                 l.rank == 3 && l.n_negative == 1 && l.n_positive == 2;
    ok = ok && lpass;
    res.report.add("l_matrix_diag_1_1_m2",
                   std::string(lpass ? "pass" : "fail") + " (defect " + fmt_double(ldefect) +
                       ", rank " + std::to_string(l.rank) + ", signature (" +
                       std::to_string(l.n_negative) + "-, " + std::to_string(l.n_positive) +
                       "+))");
    res.report.add("verdict", ok);
    res.pass = ok;
    return res;
}

}  // namespace toric
