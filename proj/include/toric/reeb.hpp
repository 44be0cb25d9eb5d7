#pragma once

/**
 * @file reeb.hpp
 * @brief Contact form lambda_A on the boundary S^1 x S^2, the Reeb vector
 *        field, closed-orbit classification by the rotation rates R1/R2,
 *        and a conservation-monitored RK4 flow integrator.
 *
 * On the sphere r^2 + x3^2 = k the flow preserves x3 and r^2 and rotates in
 * the (x1,x2)-plane at rate R1 and along the theta circle at rate R2:
 *   R1 = -6 x3 / (k^2 + 3 x3^4),  R2 = -2 (r^2 - 2 x3^2) / (k^2 + 3 x3^4).
 */

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "toric/forms.hpp"
#include "toric/rational.hpp"

namespace toric {

// ---------------------------------------------------------------------------
// Contact form

/// lambda_A = -1/2 (x1^2 + x2^2 - 2 x3^2) dtheta + x2 x3 dx1 - x1 x3 dx2.
inline OneForm4 lambda_A(const Point4& p) {
    return {-0.5 * (p.x1 * p.x1 + p.x2 * p.x2 - 2 * p.x3 * p.x3),
            p.x2 * p.x3, -p.x1 * p.x3, 0.0};
}

/// Closed form of the coefficient of lambda ^ dlambda ^ sum_i x_i dx_i:
/// -( (x1^2+x2^2)(x1^2+x2^2+2x3^2)/2 + 2 x3^4 ).
inline double contact_volume(const Point4& p) {
    double r2 = p.x1 * p.x1 + p.x2 * p.x2;
    double z2 = p.x3 * p.x3;
    return -(0.5 * r2 * (r2 + 2 * z2) + 2 * z2 * z2);
}

/// The same triple wedge assembled numerically (dlambda by finite
/// differences); companion check for contact_volume.
inline double contact_volume_numeric(const Point4& p) {
    TwoForm4 dl = fd_exterior_derivative_1([](const Point4& q) { return lambda_A(q); }, p);
    ThreeForm4 t = wedge(lambda_A(p), dl);
    OneForm4 nu{0.0, p.x1, p.x2, p.x3};
    return wedge(t, nu);
}

// ---------------------------------------------------------------------------
// Reeb vector field

struct ReebState {
    double x1 = 0, x2 = 0, x3 = 0;
    double theta = 0;
    double k = 1;  // sphere level r^2 + x3^2 = k

    double r2() const { return x1 * x1 + x2 * x2; }
    bool on_sphere(double tol = 1e-9) const {
        return k > 0 && std::abs(r2() + x3 * x3 - k) <= tol;
    }

    static ReebState from_x3(double x3, double k) {
        if (k <= 0) throw std::domain_error("reeb: k must be positive");
        double r2 = k - x3 * x3;
        if (r2 < 0) throw std::domain_error("reeb: |x3| exceeds sqrt(k)");
        return {std::sqrt(r2), 0.0, x3, 0.0, k};
    }
};

struct ReebVelocity {
    double dx1 = 0, dx2 = 0, dx3 = 0, dtheta = 0;
};

/// X = (1/f) ((x1^2+x2^2-2x3^2) d/dtheta - 3 x2 x3 d/dx1 + 3 x1 x3 d/dx2),
/// f = -1/2 [ (x1^2+x2^2)(x1^2+x2^2+2x3^2) + 4 x3^4 ]; lambda_A(X) = 1.
inline ReebVelocity reeb_field(const ReebState& s) {
    double r2 = s.r2();
    double z2 = s.x3 * s.x3;
    double f = -0.5 * (r2 * (r2 + 2 * z2) + 4 * z2 * z2);
    if (f == 0) throw std::domain_error("reeb field degenerate (f = 0)");
    return {-3 * s.x2 * s.x3 / f, 3 * s.x1 * s.x3 / f, 0.0, (r2 - 2 * z2) / f};
}

inline double reeb_R1(double x3, double k) {
    return -6 * x3 / (k * k + 3 * x3 * x3 * x3 * x3);
}

inline double reeb_R2(double x3, double k) {
    double r2 = k - x3 * x3;
    return -2 * (r2 - 2 * x3 * x3) / (k * k + 3 * x3 * x3 * x3 * x3);
}

// ---------------------------------------------------------------------------
// Closed-orbit classification

enum class ReebOrbitKind {
    theta_circle_equator,  // x3 = 0: (x1,x2,0) constant, flow along theta
    theta_circle_pole,     // r = 0: flow along theta
    beta_circle,           // r^2 = 2 x3^2: R2 = 0, rotation in the (x1,x2)-plane
    resonant,              // R1/R2 rational
    non_closed
};

struct OrbitClass {
    ReebOrbitKind kind = ReebOrbitKind::non_closed;
    std::optional<Rational> ratio;  // resonant only: R1/R2 as p/q
};

/// Best rational approximation p/q of x with q <= qmax and |x - p/q| <= tol,
/// via continued-fraction convergents.
inline std::optional<Rational> approx_rational(double x, double tol,
                                               std::int64_t qmax = 1000000) {
    double v = x;
    std::int64_t p0 = 1, q0 = 0;  // convergents p/q
    std::int64_t p1 = static_cast<std::int64_t>(std::floor(v)), q1 = 1;
    for (int it = 0; it < 64; ++it) {
        if (std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) <= tol)
            return Rational(p1, q1);
        double frac = v - std::floor(v);
        if (frac < 1e-15) break;
        v = 1.0 / frac;
        double a = std::floor(v);
        if (a > 4e18 / std::max<std::int64_t>(q1, 1)) break;
        std::int64_t ai = static_cast<std::int64_t>(a);
        std::int64_t p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > qmax) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    }
    return std::nullopt;
}

/// Case analysis of the closed Reeb orbits on the sphere r^2 + x3^2 = k.
/// The resonance ratio is R1/R2 = 3 x3 / (r^2 - 2 x3^2).
inline OrbitClass classify_orbit(double x3, double k, double tolerance = 1e-9) {
    if (k <= 0) throw std::domain_error("classify_orbit: k must be positive");
    if (std::abs(x3) > std::sqrt(k) + tolerance)
        throw std::domain_error("classify_orbit: |x3| exceeds sqrt(k)");
    double r2 = std::max(k - x3 * x3, 0.0);
    if (std::abs(x3) <= tolerance) return {ReebOrbitKind::theta_circle_equator, std::nullopt};
    if (r2 <= tolerance) return {ReebOrbitKind::theta_circle_pole, std::nullopt};
    if (std::abs(r2 - 2 * x3 * x3) <= tolerance) return {ReebOrbitKind::beta_circle, std::nullopt};
    double ratio = 3 * x3 / (r2 - 2 * x3 * x3);
    if (auto r = approx_rational(ratio, tolerance)) return {ReebOrbitKind::resonant, r};
    return {ReebOrbitKind::non_closed, std::nullopt};
}

/// Exact-rational version of the case analysis, for rational x3 and k.
inline OrbitClass classify_orbit_exact(const Rational& x3, const Rational& k) {
    if (k.sign() <= 0) throw std::domain_error("classify_orbit: k must be positive");
    Rational r2 = k - x3 * x3;
    if (r2.sign() < 0) throw std::domain_error("classify_orbit: |x3| exceeds sqrt(k)");
    if (x3.is_zero()) return {ReebOrbitKind::theta_circle_equator, std::nullopt};
    if (r2.is_zero()) return {ReebOrbitKind::theta_circle_pole, std::nullopt};
    Rational denom = r2 - Rational(2) * x3 * x3;
    if (denom.is_zero()) return {ReebOrbitKind::beta_circle, std::nullopt};
    return {ReebOrbitKind::resonant, Rational(3) * x3 / denom};
}

// ---------------------------------------------------------------------------
// Flow integration (classical fixed-step RK4)

struct FlowSample {
    double t = 0;
    ReebState state;
    double drift = 0;  // max deviation of x3 and r^2 from their start values
};

struct FlowResult {
    std::vector<FlowSample> trajectory;
    double max_drift_x3 = 0;
    double max_drift_r2 = 0;
    double max_drift_sphere = 0;  // drift of r^2 + x3^2
};

inline FlowResult integrate_flow(const ReebState& s0, double t_end, double dt) {
    if (dt <= 0) throw std::domain_error("integrate_flow: dt must be positive");
    FlowResult res;
    const double x3_0 = s0.x3;
    const double r2_0 = s0.r2();
    const double k_0 = r2_0 + x3_0 * x3_0;

    auto deriv = [](const ReebState& s) {
        ReebVelocity v = reeb_field(s);
        return std::array<double, 4>{v.dx1, v.dx2, v.dx3, v.dtheta};
    };
    auto advance = [](const ReebState& s, const std::array<double, 4>& d, double h) {
        ReebState n = s;
        n.x1 += h * d[0];
        n.x2 += h * d[1];
        n.x3 += h * d[2];
        n.theta += h * d[3];
        return n;
    };

    ReebState s = s0;
    double t = 0;
    auto record = [&]() {
        double drift = std::max(std::abs(s.x3 - x3_0), std::abs(s.r2() - r2_0));
        res.max_drift_x3 = std::max(res.max_drift_x3, std::abs(s.x3 - x3_0));
        res.max_drift_r2 = std::max(res.max_drift_r2, std::abs(s.r2() - r2_0));
        res.max_drift_sphere =
            std::max(res.max_drift_sphere, std::abs(s.r2() + s.x3 * s.x3 - k_0));
        res.trajectory.push_back({t, s, drift});
    };
    record();
    const auto steps = static_cast<std::int64_t>(std::ceil(t_end / dt - 1e-12));
    for (std::int64_t i = 0; i < steps; ++i) {
        double h = std::min(dt, t_end - t);
        auto k1 = deriv(s);
        auto k2 = deriv(advance(s, k1, h / 2));
        auto k3 = deriv(advance(s, k2, h / 2));
        auto k4 = deriv(advance(s, k3, h));
        ReebState n = s;
        n.x1 += h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
        n.x2 += h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
        n.x3 += h / 6 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2]);
        n.theta += h / 6 * (k1[3] + 2 * k2[3] + 2 * k3[3] + k4[3]);
        s = n;
        t += h;
        record();
    }
    return res;
}

}  // namespace toric
