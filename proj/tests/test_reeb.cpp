#include <catch_amalgamated.hpp>
#include <random>

#include "toric/checks.hpp"
#include "toric/reeb.hpp"

using namespace toric;
using Catch::Matchers::WithinAbs;

TEST_CASE("lambda_A coefficients") {
    CHECK(lambda_A({0.3, 0, 0, 0}).isZero(0));
    OneForm4 l = lambda_A({0.3, 1, 0, 0});
    CHECK(l[0] == -0.5);
    CHECK(l[1] == 0.0);
    CHECK(l[2] == 0.0);
    CHECK(l[3] == 0.0);
}

TEST_CASE("d lambda_A equals omega_A") {
    CHECK(max_dlambda_defect() <= 1e-6);
}

TEST_CASE("contact volume closed form") {
    CHECK(contact_volume({0.1, 1, 0, 0}) == -0.5);
    CHECK(contact_volume({0.1, 0, 0, 1}) == -2.0);
    CHECK(contact_volume({0.1, 0, 0, 0}) == 0.0);
    CHECK(max_contact_volume_defect() <= 1e-8);
}

TEST_CASE("reeb field values") {
    ReebVelocity v = reeb_field({1, 0, 0, 0.2, 1});
    CHECK_THAT(v.dtheta, WithinAbs(-2.0, 1e-15));
    CHECK(v.dx1 == 0.0);
    CHECK(v.dx2 == 0.0);
    CHECK(v.dx3 == 0.0);

    // poles: flow purely along theta
    ReebVelocity pole = reeb_field({0, 0, 1, 0.0, 1});
    CHECK(pole.dx1 == 0.0);
    CHECK(pole.dx2 == 0.0);
    CHECK(pole.dtheta != 0.0);

    // beta circles: r^2 = 2 x3^2 kills the theta rate
    double x3 = 1.0 / std::sqrt(3.0);
    ReebState beta = ReebState::from_x3(x3, 1.0);
    ReebVelocity bv = reeb_field(beta);
    CHECK_THAT(bv.dtheta, WithinAbs(0.0, 1e-15));
    CHECK(std::abs(bv.dx2) > 0.1);
}

TEST_CASE("reeb normalization and kernel condition") {
    CHECK(max_reeb_normalization_defect() <= 1e-10);
    CHECK(max_reeb_kernel_defect() <= 1e-8);
}

TEST_CASE("orbit classification special cases") {
    CHECK(classify_orbit(0.0, 1.0).kind == ReebOrbitKind::theta_circle_equator);
    CHECK(classify_orbit(1.0, 1.0).kind == ReebOrbitKind::theta_circle_pole);
    CHECK(classify_orbit(-1.0, 1.0).kind == ReebOrbitKind::theta_circle_pole);
    double x3 = std::sqrt(1.0 / 3.0);
    CHECK(classify_orbit(x3, 1.0).kind == ReebOrbitKind::beta_circle);
    CHECK(classify_orbit(std::sqrt(4.0 / 3.0), 4.0).kind == ReebOrbitKind::beta_circle);
}

TEST_CASE("resonant example x3 = 1/3, k = 1") {
    OrbitClass exact = classify_orbit_exact(Rational(1, 3), Rational(1));
    REQUIRE(exact.kind == ReebOrbitKind::resonant);
    REQUIRE(exact.ratio.has_value());
    CHECK(*exact.ratio == Rational(3, 2));

    OrbitClass fl = classify_orbit(1.0 / 3.0, 1.0, 1e-9);
    REQUIRE(fl.kind == ReebOrbitKind::resonant);
    REQUIRE(fl.ratio.has_value());
    CHECK(*fl.ratio == Rational(3, 2));
}

TEST_CASE("classification mirrors under x3 negation") {
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> d(0.05, 0.9);
    for (int i = 0; i < 50; ++i) {
        double x3 = d(rng);
        OrbitClass a = classify_orbit(x3, 1.0, 1e-9);
        OrbitClass b = classify_orbit(-x3, 1.0, 1e-9);
        CHECK(a.kind == b.kind);
        if (a.ratio && b.ratio) CHECK(*a.ratio == -*b.ratio);
    }
    // exact arithmetic version
    OrbitClass p = classify_orbit_exact(Rational(1, 3), Rational(1));
    OrbitClass m = classify_orbit_exact(Rational(-1, 3), Rational(1));
    CHECK(*p.ratio == -*m.ratio);
}

TEST_CASE("rational approximation by continued fractions") {
    auto half = approx_rational(0.5, 1e-12);
    REQUIRE(half.has_value());
    CHECK(*half == Rational(1, 2));

    auto third = approx_rational(1.0 / 3.0, 1e-12);
    REQUIRE(third.has_value());
    CHECK(*third == Rational(1, 3));

    // the golden ratio is the worst-approximable number: no denominator
    // below the cap gets within 1e-15
    double phi = 0.5 * (1 + std::sqrt(5.0));
    CHECK_FALSE(approx_rational(phi, 1e-15).has_value());

    auto neg = approx_rational(-2.75, 1e-12);
    REQUIRE(neg.has_value());
    CHECK(*neg == Rational(-11, 4));
}

TEST_CASE("classifier honors a tight tolerance") {
    // pick x3 so the rotation ratio is irrational; with a tight tolerance
    // and the denominator cap the orbit classifies as non-closed
    OrbitClass c = classify_orbit(0.37, 1.0, 1e-15);
    CHECK(c.kind == ReebOrbitKind::non_closed);
}

TEST_CASE("flow conserves x3 and r^2") {
    std::mt19937 rng(73);
    for (int i = 0; i < 4; ++i) {
        ReebState s0 = random_sphere_state(rng);
        FlowResult res = integrate_flow(s0, 2.0, 1e-3);
        CHECK(res.max_drift_x3 <= 1e-8);
        CHECK(res.max_drift_r2 <= 1e-8);
        CHECK(res.max_drift_sphere <= 1e-8);
    }
}

TEST_CASE("zero-time flow returns the initial sample") {
    ReebState s0 = ReebState::from_x3(0.25, 1.0);
    FlowResult res = integrate_flow(s0, 0.0, 1e-3);
    REQUIRE(res.trajectory.size() == 1);
    CHECK(res.trajectory[0].drift == 0.0);
    CHECK(res.trajectory[0].state.x3 == s0.x3);
}

TEST_CASE("beta circle closes after one predicted period") {
    double x3 = 1.0 / std::sqrt(3.0);
    ReebState s0 = ReebState::from_x3(x3, 1.0);
    double period = 2 * M_PI / std::abs(reeb_R1(x3, 1.0));
    FlowResult res = integrate_flow(s0, period, 1e-3);
    const ReebState& end = res.trajectory.back().state;
    CHECK(std::abs(end.x1 - s0.x1) <= 1e-4);
    CHECK(std::abs(end.x2 - s0.x2) <= 1e-4);
    CHECK(std::abs(end.x3 - s0.x3) <= 1e-4);
}

TEST_CASE("integrator rate matches the closed-form R1, R2") {
    std::mt19937 rng(79);
    std::uniform_real_distribution<double> d(-0.8, 0.8);
    for (int i = 0; i < 10; ++i) {
        double x3 = d(rng);
        ReebState s0 = ReebState::from_x3(x3, 1.0);
        FlowResult res = integrate_flow(s0, 1.0, 1e-3);
        const ReebState& end = res.trajectory.back().state;
        double beta_end = std::atan2(end.x2, end.x1);
        double expected_beta = reeb_R1(x3, 1.0) * 1.0;
        // compare angles modulo 2 pi
        double diff = std::remainder(beta_end - expected_beta, 2 * M_PI);
        CHECK(std::abs(diff) <= 1e-6);
        double theta_expected = reeb_R2(x3, 1.0) * 1.0;
        CHECK_THAT(end.theta, WithinAbs(theta_expected, 1e-6));
    }
}
