#include <catch_amalgamated.hpp>
#include <random>

#include "helpers.hpp"
#include "toric/assembly.hpp"

using namespace toric;
using toric_test::random_aff2z;

TEST_CASE("collapse labels follow the boundary rules") {
    FoldedPolygon tri = FoldedPolygon::from_delzant(
        {{{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(0), Rational(1)}}});

    OrbitLabel inside = collapse_label(tri, {Rational(1, 4), Rational(1, 4)});
    CHECK(inside.kind == OrbitKind::free_t2);

    OrbitLabel edge = collapse_label(tri, {Rational(1, 2), Rational(0)});
    CHECK(edge.kind == OrbitKind::circle);
    CHECK(edge.stabilizer == IntVec2{0, 1});

    OrbitLabel corner = collapse_label(tri, {Rational(0), Rational(0)});
    CHECK(corner.kind == OrbitKind::fixed);

    CHECK_THROWS_AS(collapse_label(tri, {Rational(5), Rational(5)}), std::domain_error);

    FoldedPolygon ex = cp2cp2_polygon();
    OrbitLabel fold = collapse_label(ex, {Rational(0), Rational(1, 2)});
    CHECK(fold.kind == OrbitKind::circle);
    CHECK(fold.stabilizer == IntVec2{1, 0});
    // the invariantly defined direction: the chart image of the model's
    // boundary stabilizer (0,1)
    AffineMapZ chart{{0, -1, 1, 0}, {Rational(0), Rational(1, 2)}};
    CHECK(fold.stabilizer == normalize_direction(chart.linear * IntVec2{0, 1}));

    OrbitLabel hyp = collapse_label(ex, {Rational(1, 2), Rational(1, 2)});
    CHECK(hyp.kind == OrbitKind::circle);
    CHECK(hyp.stabilizer == IntVec2{1, 1});
}

TEST_CASE("collapse labels are equivariant under Aff(2,Z)") {
    FoldedPolygon ex = cp2cp2_polygon();
    std::vector<RatVec2> probes{{Rational(1, 4), Rational(1, 4)},   // interior
                                {Rational(0), Rational(1, 2)},      // fold
                                {Rational(-1, 2), Rational(0)},     // bottom edge
                                {Rational(1, 2), Rational(1, 2)},   // hypotenuse
                                {Rational(1), Rational(0)}};        // corner
    std::mt19937 rng(97);
    for (int trial = 0; trial < 60; ++trial) {
        AffineMapZ t = random_aff2z(rng);
        FoldedPolygon moved = transform_polygon(ex, t);
        for (const auto& p : probes) {
            OrbitLabel before = collapse_label(ex, p);
            OrbitLabel after = collapse_label(moved, apply_affine(t, p));
            CHECK(before.kind == after.kind);
            if (before.kind == OrbitKind::circle)
                CHECK(after.stabilizer ==
                      normalize_direction(transport_stabilizer(t.linear, before.stabilizer)));
        }
    }
}

TEST_CASE("chart regions describe the cut models") {
    AssembledExample e = build_cp2cp2_example();
    REQUIRE(e.charts.size() == 4);
    CHECK(e.chart("M_A").contains(0.3, 0.5));
    CHECK_FALSE(e.chart("M_A").contains(0.2, 0.2));   // inside the removed ball
    CHECK_FALSE(e.chart("M_A").contains(-0.1, 0.8));  // wrong side
    CHECK(e.chart("M_B").contains(-0.3, 0.5));
    CHECK(e.chart("M_C").contains(0.0, 0.2));
    CHECK_FALSE(e.chart("M_C").contains(0.0, 0.5));
    CHECK(e.chart("M_D").contains(0.1, 0.4));
    CHECK_FALSE(e.chart("M_D").contains(0.0, 0.6));  // on the folded ray
    CHECK(e.chart("M_D").contains(0.05, 0.6));
}

TEST_CASE("each chart parametrization inverts its moment map") {
    AssembledExample e = build_cp2cp2_example();
    struct Probe {
        const char* chart;
        double p1, p2;
    };
    std::vector<Probe> probes{{"M_A", 0.3, 0.5},  {"M_A", 0.65, 0.05}, {"M_B", -0.3, 0.5},
                              {"M_B", -0.1, 0.7}, {"M_C", 0.1, 0.2},   {"M_C", -0.4, 0.3},
                              {"M_D", 0.1, 0.4},  {"M_D", -0.2, 0.45}, {"M_D", 0.3, 0.3}};
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> ang(0.0, 2 * M_PI);
    for (const auto& pr : probes) {
        const ChartModel& c = e.chart(pr.chart);
        REQUIRE(c.contains(pr.p1, pr.p2));
        for (int i = 0; i < 5; ++i) {
            double q1 = ang(rng), q2 = ang(rng);
            auto internal = c.param(pr.p1, q1, pr.p2, q2);
            auto m = c.moment(internal);
            CHECK(std::abs(m[0] - pr.p1) <= 1e-12);
            CHECK(std::abs(m[1] - pr.p2) <= 1e-12);
        }
    }
}

TEST_CASE("every chart pulls its form back to dp^dq") {
    AssembledExample e = build_cp2cp2_example();
    struct Probe {
        const char* chart;
        double p1, p2;
    };
    std::vector<Probe> probes{{"M_A", 0.3, 0.5},  {"M_B", -0.3, 0.5}, {"M_C", 0.1, 0.2},
                              {"M_D", 0.1, 0.4},  {"M_D", -0.2, 0.45}};
    TwoForm4 target = standard_action_angle_form();
    std::mt19937 rng(103);
    std::uniform_real_distribution<double> ang(0.5, 5.5);
    for (const auto& pr : probes) {
        const ChartModel& c = e.chart(pr.chart);
        for (int i = 0; i < 3; ++i) {
            TwoForm4 back = chart_pullback(c, pr.p1, ang(rng), pr.p2, ang(rng));
            CHECK((back - target).cwiseAbs().maxCoeff() <= 1e-9);
        }
    }
}

TEST_CASE("overlap checks pass on the patching strips") {
    AssembledExample e = build_cp2cp2_example();
    OverlapReport ad = verify_overlap(e.chart("M_A"), e.chart("M_D"), e.overlaps[0], 1500);
    CAPTURE(ad.max_form_defect, ad.max_moment_defect, ad.checked, ad.skipped);
    CHECK(ad.pass);
    CHECK(ad.checked > 200);

    OverlapReport cd = verify_overlap(e.chart("M_C"), e.chart("M_D"), e.overlaps[2], 1500);
    CHECK(cd.pass);
    CHECK(cd.checked > 200);

    OverlapReport bc = verify_overlap(e.chart("M_B"), e.chart("M_C"), e.overlaps[1], 1500);
    CHECK(bc.pass);
}

TEST_CASE("mis-scaled second model fails the overlap check") {
    AssembledExample e = build_cp2cp2_example();
    ChartModel bad = make_chart_B(1.0);  // moment pretends scale 1, form is still 2 w_FS
    OverlapReport rep = verify_overlap(bad, e.chart("M_D"), e.overlaps[1], 400);
    CHECK_FALSE(rep.pass);
    CHECK(rep.max_form_defect > 0.5);  // the factor-2 mismatch is structural
}

TEST_CASE("the assembled example has the advertised shape") {
    AssembledExample e = build_cp2cp2_example();
    CHECK(e.charts.size() == 4);
    CHECK(e.overlaps.size() == 3);
    CHECK(validate_folded_polygon(e.polygon).pass);
    CHECK(euler_characteristic(e.polygon) == 4);
}

TEST_CASE("interior points are covered by at least one chart") {
    AssembledExample e = build_cp2cp2_example();
    int tested = 0;
    for (int i = -32; i <= 16; ++i) {
        for (int j = 0; j <= 32; ++j) {
            RatVec2 q{Rational(i, 16), Rational(j, 16)};
            if (classify_point(e.polygon, q).cls != PointClass::interior) continue;
            ++tested;
            bool covered = false;
            for (const auto& c : e.charts)
                if (c.contains(q.x.to_double(), q.y.to_double())) covered = true;
            CHECK(covered);
        }
    }
    CHECK(tested > 100);
}

TEST_CASE("patch topology report finds the standard collapse directions") {
    AssembledExample e = build_cp2cp2_example();
    PatchReport rep = patch_topology_report(e);
    CHECK(rep.bottom_edge.kind == OrbitKind::circle);
    CHECK(rep.bottom_edge.stabilizer == IntVec2{0, 1});
    CHECK(rep.fold_edge.kind == OrbitKind::circle);
    CHECK(rep.fold_edge.stabilizer == IntVec2{1, 0});
    CHECK(rep.directions_primitive);
    CHECK(rep.unimodular_pair);
    CHECK(rep.standard_factors);
}
