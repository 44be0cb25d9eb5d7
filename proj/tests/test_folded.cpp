#include <catch_amalgamated.hpp>

#include "helpers.hpp"
#include "toric/assembly.hpp"
#include "toric/folded.hpp"
#include "toric/svg.hpp"

using namespace toric;
using toric_test::random_aff2z;

namespace {

FoldedPolygon unit_triangle_fp() {
    return FoldedPolygon::from_delzant(
        {{{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(0), Rational(1)}}});
}

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size()))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("standard fold map values") {
    auto p = standard_fold(0, 0);
    CHECK(p[0] == 0.0);
    CHECK(p[1] == 0.0);
    auto q = standard_fold(1, 0);
    CHECK(q[0] == 1.0);
    CHECK(q[1] == 0.0);
    auto r = standard_fold(-1, 0);
    CHECK(r[0] == 1.0);
    CHECK(r[1] == 0.0);
    auto s = standard_fold(0, 2);
    CHECK(s[0] == -1.0);
    CHECK(s[1] == 0.0);
    CHECK_THROWS_AS(standard_fold(0, -1), std::domain_error);
}

TEST_CASE("fold properties hold for the identity chart") {
    FoldPropertyReport rep = validate_fold_properties(AffineMapZ{}, 50);
    CHECK(rep.boundary_on_ray);
    CHECK(rep.injective);
    CHECK(rep.misses_ray);
    CHECK(rep.immersion);
    CHECK(rep.pass());
}

TEST_CASE("fold properties hold for the rotated chart of the worked example") {
    AffineMapZ chart{{0, -1, 1, 0}, {Rational(0), Rational(1, 2)}};
    FoldPropertyReport rep = validate_fold_properties(chart, 50);
    CHECK(rep.pass());
}

TEST_CASE("corrupted fold map fails injectivity") {
    FoldMap corrupted = [](double x1, double x2) {
        return std::array<double, 2>{x1 * x1 - 0.5 * x2, x2};
    };
    FoldPropertyReport rep = validate_fold_properties(AffineMapZ{}, 50, corrupted);
    CHECK_FALSE(rep.injective);
    CHECK_FALSE(rep.pass());
}

TEST_CASE("worked example polygon validates") {
    FoldedPolygon p = cp2cp2_polygon();
    FoldedReport rep = validate_folded_polygon(p);
    CAPTURE(rep.errors);
    CHECK(rep.pass);
    CHECK(rep.corners == 4);
    CHECK(rep.folds == 1);
}

TEST_CASE("fold-free polygon reduces to Delzant validation") {
    CHECK(validate_folded_polygon(unit_triangle_fp()).pass);

    FoldedPolygon bad = FoldedPolygon::from_delzant(
        {{{Rational(0), Rational(0)}, {Rational(2), Rational(0)}, {Rational(0), Rational(1)}}});
    FoldedReport rep = validate_folded_polygon(bad);
    CHECK_FALSE(rep.pass);
    REQUIRE_FALSE(rep.errors.empty());
    CHECK(rep.errors[0].find("not smooth") != std::string::npos);
    CHECK(rep.errors[0].find("(0, 1)") != std::string::npos);
}

TEST_CASE("fold mark on a corner is forbidden") {
    FoldedPolygon p;
    p.loops.push_back({corner_mark({Rational(1), Rational(0)}),
                       corner_mark({Rational(0), Rational(1)}),
                       fold_mark({Rational(0), Rational(0)}, AffineMapZ{})});
    FoldedReport rep = validate_folded_polygon(p);
    CHECK_FALSE(rep.pass);
    REQUIRE_FALSE(rep.errors.empty());
    CHECK(rep.errors[0].find("fold on corner forbidden") != std::string::npos);
}

TEST_CASE("fold chart must match the doubled ray") {
    FoldedPolygon p = cp2cp2_polygon();
    // break the chart: ray direction now points down instead of up
    for (auto& m : p.loops[0])
        if (m.kind == MarkKind::fold) m.chart.linear = IntMat2{0, 1, -1, 0};
    FoldedReport rep = validate_folded_polygon(p);
    CHECK_FALSE(rep.pass);

    FoldedPolygon q = cp2cp2_polygon();
    for (auto& m : q.loops[0])
        if (m.kind == MarkKind::fold) m.chart.offset = {Rational(0), Rational(1)};
    CHECK_FALSE(validate_folded_polygon(q).pass);
}

TEST_CASE("euler characteristic counts corners") {
    CHECK(euler_characteristic(unit_triangle_fp()) == 3);
    CHECK(euler_characteristic(cp2cp2_polygon()) == 4);
    FoldedPolygon square = FoldedPolygon::from_delzant(
        {{{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(1), Rational(1)},
          {Rational(0), Rational(1)}}});
    CHECK(euler_characteristic(square) == 4);
    // connected-sum additivity on the worked example: 3 + 3 - 2
    CHECK(euler_characteristic(cp2cp2_polygon()) ==
          euler_characteristic(unit_triangle_fp()) + 3 - 2);
}

TEST_CASE("folded verdict is invariant under Aff(2,Z) post-composition") {
    std::mt19937 rng(31);
    FoldedPolygon good = cp2cp2_polygon();
    FoldedPolygon bad = cp2cp2_polygon();
    bad.loops[0][3] = corner_mark({Rational(1), Rational(3)});  // breaks a corner
    for (int trial = 0; trial < 100; ++trial) {
        AffineMapZ t = random_aff2z(rng);
        CHECK(validate_folded_polygon(transform_polygon(good, t)).pass);
        CHECK_FALSE(validate_folded_polygon(transform_polygon(bad, t)).pass);
    }
}

TEST_CASE("chart image of the open half-plane misses the folded ray") {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 5; ++trial) {
        AffineMapZ chart = random_aff2z(rng);
        if (!is_unimodular(chart.linear)) continue;
        FoldPropertyReport rep = validate_fold_properties(chart, 30);
        CHECK(rep.misses_ray);
    }
}

TEST_CASE("point classification on the worked example") {
    FoldedPolygon p = cp2cp2_polygon();
    CHECK(classify_point(p, {Rational(1), Rational(0)}).cls == PointClass::corner);
    CHECK(classify_point(p, {Rational(0), Rational(1, 2)}).cls == PointClass::fold);
    CHECK(classify_point(p, {Rational(0), Rational(4, 5)}).cls == PointClass::edge_interior);
    CHECK(classify_point(p, {Rational(0), Rational(3, 2)}).cls == PointClass::edge_interior);
    CHECK(classify_point(p, {Rational(-1), Rational(0)}).cls == PointClass::edge_interior);
    CHECK(classify_point(p, {Rational(1, 4), Rational(1, 4)}).cls == PointClass::interior);
    CHECK(classify_point(p, {Rational(-1), Rational(1, 2)}).cls == PointClass::interior);
    CHECK(classify_point(p, {Rational(0), Rational(1, 4)}).cls == PointClass::interior);
    CHECK(classify_point(p, {Rational(9, 10), Rational(9, 10)}).cls == PointClass::outside);
    CHECK(classify_point(p, {Rational(3), Rational(3)}).cls == PointClass::outside);
}

TEST_CASE("svg rendering is deterministic with stable element counts") {
    std::string tri = render_image(unit_triangle_fp());
    CHECK(count_occurrences(tri, "class=\"corner\"") == 3);
    CHECK(count_occurrences(tri, "class=\"edge\"") == 3);
    CHECK(count_occurrences(tri, "class=\"fold\"") == 0);

    std::string ex = render_image(cp2cp2_polygon());
    CHECK(count_occurrences(ex, "class=\"fold\"") == 1);
    CHECK(count_occurrences(ex, "class=\"corner\"") == 4);
    CHECK(count_occurrences(ex, "class=\"edge\"") == 5);

    CHECK(render_image(cp2cp2_polygon()) == ex);
}
