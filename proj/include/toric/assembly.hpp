#pragma once

/**
 * @file assembly.hpp
 * @brief The existence construction as a verifiable data pipeline: orbit
 *        labels from the boundary collapse rules, chart models with
 *        action-angle parametrizations, overlap symplectomorphism checks,
 *        and the golden CP^2 # CP^2 example.
 *
 * A chart model carries an open region in the moment plane, a parametrization
 * of the model by action-angle coordinates (p1, q1, p2, q2), the model's own
 * symplectic form in internal coordinates, and its moment map. Patching is
 * verified by pulling each model's form back through its parametrization and
 * comparing against dp1^dq1 + dp2^dq2 at quasi-random sample points; the
 * parametrizations share the global (p, q), so a passing check certifies the
 * chart-to-chart identification is a symplectomorphism there.
 */

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "toric/folded.hpp"
#include "toric/forms.hpp"
#include "toric/lattice.hpp"

namespace toric {

// ---------------------------------------------------------------------------
// Orbit labels (boundary collapse rules)

enum class OrbitKind { free_t2, circle, fixed };

struct OrbitLabel {
    OrbitKind kind = OrbitKind::free_t2;
    IntVec2 stabilizer{0, 0};  // primitive generator, circle orbits only
};

/// Sign-normalized primitive vector: first nonzero component positive.
inline IntVec2 normalize_direction(const IntVec2& v) {
    IntVec2 p = primitive(v);
    if (p.a < 0 || (p.a == 0 && p.b < 0)) return -p;
    return p;
}

/// Primitive generator of the subspace of t whose annihilator is parallel
/// to the given direction in t*.
inline IntVec2 annihilator_direction(const IntVec2& dir) {
    return normalize_direction({-dir.b, dir.a});
}

/// Collapse rules over the boundary of B: interior points keep the full
/// torus; edge-interior and fold points collapse the circle annihilating
/// the edge image; corners collapse everything.
inline OrbitLabel collapse_label(const FoldedPolygon& poly, const RatVec2& point) {
    PointLocation loc = classify_point(poly, point);
    switch (loc.cls) {
        case PointClass::interior:
            return {OrbitKind::free_t2, {0, 0}};
        case PointClass::corner:
            return {OrbitKind::fixed, {0, 0}};
        case PointClass::edge_interior: {
            const auto& loop = poly.loops[loc.loop];
            IntVec2 dir = primitive_direction(loop[(loc.mark + 1) % loop.size()].pos -
                                              loop[loc.mark].pos);
            return {OrbitKind::circle, annihilator_direction(dir)};
        }
        case PointClass::fold: {
            const auto& loop = poly.loops[loc.loop];
            IntVec2 dir = primitive_direction(loop[(loc.mark + 1) % loop.size()].pos -
                                              loop[loc.mark].pos);
            return {OrbitKind::circle, annihilator_direction(dir)};
        }
        case PointClass::outside:
            break;
    }
    throw std::domain_error("collapse_label: point is not on B");
}

// ---------------------------------------------------------------------------
// Chart models

enum class ChartKind { cp2, cp2_scaled, strip, fold };

/// Open rational half-plane a*p1 + b*p2 < c.
struct HalfPlane {
    Rational a, b, c;

    double slack(double p1, double p2) const {
        double na = a.to_double(), nb = b.to_double();
        return (c.to_double() - na * p1 - nb * p2) / std::hypot(na, nb);
    }
};

inline bool region_contains(const std::vector<HalfPlane>& region, double p1, double p2,
                            double margin = 0.0) {
    for (const auto& h : region)
        if (h.slack(p1, p2) <= margin) return false;
    return true;
}

struct ChartModel {
    std::string name;
    ChartKind kind = ChartKind::strip;
    std::vector<HalfPlane> region;

    // cp2 family: true geometric form scale vs the scale the action-angle
    // parametrization assumes (equal unless building a negative control),
    // and the mirrored orientation of the second model.
    double form_scale = 1.0;
    double moment_scale = 1.0;
    bool mirrored = false;

    // fold kind: the affine chart placing the standard fold in the plane.
    AffineMapZ fold_chart;

    bool contains(double p1, double p2, double margin = 0.0) const {
        if (!region_contains(region, p1, p2, margin)) return false;
        if (kind == ChartKind::fold) {
            std::array<double, 2> origin{fold_chart.offset.x.to_double(),
                                         fold_chart.offset.y.to_double()};
            std::array<double, 2> dir{static_cast<double>(fold_chart.linear.m00),
                                      static_cast<double>(fold_chart.linear.m10)};
            if (detail::ray_distance(origin, dir, {p1, p2}) <= margin) return false;
        }
        return true;
    }

    /// Action-angle parametrization: (p1, q1, p2, q2) -> internal coordinates.
    Eigen::Vector4d param(double p1, double q1, double p2, double q2) const;

    /// The model's symplectic form at an internal point, in internal coordinates.
    TwoForm4 form(const Eigen::Vector4d& internal) const;

    /// The model's moment map at an internal point.
    std::array<double, 2> moment(const Eigen::Vector4d& internal) const;
};

namespace detail {

/// Positive root of 2x^3 - 2 f1 x - g = 0 for g > 0 (unique; bracketed
/// bisection plus Newton polish).
inline double fold_cubic_root(double f1, double g) {
    auto e = [&](double x) { return 2 * x * x * x - 2 * f1 * x - g; };
    double lo = f1 > 0 ? std::sqrt(f1 / 3) : 0.0;
    double hi = lo + 1;
    while (e(hi) < 0) hi *= 2;
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        (e(mid) < 0 ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 3; ++i) {
        double d = 6 * x * x - 2 * f1;
        if (d != 0) x -= e(x) / d;
    }
    return x;
}

/// Inverse of the standard fold on {x2 >= 0}: the unique preimage of
/// (f1, f2) off the closed positive f1-axis. x2 is recovered from
/// f1 = x1^2 - x2/2, which stays accurate when x1 is tiny.
inline std::array<double, 2> fold_invert(double f1, double f2) {
    if (f2 == 0) {
        if (f1 >= 0) throw std::domain_error("fold_invert: point on the folded ray");
        return {0.0, -2 * f1};
    }
    double y = fold_cubic_root(f1, std::abs(f2));
    double x1 = f2 > 0 ? y : -y;
    return {x1, 2 * (x1 * x1 - f1)};
}

}  // namespace detail

inline Eigen::Vector4d ChartModel::param(double p1, double q1, double p2, double q2) const {
    switch (kind) {
        case ChartKind::cp2:
        case ChartKind::cp2_scaled: {
            double w1 = (mirrored ? -p1 : p1) / moment_scale;
            double w2 = p2 / moment_scale;
            double s = 1 - w1 - w2;
            double r1 = std::sqrt(w1 / s), r2 = std::sqrt(w2 / s);
            double a1 = mirrored ? -q1 : q1;
            return {r1 * std::cos(a1), r1 * std::sin(a1),
                    r2 * std::cos(q2), r2 * std::sin(q2)};
        }
        case ChartKind::strip: {
            double r = std::sqrt(p2);
            return {p1, q1, r * std::cos(q2), r * std::sin(q2)};
        }
        case ChartKind::fold: {
            RatMat2 ainv = inverse(fold_chart.linear);
            double d1 = p1 - fold_chart.offset.x.to_double();
            double d2 = p2 - fold_chart.offset.y.to_double();
            double f1 = ainv.m00.to_double() * d1 + ainv.m01.to_double() * d2;
            double f2 = ainv.m10.to_double() * d1 + ainv.m11.to_double() * d2;
            auto [x1, x2] = detail::fold_invert(f1, f2);
            // Fold-internal angles are A^T (q1, q2); the in-plane angle runs
            // clockwise in the model's own conventions.
            const auto& a = fold_chart.linear;
            double alpha = a.m00 * q1 + a.m10 * q2;
            double q2f = a.m01 * q1 + a.m11 * q2;
            double tp = -q2f;
            double r = std::sqrt(x2);
            return {alpha, r * std::cos(tp), r * std::sin(tp), x1};
        }
    }
    throw std::logic_error("chart param: bad kind");
}

inline TwoForm4 ChartModel::form(const Eigen::Vector4d& in) const {
    switch (kind) {
        case ChartKind::cp2:
        case ChartKind::cp2_scaled:
            return fubini_study({in[0], in[1]}, {in[2], in[3]}, form_scale);
        case ChartKind::strip: {
            // dx ^ dalpha + 2 da ^ db in internal basis (x, alpha, a, b).
            TwoForm4 m = TwoForm4::Zero();
            m(0, 1) = 1;
            m(1, 0) = -1;
            m(2, 3) = 2;
            m(3, 2) = -2;
            return m;
        }
        case ChartKind::fold:
            return omega_A({in[0], in[1], in[2], in[3]});
    }
    throw std::logic_error("chart form: bad kind");
}

inline std::array<double, 2> ChartModel::moment(const Eigen::Vector4d& in) const {
    switch (kind) {
        case ChartKind::cp2:
        case ChartKind::cp2_scaled: {
            std::complex<double> z1{in[0], in[1]}, z2{in[2], in[3]};
            return mirrored ? moment_cp2_mirror(z1, z2, moment_scale)
                            : moment_cp2(z1, z2, moment_scale);
        }
        case ChartKind::strip:
            return {in[0], in[2] * in[2] + in[3] * in[3]};
        case ChartKind::fold: {
            double r2 = in[1] * in[1] + in[2] * in[2];
            double z = in[3];
            std::array<double, 2> f{z * z - 0.5 * r2, z * r2};
            const auto& a = fold_chart.linear;
            return {a.m00 * f[0] + a.m01 * f[1] + fold_chart.offset.x.to_double(),
                    a.m10 * f[0] + a.m11 * f[1] + fold_chart.offset.y.to_double()};
        }
    }
    throw std::logic_error("chart moment: bad kind");
}

// ---------------------------------------------------------------------------
// Overlap verification

struct OverlapStrip {
    std::string name;
    std::vector<HalfPlane> strip;
    std::array<double, 4> bbox;  // p1 min/max, p2 min/max for sampling
    std::vector<std::string> charts;
};

struct OverlapReport {
    std::string chart_a, chart_b, strip_name;
    int checked = 0;
    int skipped = 0;  // strip samples outside a chart or near a collapsed locus
    double max_form_defect = 0;
    double max_moment_defect = 0;
    bool pass = false;
};

namespace detail {

inline double halton(std::uint64_t i, std::uint64_t base) {
    double f = 1.0, r = 0.0;
    for (std::uint64_t n = i + 1; n > 0; n /= base) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(n % base);
    }
    return r;
}

}  // namespace detail

constexpr double kOverlapMargin = 0.02;     // distance kept from collapsed loci
constexpr double kFormTolerance = 1e-9;
constexpr double kMomentTolerance = 1e-12;

/// Standard form dp1^dq1 + dp2^dq2 in the ordering (p1, q1, p2, q2).
inline TwoForm4 standard_action_angle_form() {
    TwoForm4 m = TwoForm4::Zero();
    m(0, 1) = 1;
    m(1, 0) = -1;
    m(2, 3) = 1;
    m(3, 2) = -1;
    return m;
}

/// Pulls a chart's form back through its parametrization at (p, q); Jacobian
/// by Richardson-extrapolated central differences.
inline TwoForm4 chart_pullback(const ChartModel& c, double p1, double q1, double p2,
                               double q2) {
    const double h = 1e-5;
    Eigen::Matrix4d j;
    std::array<double, 4> x{p1, q1, p2, q2};
    for (int i = 0; i < 4; ++i) {
        auto col = [&](double step) {
            auto xp = x, xm = x;
            xp[i] += step;
            xm[i] -= step;
            return ((c.param(xp[0], xp[1], xp[2], xp[3]) -
                     c.param(xm[0], xm[1], xm[2], xm[3])) / (2 * step)).eval();
        };
        Eigen::Vector4d dh = col(h), dh2 = col(h / 2);
        j.col(i) = (4 * dh2 - dh) / 3;
    }
    TwoForm4 w = c.form(c.param(p1, q1, p2, q2));
    return j.transpose() * w * j;
}

/// Samples the strip and compares both charts' action-angle presentations
/// of their symplectic forms, plus the exactness of the moment coordinates.
inline OverlapReport verify_overlap(const ChartModel& a, const ChartModel& b,
                                    const OverlapStrip& strip, int samples = 10000) {
    OverlapReport rep;
    rep.chart_a = a.name;
    rep.chart_b = b.name;
    rep.strip_name = strip.name;
    const TwoForm4 target = standard_action_angle_form();

    std::uint64_t idx = 0;
    int in_strip = 0;
    const std::uint64_t max_draws = static_cast<std::uint64_t>(samples) * 1000;
    while (in_strip < samples && idx < max_draws) {
        double p1 = strip.bbox[0] + (strip.bbox[1] - strip.bbox[0]) * detail::halton(idx, 2);
        double p2 = strip.bbox[2] + (strip.bbox[3] - strip.bbox[2]) * detail::halton(idx, 3);
        double q1 = 2 * M_PI * detail::halton(idx, 5);
        double q2 = 2 * M_PI * detail::halton(idx, 7);
        ++idx;
        if (!region_contains(strip.strip, p1, p2, 1e-6)) continue;
        ++in_strip;
        if (!a.contains(p1, p2, kOverlapMargin) || !b.contains(p1, p2, kOverlapMargin)) {
            ++rep.skipped;
            continue;
        }
        for (const ChartModel* c : {&a, &b}) {
            TwoForm4 back = chart_pullback(*c, p1, q1, p2, q2);
            rep.max_form_defect =
                std::max(rep.max_form_defect, (back - target).cwiseAbs().maxCoeff());
            auto m = c->moment(c->param(p1, q1, p2, q2));
            rep.max_moment_defect = std::max(
                rep.max_moment_defect, std::max(std::abs(m[0] - p1), std::abs(m[1] - p2)));
        }
        ++rep.checked;
    }
    rep.pass = rep.checked > 0 && rep.max_form_defect <= kFormTolerance &&
               rep.max_moment_defect <= kMomentTolerance;
    return rep;
}

// ---------------------------------------------------------------------------
// The worked example: CP^2 # CP^2

struct AssembledExample {
    std::vector<ChartModel> charts;
    std::vector<OverlapStrip> overlaps;
    FoldedPolygon polygon;

    const ChartModel& chart(const std::string& name) const {
        for (const auto& c : charts)
            if (c.name == name) return c;
        throw std::out_of_range("no chart named " + name);
    }
};

namespace detail {

inline HalfPlane hp(std::int64_t a, std::int64_t b, const Rational& c) {
    return {Rational(a), Rational(b), c};
}

}  // namespace detail

/// CP^2 with the Fubini-Study form and the unit-triangle moment map, cut
/// along p1 + p2 > 5/8.
inline ChartModel make_chart_A() {
    ChartModel c;
    c.name = "M_A";
    c.kind = ChartKind::cp2;
    c.form_scale = c.moment_scale = 1.0;
    c.region = {detail::hp(-1, 0, Rational(0)), detail::hp(0, -1, Rational(0)),
                detail::hp(-1, -1, Rational(-5, 8)), detail::hp(1, 1, Rational(1))};
    return c;
}

/// CP^2 with twice the Fubini-Study form, mirrored moment map (p1 negated,
/// legs of length 2), cut along -p1 + p2 > 5/8. The moment_scale parameter
/// exists for negative controls; the true model has both scales equal to 2.
inline ChartModel make_chart_B(double moment_scale = 2.0) {
    ChartModel c;
    c.name = "M_B";
    c.kind = ChartKind::cp2_scaled;
    c.form_scale = 2.0;
    c.moment_scale = moment_scale;
    c.mirrored = true;
    c.region = {detail::hp(1, 0, Rational(0)), detail::hp(0, -1, Rational(0)),
                detail::hp(1, -1, Rational(-5, 8)), detail::hp(-1, 1, Rational(2))};
    return c;
}

/// C x R x S^1 restricted to r^2 < 3/8, r^2 + x < 3/4, r^2 - x < 3/4.
inline ChartModel make_chart_C() {
    ChartModel c;
    c.name = "M_C";
    c.kind = ChartKind::strip;
    c.region = {detail::hp(0, -1, Rational(0)), detail::hp(0, 1, Rational(3, 8)),
                detail::hp(1, 1, Rational(3, 4)), detail::hp(-1, 1, Rational(3, 4))};
    return c;
}

/// The standard fold rotated ninety degrees and shifted up by 1/2,
/// restricted to p2 > 1/4, p1 + p2 < 3/4, -p1 + p2 < 3/4.
inline ChartModel make_chart_D() {
    ChartModel c;
    c.name = "M_D";
    c.kind = ChartKind::fold;
    c.fold_chart = {IntMat2{0, -1, 1, 0}, RatVec2{Rational(0), Rational(1, 2)}};
    c.region = {detail::hp(0, -1, Rational(-1, 4)), detail::hp(1, 1, Rational(3, 4)),
                detail::hp(-1, 1, Rational(3, 4))};
    return c;
}

/// The folded Delzant polygon of the worked example: corners (1,0), (0,1),
/// (0,2), (-2,0) and a single fold at (0,1/2) whose doubled ray runs up the
/// p2-axis. The corner list is exactly the set of triangle vertices of the
/// two CP^2 models surviving the ball cuts; the fold edge from (0,1) to
/// (0,2) doubles back through (0,1/2).
inline FoldedPolygon cp2cp2_polygon() {
    FoldedPolygon p;
    AffineMapZ chart{IntMat2{0, -1, 1, 0}, RatVec2{Rational(0), Rational(1, 2)}};
    p.loops.push_back({corner_mark({Rational(1), Rational(0)}),
                       corner_mark({Rational(0), Rational(1)}),
                       fold_mark({Rational(0), Rational(1, 2)}, chart),
                       corner_mark({Rational(0), Rational(2)}),
                       corner_mark({Rational(-2), Rational(0)})});
    return p;
}

inline AssembledExample build_cp2cp2_example() {
    AssembledExample e;
    e.charts = {make_chart_A(), make_chart_B(), make_chart_C(), make_chart_D()};
    e.overlaps = {
        {"5/8 < p1+p2 < 3/4",
         {detail::hp(-1, -1, Rational(-5, 8)), detail::hp(1, 1, Rational(3, 4))},
         {0.0, 0.75, 0.0, 0.75},
         {"M_A", "M_C", "M_D"}},
        {"5/8 < -p1+p2 < 3/4",
         {detail::hp(1, -1, Rational(-5, 8)), detail::hp(-1, 1, Rational(3, 4))},
         {-0.75, 0.0, 0.0, 0.75},
         {"M_B", "M_C", "M_D"}},
        {"1/4 < p2 < 3/8",
         {detail::hp(0, -1, Rational(-1, 4)), detail::hp(0, 1, Rational(3, 8))},
         {-0.5, 0.5, 0.25, 0.375},
         {"M_C", "M_D"}},
    };
    e.polygon = cp2cp2_polygon();
    return e;
}

/// Runs every pairwise overlap check within every patching strip.
inline std::vector<OverlapReport> run_overlap_checks(const AssembledExample& e,
                                                     int samples = 10000) {
    std::vector<OverlapReport> out;
    for (const auto& strip : e.overlaps)
        for (std::size_t i = 0; i < strip.charts.size(); ++i)
            for (std::size_t j = i + 1; j < strip.charts.size(); ++j)
                out.push_back(verify_overlap(e.chart(strip.charts[i]),
                                             e.chart(strip.charts[j]), strip, samples));
    return out;
}

// ---------------------------------------------------------------------------
// Topology of the connecting patch

struct PatchReport {
    OrbitLabel bottom_edge;  // collapse over the bottom boundary of the patch
    OrbitLabel fold_edge;    // collapse over the doubled fold ray
    bool directions_primitive = false;
    bool unimodular_pair = false;
    bool standard_factors = false;  // {(1,0), (0,1)} as a set
};

/// Reports the two collapsed-circle directions at the boundary edges of the
/// connecting patch (the S^3 x [0,1] piece between the two CP^2 sides).
inline PatchReport patch_topology_report(const AssembledExample& e) {
    PatchReport rep;
    rep.bottom_edge = collapse_label(e.polygon, {Rational(-1, 2), Rational(0)});
    RatVec2 fold_point;
    for (const auto& m : e.polygon.loops[0])
        if (m.kind == MarkKind::fold) fold_point = m.pos;
    rep.fold_edge = collapse_label(e.polygon, fold_point);
    if (rep.bottom_edge.kind == OrbitKind::circle && rep.fold_edge.kind == OrbitKind::circle) {
        const IntVec2& u = rep.bottom_edge.stabilizer;
        const IntVec2& v = rep.fold_edge.stabilizer;
        rep.directions_primitive = (u == primitive(u)) && (v == primitive(v));
        rep.unimodular_pair = is_unimodular_pair(u, v);
        IntVec2 e1{1, 0}, e2{0, 1};
        rep.standard_factors = (u == e1 && v == e2) || (u == e2 && v == e1);
    }
    return rep;
}

}  // namespace toric
