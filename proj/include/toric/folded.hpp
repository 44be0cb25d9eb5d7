#pragma once

/**
 * @file folded.hpp
 * @brief Folded Delzant polygons: boundary walks with corner and fold marks,
 *        fold charts, the standard fold map, and validators.
 *
 * A polygon is stored through the image of its boundary walk plus one
 * affine chart per fold mark. Images are allowed to overlap away from the
 * folds, so no global injectivity is ever checked; all corner and fold
 * conditions are local. Loops are walked with the surface on the left
 * (outer loops counterclockwise); a globally mirrored walk is accepted too,
 * which keeps verdicts invariant under all of Aff(2,Z).
 */

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "toric/delzant.hpp"
#include "toric/lattice.hpp"

namespace toric {

// ---------------------------------------------------------------------------
// The standard fold map

/// phi_0(x1, x2) = (x1^2 - x2/2, x1*x2) on the half-plane x2 >= 0.
inline std::array<double, 2> standard_fold(double x1, double x2) {
    if (x2 < 0) throw std::domain_error("standard fold: x2 must be >= 0");
    return {x1 * x1 - 0.5 * x2, x1 * x2};
}

using FoldMap = std::function<std::array<double, 2>(double, double)>;

// ---------------------------------------------------------------------------
// Polygon data

enum class MarkKind { corner, fold };

struct MarkedPoint {
    MarkKind kind = MarkKind::corner;
    RatVec2 pos;
    AffineMapZ chart;  // fold marks only: phi = chart o phi_0 near the fold
};

inline MarkedPoint corner_mark(RatVec2 p) { return {MarkKind::corner, std::move(p), {}}; }
inline MarkedPoint fold_mark(RatVec2 p, AffineMapZ chart) {
    return {MarkKind::fold, std::move(p), std::move(chart)};
}

struct FoldChart {
    RatVec2 fold_point;
    AffineMapZ chart;
};

struct FoldedPolygon {
    std::vector<std::vector<MarkedPoint>> loops;  // loops[0] is the outer walk

    std::vector<FoldChart> fold_charts() const {
        std::vector<FoldChart> out;
        for (const auto& loop : loops)
            for (const auto& m : loop)
                if (m.kind == MarkKind::fold) out.push_back({m.pos, m.chart});
        return out;
    }

    static FoldedPolygon from_delzant(const DelzantPolygon& p) {
        FoldedPolygon fp;
        fp.loops.emplace_back();
        for (const auto& v : p.vertices) fp.loops[0].push_back(corner_mark(v));
        return fp;
    }
};

/// Number of corner marks = number of T^2-fixed points of the assembled
/// manifold, i.e. its Euler characteristic.
inline int euler_characteristic(const FoldedPolygon& p) {
    int n = 0;
    for (const auto& loop : p.loops)
        for (const auto& m : loop)
            if (m.kind == MarkKind::corner) ++n;
    return n;
}

inline AffineMapZ compose(const AffineMapZ& outer, const AffineMapZ& inner) {
    return {outer.linear * inner.linear, apply_affine(outer, inner.offset)};
}

/// Post-composes the whole polygon by an affine map: positions move, fold
/// charts pick up the map on the left.
inline FoldedPolygon transform_polygon(const FoldedPolygon& p, const AffineMapZ& t) {
    FoldedPolygon out = p;
    for (auto& loop : out.loops)
        for (auto& m : loop) {
            m.pos = apply_affine(t, m.pos);
            if (m.kind == MarkKind::fold) m.chart = compose(t, m.chart);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Validation

struct FoldedReport {
    bool pass = false;
    std::vector<std::string> errors;
    int corners = 0;
    int folds = 0;
};

namespace detail {

inline IntVec2 walk_dir(const std::vector<MarkedPoint>& loop, std::size_t from, std::size_t to) {
    return primitive_direction(loop[to].pos - loop[from].pos);
}

}  // namespace detail

inline FoldedReport validate_folded_polygon(const FoldedPolygon& p) {
    FoldedReport rep;
    if (p.loops.empty()) {
        rep.errors.push_back("polygon has no boundary loops");
        return rep;
    }
    int plus = 0, minus = 0;
    for (std::size_t li = 0; li < p.loops.size(); ++li) {
        const auto& loop = p.loops[li];
        const std::size_t n = loop.size();
        auto where = [&](std::size_t i) {
            return "loop " + std::to_string(li) + ", mark " + std::to_string(i) + " at " +
                   str(loop[i].pos);
        };
        if (n < 3) {
            rep.errors.push_back("loop " + std::to_string(li) + " has fewer than 3 marks");
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (loop[i].pos == loop[(i + 1) % n].pos) {
                rep.errors.push_back("repeated mark: " + where(i));
                return rep;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            const auto& m = loop[i];
            IntVec2 d_next = detail::walk_dir(loop, i, (i + 1) % n);
            IntVec2 d_prev = detail::walk_dir(loop, i, (i + n - 1) % n);
            if (m.kind == MarkKind::corner) {
                ++rep.corners;
                std::int64_t d = det(d_next, d_prev);
                if (d == 1) ++plus;
                else if (d == -1) ++minus;
                else
                    rep.errors.push_back("corner is not smooth (det " + std::to_string(d) +
                                         "): " + where(i));
            } else {
                ++rep.folds;
                if (!(d_next == -d_prev)) {
                    rep.errors.push_back("fold on corner forbidden: " + where(i));
                    continue;
                }
                if (!is_unimodular(m.chart.linear))
                    rep.errors.push_back("fold chart is not in GL(2,Z): " + where(i));
                if (!(m.chart.offset == m.pos))
                    rep.errors.push_back("fold chart does not send the fold origin to the "
                                         "fold point: " + where(i));
                IntVec2 ray = primitive(m.chart.linear * IntVec2{1, 0});
                if (!(ray == d_next))
                    rep.errors.push_back("fold chart ray " + str(ray) +
                                         " does not match the doubled boundary ray " +
                                         str(d_next) + ": " + where(i));
            }
        }
    }
    if (plus > 0 && minus > 0)
        rep.errors.push_back("corner orientations are inconsistent across the walk");
    rep.pass = rep.errors.empty();
    return rep;
}

// ---------------------------------------------------------------------------
// Numeric fold-property verification (grid checks of properties 1-4)

struct FoldPropertyReport {
    bool boundary_on_ray = true;   // both boundary rays land on the chart ray
    bool injective = true;         // open half-plane maps with distinct images
    bool misses_ray = true;        // open half-plane images avoid the folded ray
    bool immersion = true;         // Jacobian rank 2 away from the fold point
    double max_boundary_defect = 0.0;
    double min_image_separation = 0.0;
    double min_jacobian_det = 0.0;

    bool pass() const { return boundary_on_ray && injective && misses_ray && immersion; }
};

namespace detail {

inline std::array<double, 2> chart_apply(const AffineMapZ& c, const std::array<double, 2>& p) {
    return {static_cast<double>(c.linear.m00) * p[0] + static_cast<double>(c.linear.m01) * p[1] +
                c.offset.x.to_double(),
            static_cast<double>(c.linear.m10) * p[0] + static_cast<double>(c.linear.m11) * p[1] +
                c.offset.y.to_double()};
}

/// Distance from q to the ray {origin + t*dir, t >= 0}, dir not necessarily unit.
inline double ray_distance(const std::array<double, 2>& origin, const std::array<double, 2>& dir,
                           const std::array<double, 2>& q) {
    double vx = q[0] - origin[0], vy = q[1] - origin[1];
    double dd = dir[0] * dir[0] + dir[1] * dir[1];
    double t = (vx * dir[0] + vy * dir[1]) / dd;
    if (t < 0) t = 0;
    double rx = vx - t * dir[0], ry = vy - t * dir[1];
    return std::sqrt(rx * rx + ry * ry);
}

}  // namespace detail

/// Samples chart o fold_map on a grid over [-2,2] x [0,2] and verifies the
/// fold properties numerically. Absolute tolerance 1e-9.
inline FoldPropertyReport validate_fold_properties(
    const AffineMapZ& chart, int grid = 50,
    const FoldMap& fold_map = [](double a, double b) { return standard_fold(a, b); }) {
    constexpr double tol = 1e-9;
    constexpr double rank_tol = 1e-6;
    FoldPropertyReport rep;

    auto f = [&](double x1, double x2) { return detail::chart_apply(chart, fold_map(x1, x2)); };
    const std::array<double, 2> ray_origin = f(0.0, 0.0);
    const std::array<double, 2> ray_dir = {static_cast<double>(chart.linear.m00),
                                           static_cast<double>(chart.linear.m10)};

    // Property 3: both halves of the boundary land on the chart ray.
    for (int i = 1; i <= grid; ++i) {
        double x1 = 2.0 * i / grid;
        for (double s : {x1, -x1}) {
            double d = detail::ray_distance(ray_origin, ray_dir, f(s, 0.0));
            rep.max_boundary_defect = std::max(rep.max_boundary_defect, d);
        }
    }
    rep.boundary_on_ray = rep.max_boundary_defect <= tol;

    // Interior samples (x2 > 0).
    std::vector<std::array<double, 2>> dom, img;
    for (int i = 0; i < grid; ++i) {
        for (int j = 1; j <= grid; ++j) {
            double x1 = -2.0 + 4.0 * i / (grid - 1);
            double x2 = 2.0 * j / grid;
            dom.push_back({x1, x2});
            img.push_back(f(x1, x2));
        }
    }

    // Property 4, injectivity half: pairwise distinct images.
    rep.min_image_separation = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < img.size(); ++a)
        for (std::size_t b = a + 1; b < img.size(); ++b) {
            double dx = img[a][0] - img[b][0], dy = img[a][1] - img[b][1];
            rep.min_image_separation = std::min(rep.min_image_separation,
                                                std::sqrt(dx * dx + dy * dy));
        }
    rep.injective = rep.min_image_separation > tol;

    // Property 4, range half: the open half-plane misses the folded ray.
    for (const auto& q : img)
        if (detail::ray_distance(ray_origin, ray_dir, q) <= tol) {
            rep.misses_ray = false;
            break;
        }

    // Property 2: immersion away from the fold point.
    const double h = 1e-5;
    rep.min_jacobian_det = std::numeric_limits<double>::infinity();
    auto jac_det = [&](double x1, double x2) {
        auto px = f(x1 + h, x2), mx = f(x1 - h, x2);
        auto py = f(x1, x2 + h), my = f(x1, std::max(x2 - h, 0.0));
        double wy = (x2 - h >= 0) ? 2 * h : (x2 + h);
        double j00 = (px[0] - mx[0]) / (2 * h), j01 = (py[0] - my[0]) / wy;
        double j10 = (px[1] - mx[1]) / (2 * h), j11 = (py[1] - my[1]) / wy;
        return std::abs(j00 * j11 - j01 * j10);
    };
    for (const auto& d : dom)
        rep.min_jacobian_det = std::min(rep.min_jacobian_det, jac_det(d[0], d[1]));
    for (int i = 0; i < grid; ++i) {
        double x1 = -2.0 + 4.0 * i / (grid - 1);
        if (std::abs(x1) < 1e-3) continue;  // the fold point itself is exempt
        rep.min_jacobian_det = std::min(rep.min_jacobian_det, jac_det(x1, 0.0));
    }
    rep.immersion = rep.min_jacobian_det > rank_tol;

    return rep;
}

// ---------------------------------------------------------------------------
// Exact point classification on the polygon (consumed by the assembly module)

enum class PointClass { corner, fold, edge_interior, interior, outside };

struct PointLocation {
    PointClass cls = PointClass::outside;
    std::size_t loop = 0;
    std::size_t mark = 0;   // for corner/fold: index of the mark; for
                            // edge_interior: index of the segment start
};

inline PointLocation classify_point(const FoldedPolygon& p, const RatVec2& q) {
    for (std::size_t li = 0; li < p.loops.size(); ++li) {
        const auto& loop = p.loops[li];
        for (std::size_t i = 0; i < loop.size(); ++i)
            if (loop[i].pos == q)
                return {loop[i].kind == MarkKind::fold ? PointClass::fold : PointClass::corner,
                        li, i};
    }
    for (std::size_t li = 0; li < p.loops.size(); ++li) {
        const auto& loop = p.loops[li];
        for (std::size_t i = 0; i < loop.size(); ++i) {
            const RatVec2& a = loop[i].pos;
            const RatVec2& b = loop[(i + 1) % loop.size()].pos;
            if (detail::on_segment(a, b, q)) return {PointClass::edge_interior, li, i};
        }
    }
    // Winding number over all loops; doubled fold edges cancel.
    long winding = 0;
    for (const auto& loop : p.loops) {
        for (std::size_t i = 0; i < loop.size(); ++i) {
            const RatVec2& a = loop[i].pos;
            const RatVec2& b = loop[(i + 1) % loop.size()].pos;
            if (a.y <= q.y) {
                if (b.y > q.y && detail::orient_sign(a, b, q) > 0) ++winding;
            } else {
                if (b.y <= q.y && detail::orient_sign(a, b, q) < 0) --winding;
            }
        }
    }
    if (winding != 0) return {PointClass::interior, 0, 0};
    return {PointClass::outside, 0, 0};
}

}  // namespace toric
