#pragma once

/**
 * @file delzant.hpp
 * @brief Delzant polygons in R^2: boundary validation, vertex weights,
 *        Morse indices of moment components, and local moment cones.
 *
 * A vertex is smooth when the primitive outgoing edge directions form a
 * Z-basis and turn counterclockwise; in dimension 2 simplicity is automatic
 * for a simple boundary walk, so the validator checks that the walk itself
 * is simple instead.
 */

#include <cstddef>
#include <string>
#include <vector>

#include "toric/lattice.hpp"

namespace toric {

struct DelzantPolygon {
    std::vector<RatVec2> vertices;  // cyclic boundary walk
};

struct VertexWeights {
    RatVec2 vertex;
    IntVec2 dir_next;  // primitive, outgoing along the edge to the next vertex
    IntVec2 dir_prev;  // primitive, outgoing along the edge to the previous vertex
};

struct VertexDiagnostic {
    std::size_t index = 0;
    RatVec2 vertex;
    std::int64_t corner_det = 0;  // det[dir_next, dir_prev]
    bool smooth = false;          // |corner_det| = 1
    bool oriented = false;        // corner_det matches the walk orientation
    std::string message;
};

struct DelzantReport {
    bool pass = false;
    bool simple = true;                       // boundary walk free of self-intersections
    std::vector<VertexDiagnostic> vertices;   // one entry per vertex
    std::vector<std::string> errors;

    std::vector<std::size_t> failing_vertices() const {
        std::vector<std::size_t> out;
        for (const auto& d : vertices)
            if (!d.smooth || !d.oriented) out.push_back(d.index);
        return out;
    }
};

namespace detail {

inline int orient_sign(const RatVec2& a, const RatVec2& b, const RatVec2& c) {
    return det(b - a, c - a).sign();
}

inline bool on_segment(const RatVec2& a, const RatVec2& b, const RatVec2& p) {
    if (orient_sign(a, b, p) != 0) return false;
    auto within = [](const Rational& lo, const Rational& hi, const Rational& v) {
        return (lo <= hi) ? (lo <= v && v <= hi) : (hi <= v && v <= lo);
    };
    return within(a.x, b.x, p.x) && within(a.y, b.y, p.y);
}

/// Exact proper/improper intersection test for closed segments [a,b], [c,d].
inline bool segments_intersect(const RatVec2& a, const RatVec2& b,
                               const RatVec2& c, const RatVec2& d) {
    int o1 = orient_sign(a, b, c);
    int o2 = orient_sign(a, b, d);
    int o3 = orient_sign(c, d, a);
    int o4 = orient_sign(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

/// Twice the signed area of the walk; positive for counterclockwise.
inline Rational signed_area2(const std::vector<RatVec2>& vs) {
    Rational s(0);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const RatVec2& p = vs[i];
        const RatVec2& q = vs[(i + 1) % vs.size()];
        s += p.x * q.y - q.x * p.y;
    }
    return s;
}

}  // namespace detail

inline VertexWeights weights_at_vertex(const DelzantPolygon& poly, std::size_t i) {
    const auto& vs = poly.vertices;
    if (i >= vs.size()) throw std::out_of_range("vertex index out of range");
    const RatVec2& v = vs[i];
    const RatVec2& nxt = vs[(i + 1) % vs.size()];
    const RatVec2& prv = vs[(i + vs.size() - 1) % vs.size()];
    return {v, primitive_direction(nxt - v), primitive_direction(prv - v)};
}

inline DelzantReport validate_delzant(const DelzantPolygon& poly) {
    DelzantReport rep;
    const auto& vs = poly.vertices;
    const std::size_t n = vs.size();
    if (n < 3) {
        rep.errors.push_back("polygon needs at least 3 vertices");
        return rep;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (vs[i] == vs[(i + 1) % n]) {
            rep.errors.push_back("repeated vertex at index " + std::to_string(i));
            return rep;
        }
    }

    // Simple boundary walk: non-adjacent edges must not meet.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            if (detail::segments_intersect(vs[i], vs[(i + 1) % n], vs[j], vs[(j + 1) % n])) {
                rep.simple = false;
                rep.errors.push_back("self-intersecting polygon (edges " + std::to_string(i) +
                                     " and " + std::to_string(j) + ")");
            }
        }
    }
    if (!rep.simple) return rep;

    // Orientation of the walk; corner dets must all match it.
    const int orient = detail::signed_area2(vs).sign();

    bool all_ok = true;
    for (std::size_t i = 0; i < n; ++i) {
        VertexWeights w;
        try {
            w = weights_at_vertex(poly, i);
        } catch (const std::domain_error&) {
            rep.errors.push_back("degenerate vertex at index " + std::to_string(i));
            all_ok = false;
            continue;
        }
        VertexDiagnostic d;
        d.index = i;
        d.vertex = w.vertex;
        d.corner_det = det(w.dir_next, w.dir_prev);
        if (d.corner_det == 0) {
            d.message = "degenerate vertex (parallel incident edges)";
            rep.errors.push_back("degenerate vertex at " + str(w.vertex));
            all_ok = false;
            rep.vertices.push_back(d);
            continue;
        }
        d.smooth = (d.corner_det == 1 || d.corner_det == -1);
        d.oriented = (d.corner_det > 0) == (orient > 0);
        if (!d.smooth)
            d.message = "edge directions are not a Z-basis (det " + std::to_string(d.corner_det) + ")";
        else if (!d.oriented)
            d.message = "corner is not orientation-preserving";
        all_ok = all_ok && d.smooth && d.oriented;
        rep.vertices.push_back(d);
    }
    rep.pass = all_ok && rep.errors.empty();
    return rep;
}

/// Morse index 2k of a moment component: k = #{i : <weight_i, xi> < 0}.
/// Zero pairings do not count.
inline int morse_index(const std::vector<IntVec2>& weights, const RatVec2& xi) {
    int k = 0;
    for (const auto& w : weights) {
        Rational pairing = Rational(w.a) * xi.x + Rational(w.b) * xi.y;
        if (pairing.sign() < 0) ++k;
    }
    return 2 * k;
}

/// True iff probe - vertex lies in the cone {s1*d1 + s2*d2, s >= 0}. Exact.
inline bool local_cone(const VertexWeights& w, const RatVec2& probe) {
    RatVec2 rel = probe - w.vertex;
    RatVec2 d1{Rational(w.dir_next.a), Rational(w.dir_next.b)};
    RatVec2 d2{Rational(w.dir_prev.a), Rational(w.dir_prev.b)};
    Rational dd = det(d1, d2);
    if (dd.is_zero()) throw std::domain_error("degenerate vertex");
    // Cramer solve rel = s1*d1 + s2*d2.
    Rational s1 = det(rel, d2) / dd;
    Rational s2 = det(d1, rel) / dd;
    return s1.sign() >= 0 && s2.sign() >= 0;
}

}  // namespace toric
