#pragma once

/**
 * @file svg.hpp
 * @brief Deterministic SVG 1.1 rendering of folded polygon images: edges as
 *        segments, folds as two short parallel offset segments, corners as
 *        filled dots. Element order is stable: corners, then edges, then
 *        folds, each in walk order.
 */

#include <cmath>
#include <cstdio>
#include <string>

#include "toric/folded.hpp"

namespace toric {

struct RenderOptions {
    double margin_frac = 0.10;  // viewport margin around the bounding box
    double width = 480.0;       // pixel width of the drawing
};

namespace detail {

inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

}  // namespace detail

inline std::string render_image(const FoldedPolygon& poly, const RenderOptions& opt = {}) {
    double minx = 0, maxx = 0, miny = 0, maxy = 0;
    bool first = true;
    for (const auto& loop : poly.loops)
        for (const auto& m : loop) {
            double x = m.pos.x.to_double(), y = m.pos.y.to_double();
            if (first) {
                minx = maxx = x;
                miny = maxy = y;
                first = false;
            }
            minx = std::min(minx, x);
            maxx = std::max(maxx, x);
            miny = std::min(miny, y);
            maxy = std::max(maxy, y);
        }
    double w = std::max(maxx - minx, 1e-9), h = std::max(maxy - miny, 1e-9);
    double mx = opt.margin_frac * w, my = opt.margin_frac * h;
    minx -= mx;
    maxx += mx;
    miny -= my;
    maxy += my;
    w = maxx - minx;
    h = maxy - miny;
    const double scale = opt.width / w;
    const double height = h * scale;

    auto px = [&](const RatVec2& p) { return (p.x.to_double() - minx) * scale; };
    auto py = [&](const RatVec2& p) { return height - (p.y.to_double() - miny) * scale; };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           detail::fmt(opt.width) + "\" height=\"" + detail::fmt(height) + "\" viewBox=\"0 0 " +
           detail::fmt(opt.width) + " " + detail::fmt(height) + "\">\n";

    for (const auto& loop : poly.loops)
        for (const auto& m : loop)
            if (m.kind == MarkKind::corner)
                svg += "  <circle class=\"corner\" cx=\"" + detail::fmt(px(m.pos)) +
                       "\" cy=\"" + detail::fmt(py(m.pos)) + "\" r=\"3\" fill=\"black\"/>\n";

    for (const auto& loop : poly.loops)
        for (std::size_t i = 0; i < loop.size(); ++i) {
            const RatVec2& a = loop[i].pos;
            const RatVec2& b = loop[(i + 1) % loop.size()].pos;
            svg += "  <line class=\"edge\" x1=\"" + detail::fmt(px(a)) + "\" y1=\"" +
                   detail::fmt(py(a)) + "\" x2=\"" + detail::fmt(px(b)) + "\" y2=\"" +
                   detail::fmt(py(b)) + "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
        }

    for (const auto& loop : poly.loops)
        for (std::size_t i = 0; i < loop.size(); ++i) {
            const auto& m = loop[i];
            if (m.kind != MarkKind::fold) continue;
            // Two parallel segments offset across the doubled ray direction.
            double dx = static_cast<double>(m.chart.linear.m00);
            double dy = static_cast<double>(m.chart.linear.m10);
            double n = std::hypot(dx, dy);
            double cx = px(m.pos), cy = py(m.pos);
            const double len = 14.0, off = 2.5;
            double sx = dx / n, sy = -dy / n;  // screen-space ray direction
            double ox = -sy * off, oy = sx * off;
            svg += "  <g class=\"fold\">\n";
            for (double s : {1.0, -1.0})
                svg += "    <line x1=\"" + detail::fmt(cx + s * ox) + "\" y1=\"" +
                       detail::fmt(cy + s * oy) + "\" x2=\"" +
                       detail::fmt(cx + s * ox + sx * len) + "\" y2=\"" +
                       detail::fmt(cy + s * oy + sy * len) +
                       "\" stroke=\"black\" stroke-width=\"1\"/>\n";
            svg += "  </g>\n";
        }

    svg += "</svg>\n";
    return svg;
}

}  // namespace toric
