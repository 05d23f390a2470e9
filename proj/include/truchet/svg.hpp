#pragma once

// Deterministic SVG emission for curves, tilings at any hinge angle, and
// animation frame sequences. Geometry is laid out in mathematical
// coordinates (y up) inside a flipped group; all numbers are printed with
// six decimal places so identical inputs produce byte-identical documents.

#include <cstdio>
#include <string>
#include <vector>

#include "truchet/geometry.hpp"
#include "truchet/tiling.hpp"

namespace truchet {

enum class CornerStyle : std::uint8_t { Rounded, Sharp };

struct RenderStyle {
    TileDesign design = TileDesign::QuarterArcs;
    double stroke_width = 0.12;
    CornerStyle corner = CornerStyle::Rounded;
    std::vector<std::string> palette = {"#000000", "#d62728", "#2ca02c", "#1f77b4",
                                        "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
    std::string background = "#ffffff";
};

namespace svg_detail {

inline std::string num(double v) {
    char buf[64];
    if (v == 0.0) v = 0.0; // normalize -0
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

struct Bounds {
    double min_x = 1e300, min_y = 1e300, max_x = -1e300, max_y = -1e300;
    void add(double x, double y) {
        min_x = std::min(min_x, x); max_x = std::max(max_x, x);
        min_y = std::min(min_y, y); max_y = std::max(max_y, y);
    }
    void pad_fraction(double f) {
        const double w = max_x - min_x, h = max_y - min_y;
        const double px = std::max(w, h) * f;
        min_x -= px; max_x += px; min_y -= px; max_y += px;
    }
};

inline std::string document(const Bounds& b, const std::string& background,
                            const std::string& body) {
    std::string out;
    const double w = b.max_x - b.min_x, h = b.max_y - b.min_y;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
    out += num(b.min_x) + " " + num(-b.max_y) + " " + num(w) + " " + num(h) + "\">\n";
    out += "<rect x=\"" + num(b.min_x) + "\" y=\"" + num(-b.max_y) + "\" width=\"" + num(w) +
           "\" height=\"" + num(h) + "\" fill=\"" + background + "\"/>\n";
    out += "<g transform=\"matrix(1 0 0 -1 0 0)\">\n";
    out += body;
    out += "</g>\n</svg>\n";
    return out;
}

// Polyline path data with optional rounded corners (quadratic shortcuts).
// Closed inputs repeat their first point at the end.
inline std::string polyline_data(const std::vector<std::pair<double, double>>& pts,
                                 bool rounded, bool closed) {
    std::string d;
    const std::size_t n = pts.size();
    if (n < 2) return d;
    if (!rounded) {
        d += "M " + num(pts[0].first) + " " + num(pts[0].second);
        for (std::size_t i = 1; i < (closed ? n - 1 : n); ++i)
            d += " L " + num(pts[i].first) + " " + num(pts[i].second);
        if (closed) d += " Z";
        return d;
    }
    const double r = 0.25;
    auto lerp = [](std::pair<double, double> a, std::pair<double, double> b, double t) {
        return std::pair<double, double>{a.first + (b.first - a.first) * t,
                                         a.second + (b.second - a.second) * t};
    };
    auto seg_len = [](std::pair<double, double> a, std::pair<double, double> b) {
        return std::hypot(b.first - a.first, b.second - a.second);
    };
    auto emit_corner = [&](const std::pair<double, double>& prev,
                           const std::pair<double, double>& cur,
                           const std::pair<double, double>& next) {
        const double t_in = std::min(0.5, r / seg_len(prev, cur));
        const double t_out = std::min(0.5, r / seg_len(cur, next));
        const auto a = lerp(cur, prev, t_in);
        const auto b = lerp(cur, next, t_out);
        d += " L " + num(a.first) + " " + num(a.second);
        d += " Q " + num(cur.first) + " " + num(cur.second) + " " + num(b.first) + " " +
             num(b.second);
    };
    if (closed) {
        const auto start = lerp(pts[0], pts[1], std::min(0.5, r / seg_len(pts[0], pts[1])));
        d += "M " + num(start.first) + " " + num(start.second);
        for (std::size_t k = 1; k + 1 < n; ++k)
            emit_corner(pts[k - 1], pts[k], pts[k + 1]);
        emit_corner(pts[n - 2], pts[0], pts[1]);
        d += " Z";
    } else {
        d += "M " + num(pts[0].first) + " " + num(pts[0].second);
        for (std::size_t k = 1; k + 1 < n; ++k)
            emit_corner(pts[k - 1], pts[k], pts[k + 1]);
        d += " L " + num(pts[n - 1].first) + " " + num(pts[n - 1].second);
    }
    return d;
}

// Tile design strokes in the unit square [0,1]^2, orientation 0.
// Orientation 90 rotates the pattern a quarter turn about the centre.
inline std::string tile_design_paths(TileDesign design, int orientation_deg,
                                     const std::string& stroke, double stroke_width) {
    // endpoints: W (0,.5) N (.5,1) S (.5,0) E (1,.5); pairs o0: {W,N},{S,E}
    std::string body;
    const std::string sw = num(stroke_width);
    auto path = [&](const std::string& dat) {
        body += "<path d=\"" + dat + "\" fill=\"none\" stroke=\"" + stroke +
                "\" stroke-width=\"" + sw + "\" stroke-linecap=\"round\"/>\n";
    };
    const bool o0 = orientation_deg == 0;
    switch (design) {
        case TileDesign::QuarterArcs:
            if (o0) {
                path("M 0.000000 0.500000 A 0.500000 0.500000 0 0 1 0.500000 1.000000");
                path("M 0.500000 0.000000 A 0.500000 0.500000 0 0 0 1.000000 0.500000");
            } else {
                path("M 0.500000 1.000000 A 0.500000 0.500000 0 0 1 1.000000 0.500000");
                path("M 0.000000 0.500000 A 0.500000 0.500000 0 0 0 0.500000 0.000000");
            }
            break;
        case TileDesign::Diagonals:
            if (o0) {
                path("M 0.000000 0.500000 L 0.500000 1.000000");
                path("M 0.500000 0.000000 L 1.000000 0.500000");
            } else {
                path("M 0.500000 1.000000 L 1.000000 0.500000");
                path("M 0.000000 0.500000 L 0.500000 0.000000");
            }
            break;
        case TileDesign::MidDeform:
            // chords bent halfway towards the tile centre
            if (o0) {
                path("M 0.000000 0.500000 Q 0.375000 0.625000 0.500000 1.000000");
                path("M 0.500000 0.000000 Q 0.625000 0.375000 1.000000 0.500000");
            } else {
                path("M 0.500000 1.000000 Q 0.625000 0.625000 1.000000 0.500000");
                path("M 0.000000 0.500000 Q 0.375000 0.375000 0.500000 0.000000");
            }
            break;
    }
    return body;
}

} // namespace svg_detail

// One SVG path element per component, colours cycling through the palette.
inline std::string svg_curve(const std::vector<PlanarPath>& paths, const RenderStyle& style) {
    if (paths.empty()) throw std::invalid_argument("svg_curve needs at least one path");
    if (style.palette.empty()) throw std::invalid_argument("palette must be nonempty");
    using namespace svg_detail;
    Bounds b;
    for (const auto& p : paths)
        for (const auto& [x, y] : p.points) b.add(x, y);
    b.pad_fraction(0.05);
    std::string body;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const auto& pts = paths[i].points;
        const bool closed = pts.size() > 2 && pts.front() == pts.back();
        const std::string d =
            polyline_data(pts, style.corner == CornerStyle::Rounded, closed);
        body += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" +
                style.palette[i % style.palette.size()] + "\" stroke-width=\"" +
                num(style.stroke_width) + "\" stroke-linecap=\"round\" stroke-linejoin=\"round\"/>\n";
    }
    return document(b, style.background, body);
}

namespace svg_detail {

inline std::string tile_group(double cx, double cy, double rot_deg, double scale,
                              TileDesign design, int orientation_deg,
                              const std::string& stroke, double stroke_width,
                              const std::string& outline) {
    std::string g = "<g transform=\"translate(" + num(cx) + " " + num(cy) + ") rotate(" +
                    num(rot_deg) + ") scale(" + num(scale) + ") translate(-0.500000 -0.500000)\">\n";
    g += "<rect x=\"0.000000\" y=\"0.000000\" width=\"1.000000\" height=\"1.000000\" fill=\"none\" stroke=\"" +
         outline + "\" stroke-width=\"" + num(0.02 / scale) + "\"/>\n";
    g += tile_design_paths(design, orientation_deg, stroke, stroke_width);
    g += "</g>\n";
    return g;
}

} // namespace svg_detail

// Renders every tile at its hinge placement; theta = 0 reproduces the plain
// Truchet tiling.
inline std::string svg_tiling(const TilingGrid& g, int op, double theta_deg,
                              const RenderStyle& style, bool with_insertions = false) {
    using namespace svg_detail;
    if (style.palette.empty()) throw std::invalid_argument("palette must be nonempty");
    Bounds b;
    b.add(-0.5, -0.5);
    b.add(g.width + 0.5, g.height + 0.5);
    b.pad_fraction(0.05);
    std::string body;
    const std::string stroke = style.palette.front();
    for (const auto& [idx, hp] : placements_at_angle(g, op, theta_deg)) {
        const int i = idx % g.width, j = idx / g.width;
        body += tile_group(hp.cx, hp.cy, hp.rotation_deg, hp.scale, style.design,
                           g.orientation(i, j), stroke, style.stroke_width, "#b0b0b0");
    }
    if (with_insertions) {
        // inserted tiles sit on the 45-degree lattice at the grid vertices,
        // drawn grey to distinguish them from the original tiles
        for (const HingeInsertion& ins : hinge_insertions(g, op)) {
            const double vx = static_cast<double>(ins.vertex.x) + 1.0;
            const double vy = static_cast<double>(ins.vertex.y) + 1.0;
            body += tile_group(vx, vy, 45.0, hinge_scale(45.0), style.design, ins.orient,
                               "#909090", style.stroke_width, "#d0d0d0");
        }
    }
    return document(b, style.background, body);
}

// Uniform theta samples on [0, 45]; the final frame also shows the inserted
// tiles in grey.
inline std::vector<std::string> animation_frames(const TilingGrid& g, int op, int frame_count,
                                                 const RenderStyle& style) {
    if (frame_count < 2) throw std::invalid_argument("need at least two frames");
    std::vector<std::string> frames;
    frames.reserve(static_cast<std::size_t>(frame_count));
    for (int k = 0; k < frame_count; ++k) {
        const double theta = 45.0 * k / (frame_count - 1);
        const bool last = k == frame_count - 1;
        frames.push_back(svg_tiling(g, op, theta, style, last));
    }
    return frames;
}

} // namespace truchet
