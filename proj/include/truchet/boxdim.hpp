#pragma once

// Independent box-counting estimator for fractile boundary dimension.
// Generates the closed single-tile loop evolved by the first k operations of
// a repeating pattern, rasterizes the traversed edges, flood-fills the
// exterior and counts boundary cells over power-of-two box sizes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <unordered_set>
#include <vector>

#include "truchet/core.hpp"
#include "truchet/geometry.hpp"

namespace truchet {

struct CellSet {
    std::vector<IVec> cells;
    int depth = 0;
};

struct BoxDimEstimate {
    double slope = 0.0;
    double r2 = 0.0;
    std::vector<std::int64_t> sizes;  // strictly decreasing powers of two... stored ascending then reversed
    std::vector<std::int64_t> counts; // box counts matching sizes
};

namespace boxdim_detail {

struct Raster {
    std::int64_t min_x = 0, min_y = 0;
    std::int64_t w = 0, h = 0;
    // grid doubled so that both lattice vertices and cell centres get pixels:
    // pixel (2x, 2y) is vertex (x, y), odd pixels are edge interiors / cells
    std::vector<std::uint8_t> wall; // traversed-edge mask on the doubled grid

    std::uint8_t& at(std::int64_t x, std::int64_t y) {
        return wall[static_cast<std::size_t>(y - min_y) * w + (x - min_x)];
    }
};

} // namespace boxdim_detail

// Evolves the closed unit loop (LLLL expanded) by the first `depth` bits of
// the repeating pattern and returns the interior cells adjacent to the
// exterior of the resulting non-crossing closed curve.
inline CellSet fractile_boundary_cells(const OpSequence& pattern, int depth) {
    if (depth < 6) throw std::invalid_argument("boundary rasterization needs depth >= 6");
    if (pattern.empty()) throw std::invalid_argument("empty op pattern");
    OpSequence ops;
    ops.bits.reserve(static_cast<std::size_t>(depth));
    for (int i = 0; i < depth; ++i) ops.bits.push_back(pattern.bits[i % pattern.size()]);
    const Word loop = apply_ops(expand_turn_seed("LLLL"), ops);
    const LatticePath path = interpret(loop);

    using boxdim_detail::Raster;
    Raster r;
    std::int64_t mnx = path.points[0].x, mny = path.points[0].y, mxx = mnx, mxy = mny;
    for (const IVec& p : path.points) {
        mnx = std::min(mnx, p.x); mny = std::min(mny, p.y);
        mxx = std::max(mxx, p.x); mxy = std::max(mxy, p.y);
    }
    // doubled-grid bounds with a one-cell margin for the flood fill
    r.min_x = 2 * mnx - 2; r.min_y = 2 * mny - 2;
    r.w = 2 * (mxx - mnx) + 5; r.h = 2 * (mxy - mny) + 5;
    r.wall.assign(static_cast<std::size_t>(r.w * r.h), 0);
    for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
        const IVec a = path.points[i], b = path.points[i + 1];
        r.at(a.x * 2, a.y * 2) = 1;
        r.at(a.x + b.x, a.y + b.y) = 1;
        r.at(b.x * 2, b.y * 2) = 1;
    }
    // flood fill exterior on the doubled grid (4-neighbour)
    std::vector<std::uint8_t> outside(r.wall.size(), 0);
    std::deque<std::pair<std::int64_t, std::int64_t>> queue;
    queue.emplace_back(r.min_x, r.min_y);
    outside[0] = 1;
    auto idx = [&](std::int64_t x, std::int64_t y) {
        return static_cast<std::size_t>(y - r.min_y) * r.w + (x - r.min_x);
    };
    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        const std::int64_t nb[4][2] = {{x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}};
        for (auto& n : nb) {
            const std::int64_t nx = n[0], ny = n[1];
            if (nx < r.min_x || ny < r.min_y || nx >= r.min_x + r.w || ny >= r.min_y + r.h) continue;
            const std::size_t id = idx(nx, ny);
            if (outside[id] || r.wall[id]) continue;
            outside[id] = 1;
            queue.emplace_back(nx, ny);
        }
    }
    // boundary cells: non-exterior pixels touching the exterior, reported at
    // lattice resolution (the curve's feature scale) so that unit boxes
    // sample the fractal rather than the sub-edge polygonal detail
    std::unordered_set<IVec, IVecHash> lattice_cells;
    for (std::int64_t y = r.min_y + 1; y < r.min_y + r.h - 1; ++y) {
        for (std::int64_t x = r.min_x + 1; x < r.min_x + r.w - 1; ++x) {
            const std::size_t id = idx(x, y);
            if (outside[id]) continue;
            const bool edge = outside[idx(x + 1, y)] || outside[idx(x - 1, y)] ||
                              outside[idx(x, y + 1)] || outside[idx(x, y - 1)];
            if (!edge) continue;
            const std::int64_t cx = x >= 0 ? x / 2 : -((-x + 1) / 2);
            const std::int64_t cy = y >= 0 ? y / 2 : -((-y + 1) / 2);
            lattice_cells.insert({cx, cy});
        }
    }
    CellSet cs;
    cs.depth = depth;
    cs.cells.assign(lattice_cells.begin(), lattice_cells.end());
    if (cs.cells.empty()) throw domain_error("no boundary cells found");
    return cs;
}

// Least-squares slope of log2(count) against log2(1/size) over box sizes
// 2^0 .. 2^m, boxes anchored at the origin.
inline BoxDimEstimate box_dimension(const CellSet& cs) {
    if (cs.cells.empty()) throw std::invalid_argument("empty cell set");
    std::int64_t mnx = cs.cells[0].x, mny = cs.cells[0].y, mxx = mnx, mxy = mny;
    for (const IVec& c : cs.cells) {
        mnx = std::min(mnx, c.x); mny = std::min(mny, c.y);
        mxx = std::max(mxx, c.x); mxy = std::max(mxy, c.y);
    }
    const std::int64_t diameter = std::max(mxx - mnx + 1, mxy - mny + 1);
    if (diameter < 16) throw std::invalid_argument("cell set spans less than 2^4 cells");
    int m = 0;
    while ((std::int64_t{1} << (m + 1)) <= diameter) ++m;
    m -= 2;
    if (m < 3) throw std::invalid_argument("insufficient box size range");

    BoxDimEstimate est;
    std::vector<double> xs, ys;
    for (int level = 0; level <= m; ++level) {
        const std::int64_t size = std::int64_t{1} << level;
        std::unordered_set<IVec, IVecHash> boxes;
        boxes.reserve(cs.cells.size());
        for (const IVec& c : cs.cells) {
            const std::int64_t bx = c.x >= 0 ? c.x / size : -((-c.x + size - 1) / size);
            const std::int64_t by = c.y >= 0 ? c.y / size : -((-c.y + size - 1) / size);
            boxes.insert({bx, by});
        }
        est.sizes.push_back(size);
        est.counts.push_back(static_cast<std::int64_t>(boxes.size()));
        xs.push_back(-static_cast<double>(level)); // log2(1/size)
        ys.push_back(std::log2(static_cast<double>(boxes.size())));
    }
    // sizes reported strictly decreasing
    std::reverse(est.sizes.begin(), est.sizes.end());
    std::reverse(est.counts.begin(), est.counts.end());

    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i]; sy += ys[i];
        sxx += xs[i] * xs[i]; sxy += xs[i] * ys[i]; syy += ys[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    est.slope = (n * sxy - sx * sy) / denom;
    const double ss_tot = syy - sy * sy / n;
    const double intercept = (sy - est.slope * sx) / n;
    double ss_res = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (est.slope * xs[i] + intercept);
        ss_res += e * e;
    }
    est.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return est;
}

} // namespace truchet
