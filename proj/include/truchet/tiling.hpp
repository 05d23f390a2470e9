#pragma once

// Truchet tilings on rectangular (optionally toroidal) grids, the discrete
// hinge step, continuous-angle placements for animation, and path component
// counting.
//
// Cells live on the quotient of Z^2 by the periods (width, wrap_shift) and
// (0, height); wrap_shift is zero for ordinary tori and nonzero on the
// 45-degree re-embedded lattice that one hinge step produces.

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "truchet/core.hpp"
#include "truchet/geometry.hpp"

namespace truchet {

enum class TileDesign : std::uint8_t { QuarterArcs, Diagonals, MidDeform };

struct TilingGrid {
    int width = 0;
    int height = 0;
    bool torus = false;
    int parity_origin = 0; // parity(i,j) = (i+j+parity_origin) & 1, parity 0 is "even"
    int wrap_shift = 0;    // torus: cell (i,j) == (i+width, j+wrap_shift) == (i, j+height)
    // row-major [j*width+i]; 0 or 90, or -1 for holes in grown planar grids
    std::vector<std::int16_t> orient;

    bool occupied(int i, int j) const {
        if (i < 0 || i >= width || j < 0 || j >= height) return false;
        return orient[static_cast<std::size_t>(j) * width + i] >= 0;
    }
    int orientation(int i, int j) const { return orient[static_cast<std::size_t>(j) * width + i]; }
    int parity(std::int64_t i, std::int64_t j) const {
        return static_cast<int>(((i + j + parity_origin) % 2 + 2) % 2);
    }
    std::size_t cell_count() const {
        std::size_t n = 0;
        for (auto o : orient) n += (o >= 0) ? 1 : 0;
        return n;
    }

    // Canonical representative of a lattice cell under the torus periods.
    IVec canon(std::int64_t x, std::int64_t y) const {
        if (!torus) return {x, y};
        std::int64_t k = x >= 0 ? x / width : -((-x + width - 1) / width);
        x -= k * width;
        y -= k * wrap_shift;
        std::int64_t m = y >= 0 ? y / height : -((-y + height - 1) / height);
        y -= m * height;
        return {x, y};
    }

    bool cell_exists(std::int64_t x, std::int64_t y) const {
        const IVec c = canon(x, y);
        return occupied(static_cast<int>(c.x), static_cast<int>(c.y));
    }
    int orientation_at(std::int64_t x, std::int64_t y) const {
        const IVec c = canon(x, y);
        return orientation(static_cast<int>(c.x), static_cast<int>(c.y));
    }
};

inline TilingGrid make_grid(int w, int h, bool torus, int parity_origin = 0) {
    if (w < 1 || h < 1) throw std::invalid_argument("grid dimensions must be >= 1");
    TilingGrid g;
    g.width = w;
    g.height = h;
    g.torus = torus;
    g.parity_origin = parity_origin;
    g.orient.assign(static_cast<std::size_t>(w) * h, 0);
    return g;
}

// splitmix64; the constants are part of the determinism contract.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline TilingGrid random_grid(int w, int h, std::uint64_t seed, bool torus) {
    TilingGrid g = make_grid(w, h, torus);
    std::uint64_t state = seed;
    for (auto& o : g.orient) o = (splitmix64(state) >> 63) ? 90 : 0;
    return g;
}

// A tile is an L-tile or an R-tile depending on orientation and parity:
// strands enter even tiles across horizontal lines and odd tiles across
// vertical lines, and both strands of a tile turn the same way.
inline Symbol tile_turn(int parity, int orientation_deg) {
    const bool even = parity == 0;
    const bool o0 = orientation_deg == 0;
    if (even) return o0 ? Symbol::TurnR : Symbol::TurnL;
    return o0 ? Symbol::TurnL : Symbol::TurnR;
}

namespace tiling_detail {

// Ports are tile-edge midpoints. Each cell owns its east and north ports;
// west/south ports resolve to the neighbour's, or to dedicated boundary
// ports on non-torus grids.
struct PortTable {
    const TilingGrid& g;
    std::unordered_map<std::uint64_t, int> ids;
    int next_id = 0;

    explicit PortTable(const TilingGrid& grid) : g(grid) {}

    static std::uint64_t key(std::int64_t x, std::int64_t y, int which) {
        const std::uint64_t ux = static_cast<std::uint64_t>(x + (1 << 20));
        const std::uint64_t uy = static_cast<std::uint64_t>(y + (1 << 20));
        return (ux << 40) | (uy << 8) | static_cast<std::uint64_t>(which);
    }
    int id(std::int64_t x, std::int64_t y, int which) {
        const IVec c = g.torus ? g.canon(x, y) : IVec{x, y};
        auto [it, fresh] = ids.emplace(key(c.x, c.y, which), next_id);
        if (fresh) ++next_id;
        return it->second;
    }
    // which: 0 = east edge of (i,j), 1 = north edge of (i,j),
    //        2 = dangling west boundary, 3 = dangling south boundary
    int east(std::int64_t i, std::int64_t j) { return id(i, j, 0); }
    int north(std::int64_t i, std::int64_t j) { return id(i, j, 1); }
    int west(std::int64_t i, std::int64_t j) {
        if (g.cell_exists(i - 1, j)) return east(i - 1, j);
        if (g.torus) return east(i - 1, j);
        return id(i, j, 2);
    }
    int south(std::int64_t i, std::int64_t j) {
        if (g.cell_exists(i, j - 1)) return north(i, j - 1);
        if (g.torus) return north(i, j - 1);
        return id(i, j, 3);
    }
};

struct UnionFind {
    std::vector<int> parent;
    int find(int a) {
        while (parent[a] != a) { parent[a] = parent[parent[a]]; a = parent[a]; }
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
    void ensure(int n) {
        const int old = static_cast<int>(parent.size());
        parent.resize(n);
        for (int i = old; i < n; ++i) parent[i] = i;
    }
};

} // namespace tiling_detail

// Number of connected path components; boundary-terminated strands each
// count once on non-torus grids.
inline int components(const TilingGrid& g) {
    using namespace tiling_detail;
    PortTable ports(g);
    UnionFind uf;
    std::vector<std::pair<int, int>> arcs;
    for (int j = 0; j < g.height; ++j) {
        for (int i = 0; i < g.width; ++i) {
            if (!g.occupied(i, j)) continue;
            const int o = g.orientation(i, j);
            const int pw = ports.west(i, j), pe = ports.east(i, j);
            const int pn = ports.north(i, j), ps = ports.south(i, j);
            if (o == 0) { arcs.emplace_back(pw, pn); arcs.emplace_back(ps, pe); }
            else { arcs.emplace_back(pn, pe); arcs.emplace_back(pw, ps); }
        }
    }
    uf.ensure(ports.next_id);
    for (auto [a, b] : arcs) uf.unite(a, b);
    std::vector<char> seen(static_cast<std::size_t>(ports.next_id), 0);
    int count = 0;
    for (auto [a, b] : arcs) {
        const int r = uf.find(a);
        if (!seen[static_cast<std::size_t>(r)]) { seen[static_cast<std::size_t>(r)] = 1; ++count; }
    }
    return count;
}

// Entering across a horizontal grid line (from S or N) is an h-crossing.
inline bool h_label(int entry_side) { return entry_side == 0 || entry_side == 2; }

// Traces every strand in canonical flow direction (into even tiles across
// horizontal lines) and returns the closed words, one per component.
// Torus-only; used by the L-system consistency tests.
inline std::vector<Word> trace_strands(const TilingGrid& g) {
    if (!g.torus) throw std::invalid_argument("strand tracing is defined for toroidal grids");
    // A strand state is (cell, entry side); sides: 0=S,1=E,2=N,3=W.
    // The arc pairing maps entry side to exit side.
    auto exit_side = [&](int orientation_deg, int entry) {
        if (orientation_deg == 0) {
            switch (entry) { case 3: return 2; case 2: return 3; case 0: return 1; default: return 0; }
        }
        switch (entry) { case 2: return 1; case 1: return 2; case 3: return 0; default: return 3; }
    };
    struct StateHash {
        std::size_t operator()(const std::pair<IVec, int>& s) const {
            return IVecHash{}(s.first) * 5 + static_cast<std::size_t>(s.second);
        }
    };
    std::unordered_map<std::pair<IVec, int>, char, StateHash> visited;
    std::vector<Word> words;
    for (int j0 = 0; j0 < g.height; ++j0) {
        for (int i0 = 0; i0 < g.width; ++i0) {
            for (int entry0 = 0; entry0 < 4; ++entry0) {
                // canonical flow: enter even cells from S/N (h lines), odd cells from E/W (v lines)
                const bool even = g.parity(i0, j0) == 0;
                const bool h_entry = entry0 == 0 || entry0 == 2;
                if (even != h_entry) continue;
                std::pair<IVec, int> state{IVec{i0, j0}, entry0};
                if (visited.count(state)) continue;
                Word w;
                w.closed = true;
                std::pair<IVec, int> cur = state;
                do {
                    visited[cur] = 1;
                    const auto [cell, entry] = cur;
                    w.symbols.push_back(h_label(entry) ? Symbol::CrossH : Symbol::CrossV);
                    const int o = g.orientation_at(cell.x, cell.y);
                    w.symbols.push_back(tile_turn(g.parity(cell.x, cell.y), o));
                    const int out = exit_side(o, entry);
                    IVec next = cell;
                    int next_entry = 0;
                    switch (out) {
                        case 0: next.y -= 1; next_entry = 2; break;
                        case 2: next.y += 1; next_entry = 0; break;
                        case 1: next.x += 1; next_entry = 3; break;
                        default: next.x -= 1; next_entry = 1; break;
                    }
                    next = g.canon(next.x, next.y);
                    cur = {next, next_entry};
                } while (cur != state);
                validate(w);
                words.push_back(std::move(w));
            }
        }
    }
    return words;
}

struct HingePlacement {
    double cx = 0.0, cy = 0.0;   // tile centre, drawing frame
    double rotation_deg = 0.0;   // signed
    double scale = 1.0;          // 1/(cos t + sin t)
};

inline double hinge_scale(double theta_deg) {
    const double t = theta_deg * 3.14159265358979323846 / 180.0;
    return 1.0 / (std::cos(t) + std::sin(t));
}

// Every tile rotates +/- theta by parity; op 0 turns even tiles clockwise
// (negative angles), op 1 the reverse. Scale keeps sliding vertices on the
// original edge lines.
inline std::vector<std::pair<int, HingePlacement>>
placements_at_angle(const TilingGrid& g, int op, double theta_deg) {
    if (theta_deg < 0.0 || theta_deg > 45.0)
        throw std::invalid_argument("theta must lie in [0, 45] degrees");
    const double s = hinge_scale(theta_deg);
    std::vector<std::pair<int, HingePlacement>> out;
    out.reserve(g.cell_count());
    for (int j = 0; j < g.height; ++j) {
        for (int i = 0; i < g.width; ++i) {
            if (!g.occupied(i, j)) continue;
            const bool even = g.parity(i, j) == 0;
            const bool clockwise = (op == 0) ? even : !even;
            HingePlacement hp;
            hp.cx = i + 0.5;
            hp.cy = j + 0.5;
            hp.rotation_deg = clockwise ? -theta_deg : theta_deg;
            hp.scale = s;
            out.emplace_back(j * g.width + i, hp);
        }
    }
    return out;
}

namespace tiling_detail {

// Hermite-style normalization of a torus lattice spanned by p and q into
// periods (width, shift) and (0, height).
struct TorusPeriods {
    int width = 0, height = 0, shift = 0;
};

inline TorusPeriods normalize_periods(IVec p, IVec q) {
    auto egcd = [](std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
        std::int64_t old_r = a, r = b, old_x = 1, xx = 0, old_y = 0, yy = 1;
        while (r != 0) {
            const std::int64_t qt = old_r / r;
            std::int64_t t = old_r - qt * r; old_r = r; r = t;
            t = old_x - qt * xx; old_x = xx; xx = t;
            t = old_y - qt * yy; old_y = yy; yy = t;
        }
        x = old_x; y = old_y;
        return old_r;
    };
    const std::int64_t det = p.x * q.y - p.y * q.x;
    if (det == 0) throw std::invalid_argument("degenerate torus periods");
    std::int64_t a, b;
    std::int64_t gg = egcd(p.x, q.x, a, b);
    if (gg < 0) { gg = -gg; a = -a; b = -b; }
    if (gg == 0) { // both x components zero: impossible with det != 0
        throw std::invalid_argument("degenerate torus periods");
    }
    TorusPeriods tp;
    tp.width = static_cast<int>(gg);
    tp.height = static_cast<int>(std::llabs(det) / gg);
    std::int64_t s = a * p.y + b * q.y;
    s = ((s % tp.height) + tp.height) % tp.height;
    tp.shift = static_cast<int>(s);
    return tp;
}

} // namespace tiling_detail

// A tile inserted by one hinge step, at the grid vertex shared by the cells
// (i,j), (i+1,j), (i,j+1), (i+1,j+1).
struct HingeInsertion {
    IVec vertex;    // (i, j) of that shared corner
    int orient = 0; // orientation of the inserted tile in the rotated frame
};

// Which crossings re-route through each vertex, and the turn the inserted
// tile applies to them: under op 0 an h-crossing inserts an L-turn tile and
// a v-crossing an R-turn tile, op 1 swaps.
inline std::vector<HingeInsertion> hinge_insertions(const TilingGrid& g, int op) {
    if (op != 0 && op != 1) throw std::invalid_argument("op must be 0 or 1");
    auto edge_exists_v = [&](std::int64_t i, std::int64_t j) { // between (i,j) and (i+1,j)
        return g.cell_exists(i, j) && g.cell_exists(i + 1, j);
    };
    auto edge_exists_h = [&](std::int64_t i, std::int64_t j) { // between (i,j) and (i,j+1)
        return g.cell_exists(i, j) && g.cell_exists(i, j + 1);
    };
    std::vector<HingeInsertion> out;
    const int lo_i = g.torus ? 0 : -1, hi_i = g.width;
    const int lo_j = g.torus ? 0 : -1, hi_j = g.height;
    for (int j = lo_j; j < hi_j; ++j) {
        for (int i = lo_i; i < hi_i; ++i) {
            const int pnw = g.torus ? g.parity(g.canon(i, j + 1).x, g.canon(i, j + 1).y)
                                    : g.parity(i, j + 1);
            const bool vertical = (op == 0) ? (pnw == 0) : (pnw == 1);
            bool any;
            if (vertical) any = edge_exists_v(i, j + 1) || edge_exists_v(i, j);
            else any = edge_exists_h(i + 1, j) || edge_exists_h(i, j);
            if (!any) continue;
            // vertical cell edges are v-crossings, horizontal ones h-crossings
            const Symbol turn = vertical ? ((op == 0) ? Symbol::TurnR : Symbol::TurnL)
                                         : ((op == 0) ? Symbol::TurnL : Symbol::TurnR);
            // inserted tiles are even; an even tile turns R at orientation 0
            out.push_back({{i, j}, turn == Symbol::TurnR ? 0 : 90});
        }
    }
    return out;
}

// One discrete hinge step. Old tiles map onto the 45-degree rotated lattice
// (all with odd parity afterwards); inserted tiles fill the remaining cells.
inline TilingGrid hinge_step(const TilingGrid& g, int op) {
    struct NewTile { IVec pos; int orient; };
    std::vector<NewTile> tiles;
    tiles.reserve(g.cell_count() * 2);

    for (int j = 0; j < g.height; ++j) {
        for (int i = 0; i < g.width; ++i) {
            if (!g.occupied(i, j)) continue;
            const Symbol t = tile_turn(g.parity(i, j), g.orientation(i, j));
            // old tiles become odd; an odd tile turns L at orientation 0
            tiles.push_back({{i + j, static_cast<std::int64_t>(j) - i},
                             t == Symbol::TurnL ? 0 : 90});
        }
    }
    for (const HingeInsertion& ins : hinge_insertions(g, op)) {
        tiles.push_back({{ins.vertex.x + ins.vertex.y + 1, ins.vertex.y - ins.vertex.x},
                         ins.orient});
    }

    TilingGrid out;
    out.torus = g.torus;
    if (g.torus) {
        const IVec pu{g.width + static_cast<std::int64_t>(g.wrap_shift),
                      g.wrap_shift - static_cast<std::int64_t>(g.width)};
        const IVec pv{g.height, g.height};
        const auto tp = tiling_detail::normalize_periods(pu, pv);
        out.width = tp.width;
        out.height = tp.height;
        out.wrap_shift = tp.shift;
        out.parity_origin = 1; // old tiles (even coordinate sums) become odd
        out.orient.assign(static_cast<std::size_t>(out.width) * out.height, -1);
        for (const NewTile& t : tiles) {
            const IVec c = out.canon(t.pos.x, t.pos.y);
            auto& slot = out.orient[static_cast<std::size_t>(c.y) * out.width + static_cast<int>(c.x)];
            if (slot >= 0) throw domain_error("hinge step placed two tiles in one cell");
            slot = static_cast<std::int16_t>(t.orient);
        }
        for (auto o : out.orient)
            if (o < 0) throw domain_error("hinge step left an empty torus cell");
    } else {
        IVec mn = tiles.front().pos, mx = tiles.front().pos;
        for (const NewTile& t : tiles) {
            mn.x = std::min(mn.x, t.pos.x); mn.y = std::min(mn.y, t.pos.y);
            mx.x = std::max(mx.x, t.pos.x); mx.y = std::max(mx.y, t.pos.y);
        }
        // translate by an even vector so the parity field is untouched
        IVec shift{mn.x, mn.y};
        if (((shift.x + shift.y) % 2 + 2) % 2 != 0) shift.x -= 1;
        out.width = static_cast<int>(mx.x - shift.x + 1);
        out.height = static_cast<int>(mx.y - shift.y + 1);
        out.parity_origin = 1;
        out.orient.assign(static_cast<std::size_t>(out.width) * out.height, -1);
        for (const NewTile& t : tiles) {
            auto& slot = out.orient[static_cast<std::size_t>(t.pos.y - shift.y) * out.width +
                                    static_cast<int>(t.pos.x - shift.x)];
            if (slot >= 0) throw domain_error("hinge step placed two tiles in one cell");
            slot = static_cast<std::int16_t>(t.orient);
        }
    }
    return out;
}

} // namespace truchet
