#pragma once

// Boundary decomposition of B^inf fractile sides: builds the marked image of
// a segment (or corner) under an operation string, walks the region contour
// to classify boundary pieces as scaled copies of U, V, W, assembles the
// 3x3 decomposition matrix, and solves the resulting sim-value equation.
//
// The walk operates on the union of per-edge diamonds (the two triangles
// flanking each traversed lattice edge). Its boundary consists of cell
// half-diagonals; consecutive half-diagonals through one cell center form
// either a "tent" over a lattice edge (a scaled U or V side curve of that
// edge) or a straight unit diagonal (a scaled W corner curve).

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "truchet/core.hpp"
#include "truchet/geometry.hpp"

namespace truchet {

// Tile parity on the refined grid. Path vertices are tile centers at
// integer coordinates; the first edge of any rewritten word is an h-crossing
// and must enter an even tile, which anchors the checkerboard.
inline bool tile_is_even(std::int64_t i, std::int64_t j) {
    return ((i + j) % 2 + 2) % 2 == 1;
}

struct MarkedPath {
    LatticePath path;
    std::vector<Symbol> labels; // per-edge crossing label, alternating h,v
    int start_parity = 0;       // parity bit of the tile the first edge enters (0 = even)
    bool corner = false;        // true for images of the two-segment corner seed
    Symbol seed_cross = Symbol::CrossV; // first crossing letter of the coarse seed
};

namespace detail {

inline MarkedPath make_marked(const Word& seed, const OpSequence& ops, bool corner) {
    if (ops.empty()) throw std::invalid_argument("need at least one operation");
    const Word w = apply_ops(seed, ops);
    MarkedPath mp;
    mp.corner = corner;
    for (Symbol s : seed.symbols)
        if (is_cross(s)) { mp.seed_cross = s; break; }
    mp.path = interpret(w, {0, 0}, Heading::S);
    mp.labels.reserve(static_cast<std::size_t>(w.crossings()));
    for (Symbol s : w.symbols)
        if (is_cross(s)) mp.labels.push_back(s);
    // geometric sanity: vertical edges carry h, horizontal edges carry v
    for (std::size_t i = 0; i + 1 < mp.path.points.size(); ++i) {
        const bool vertical = mp.path.points[i].x == mp.path.points[i + 1].x;
        if (vertical != (mp.labels[i] == Symbol::CrossH))
            throw domain_error("edge label does not match its geometry");
    }
    const IVec head = mp.path.points[1];
    mp.start_parity = tile_is_even(head.x, head.y) ? 0 : 1;
    return mp;
}

} // namespace detail

// Image of a single marked segment under B, drawn from the standard pose.
inline MarkedPath image_of_segment(const OpSequence& ops) {
    return detail::make_marked(make_word("v"), ops, /*corner=*/false);
}

// Image of the right-angle corner seed under B; its concave-side walk
// produces the W row of the decomposition matrix. The corner concatenates an
// h segment and a v segment, matching the side pairing of the grid coloring.
inline MarkedPath image_of_corner(const OpSequence& ops) {
    return detail::make_marked(make_word("hLv"), ops, /*corner=*/true);
}

enum class BoundarySide { Left, Right };

struct BoundaryClassification {
    std::int64_t u_pieces = 0;
    std::int64_t v_pieces = 0;
    std::int64_t w_pieces = 0;
    std::vector<IVec> boundary_vertices; // interior walk vertices, endpoints excluded
};

namespace detail {

// Walk cells are unit squares keyed by their lower-left corner; path
// vertices sit at the cell corners. Corner order: SW, SE, NE, NW.
inline std::array<IVec, 4> cell_corners(const IVec& c) {
    return {IVec{c.x, c.y}, IVec{c.x + 1, c.y}, IVec{c.x + 1, c.y + 1}, IVec{c.x, c.y + 1}};
}

// Side order: S, E, N, W. Sides incident to corner k are side[k] and side[(k+3)&3].
inline EdgeKey cell_side(const IVec& c, int side) {
    switch (side) {
        case 0: return edge_key({c.x, c.y}, {c.x + 1, c.y});         // S
        case 1: return edge_key({c.x + 1, c.y}, {c.x + 1, c.y + 1}); // E
        case 2: return edge_key({c.x, c.y + 1}, {c.x + 1, c.y + 1}); // N
        default: return edge_key({c.x, c.y}, {c.x, c.y + 1});        // W
    }
}

// The two cell sides meeting at corner k (S,E,N,W indices).
inline std::pair<int, int> corner_sides(int k) {
    switch (k) {
        case 0: return {0, 3}; // SW: S, W
        case 1: return {0, 1}; // SE: S, E
        case 2: return {2, 1}; // NE: N, E
        default: return {2, 3}; // NW: N, W
    }
}

struct EdgeSet {
    std::unordered_set<EdgeKey, EdgeKeyHash> edges;
    bool contains(const EdgeKey& k) const { return edges.count(k) != 0; }
};

// Canonical flow of a lattice edge: h edges (vertical) point into the even
// tile, v edges (horizontal) into the odd tile.
struct EdgeFlow {
    IVec tail, head;
    bool is_h = false;
};

inline EdgeFlow edge_flow(const EdgeKey& e) {
    EdgeFlow f;
    f.is_h = (e.a.x == e.b.x);
    const bool head_even_wanted = f.is_h;
    const bool a_even = tile_is_even(e.a.x, e.a.y);
    if (a_even == head_even_wanted) { f.head = e.a; f.tail = e.b; }
    else { f.head = e.b; f.tail = e.a; }
    return f;
}

// Side rule for the refined grid coloring: the U side of an h edge is the
// traveler's left of its canonical flow, the U side of a v edge the
// traveler's right. Calibrated against the paper's worked 0001 example.
inline bool u_side_is_left(bool is_h) { return is_h; }

// Whether the cell center `c` lies on the U side of edge e.
inline bool cell_on_u_side(const EdgeKey& e, const IVec& cell) {
    const EdgeFlow f = edge_flow(e);
    const double dx = static_cast<double>(f.head.x - f.tail.x);
    const double dy = static_cast<double>(f.head.y - f.tail.y);
    const double mx = (static_cast<double>(f.head.x) + f.tail.x) / 2.0;
    const double my = (static_cast<double>(f.head.y) + f.tail.y) / 2.0;
    const double cx = cell.x + 0.5, cy = cell.y + 0.5;
    const double cross = dx * (cy - my) - dy * (cx - mx);
    const bool on_left = cross > 0.0;
    return on_left == u_side_is_left(f.is_h);
}

struct HalfDiag {
    IVec cell;
    int corner = 0; // SW,SE,NE,NW
};

inline bool cell_side_in(const EdgeSet& es, const IVec& c, int side) {
    return es.contains(cell_side(c, side));
}

// Half-diagonal (cell center <-> corner k) lies on the region contour iff
// exactly one of the two cell sides at that corner is a traversed edge.
inline bool halfdiag_on_boundary(const EdgeSet& es, const IVec& c, int k) {
    auto [s1, s2] = corner_sides(k);
    return cell_side_in(es, c, s1) != cell_side_in(es, c, s2);
}

} // namespace detail

// Walks one side of the contour from the path start to the path end and
// classifies each boundary piece. Fails loudly (domain_error) if the contour
// does not have the expected structure.
inline BoundaryClassification classify_boundary(const MarkedPath& mp, BoundarySide side) {
    using namespace detail;
    if (mp.path.points.size() < 2) throw domain_error("marked path too short");
    for (std::size_t i = 0; i + 1 < mp.labels.size(); ++i)
        if (mp.labels[i] == mp.labels[i + 1])
            throw domain_error("inconsistent labeling: h/v alternation violated");

    EdgeSet es;
    es.edges.reserve(mp.path.points.size() * 2);
    for (std::size_t i = 0; i + 1 < mp.path.points.size(); ++i) {
        if (!es.edges.insert(edge_key(mp.path.points[i], mp.path.points[i + 1])).second)
            throw domain_error("path traverses an edge twice; boundary walk undefined");
    }

    // Map from lattice vertex to its boundary half-diagonals.
    std::unordered_map<IVec, std::vector<HalfDiag>, IVecHash> at_vertex;
    at_vertex.reserve(es.edges.size() * 2);
    std::unordered_set<IVec, IVecHash> seen_cells;
    seen_cells.reserve(es.edges.size() * 2);
    for (const EdgeKey& e : es.edges) {
        // flanking cells of the edge
        IVec cells[2];
        if (e.a.x == e.b.x) { cells[0] = {e.a.x - 1, std::min(e.a.y, e.b.y)}; cells[1] = {e.a.x, std::min(e.a.y, e.b.y)}; }
        else { cells[0] = {std::min(e.a.x, e.b.x), e.a.y - 1}; cells[1] = {std::min(e.a.x, e.b.x), e.a.y}; }
        for (const IVec& c : cells) {
            if (!seen_cells.insert(c).second) continue;
            const auto corners = cell_corners(c);
            for (int k = 0; k < 4; ++k)
                if (halfdiag_on_boundary(es, c, k))
                    at_vertex[corners[k]].push_back({c, k});
        }
    }

    const IVec start = mp.path.points.front();
    const IVec goal = mp.path.points.back();
    auto it = at_vertex.find(start);
    if (it == at_vertex.end() || it->second.size() != 2)
        throw domain_error("path start does not split the contour in two arcs");

    // Pick the arc whose first cell lies on the requested side of the first
    // COARSE edge. Rewritten words always begin with an h crossing; when the
    // coarse seed begins with a v crossing, the side assignment of the coarse
    // edge is the mirror of the first refined edge's, so the cell test flips.
    const EdgeKey e1 = edge_key(mp.path.points[0], mp.path.points[1]);
    const bool labels_agree = (mp.seed_cross == Symbol::CrossH);
    const bool want_u = (side == BoundarySide::Left) == labels_agree;
    HalfDiag cur{};
    bool found = false;
    for (const HalfDiag& hd : it->second) {
        if (cell_on_u_side(e1, hd.cell) == want_u) { cur = hd; found = true; break; }
    }
    if (!found) throw domain_error("no contour arc starts on the requested side");

    BoundaryClassification out;
    IVec at = start;
    const std::size_t step_limit = 8 * es.edges.size() + 16;
    for (std::size_t steps = 0; ; ++steps) {
        if (steps > step_limit) throw domain_error("contour walk did not terminate");
        // cross the cell: find the paired half-diagonal through this center
        const IVec c = cur.cell;
        int present[4];
        int npresent = 0;
        for (int k = 0; k < 4; ++k)
            if (halfdiag_on_boundary(es, c, k)) present[npresent++] = k;
        int next_corner = -1;
        if (npresent == 2) {
            next_corner = (present[0] == cur.corner) ? present[1] : present[0];
        } else if (npresent == 4) {
            // pinched cell (two opposite sides traversed): stay on the side
            // curve of the traversed side at the entry corner
            auto [s1, s2] = corner_sides(cur.corner);
            const int in_side = cell_side_in(es, c, s1) ? s1 : s2;
            for (int k = 0; k < 4; ++k) {
                auto [t1, t2] = corner_sides(k);
                if (k != cur.corner && (t1 == in_side || t2 == in_side)) { next_corner = k; break; }
            }
        } else {
            throw domain_error("contour cell with unexpected half-diagonal count");
        }
        const auto corners = cell_corners(c);
        const IVec to = corners[next_corner];
        // classify the piece spanned inside this cell
        if (((next_corner - cur.corner) & 3) == 2) {
            out.w_pieces += 1; // straight unit diagonal
        } else {
            // tent over the shared cell side: that side's curve faces into the cell
            auto [s1, s2] = corner_sides(cur.corner);
            auto [t1, t2] = corner_sides(next_corner);
            const int shared = (s1 == t1 || s1 == t2) ? s1 : s2;
            const EdgeKey g = cell_side(c, shared);
            if (cell_on_u_side(g, c)) out.u_pieces += 1;
            else out.v_pieces += 1;
        }
        at = to;
        if (at == goal) break;
        if (at == start) throw domain_error("contour walk returned to start before reaching the end");
        auto vit = at_vertex.find(at);
        if (vit == at_vertex.end() || vit->second.size() != 2)
            throw domain_error("contour vertex with unexpected degree");
        const HalfDiag back{c, next_corner};
        const auto& pair = vit->second;
        if (pair[0].cell == back.cell && pair[0].corner == back.corner) cur = pair[1];
        else cur = pair[0];
        out.boundary_vertices.push_back(at);
    }
    return out;
}

struct DecompositionMatrix {
    std::array<std::array<std::int64_t, 3>, 3> m{}; // rows U,V,W over columns U',V',W'
    int n = 0;                                      // |B|; pieces are scaled by 2^(-n/2)

    double scale() const { return std::pow(2.0, -0.5 * n); }
};

struct CharPoly {
    // c_M(x) = x^3 - a x^2 - b x - c, exact integers
    std::int64_t a = 0, b = 0, c = 0;
};

inline CharPoly char_poly(const DecompositionMatrix& dm) {
    const auto& m = dm.m;
    CharPoly p;
    p.a = m[0][0] + m[1][1] + m[2][2];
    const std::int64_t minor12 = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const std::int64_t minor13 = m[0][0] * m[2][2] - m[0][2] * m[2][0];
    const std::int64_t minor23 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    p.b = -(minor12 + minor13 + minor23);
    p.c = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    return p;
}

// Exact Cayley-Hamilton residual: M^3 - a M^2 - b M - c I, which must vanish.
inline bool cayley_hamilton_holds(const DecompositionMatrix& dm) {
    const CharPoly p = char_poly(dm);
    using I = __int128;
    I m[3][3], m2[3][3], m3[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = dm.m[i][j];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            I s = 0;
            for (int k = 0; k < 3; ++k) s += m[i][k] * m[k][j];
            m2[i][j] = s;
        }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            I s = 0;
            for (int k = 0; k < 3; ++k) s += m2[i][k] * m[k][j];
            m3[i][j] = s;
        }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            I r = m3[i][j] - I(p.a) * m2[i][j] - I(p.b) * m[i][j] - (i == j ? I(p.c) : I(0));
            if (r != 0) return false;
        }
    return true;
}

inline DecompositionMatrix decomposition_matrix(const OpSequence& ops) {
    if (ops.empty()) throw std::invalid_argument("need at least one operation");
    DecompositionMatrix dm;
    dm.n = static_cast<int>(ops.size());
    const MarkedPath seg = image_of_segment(ops);
    const MarkedPath cor = image_of_corner(ops);
    const BoundaryClassification u = classify_boundary(seg, BoundarySide::Left);
    const BoundaryClassification v = classify_boundary(seg, BoundarySide::Right);
    const BoundaryClassification w = classify_boundary(cor, BoundarySide::Left);
    dm.m[0] = {u.u_pieces, u.v_pieces, u.w_pieces};
    dm.m[1] = {v.u_pieces, v.v_pieces, v.w_pieces};
    dm.m[2] = {w.u_pieces, w.v_pieces, w.w_pieces};
    return dm;
}

struct SimValueReport {
    OpSequence ops;
    DecompositionMatrix matrix;
    CharPoly poly;
    bool applicable = false;
    double lambda = 0.0;    // root in (0,1) of c l^3 + b l^2 + a l = 1
    double sim_value = 0.0; // 2 log2(1/lambda) / n
    std::string diagnostic; // nonempty when classification failed loudly
};

// The sim equation reverses the characteristic polynomial: with
// c_M(x) = x^3 - a x^2 - b x - c and a,b,c >= 0, the dominant root of c_M is
// 1/lambda where c l^3 + b l^2 + a l = 1. The left side is strictly
// increasing on [0,inf), so bisection on [0,1] finds the unique root.
inline double solve_sim_lambda(const CharPoly& p, double tol = 1e-12) {
    auto f = [&](double l) {
        return ((static_cast<double>(p.c) * l + static_cast<double>(p.b)) * l +
                static_cast<double>(p.a)) * l - 1.0;
    };
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline SimValueReport sim_value(const OpSequence& ops) {
    SimValueReport rep;
    rep.ops = ops;
    try {
        rep.matrix = decomposition_matrix(ops);
    } catch (const domain_error& e) {
        rep.matrix.n = static_cast<int>(ops.size());
        rep.applicable = false;
        rep.diagnostic = e.what();
        return rep;
    }
    rep.poly = char_poly(rep.matrix);
    const auto& p = rep.poly;
    rep.applicable = p.a >= 0 && p.b >= 0 && p.c >= 0 &&
                     !(p.a == 0 && p.b == 0 && p.c == 0) &&
                     (p.a + p.b + p.c > 1);
    if (rep.applicable) {
        rep.lambda = solve_sim_lambda(p);
        rep.sim_value = 2.0 * std::log2(1.0 / rep.lambda) / rep.matrix.n;
    }
    return rep;
}

} // namespace truchet
