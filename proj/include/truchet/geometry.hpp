#pragma once

// Center-to-center interpretation of words as lattice paths, the
// non-crossing test, and the containment bound check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "truchet/core.hpp"

namespace truchet {

struct IVec {
    std::int64_t x = 0;
    std::int64_t y = 0;
    friend bool operator==(const IVec& a, const IVec& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const IVec& a, const IVec& b) { return !(a == b); }
    IVec operator+(const IVec& o) const { return {x + o.x, y + o.y}; }
    IVec operator-(const IVec& o) const { return {x - o.x, y - o.y}; }
};

struct IVecHash {
    std::size_t operator()(const IVec& v) const {
        std::uint64_t h = static_cast<std::uint64_t>(v.x) * 0x9e3779b97f4a7c15ull;
        h ^= static_cast<std::uint64_t>(v.y) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

// Frame: x right, y up. Turn R is clockwise (N -> E -> S -> W -> N).
enum class Heading : std::uint8_t { N = 0, E = 1, S = 2, W = 3 };

inline Heading turn_right(Heading h) { return static_cast<Heading>((static_cast<int>(h) + 1) & 3); }
inline Heading turn_left(Heading h)  { return static_cast<Heading>((static_cast<int>(h) + 3) & 3); }

inline IVec heading_step(Heading h) {
    switch (h) {
        case Heading::N: return {0, 1};
        case Heading::E: return {1, 0};
        case Heading::S: return {0, -1};
        case Heading::W: return {-1, 0};
    }
    return {0, 0};
}

struct LatticePath {
    std::vector<IVec> points; // unit steps between consecutive points
    bool closed = false;

    std::size_t edge_count() const { return points.empty() ? 0 : points.size() - 1; }
};

// Walks the word from a start pose: crossings step one unit in the current
// heading, turns rotate the heading. Closed words must return to the start
// pose or the walk is rejected.
inline LatticePath interpret(const Word& w, IVec start = {0, 0}, Heading heading = Heading::S) {
    validate(w);
    LatticePath p;
    p.closed = w.closed;
    p.points.reserve(static_cast<std::size_t>(w.crossings()) + 1);
    IVec pos = start;
    p.points.push_back(pos);
    Heading h = heading;
    for (Symbol s : w.symbols) {
        switch (s) {
            case Symbol::TurnL: h = turn_left(h); break;
            case Symbol::TurnR: h = turn_right(h); break;
            default:
                pos = pos + heading_step(h);
                p.points.push_back(pos);
        }
    }
    if (w.closed) {
        if (pos != start || h != heading)
            throw domain_error("closed word walk does not return to its start pose");
        if (p.edge_count() < 4) throw domain_error("closed path needs at least 4 edges");
    }
    return p;
}

namespace detail {

// Undirected unit edge key: endpoint with the canonical (lexicographically
// smaller) end first, packed into the two IVecs.
struct EdgeKey {
    IVec a, b;
    friend bool operator==(const EdgeKey& l, const EdgeKey& r) { return l.a == r.a && l.b == r.b; }
};
struct EdgeKeyHash {
    std::size_t operator()(const EdgeKey& e) const {
        IVecHash h;
        return h(e.a) * 1000003u ^ h(e.b);
    }
};
inline EdgeKey edge_key(IVec a, IVec b) {
    if (b.x < a.x || (b.x == a.x && b.y < a.y)) std::swap(a, b);
    return {a, b};
}

inline int dir_index(const IVec& d) {
    if (d.x == 0 && d.y == 1) return 0;  // N
    if (d.x == 1 && d.y == 0) return 1;  // E
    if (d.x == 0 && d.y == -1) return 2; // S
    if (d.x == -1 && d.y == 0) return 3; // W
    return -1;
}

} // namespace detail

// True iff no lattice edge is traversed twice and no two passages through a
// shared vertex cross transversally. Vertices may repeat: the dragon's
// corners touch without crossing, and that must pass.
inline bool is_non_crossing(const LatticePath& p) {
    using namespace detail;
    std::unordered_set<EdgeKey, EdgeKeyHash> edges;
    edges.reserve(p.points.size() * 2);
    for (std::size_t i = 0; i + 1 < p.points.size(); ++i) {
        if (!edges.insert(edge_key(p.points[i], p.points[i + 1])).second)
            return false; // edge reused
    }
    // passages per vertex: pair of stub directions (towards previous, towards next)
    std::unordered_map<IVec, std::vector<std::pair<int, int>>, IVecHash> passages;
    const std::size_t m = p.edge_count();
    for (std::size_t i = 0; i < p.points.size(); ++i) {
        bool has_prev = i > 0, has_next = i + 1 < p.points.size();
        if (p.closed && (i == 0 || i + 1 == p.points.size())) {
            if (i + 1 == p.points.size()) continue; // same vertex as index 0
            has_prev = has_next = true;
        }
        if (!has_prev || !has_next) continue;
        const IVec& v = p.points[i];
        const IVec& prev = has_prev ? p.points[i == 0 ? m - 1 : i - 1] : v;
        const IVec& next = p.points[i + 1];
        int din = dir_index(prev - v);
        int dout = dir_index(next - v);
        passages[v].emplace_back(din, dout);
    }
    for (const auto& [v, list] : passages) {
        if (list.size() < 2) continue;
        for (std::size_t i = 0; i < list.size(); ++i) {
            for (std::size_t j = i + 1; j < list.size(); ++j) {
                // two passages cross iff their stub pairs interleave in the
                // cyclic order N,E,S,W around the vertex
                bool mark[4] = {false, false, false, false};
                mark[list[i].first] = mark[list[i].second] = true;
                int a = list[j].first, b = list[j].second;
                // count how many of passage i's stubs lie strictly between a and b
                auto between = [&](int lo, int hi) {
                    int cnt = 0;
                    for (int k = (lo + 1) & 3; k != hi; k = (k + 1) & 3)
                        if (mark[k]) ++cnt;
                    return cnt;
                };
                int c1 = between(a, b);
                int c2 = between(b, a);
                if (c1 == 1 && c2 == 1) return false; // transversal crossing
            }
        }
    }
    return true;
}

struct IBox {
    std::int64_t min_x = 0, min_y = 0, max_x = 0, max_y = 0;
};

struct EndpointInfo {
    double distance = 0.0;
    std::int64_t squared_distance = 0;
    IBox bbox;
};

inline EndpointInfo endpoint_distance_and_box(const LatticePath& p) {
    if (p.closed) throw domain_error("endpoint distance is defined for open paths only");
    if (p.points.empty()) throw domain_error("empty path");
    EndpointInfo info;
    const IVec d = p.points.back() - p.points.front();
    info.squared_distance = d.x * d.x + d.y * d.y;
    info.distance = std::sqrt(static_cast<double>(info.squared_distance));
    info.bbox = {p.points.front().x, p.points.front().y, p.points.front().x, p.points.front().y};
    for (const IVec& q : p.points) {
        info.bbox.min_x = std::min(info.bbox.min_x, q.x);
        info.bbox.min_y = std::min(info.bbox.min_y, q.y);
        info.bbox.max_x = std::max(info.bbox.max_x, q.x);
        info.bbox.max_y = std::max(info.bbox.max_y, q.y);
    }
    return info;
}

// Max distance of any vertex of apply_ops("v", first k ops of B repeated)
// from the unit tile square spanned by the original segment, after
// normalizing the endpoints. The segment runs down the centre of that
// square; distances are measured from the square because that is what the
// spreading argument bounds by 2 - sqrt(2). (Distance from the segment
// itself exceeds that constant already for 0^inf.)
inline double containment_ratio(const OpSequence& pattern, int k) {
    if (k < 0) throw std::invalid_argument("depth must be >= 0");
    OpSequence ops;
    if (k > 0) {
        if (pattern.empty()) throw std::invalid_argument("empty op pattern with positive depth");
        ops.bits.reserve(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) ops.bits.push_back(pattern.bits[i % pattern.size()]);
    }
    const Word w = apply_ops(make_word("v"), ops);
    const LatticePath p = interpret(w);
    const IVec a = p.points.front(), b = p.points.back();
    const double ax = static_cast<double>(a.x), ay = static_cast<double>(a.y);
    const double dx = static_cast<double>(b.x - a.x), dy = static_cast<double>(b.y - a.y);
    const double len2 = dx * dx + dy * dy;
    double worst = 0.0;
    for (const IVec& q : p.points) {
        const double qx = static_cast<double>(q.x) - ax;
        const double qy = static_cast<double>(q.y) - ay;
        // coordinates in span lengths: t along the segment, u across it;
        // the tile square is t in [0,1], u in [-1/2, 1/2]
        const double t = (qx * dx + qy * dy) / len2;
        const double u = (qx * dy - qy * dx) / len2;
        const double dt = std::max({0.0, -t, t - 1.0});
        const double du = std::max(0.0, std::fabs(u) - 0.5);
        worst = std::max(worst, std::hypot(dt, du));
    }
    return worst;
}

struct Similarity {
    double scale = 1.0;
    double rotation_deg = 0.0;
    double tx = 0.0, ty = 0.0;

    std::pair<double, double> apply(double x, double y) const {
        const double r = rotation_deg * 3.14159265358979323846 / 180.0;
        const double c = std::cos(r) * scale, s = std::sin(r) * scale;
        return {c * x - s * y + tx, s * x + c * y + ty};
    }
};

struct PlanarPath {
    std::vector<std::pair<double, double>> points;
    Similarity transform;
};

// Unique orientation-preserving similarity taking the path endpoints to
// (target_a, target_b).
inline PlanarPath normalize(const LatticePath& p,
                            std::pair<double, double> target_a,
                            std::pair<double, double> target_b) {
    if (p.closed) throw domain_error("normalize expects an open path");
    if (p.points.size() < 2) throw domain_error("normalize needs at least two points");
    const IVec a = p.points.front(), b = p.points.back();
    if (a == b) throw domain_error("normalize needs distinct endpoints");
    const double sx = static_cast<double>(b.x - a.x);
    const double sy = static_cast<double>(b.y - a.y);
    const double txv = target_b.first - target_a.first;
    const double tyv = target_b.second - target_a.second;
    if (txv == 0.0 && tyv == 0.0) throw domain_error("degenerate target segment");
    // complex division (txv + i tyv) / (sx + i sy)
    const double denom = sx * sx + sy * sy;
    const double cre = (txv * sx + tyv * sy) / denom;
    const double cim = (tyv * sx - txv * sy) / denom;
    Similarity sim;
    sim.scale = std::hypot(cre, cim);
    sim.rotation_deg = std::atan2(cim, cre) * 180.0 / 3.14159265358979323846;
    // translation: target_a - c * a
    sim.tx = target_a.first - (cre * static_cast<double>(a.x) - cim * static_cast<double>(a.y));
    sim.ty = target_a.second - (cim * static_cast<double>(a.x) + cre * static_cast<double>(a.y));
    PlanarPath out;
    out.transform = sim;
    out.points.reserve(p.points.size());
    for (const IVec& q : p.points)
        out.points.push_back(sim.apply(static_cast<double>(q.x), static_cast<double>(q.y)));
    return out;
}

} // namespace truchet
