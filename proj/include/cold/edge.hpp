#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cold {

using VertexId = std::uint32_t;

enum class Mark : std::uint8_t { Undirected, Directed };

// One edge of a mixed graph. Undirected edges are normalized so that
// tail < head; directed edges keep their real orientation.
struct Edge {
    VertexId tail = 0;
    VertexId head = 0;
    Mark mark = Mark::Undirected;

    static Edge undirected(VertexId a, VertexId b);
    static Edge directed(VertexId from, VertexId to);

    VertexId lo() const { return tail < head ? tail : head; }
    VertexId hi() const { return tail < head ? head : tail; }
    bool is_directed() const { return mark == Mark::Directed; }

    // Sort rank within one vertex pair: undirected, then lo->hi, then hi->lo.
    int pair_rank() const;

    bool operator==(const Edge& o) const = default;
};

// Canonical 64-bit code for an unordered pair, usable as a hash key.
inline std::uint64_t pair_code(VertexId a, VertexId b) {
    VertexId lo = a < b ? a : b;
    VertexId hi = a < b ? b : a;
    return (static_cast<std::uint64_t>(lo) << 32) | hi;
}

// Ordered code, distinguishes u->v from v->u.
inline std::uint64_t arc_code(VertexId from, VertexId to) {
    return (static_cast<std::uint64_t>(from) << 32) | to;
}

bool edge_less(const Edge& a, const Edge& b);

// A set of edges kept sorted by (lo, hi, pair_rank). The same vertex pair
// may carry both directions at once; that state is reported by
// has_conflict() and is how a failed merge shows its witnesses. A pair
// never carries an undirected mark alongside a directed one: inserting a
// directed edge absorbs the undirected edge on that pair, and inserting an
// undirected edge onto a directed pair is a no-op.
class EdgeSet {
public:
    EdgeSet() = default;
    EdgeSet(std::initializer_list<Edge> edges);

    void insert(const Edge& e);
    void insert_all(const EdgeSet& other);
    bool contains(const Edge& e) const;
    bool contains_arc(VertexId from, VertexId to) const;
    bool contains_pair(VertexId a, VertexId b) const;

    // Set difference on exact edges (mark and direction must match).
    EdgeSet minus(const EdgeSet& other) const;

    // True if some pair carries both directions.
    bool has_conflict() const;
    // First conflicting pair, as the two clashing edges.
    std::pair<Edge, Edge> first_conflict() const;

    std::size_t size() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }
    std::size_t directed_count() const;

    auto begin() const { return edges_.begin(); }
    auto end() const { return edges_.end(); }
    const Edge& operator[](std::size_t i) const { return edges_[i]; }

    bool operator==(const EdgeSet& o) const = default;

private:
    std::vector<Edge> edges_;
    std::size_t pair_lower_bound(VertexId lo, VertexId hi) const;
};

// Union of two mixed edge sets where a directed mark beats an undirected
// one on the same pair. Opposite directions from the two sides are both
// kept, which makes the result conflicted; callers that require a clean
// graph check has_conflict() afterwards.
EdgeSet mixed_union(const EdgeSet& a, const EdgeSet& b);

}  // namespace cold
