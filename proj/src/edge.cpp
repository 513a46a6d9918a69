#include "cold/edge.hpp"

#include <algorithm>

#include "cold/errors.hpp"

namespace cold {

Edge Edge::undirected(VertexId a, VertexId b) {
    if (a == b) throw InputError("self loop not allowed");
    Edge e;
    e.tail = a < b ? a : b;
    e.head = a < b ? b : a;
    e.mark = Mark::Undirected;
    return e;
}

Edge Edge::directed(VertexId from, VertexId to) {
    if (from == to) throw InputError("self loop not allowed");
    Edge e;
    e.tail = from;
    e.head = to;
    e.mark = Mark::Directed;
    return e;
}

int Edge::pair_rank() const {
    if (mark == Mark::Undirected) return 0;
    return tail < head ? 1 : 2;
}

bool edge_less(const Edge& a, const Edge& b) {
    if (a.lo() != b.lo()) return a.lo() < b.lo();
    if (a.hi() != b.hi()) return a.hi() < b.hi();
    return a.pair_rank() < b.pair_rank();
}

EdgeSet::EdgeSet(std::initializer_list<Edge> edges) {
    for (const Edge& e : edges) insert(e);
}

std::size_t EdgeSet::pair_lower_bound(VertexId lo, VertexId hi) const {
    Edge probe;
    probe.tail = lo;
    probe.head = hi;
    probe.mark = Mark::Undirected;
    auto it = std::lower_bound(edges_.begin(), edges_.end(), probe, edge_less);
    return static_cast<std::size_t>(it - edges_.begin());
}

void EdgeSet::insert(const Edge& e) {
    std::size_t i = pair_lower_bound(e.lo(), e.hi());
    // Inspect what this pair already carries (at most three slots).
    std::size_t end = i;
    bool have_und = false, have_same = false, have_rev = false;
    std::size_t und_at = 0;
    while (end < edges_.size() && edges_[end].lo() == e.lo() && edges_[end].hi() == e.hi()) {
        const Edge& cur = edges_[end];
        if (cur.mark == Mark::Undirected) {
            have_und = true;
            und_at = end;
        } else if (cur.tail == e.tail && cur.head == e.head && e.is_directed()) {
            have_same = true;
        } else if (e.is_directed()) {
            have_rev = true;
        }
        ++end;
    }
    if (!e.is_directed()) {
        // Undirected mark is absorbed by anything already present.
        if (end == i) edges_.insert(edges_.begin() + static_cast<std::ptrdiff_t>(i), e);
        return;
    }
    if (have_same) return;
    if (have_und) {
        // Directed beats undirected on the same pair.
        edges_[und_at] = e;
        std::sort(edges_.begin() + static_cast<std::ptrdiff_t>(i),
                  edges_.begin() + static_cast<std::ptrdiff_t>(end), edge_less);
        return;
    }
    (void)have_rev;  // both directions may coexist; see has_conflict()
    Edge copy = e;
    auto it = std::lower_bound(edges_.begin() + static_cast<std::ptrdiff_t>(i),
                               edges_.begin() + static_cast<std::ptrdiff_t>(end), copy, edge_less);
    edges_.insert(it, copy);
}

void EdgeSet::insert_all(const EdgeSet& other) {
    for (const Edge& e : other.edges_) insert(e);
}

bool EdgeSet::contains(const Edge& e) const {
    std::size_t i = pair_lower_bound(e.lo(), e.hi());
    while (i < edges_.size() && edges_[i].lo() == e.lo() && edges_[i].hi() == e.hi()) {
        if (edges_[i] == e) return true;
        ++i;
    }
    return false;
}

bool EdgeSet::contains_arc(VertexId from, VertexId to) const {
    return contains(Edge::directed(from, to));
}

bool EdgeSet::contains_pair(VertexId a, VertexId b) const {
    VertexId lo = a < b ? a : b;
    VertexId hi = a < b ? b : a;
    std::size_t i = pair_lower_bound(lo, hi);
    return i < edges_.size() && edges_[i].lo() == lo && edges_[i].hi() == hi;
}

EdgeSet EdgeSet::minus(const EdgeSet& other) const {
    EdgeSet out;
    out.edges_.reserve(edges_.size());
    for (const Edge& e : edges_) {
        if (!other.contains(e)) out.edges_.push_back(e);
    }
    return out;
}

bool EdgeSet::has_conflict() const {
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i].lo() == edges_[i - 1].lo() && edges_[i].hi() == edges_[i - 1].hi() &&
            edges_[i].is_directed() && edges_[i - 1].is_directed()) {
            return true;
        }
    }
    return false;
}

std::pair<Edge, Edge> EdgeSet::first_conflict() const {
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i].lo() == edges_[i - 1].lo() && edges_[i].hi() == edges_[i - 1].hi() &&
            edges_[i].is_directed() && edges_[i - 1].is_directed()) {
            return {edges_[i - 1], edges_[i]};
        }
    }
    throw InternalError("first_conflict called on a conflict-free edge set");
}

std::size_t EdgeSet::directed_count() const {
    std::size_t k = 0;
    for (const Edge& e : edges_) {
        if (e.is_directed()) ++k;
    }
    return k;
}

EdgeSet mixed_union(const EdgeSet& a, const EdgeSet& b) {
    EdgeSet out = a;
    out.insert_all(b);
    return out;
}

}  // namespace cold
