#pragma once

#include <optional>
#include <random>
#include <vector>

#include "cold/graph.hpp"

namespace cold {

// Draws uniformly from [0, bound) using rejection so results depend only
// on the engine stream, not on the standard library's distribution code.
std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t bound);

template <typename T>
void shuffle_vec(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(bounded_rand(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

struct ChordalityResult {
    bool chordal = false;
    // Perfect elimination ordering when chordal, empty otherwise.
    std::vector<VertexId> elimination_order;
};

// Maximum cardinality search check. The graph must be fully undirected;
// it does not need to be connected.
ChordalityResult is_chordal(const MixedGraph& g);

// Lexicographic BFS order starting at `start`. Ties between equal label
// sets fall to the smallest vertex id, so the order is deterministic.
// The graph must be fully undirected and connected. The reverse of the
// returned order is a perfect elimination ordering when g is chordal.
std::vector<VertexId> lexbfs_order(const MixedGraph& g, VertexId start = 0);

// Same traversal, but ties fall to the vertex with the highest priority.
// Used to sample varied orientations of one chordal skeleton.
std::vector<VertexId> lexbfs_order_with_priority(const MixedGraph& g, VertexId start,
                                                 const std::vector<std::uint64_t>& priority);

// Directs every edge of g from the earlier vertex of `order` to the later
// one. `order` must be a permutation of the vertices. When `order` is a
// LexBFS order of a chordal graph the result is acyclic with no
// unshielded colliders.
MixedGraph orient_by_ordering(const MixedGraph& g, const std::vector<VertexId>& order);

// All maximal cliques of an undirected graph, each sorted ascending, the
// list sorted lexicographically. Uses the elimination ordering when the
// graph is chordal and falls back to Bron-Kerbosch otherwise.
std::vector<std::vector<VertexId>> maximal_cliques(const MixedGraph& g);

// Maximal cliques of the subgraph induced by the neighbors of v,
// reported in the ids of g.
std::vector<std::vector<VertexId>> neighborhood_cliques(const MixedGraph& g, VertexId v);

// Random connected chordal graph with n vertices and m edges. Grows a
// random spanning tree, then adds edges one at a time, keeping only
// additions that preserve chordality. Requires n-1 <= m <= n(n-1)/2.
MixedGraph random_chordal(std::size_t n, std::size_t m, std::uint64_t seed);

}  // namespace cold
