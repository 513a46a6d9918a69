#pragma once

#include <optional>
#include <vector>

#include "cold/graph.hpp"

namespace cold {

// An unshielded collider i->k<-j with i and j not adjacent, normalized
// so that i < j.
struct VStructure {
    VertexId i = 0;
    VertexId k = 0;
    VertexId j = 0;
    bool operator==(const VStructure& o) const = default;
};

// Same graph with every mark dropped to undirected.
MixedGraph skeleton(const MixedGraph& g);

// Only the directed edges, as an edge set.
EdgeSet directed_part(const MixedGraph& g);

// All v-structures, sorted by (k, i, j).
std::vector<VStructure> v_structures(const MixedGraph& g);

// True if the directed edge from->to sits inside some v-structure of g,
// i.e. another parent of `to` exists that is not adjacent to `from`.
bool arc_in_v_structure(const MixedGraph& g, VertexId from, VertexId to);

// Connected components of the undirected part of g. Each component is
// returned as an induced subgraph whose labels point back at g, and has
// at least one edge; isolated vertices of the undirected part are
// dropped. Components are ordered by their smallest member vertex.
std::vector<MixedGraph> chain_components(const MixedGraph& g);

// Vertices of g with at least one incident undirected edge, ascending.
std::vector<VertexId> vertices_with_undirected_edge(const MixedGraph& g);

// True if the skeleton of g is connected (vacuously true for n <= 1).
bool skeleton_connected(const MixedGraph& g);

// A directed cycle among the directed edges of g, if one exists.
// The returned vertex sequence lists the cycle without repeating the
// first vertex at the end.
std::optional<std::vector<VertexId>> find_directed_cycle(const MixedGraph& g);

// Structural Hamming distance: number of vertex pairs whose edge differs
// in presence, mark, or direction. Both graphs must have the same vertex
// count and either identical labels or none.
std::size_t shd(const MixedGraph& a, const MixedGraph& b);

enum class GraphClass {
    Dag,           // fully directed, acyclic
    Uccg,          // fully undirected, connected, chordal
    Iccg,          // chordal skeleton, directed part is a full star at one vertex
    PartiallyDirected,  // anything else with at least one of each mark
    Other,
};

GraphClass classify(const MixedGraph& g);

// If the directed part of g forms a complete star at a single vertex v
// (every edge at v directed, no directed edge elsewhere), returns v with
// its ingoing and outgoing neighbor sets, ascending.
struct StarShape {
    VertexId center = 0;
    std::vector<VertexId> ingoing;
    std::vector<VertexId> outgoing;
};
std::optional<StarShape> star_structure(const MixedGraph& g);

}  // namespace cold
