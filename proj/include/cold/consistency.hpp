#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "cold/dp_table.hpp"
#include "cold/graph.hpp"

namespace cold {

struct CycleWitness {
    std::vector<VertexId> cycle;
};

struct EdgePairWitness {
    Edge e1;
    Edge e2;
    // Edge forced one way by e1's entry and the other way by e2's.
    Edge clashing;
};

struct ConsistencyVerdict {
    bool consistent = false;
    std::optional<MixedGraph> witness;  // a DAG realizing every given edge
    std::optional<std::variant<CycleWitness, EdgePairWitness>> violation;
};

// True iff no edge is forced one way by e1's closure and the other way by
// e2's. Both edges must lie in the table's skeleton.
bool edges_consistent(const Edge& e1, const Edge& e2, DpTable& table);

// Decides whether the directed edges of g can all hold in one DAG with
// g's skeleton and no unshielded colliders: no directed cycle and every
// pair of directed edges consistent. On success the verdict carries a
// witness DAG; on failure, the cycle or edge pair that broke it. The
// skeleton of g must be connected and chordal.
ConsistencyVerdict check_consistency(const MixedGraph& g, DpTable& table);

// Extends a consistent partially directed graph to a full DAG without
// unshielded colliders: repeatedly close under rules 1, 2 and 4, then
// point all undirected edges of the lowest-id unfinished vertex outward.
MixedGraph pdag_to_dag(const MixedGraph& g);

}  // namespace cold
