#pragma once

#include <vector>

#include "cold/dp_table.hpp"
#include "cold/graph.hpp"

namespace cold {

// Everything learned from one intervention: the vertex cut on, the split
// of its neighborhood into ingoing and outgoing sides, and the full set
// of edges that end up directed.
struct InterventionOutcome {
    VertexId v = 0;
    std::vector<VertexId> ingoing;
    std::vector<VertexId> outgoing;
    EdgeSet oriented;
};

// Closure under rules 1 and 4 of a graph whose directed part is a full
// star at one vertex, computed from table entries alone: the union of
// DP[v_i->v] for ingoing v_i and DP[v->v_o] for those outgoing v_o whose
// neighborhood contains every ingoing vertex. The table must come from
// g's skeleton.
EdgeSet apply_m14_iccg(const MixedGraph& g, DpTable& table);

// Edges identified by cutting vertex v inside the undirected chordal
// graph g when the true parents within neigh(v) are `ingoing`. Equals the
// rules-124 closure of the corresponding star orientation but touches
// only table entries plus one cross product. `ingoing` must lie inside a
// single maximal clique of g's neighborhood of v.
InterventionOutcome i_essential_after_intervention(const MixedGraph& g, VertexId v,
                                                   const std::vector<VertexId>& ingoing,
                                                   DpTable& table);

// Internal variant that skips the clique validation; used by callers that
// already enumerate cliques.
EdgeSet oriented_after_intervention_unchecked(const MixedGraph& g, VertexId v,
                                              const std::vector<VertexId>& ingoing,
                                              DpTable& table);

// Maximally orients a partially directed graph whose directed part is
// consistent (for example skeleton plus v-structure arcs, possibly with
// extra arcs copied from one member DAG). Equivalent to the rules-123
// closure, but drains a queue of directed edges, unioning each edge's
// cached rule-1 chain and closing rule 2 locally around it, with rule-3
// sweeps anchored at recently drained arcs in between.
MixedGraph essential_from_mpdag(const MixedGraph& g);

// The rules-123 fixpoint computed by the global-rescan engine, the
// classic way to run orientation rules; reference path for benchmarks
// and tests.
MixedGraph essential_conventional(const MixedGraph& g);

}  // namespace cold
