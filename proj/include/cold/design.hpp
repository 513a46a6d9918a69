#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cold/dp_table.hpp"
#include "cold/graph.hpp"

namespace cold {

// Every ingoing set an intervention on v could reveal: the empty set plus
// each nonempty subset of each maximal clique of v's neighborhood,
// deduplicated across overlapping cliques. Sets are sorted ascending and
// the list is ordered lexicographically.
std::vector<std::vector<VertexId>> admissible_ingoing_sets(const MixedGraph& g, VertexId v);

struct MinMaxResult {
    std::size_t value = 0;
    // True when an early-stop budget cut evaluation short; `value` is then
    // only an upper bound on the remaining minimum.
    bool truncated = false;
};

// Fewest edges an intervention on v is guaranteed to orient: the minimum
// of the closure size over all admissible ingoing sets. With a budget,
// evaluation stops as soon as the running minimum falls below it.
MinMaxResult minmax_true_worst(const MixedGraph& g, VertexId v, DpTable& table,
                               std::optional<std::size_t> budget = std::nullopt);
// Same value computed with full rule-124 closures instead of table
// lookups; benchmark reference path.
MinMaxResult minmax_true_worst_conventional(const MixedGraph& g, VertexId v,
                                            std::optional<std::size_t> budget = std::nullopt);

struct Selection {
    VertexId v = 0;
    std::size_t score = 0;
    bool operator==(const Selection& o) const = default;
};

// Vertex maximizing the guaranteed orientation count, lowest id on ties.
// With early_stop, nodes that provably cannot beat the incumbent are
// abandoned mid-evaluation; the selected vertex is unchanged.
Selection select_minmax_node(const MixedGraph& g, DpTable& table, bool early_stop,
                             bool conventional = false);

// Intermediate quantities of the per-clique bound, kept so tests can pin
// each piece.
struct CliqueLowerBoundParts {
    std::size_t l_i = 0;           // edges forced when the whole clique points in
    EdgeSet r;                     // edges forced outward regardless of the split
    std::vector<std::size_t> p;    // per-member ingoing contributions, ascending
    std::vector<std::size_t> q;    // per-member outgoing contributions, ascending
    std::optional<std::size_t> l_c;  // split-case bound; unset for singleton cliques
    std::size_t bound = 0;         // min of l_i and l_c
};

// Lower bound on the edges oriented by intervening on v when the true
// ingoing set lies inside the given maximal clique of v's neighborhood.
CliqueLowerBoundParts lower_bound_clique(const MixedGraph& g, const std::vector<VertexId>& clique,
                                         VertexId v, DpTable& table);

struct NodeScore {
    VertexId v = 0;
    std::size_t lower_bound = 0;
    std::optional<std::size_t> worst_case_true;
};

// Guaranteed orientation count from intervening on v: minimum of the
// all-outgoing case and every per-clique bound.
NodeScore lower_bound_node(const MixedGraph& g, VertexId v, DpTable& table);

// Vertex maximizing the lower bound, lowest id on ties.
Selection select_lb_node(const MixedGraph& g, DpTable& table);

enum class Policy { MinMax, MinMaxPT, LB, RandomNaive, RandomChordal };

Policy parse_policy(const std::string& name);
const char* policy_name(Policy p);

struct ActiveLearningResult {
    std::size_t steps = 0;
    // Directed-edge count in the knowledge graph after each step.
    std::vector<std::size_t> oriented_per_step;
    std::vector<VertexId> picked;
};

// Repeatedly intervenes on the hidden truth until its whole skeleton is
// oriented. The truth must be a fully directed acyclic graph without
// unshielded colliders whose skeleton is connected and chordal; the run
// starts from that skeleton (everything an observational view gives).
// Random policies draw from a generator seeded with `seed`; scoring
// policies ignore the seed.
ActiveLearningResult active_learning_run(const MixedGraph& truth, Policy policy,
                                         std::uint64_t seed);

}  // namespace cold
