#include "cold/consistency.hpp"

#include <algorithm>

#include "cold/chordal.hpp"
#include "cold/errors.hpp"
#include "cold/graph_ops.hpp"
#include "cold/meek.hpp"

namespace cold {

namespace {

// First edge present in a and reversed in b, if any.
std::optional<Edge> reversed_overlap(const EdgeSet& a, const EdgeSet& b) {
    for (const Edge& e : a) {
        if (b.contains_arc(e.head, e.tail)) return e;
    }
    return std::nullopt;
}

}  // namespace

bool edges_consistent(const Edge& e1, const Edge& e2, DpTable& table) {
    if (!e1.is_directed() || !e2.is_directed()) {
        throw InputError("edges_consistent requires directed edges");
    }
    const EdgeSet& a = table.entry(e1.tail, e1.head);
    const EdgeSet& b = table.entry(e2.tail, e2.head);
    return !reversed_overlap(a, b).has_value();
}

ConsistencyVerdict check_consistency(const MixedGraph& g, DpTable& table) {
    table.ensure_matches(g);
    if (!skeleton_connected(g)) {
        throw InputError("check_consistency requires a connected skeleton");
    }
    if (!is_chordal(skeleton(g)).chordal) {
        throw InputError("check_consistency requires a chordal skeleton");
    }
    ConsistencyVerdict verdict;
    if (std::optional<std::vector<VertexId>> cycle = find_directed_cycle(g)) {
        verdict.consistent = false;
        verdict.violation = CycleWitness{*cycle};
        return verdict;
    }
    EdgeSet dir = directed_part(g);
    std::vector<Edge> arcs(dir.begin(), dir.end());
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const EdgeSet& a = table.entry(arcs[i].tail, arcs[i].head);
        for (std::size_t j = i + 1; j < arcs.size(); ++j) {
            const EdgeSet& b = table.entry(arcs[j].tail, arcs[j].head);
            if (std::optional<Edge> clash = reversed_overlap(a, b)) {
                verdict.consistent = false;
                verdict.violation = EdgePairWitness{arcs[i], arcs[j], *clash};
                return verdict;
            }
        }
    }
    verdict.consistent = true;
    verdict.witness = pdag_to_dag(g);
    return verdict;
}

MixedGraph pdag_to_dag(const MixedGraph& g) {
    RuleSet rules{Rule::R1, Rule::R2, Rule::R4};
    MixedGraph work = meek_closure(g, rules);
    for (;;) {
        std::vector<VertexId> unfinished = vertices_with_undirected_edge(work);
        if (unfinished.empty()) break;
        VertexId v = unfinished.front();
        for (VertexId u : work.undirected_neighbors(v)) {
            work.orient(v, u);
        }
        work = meek_closure(work, rules);
    }
    // A consistent input always extends cleanly; reaching either guard
    // means the given orientations admitted no collider-free DAG to begin
    // with.
    if (find_directed_cycle(work)) {
        throw InputError("pdag_to_dag requires consistent input: extension closed a directed cycle");
    }
    if (!v_structures(work).empty()) {
        throw InputError(
            "pdag_to_dag requires consistent input: extension formed an unshielded collider");
    }
    return work;
}

}  // namespace cold
