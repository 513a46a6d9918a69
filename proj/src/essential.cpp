#include "cold/essential.hpp"

#include <algorithm>

#include "cold/chordal.hpp"
#include "cold/errors.hpp"
#include "cold/graph_ops.hpp"
#include "cold/io.hpp"
#include "cold/meek.hpp"

namespace cold {

namespace {

// Outgoing neighbors whose neighborhood contains every ingoing vertex.
// Orientations into these cannot be forced by the ingoing side, so their
// table entries must be unioned explicitly.
std::vector<VertexId> covered_outgoing(const MixedGraph& g, const std::vector<VertexId>& outgoing,
                                       const std::vector<VertexId>& ingoing) {
    std::vector<VertexId> out;
    for (VertexId o : outgoing) {
        bool covers = true;
        for (VertexId i : ingoing) {
            if (!g.adjacent(i, o)) {
                covers = false;
                break;
            }
        }
        if (covers) out.push_back(o);
    }
    return out;
}

}  // namespace

EdgeSet apply_m14_iccg(const MixedGraph& g, DpTable& table) {
    table.ensure_matches(g);
    std::optional<StarShape> star = star_structure(g);
    if (!star) {
        throw InputError("apply_m14_iccg requires a graph whose directed part is a full star "
                         "at one vertex");
    }
    std::vector<VertexId> vc = covered_outgoing(g, star->outgoing, star->ingoing);
    EdgeSet result;
    for (VertexId i : star->ingoing) result.insert_all(table.entry(i, star->center));
    for (VertexId o : vc) result.insert_all(table.entry(star->center, o));
    return result;
}

EdgeSet oriented_after_intervention_unchecked(const MixedGraph& g, VertexId v,
                                              const std::vector<VertexId>& ingoing,
                                              DpTable& table) {
    std::vector<VertexId> outgoing;
    for (VertexId u : g.neighbors(v)) {
        if (std::find(ingoing.begin(), ingoing.end(), u) == ingoing.end()) {
            outgoing.push_back(u);
        }
    }
    std::vector<VertexId> vc = covered_outgoing(g, outgoing, ingoing);
    EdgeSet result;
    for (VertexId i : ingoing) result.insert_all(table.entry(i, v));
    for (VertexId o : vc) result.insert_all(table.entry(v, o));
    // Ingoing-to-covered-outgoing edges are forced through the cut vertex
    // but are invisible to single-seed closures; add them directly.
    for (VertexId i : ingoing) {
        for (VertexId o : vc) {
            result.insert(Edge::directed(i, o));
        }
    }
    return result;
}

InterventionOutcome i_essential_after_intervention(const MixedGraph& g, VertexId v,
                                                   const std::vector<VertexId>& ingoing,
                                                   DpTable& table) {
    table.ensure_matches(g);
    if (v >= g.vertex_count()) throw InputError("intervened vertex out of range");
    std::vector<VertexId> in = ingoing;
    std::sort(in.begin(), in.end());
    in.erase(std::unique(in.begin(), in.end()), in.end());
    for (VertexId i : in) {
        if (!g.adjacent(i, v)) {
            throw InputError("ingoing vertex " + g.vname(i) + " is not a neighbor of " +
                             g.vname(v));
        }
    }
    if (!in.empty()) {
        bool inside_one_clique = false;
        for (const std::vector<VertexId>& clique : neighborhood_cliques(g, v)) {
            if (std::includes(clique.begin(), clique.end(), in.begin(), in.end())) {
                inside_one_clique = true;
                break;
            }
        }
        if (!inside_one_clique) {
            throw InputError("ingoing set " + format_vertex_set(g, in) +
                             " does not fit inside one maximal clique of the neighborhood of " +
                             g.vname(v));
        }
    }
    InterventionOutcome out;
    out.v = v;
    out.ingoing = std::move(in);
    for (VertexId u : g.neighbors(v)) {
        if (std::find(out.ingoing.begin(), out.ingoing.end(), u) == out.ingoing.end()) {
            out.outgoing.push_back(u);
        }
    }
    out.oriented = oriented_after_intervention_unchecked(g, v, out.ingoing, table);
    return out;
}

namespace {

// Orients from->to in work and queues the arc when it is new. An edge
// already pointing the other way means two rule consequences disagree,
// which only contradictory inputs can produce.
void orient_or_clash(MixedGraph& work, VertexId from, VertexId to, const char* source,
                     std::vector<Edge>& fresh, std::vector<std::uint32_t>& indeg) {
    switch (work.orient(from, to)) {
        case OrientResult::New:
            fresh.push_back(Edge::directed(from, to));
            ++indeg[to];
            break;
        case OrientResult::Already:
            break;
        case OrientResult::Conflict:
            throw ConflictError("conflicting orientations for edge " + work.vname(from) + " - " +
                                    work.vname(to),
                                std::string(source) + " forced " + work.vname(from) + "->" +
                                    work.vname(to),
                                "graph already holds " + work.vname(to) + "->" + work.vname(from));
    }
}

}  // namespace

MixedGraph essential_from_mpdag(const MixedGraph& g) {
    if (g.edges().has_conflict()) {
        throw InputError("essential_from_mpdag requires a conflict-free input");
    }
    DpoTable dpo(g);
    MixedGraph work = g;
    std::vector<Edge> fresh;
    std::vector<std::uint32_t> indeg(work.vertex_count(), 0);
    for (const Edge& e : directed_part(work)) {
        fresh.push_back(e);
        ++indeg[e.head];
    }
    // Two phases alternate until neither orients anything. The drain
    // processes each directed arc once, unioning its cached rule-1 chain
    // and checking rule 2 in both roles around it; everything newly
    // oriented joins the queue, so one drain reaches the rule-1-and-2
    // fixpoint without rebuilding the graph per round. A rule-3 sweep
    // then runs anchored at the arcs the drain processed. New rule-3
    // instances need a new arc into their target (undirected premises
    // only ever disappear, and an arc inside a v-structure stays inside
    // one), so anchoring at recent arcs covers every instance the drain
    // could have enabled. The final sweep orients nothing, leaving the
    // result closed under all three rules.
    for (;;) {
        std::vector<Edge> swept;
        while (!fresh.empty()) {
            Edge e = fresh.back();
            fresh.pop_back();
            swept.push_back(e);
            // An arc with no chain step has the singleton entry {e}, which
            // the graph already holds.
            if (dpo.opens_chain(e.tail, e.head)) {
                for (const Edge& m : dpo.entry(e.tail, e.head)) {
                    orient_or_clash(work, m.tail, m.head, "rule-1 chain", fresh, indeg);
                }
            }
            for (VertexId j : work.neighbors(e.head)) {
                if (work.has_arc(e.head, j) && work.has_undirected(e.tail, j)) {
                    orient_or_clash(work, e.tail, j, "rule 2", fresh, indeg);
                }
            }
            for (VertexId i : work.neighbors(e.tail)) {
                if (work.has_arc(i, e.tail) && work.has_undirected(i, e.head)) {
                    orient_or_clash(work, i, e.head, "rule 2", fresh, indeg);
                }
            }
        }
        bool r3_fired = false;
        for (const Edge& a : swept) {
            // Rule 3 needs two parents at the target, so anchors into
            // vertices that still have one in-arc cannot carry an instance.
            if (indeg[a.head] < 2) continue;
            for (const Candidate& c : rule3_instances_at_arc(work, a.tail, a.head)) {
                switch (work.orient(c.orients.tail, c.orients.head)) {
                    case OrientResult::New:
                        fresh.push_back(c.orients);
                        ++indeg[c.orients.head];
                        r3_fired = true;
                        break;
                    case OrientResult::Already:
                        break;
                    case OrientResult::Conflict:
                        throw ConflictError("conflicting orientations for edge " +
                                                work.vname(c.orients.tail) + " - " +
                                                work.vname(c.orients.head),
                                            c.describe(work),
                                            "graph already holds " + work.vname(c.orients.head) +
                                                "->" + work.vname(c.orients.tail));
                }
            }
        }
        if (!r3_fired) break;
    }
    return work;
}

MixedGraph essential_conventional(const MixedGraph& g) {
    ClosureOptions opts;
    opts.rules = RuleSet{Rule::R1, Rule::R2, Rule::R3};
    opts.naive = true;
    return meek_closure(g, opts);
}

}  // namespace cold
