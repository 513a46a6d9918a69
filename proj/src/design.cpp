#include "cold/design.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_map>

#include "cold/chordal.hpp"
#include "cold/errors.hpp"
#include "cold/essential.hpp"
#include "cold/graph_ops.hpp"
#include "cold/meek.hpp"

namespace cold {

std::vector<std::vector<VertexId>> admissible_ingoing_sets(const MixedGraph& g, VertexId v) {
    std::set<std::vector<VertexId>> dedup;
    dedup.insert(std::vector<VertexId>{});
    for (const std::vector<VertexId>& clique : neighborhood_cliques(g, v)) {
        std::size_t k = clique.size();
        for (std::uint64_t mask = 1; mask < (1ULL << k); ++mask) {
            std::vector<VertexId> subset;
            for (std::size_t i = 0; i < k; ++i) {
                if (mask & (1ULL << i)) subset.push_back(clique[i]);
            }
            dedup.insert(std::move(subset));
        }
    }
    return {dedup.begin(), dedup.end()};
}

namespace {

// Closure size for one ingoing case, with or without the table.
std::size_t case_size(const MixedGraph& g, VertexId v, const std::vector<VertexId>& ingoing,
                      DpTable* table) {
    if (table) {
        return oriented_after_intervention_unchecked(g, v, ingoing, *table).size();
    }
    EdgeSet seeded = g.edges();
    for (VertexId i : ingoing) seeded.insert(Edge::directed(i, v));
    for (VertexId u : g.neighbors(v)) {
        if (std::find(ingoing.begin(), ingoing.end(), u) == ingoing.end()) {
            seeded.insert(Edge::directed(v, u));
        }
    }
    MixedGraph star(g.vertex_count(), seeded, g.labels());
    MixedGraph closed = meek_closure(star, RuleSet{Rule::R1, Rule::R2, Rule::R4});
    return directed_part(closed).size();
}

MinMaxResult worst_case(const MixedGraph& g, VertexId v, DpTable* table,
                        std::optional<std::size_t> budget) {
    MinMaxResult res;
    bool first = true;
    for (const std::vector<VertexId>& ingoing : admissible_ingoing_sets(g, v)) {
        std::size_t size = case_size(g, v, ingoing, table);
        if (first || size < res.value) {
            res.value = size;
            first = false;
        }
        if (budget && res.value < *budget) {
            res.truncated = true;
            return res;
        }
    }
    return res;
}

}  // namespace

MinMaxResult minmax_true_worst(const MixedGraph& g, VertexId v, DpTable& table,
                               std::optional<std::size_t> budget) {
    table.ensure_matches(g);
    if (v >= g.vertex_count()) throw InputError("minmax vertex out of range");
    return worst_case(g, v, &table, budget);
}

MinMaxResult minmax_true_worst_conventional(const MixedGraph& g, VertexId v,
                                            std::optional<std::size_t> budget) {
    if (v >= g.vertex_count()) throw InputError("minmax vertex out of range");
    return worst_case(g, v, nullptr, budget);
}

Selection select_minmax_node(const MixedGraph& g, DpTable& table, bool early_stop,
                             bool conventional) {
    if (g.vertex_count() == 0) throw InputError("select_minmax_node requires a nonempty graph");
    if (!conventional) table.ensure_matches(g);
    Selection best;
    bool have = false;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::optional<std::size_t> budget;
        if (early_stop && have) budget = best.score;
        MinMaxResult r = worst_case(g, v, conventional ? nullptr : &table, budget);
        if (r.truncated) continue;  // proved it cannot beat the incumbent
        if (!have || r.value > best.score) {
            best.v = v;
            best.score = r.value;
            have = true;
        }
    }
    return best;
}

CliqueLowerBoundParts lower_bound_clique(const MixedGraph& g, const std::vector<VertexId>& clique,
                                         VertexId v, DpTable& table) {
    table.ensure_matches(g);
    if (v >= g.vertex_count()) throw InputError("lower_bound_clique vertex out of range");
    std::vector<VertexId> ck = clique;
    std::sort(ck.begin(), ck.end());
    {
        std::vector<std::vector<VertexId>> cliques = neighborhood_cliques(g, v);
        if (std::find(cliques.begin(), cliques.end(), ck) == cliques.end()) {
            throw InputError("clique is not a maximal clique of the neighborhood of " +
                             g.vname(v));
        }
    }
    auto in_ck = [&](VertexId u) { return std::binary_search(ck.begin(), ck.end(), u); };

    CliqueLowerBoundParts parts;
    // Edges forced outward no matter how the clique splits.
    for (VertexId o : g.neighbors(v)) {
        if (!in_ck(o)) parts.r.insert_all(table.entry(v, o));
    }
    // The whole clique pointing in.
    EdgeSet all_in;
    for (VertexId i : ck) all_in.insert_all(table.entry(i, v));
    parts.l_i = all_in.size();

    for (VertexId rmem : ck) {
        EdgeSet pin = table.entry(rmem, v);
        for (VertexId o : g.neighbors(rmem)) {
            if (o != v && g.adjacent(o, v) && !in_ck(o)) {
                pin.insert(Edge::directed(rmem, o));
            }
        }
        parts.p.push_back(pin.minus(parts.r).size());
        parts.q.push_back(table.entry(v, rmem).minus(parts.r).size());
    }
    std::sort(parts.p.begin(), parts.p.end());
    std::sort(parts.q.begin(), parts.q.end());

    std::size_t k = ck.size();
    if (k >= 2) {
        std::size_t best_split = 0;
        bool first = true;
        for (std::size_t l = 1; l <= k - 1; ++l) {
            std::size_t term = parts.p[l - 1] + parts.q[k - l - 1] + l * (k - l);
            if (first || term < best_split) {
                best_split = term;
                first = false;
            }
        }
        parts.l_c = parts.r.size() + best_split + (k - 2);
    }
    parts.bound = parts.l_c ? std::min(parts.l_i, *parts.l_c) : parts.l_i;
    return parts;
}

NodeScore lower_bound_node(const MixedGraph& g, VertexId v, DpTable& table) {
    table.ensure_matches(g);
    if (v >= g.vertex_count()) throw InputError("lower_bound_node vertex out of range");
    NodeScore score;
    score.v = v;
    EdgeSet all_out;
    for (VertexId o : g.neighbors(v)) all_out.insert_all(table.entry(v, o));
    std::size_t best = all_out.size();
    for (const std::vector<VertexId>& clique : neighborhood_cliques(g, v)) {
        best = std::min(best, lower_bound_clique(g, clique, v, table).bound);
    }
    score.lower_bound = best;
    return score;
}

Selection select_lb_node(const MixedGraph& g, DpTable& table) {
    if (g.vertex_count() == 0) throw InputError("select_lb_node requires a nonempty graph");
    table.ensure_matches(g);
    Selection best;
    bool have = false;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        NodeScore s = lower_bound_node(g, v, table);
        if (!have || s.lower_bound > best.score) {
            best.v = v;
            best.score = s.lower_bound;
            have = true;
        }
    }
    return best;
}

Policy parse_policy(const std::string& name) {
    if (name == "minmax") return Policy::MinMax;
    if (name == "minmaxpt") return Policy::MinMaxPT;
    if (name == "lb") return Policy::LB;
    if (name == "random-naive") return Policy::RandomNaive;
    if (name == "random-chordal") return Policy::RandomChordal;
    throw InputError("unknown policy '" + name +
                     "' (expected minmax, minmaxpt, lb, random-naive, random-chordal)");
}

const char* policy_name(Policy p) {
    switch (p) {
        case Policy::MinMax: return "minmax";
        case Policy::MinMaxPT: return "minmaxpt";
        case Policy::LB: return "lb";
        case Policy::RandomNaive: return "random-naive";
        case Policy::RandomChordal: return "random-chordal";
    }
    return "?";
}

ActiveLearningResult active_learning_run(const MixedGraph& truth, Policy policy,
                                         std::uint64_t seed) {
    if (!truth.fully_directed() || truth.edge_count() == 0) {
        throw InputError("active learning truth must be a fully directed graph");
    }
    if (find_directed_cycle(truth)) {
        throw InputError("active learning truth must be acyclic");
    }
    if (!v_structures(truth).empty()) {
        throw InputError("active learning truth must have no unshielded colliders");
    }
    MixedGraph knowledge = skeleton(truth);
    if (!skeleton_connected(knowledge) || !is_chordal(knowledge).chordal) {
        throw InputError("active learning truth must have a connected chordal skeleton");
    }

    std::mt19937_64 rng(seed);
    std::size_t n = truth.vertex_count();
    std::vector<VertexId> naive_pool(n);
    for (VertexId v = 0; v < n; ++v) naive_pool[v] = v;

    ActiveLearningResult res;
    while (!vertices_with_undirected_edge(knowledge).empty()) {
        std::vector<MixedGraph> comps = chain_components(knowledge);
        // Map each component's labels back to knowledge-graph ids.
        std::unordered_map<std::uint64_t, VertexId> by_label;
        for (VertexId v = 0; v < n; ++v) by_label.emplace(knowledge.label(v), v);

        std::optional<VertexId> target;           // ambient id
        std::optional<std::size_t> target_comp;   // index into comps
        std::optional<DpTable> table;

        auto comp_of = [&](VertexId ambient) -> std::optional<std::size_t> {
            for (std::size_t c = 0; c < comps.size(); ++c) {
                for (VertexId u = 0; u < comps[c].vertex_count(); ++u) {
                    if (by_label.at(comps[c].label(u)) == ambient &&
                        !comps[c].neighbors(u).empty()) {
                        return c;
                    }
                }
            }
            return std::nullopt;
        };

        switch (policy) {
            case Policy::MinMax:
            case Policy::MinMaxPT:
            case Policy::LB: {
                std::size_t largest = 0;
                for (std::size_t c = 1; c < comps.size(); ++c) {
                    if (comps[c].vertex_count() > comps[largest].vertex_count()) largest = c;
                }
                table.emplace(comps[largest]);
                Selection sel = policy == Policy::LB
                                    ? select_lb_node(comps[largest], *table)
                                    : select_minmax_node(comps[largest], *table,
                                                         policy == Policy::MinMaxPT);
                target = by_label.at(comps[largest].label(sel.v));
                target_comp = largest;
                break;
            }
            case Policy::RandomNaive: {
                std::size_t i = static_cast<std::size_t>(bounded_rand(rng, naive_pool.size()));
                target = naive_pool[i];
                naive_pool.erase(naive_pool.begin() + static_cast<std::ptrdiff_t>(i));
                target_comp = comp_of(*target);
                break;
            }
            case Policy::RandomChordal: {
                std::vector<VertexId> eligible = vertices_with_undirected_edge(knowledge);
                target = eligible[static_cast<std::size_t>(bounded_rand(rng, eligible.size()))];
                target_comp = comp_of(*target);
                break;
            }
        }

        ++res.steps;
        res.picked.push_back(*target);
        if (!target_comp) {
            // A naive pick can land on an already-resolved vertex; the
            // intervention is spent and reveals nothing new.
            res.oriented_per_step.push_back(knowledge.directed_count());
            continue;
        }
        const MixedGraph& comp = comps[*target_comp];
        if (!table) table.emplace(comp);

        VertexId local = 0;
        for (VertexId u = 0; u < comp.vertex_count(); ++u) {
            if (by_label.at(comp.label(u)) == *target) local = u;
        }
        std::vector<VertexId> ingoing;
        for (VertexId u : comp.neighbors(local)) {
            if (truth.has_arc(by_label.at(comp.label(u)), *target)) ingoing.push_back(u);
        }
        InterventionOutcome outcome = i_essential_after_intervention(comp, local, ingoing, *table);
        for (const Edge& e : outcome.oriented) {
            knowledge.orient(by_label.at(comp.label(e.tail)), by_label.at(comp.label(e.head)));
        }
        res.oriented_per_step.push_back(knowledge.directed_count());
    }
    return res;
}

}  // namespace cold
