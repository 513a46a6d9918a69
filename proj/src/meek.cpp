#include "cold/meek.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "cold/chordal.hpp"
#include "cold/errors.hpp"
#include "cold/graph_ops.hpp"

namespace cold {

RuleSet RuleSet::parse(const std::string& text) {
    RuleSet out;
    for (char c : text) {
        switch (c) {
            case '1': out.add(Rule::R1); break;
            case '2': out.add(Rule::R2); break;
            case '3': out.add(Rule::R3); break;
            case '4': out.add(Rule::R4); break;
            case ',':
            case ' ': break;
            default:
                throw InputError(std::string("unknown rule character '") + c +
                                 "' in rule set '" + text + "'");
        }
    }
    if (out.empty()) throw InputError("rule set '" + text + "' selects no rules");
    return out;
}

std::vector<Rule> RuleSet::list() const {
    std::vector<Rule> out;
    for (Rule r : {Rule::R1, Rule::R2, Rule::R3, Rule::R4}) {
        if (contains(r)) out.push_back(r);
    }
    return out;
}

std::string RuleSet::str() const {
    std::string out;
    for (Rule r : list()) {
        if (!out.empty()) out += ",";
        out += std::to_string(static_cast<unsigned>(r));
    }
    return out;
}

std::string Candidate::describe(const MixedGraph& g) const {
    std::string out = "rule " + std::to_string(static_cast<unsigned>(rule)) + " (";
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (i) out += ", ";
        out += g.vname(verts[i]);
    }
    out += ") orienting " + g.vname(orients.tail) + "->" + g.vname(orients.head);
    return out;
}

void ForbiddenEdges::validate_against(const MixedGraph& g) const {
    for (std::uint64_t code : pairs_) {
        VertexId a = static_cast<VertexId>(code >> 32);
        VertexId b = static_cast<VertexId>(code & 0xffffffffu);
        if (a >= g.vertex_count() || b >= g.vertex_count() || !g.has_undirected(a, b)) {
            throw InputError("forbidden pair (" + std::to_string(a) + ", " + std::to_string(b) +
                             ") is not an undirected edge of the graph");
        }
    }
}

namespace {

// Dashed pattern position: matches an undirected edge, or a directed edge
// that is not part of any v-structure.
bool dashed_ok(const MixedGraph& g, VertexId a, VertexId b) {
    std::optional<Edge> e = g.edge_between(a, b);
    if (!e) return false;
    if (!e->is_directed()) return true;
    return !arc_in_v_structure(g, e->tail, e->head);
}

std::vector<std::pair<VertexId, VertexId>> sorted_arcs(const MixedGraph& g) {
    std::vector<std::pair<VertexId, VertexId>> arcs;
    for (const Edge& e : g.edges()) {
        if (e.is_directed()) arcs.emplace_back(e.tail, e.head);
    }
    std::sort(arcs.begin(), arcs.end());
    return arcs;
}

// The per-rule matchers below enumerate instances anchored at one directed
// premise arc, so the worklist engine can re-check only what a new arc can
// unlock. find_candidates runs them over every arc.

template <typename Sink>
void match_r1(const MixedGraph& g, VertexId i, VertexId k, Sink&& sink) {
    for (VertexId j : g.neighbors(k)) {
        if (j == i || !g.has_undirected(k, j) || g.adjacent(i, j)) continue;
        sink(Candidate{Rule::R1, {i, k, j}, Edge::directed(k, j)});
    }
}

template <typename Sink>
void match_r2_first(const MixedGraph& g, VertexId i, VertexId k, Sink&& sink) {
    // premise arc is i->k; look for k->j with i--j
    for (VertexId j : g.neighbors(k)) {
        if (!g.has_arc(k, j) || !g.has_undirected(i, j)) continue;
        sink(Candidate{Rule::R2, {i, k, j}, Edge::directed(i, j)});
    }
}

template <typename Sink>
void match_r2_second(const MixedGraph& g, VertexId k, VertexId j, Sink&& sink) {
    // premise arc is k->j; look for i->k with i--j
    for (VertexId i : g.neighbors(k)) {
        if (!g.has_arc(i, k) || !g.has_undirected(i, j)) continue;
        sink(Candidate{Rule::R2, {i, k, j}, Edge::directed(i, j)});
    }
}

template <typename Sink>
void match_r3_at(const MixedGraph& g, VertexId l, VertexId k, Sink&& sink) {
    // premise arc is l->k; the partner arc j->k may use either role, so
    // normalize to l < j afterwards.
    for (VertexId j : g.neighbors(k)) {
        if (j == l || !g.has_arc(j, k) || g.adjacent(l, j)) continue;
        VertexId lo = l < j ? l : j;
        VertexId hi = l < j ? j : l;
        for (VertexId i : g.neighbors(k)) {
            if (i == lo || i == hi || !g.has_undirected(i, k)) continue;
            if (!g.adjacent(i, lo) || !g.adjacent(i, hi)) continue;
            if (!dashed_ok(g, i, lo) || !dashed_ok(g, i, hi)) continue;
            sink(Candidate{Rule::R3, {i, k, lo, hi}, Edge::directed(i, k)});
        }
    }
}

template <typename Sink>
void match_r4(const MixedGraph& g, VertexId s, VertexId d, Sink&& sink) {
    // premise arc is s->d
    for (VertexId j : g.neighbors(d)) {
        if (j == s || g.adjacent(s, j) || !dashed_ok(g, d, j)) continue;
        for (VertexId i : g.neighbors(s)) {
            if (i == d || i == j) continue;
            if (!g.adjacent(i, d) || !g.adjacent(i, j)) continue;
            if (!g.has_undirected(i, j)) continue;
            if (!dashed_ok(g, i, s) || !dashed_ok(g, i, d)) continue;
            sink(Candidate{Rule::R4, {s, d, i, j}, Edge::directed(i, j)});
        }
    }
}

template <typename Sink>
void match_rule_at_arc(const MixedGraph& g, Rule rule, VertexId a, VertexId b, Sink&& sink) {
    switch (rule) {
        case Rule::R1: match_r1(g, a, b, sink); break;
        case Rule::R2:
            match_r2_first(g, a, b, sink);
            match_r2_second(g, a, b, sink);
            break;
        case Rule::R3: match_r3_at(g, a, b, sink); break;
        case Rule::R4: match_r4(g, a, b, sink); break;
    }
}

// Some live instance that would orient from->to, if one exists. The edge
// between from and to must currently be undirected. On consistent inputs
// two live instances never disagree, so the engines probe this before
// every orientation purely to diagnose contradictory inputs the same way
// regardless of schedule.
std::optional<Candidate> reverse_instance(const MixedGraph& g, const RuleSet& rules,
                                          VertexId from, VertexId to) {
    if (rules.contains(Rule::R1)) {
        for (VertexId i : g.parents(from)) {
            if (i != to && !g.adjacent(i, to)) {
                return Candidate{Rule::R1, {i, from, to}, Edge::directed(from, to)};
            }
        }
    }
    if (rules.contains(Rule::R2)) {
        for (VertexId k : g.children(from)) {
            if (k != to && g.has_arc(k, to)) {
                return Candidate{Rule::R2, {from, k, to}, Edge::directed(from, to)};
            }
        }
    }
    if (rules.contains(Rule::R3)) {
        std::vector<VertexId> pars = g.parents(to);
        for (std::size_t a = 0; a < pars.size(); ++a) {
            for (std::size_t b = a + 1; b < pars.size(); ++b) {
                VertexId lo = pars[a], hi = pars[b];
                if (lo == from || hi == from || g.adjacent(lo, hi)) continue;
                if (!g.adjacent(from, lo) || !g.adjacent(from, hi)) continue;
                if (!dashed_ok(g, from, lo) || !dashed_ok(g, from, hi)) continue;
                return Candidate{Rule::R3, {from, to, lo, hi}, Edge::directed(from, to)};
            }
        }
    }
    if (rules.contains(Rule::R4)) {
        for (VertexId d : g.neighbors(from)) {
            if (d == to || !g.adjacent(d, to) || !dashed_ok(g, d, to)) continue;
            if (!dashed_ok(g, from, d)) continue;
            for (VertexId s : g.parents(d)) {
                if (s == from || s == to || !g.adjacent(s, from) || g.adjacent(s, to)) continue;
                if (!dashed_ok(g, from, s)) continue;
                return Candidate{Rule::R4, {s, d, from, to}, Edge::directed(from, to)};
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<Candidate> rule3_instances_at_arc(const MixedGraph& g, VertexId l, VertexId k) {
    std::vector<Candidate> out;
    if (!g.has_arc(l, k)) {
        throw InputError("rule3_instances_at_arc requires the anchor arc " + g.vname(l) + "->" +
                         g.vname(k));
    }
    match_r3_at(g, l, k, [&](Candidate c) { out.push_back(std::move(c)); });
    return out;
}

std::vector<Candidate> find_candidates(const MixedGraph& g, Rule rule) {
    std::vector<Candidate> out;
    for (auto [a, b] : sorted_arcs(g)) {
        match_rule_at_arc(g, rule, a, b, [&](Candidate c) { out.push_back(std::move(c)); });
    }
    // R2 and R3 anchor at two premise arcs, so instances appear twice.
    std::sort(out.begin(), out.end(), [](const Candidate& x, const Candidate& y) {
        return std::tie(x.rule, x.verts, x.orients.tail, x.orients.head) <
               std::tie(y.rule, y.verts, y.orients.tail, y.orients.head);
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

class ClosureEngine {
public:
    ClosureEngine(const MixedGraph& g, const ClosureOptions& opts) : g_(g), opts_(opts) {
        if (opts.rules.empty()) throw InputError("meek_closure requires a nonempty rule set");
        if (g.edges().has_conflict()) {
            throw InputError("meek_closure requires a conflict-free input");
        }
        if (opts_.forbidden) opts_.forbidden->validate_against(g);
    }

    MixedGraph run() {
        if (opts_.naive || opts_.shuffle_seed.has_value()) {
            run_naive();
        } else {
            run_worklist();
        }
        return g_;
    }

private:
    MixedGraph g_;
    ClosureOptions opts_;
    std::unordered_map<std::uint64_t, std::string> provenance_;

    bool blocked(const Candidate& c) const {
        return c.rule == Rule::R1 && opts_.forbidden &&
               opts_.forbidden->contains(c.orients.tail, c.orients.head);
    }

    // Applies one candidate. Returns true when a new edge was directed.
    bool apply(const Candidate& c) {
        if (blocked(c)) return false;
        if (g_.has_undirected(c.orients.tail, c.orients.head)) {
            std::optional<Candidate> rival =
                reverse_instance(g_, opts_.rules, c.orients.head, c.orients.tail);
            if (rival && !blocked(*rival)) {
                throw ConflictError("conflicting orientations for edge " +
                                        g_.vname(c.orients.tail) + " - " +
                                        g_.vname(c.orients.head) + ": " + rival->describe(g_) +
                                        " vs " + c.describe(g_),
                                    rival->describe(g_), c.describe(g_));
            }
        }
        OrientResult res = g_.orient(c.orients.tail, c.orients.head);
        switch (res) {
            case OrientResult::New:
                provenance_[arc_code(c.orients.tail, c.orients.head)] = c.describe(g_);
                return true;
            case OrientResult::Already: return false;
            case OrientResult::Conflict: {
                std::uint64_t rev = arc_code(c.orients.head, c.orients.tail);
                auto it = provenance_.find(rev);
                std::string existing = it != provenance_.end()
                                           ? it->second
                                           : "input edge " + g_.vname(c.orients.head) + "->" +
                                                 g_.vname(c.orients.tail);
                throw ConflictError("conflicting orientations for edge " +
                                        g_.vname(c.orients.tail) + " - " +
                                        g_.vname(c.orients.head) + ": " + existing + " vs " +
                                        c.describe(g_),
                                    existing, c.describe(g_));
            }
        }
        return false;
    }

    void run_worklist() {
        std::deque<std::pair<VertexId, VertexId>> queue;
        for (auto [a, b] : sorted_arcs(g_)) queue.emplace_back(a, b);
        for (;;) {
            while (!queue.empty()) {
                auto [a, b] = queue.front();
                queue.pop_front();
                for (Rule r : opts_.rules.list()) {
                    match_rule_at_arc(g_, r, a, b, [&](const Candidate& c) {
                        if (apply(c)) queue.emplace_back(c.orients.tail, c.orients.head);
                    });
                }
            }
            // Verification rescan; on consistent inputs this finds nothing.
            bool any = false;
            for (Rule r : opts_.rules.list()) {
                for (const Candidate& c : find_candidates(g_, r)) {
                    if (apply(c)) {
                        queue.emplace_back(c.orients.tail, c.orients.head);
                        any = true;
                    }
                }
            }
            if (!any) break;
        }
    }

    void run_naive() {
        std::optional<std::mt19937_64> rng;
        if (opts_.shuffle_seed) rng.emplace(*opts_.shuffle_seed);
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<Rule> order = opts_.rules.list();
            if (rng) shuffle_vec(order, *rng);
            for (Rule r : order) {
                std::vector<Candidate> found = find_candidates(g_, r);
                if (rng) shuffle_vec(found, *rng);
                for (const Candidate& c : found) {
                    if (apply(c)) changed = true;
                }
            }
        }
    }
};

}  // namespace

MixedGraph meek_closure(const MixedGraph& g, const ClosureOptions& opts) {
    ClosureEngine engine(g, opts);
    return engine.run();
}

MixedGraph meek_closure(const MixedGraph& g, RuleSet rules) {
    ClosureOptions opts;
    opts.rules = rules;
    return meek_closure(g, opts);
}

}  // namespace cold
