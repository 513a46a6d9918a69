#include "cold/mec_size.hpp"

#include <algorithm>
#include <optional>

#include "cold/chordal.hpp"
#include "cold/errors.hpp"
#include "cold/graph_ops.hpp"
#include "cold/meek.hpp"

namespace cold {

BigInt factorial(std::size_t k) {
    BigInt out = 1;
    for (std::size_t i = 2; i <= k; ++i) out *= i;
    return out;
}

namespace {

void require_uccg(const MixedGraph& g, const char* who) {
    if (g.directed_count() != 0) {
        throw InputError(std::string(who) + " requires a fully undirected graph");
    }
    if (!skeleton_connected(g)) {
        throw InputError(std::string(who) + " requires a connected graph");
    }
    if (!is_chordal(g).chordal) {
        throw InputError(std::string(who) + " requires a chordal graph");
    }
}

std::optional<BigInt> closed_form(std::size_t p, std::size_t m) {
    std::size_t full = p * (p - 1) / 2;
    if (m == p - 1) return BigInt(p);
    if (m == p) return BigInt(2 * p);
    if (p >= 3 && m == full - 2) {
        return BigInt(p * p - p - 4) * factorial(p - 3);
    }
    if (p >= 2 && m == full - 1) {
        return BigInt(2) * factorial(p - 1) - factorial(p - 2);
    }
    if (m == full) return factorial(p);
    return std::nullopt;
}

std::string memo_key(const MixedGraph& g) {
    std::vector<std::uint64_t> labels;
    labels.reserve(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) labels.push_back(g.label(v));
    std::sort(labels.begin(), labels.end());
    std::string key;
    for (std::uint64_t l : labels) {
        key += std::to_string(l);
        key += ',';
    }
    return key;
}

// Directed edges forced by pointing every edge at v away from v.
EdgeSet root_orientation(const MixedGraph& g, VertexId v, DpTable* table,
                         const MecCountOptions& opts) {
    if (!opts.conventional_root && table) {
        EdgeSet out;
        for (VertexId o : g.neighbors(v)) out.insert_all(table->entry(v, o));
        return out;
    }
    EdgeSet star = g.edges();
    for (VertexId o : g.neighbors(v)) star.insert(Edge::directed(v, o));
    MixedGraph seeded(g.vertex_count(), star, g.labels());
    MixedGraph closed = meek_closure(seeded, RuleSet{Rule::R1, Rule::R2, Rule::R4});
    return directed_part(closed);
}

BigInt count_inner(const MixedGraph& g, SizeMemo& memo, DpTable* table,
                   const MecCountOptions& opts) {
    std::size_t p = g.vertex_count();
    if (p <= 1) return 1;
    std::size_t m = g.edge_count();
    if (opts.closed_forms) {
        if (std::optional<BigInt> direct = closed_form(p, m)) return *direct;
    }
    std::string key = memo_key(g);
    if (memo.enabled) {
        auto it = memo.table.find(key);
        if (it != memo.table.end()) {
            ++memo.hits;
            return it->second;
        }
    }
    ++memo.misses;

    std::optional<DpTable> own;
    if (!opts.conventional_root && !table) {
        own.emplace(g);
        table = &*own;
    }
    // Ambient label -> local id, for the induced-subgraph audit below.
    std::unordered_map<std::uint64_t, VertexId> by_label;
    for (VertexId v = 0; v < p; ++v) by_label.emplace(g.label(v), v);

    BigInt total = 0;
    for (VertexId v = 0; v < p; ++v) {
        EdgeSet rooted = root_orientation(g, v, table, opts);
        EdgeSet remaining;
        for (const Edge& e : g.edges()) {
            if (!rooted.contains_pair(e.tail, e.head)) remaining.insert(e);
        }
        MixedGraph rest(p, remaining, g.labels());
        BigInt prod = 1;
        for (const MixedGraph& comp : chain_components(rest)) {
            // Each residual component must be the subgraph g induces on its
            // vertices; rooting never removes an edge inside a component.
            std::vector<VertexId> members;
            members.reserve(comp.vertex_count());
            for (VertexId u = 0; u < comp.vertex_count(); ++u) {
                members.push_back(by_label.at(comp.label(u)));
            }
            std::sort(members.begin(), members.end());
            if (induced_subgraph(g, members).edge_count() != comp.edge_count()) {
                throw InternalError("residual chain component is not an induced subgraph");
            }
            prod *= count_inner(comp, memo, nullptr, opts);
        }
        total += prod;
    }
    if (memo.enabled) memo.table.emplace(std::move(key), total);
    return total;
}

}  // namespace

BigInt count_mec(const MixedGraph& g, SizeMemo& memo, DpTable& table,
                 const MecCountOptions& opts) {
    require_uccg(g, "count_mec");
    table.ensure_matches(g);
    return count_inner(g, memo, opts.conventional_root ? nullptr : &table, opts);
}

BigInt count_mec(const MixedGraph& g, SizeMemo& memo, const MecCountOptions& opts) {
    require_uccg(g, "count_mec");
    return count_inner(g, memo, nullptr, opts);
}

BigInt brute_force_mec_size(const MixedGraph& g, std::size_t cap) {
    require_uccg(g, "brute_force_mec_size");
    std::size_t n = g.vertex_count();
    if (n > cap) {
        throw InputError("brute_force_mec_size cap exceeded: " + std::to_string(n) +
                         " vertices > cap " + std::to_string(cap));
    }
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    std::vector<std::vector<VertexId>> children(n), parents(n);

    // Orient edges one at a time; a branch dies as soon as it closes a
    // directed cycle or finishes an unshielded collider, since both are
    // permanent once created.
    auto creates_cycle = [&](VertexId from, VertexId to) {
        std::vector<VertexId> stack{to};
        std::vector<char> seen(n, 0);
        seen[to] = 1;
        while (!stack.empty()) {
            VertexId x = stack.back();
            stack.pop_back();
            if (x == from) return true;
            for (VertexId y : children[x]) {
                if (!seen[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
            }
        }
        return false;
    };
    auto creates_collider = [&](VertexId from, VertexId to) {
        for (VertexId p : parents[to]) {
            if (p != from && !g.adjacent(p, from)) return true;
        }
        return false;
    };

    auto rec = [&](auto&& self, std::size_t idx) -> BigInt {
        if (idx == edges.size()) return 1;
        BigInt sub = 0;
        for (int d = 0; d < 2; ++d) {
            VertexId from = d == 0 ? edges[idx].tail : edges[idx].head;
            VertexId to = d == 0 ? edges[idx].head : edges[idx].tail;
            if (creates_cycle(from, to) || creates_collider(from, to)) continue;
            children[from].push_back(to);
            parents[to].push_back(from);
            sub += self(self, idx + 1);
            children[from].pop_back();
            parents[to].pop_back();
        }
        return sub;
    };
    return rec(rec, 0);
}

}  // namespace cold
