#include "cold/graph_ops.hpp"

#include <algorithm>

#include "cold/chordal.hpp"
#include "cold/errors.hpp"

namespace cold {

MixedGraph skeleton(const MixedGraph& g) {
    EdgeSet undirected;
    for (const Edge& e : g.edges()) undirected.insert(Edge::undirected(e.tail, e.head));
    std::vector<std::uint64_t> labels = g.labels();
    return MixedGraph(g.vertex_count(), undirected, std::move(labels));
}

EdgeSet directed_part(const MixedGraph& g) {
    EdgeSet out;
    for (const Edge& e : g.edges()) {
        if (e.is_directed()) out.insert(e);
    }
    return out;
}

std::vector<VStructure> v_structures(const MixedGraph& g) {
    std::vector<VStructure> out;
    for (VertexId k = 0; k < g.vertex_count(); ++k) {
        std::vector<VertexId> pa = g.parents(k);
        for (std::size_t x = 0; x < pa.size(); ++x) {
            for (std::size_t y = x + 1; y < pa.size(); ++y) {
                if (!g.adjacent(pa[x], pa[y])) {
                    out.push_back({pa[x], k, pa[y]});
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const VStructure& a, const VStructure& b) {
        if (a.k != b.k) return a.k < b.k;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    return out;
}

bool arc_in_v_structure(const MixedGraph& g, VertexId from, VertexId to) {
    if (!g.has_arc(from, to)) return false;
    for (VertexId p : g.parents(to)) {
        if (p != from && !g.adjacent(p, from)) return true;
    }
    return false;
}

std::vector<MixedGraph> chain_components(const MixedGraph& g) {
    std::size_t n = g.vertex_count();
    std::vector<int> comp(n, -1);
    int next = 0;
    std::vector<VertexId> stack;
    for (VertexId s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        bool touched = false;
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (VertexId u : g.neighbors(v)) {
                if (!g.has_undirected(v, u)) continue;
                touched = true;
                if (comp[u] == -1) {
                    comp[u] = next;
                    stack.push_back(u);
                }
            }
        }
        if (!touched) {
            comp[s] = -1;  // isolated in the undirected part, not a component
        } else {
            ++next;
        }
    }
    std::vector<std::vector<VertexId>> members(static_cast<std::size_t>(next));
    for (VertexId v = 0; v < n; ++v) {
        if (comp[v] != -1) members[static_cast<std::size_t>(comp[v])].push_back(v);
    }
    std::vector<MixedGraph> out;
    out.reserve(members.size());
    for (auto& verts : members) {
        MixedGraph sub = induced_subgraph(g, verts);
        // A chain component carries only the undirected structure.
        EdgeSet undirected_only;
        for (const Edge& e : sub.edges()) {
            if (!e.is_directed()) undirected_only.insert(e);
        }
        std::vector<std::uint64_t> labels = sub.labels();
        out.emplace_back(sub.vertex_count(), undirected_only, std::move(labels));
    }
    // Components come out ordered by smallest member already: the discovery
    // root of each component is its smallest vertex.
    return out;
}

std::vector<VertexId> vertices_with_undirected_edge(const MixedGraph& g) {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!g.undirected_neighbors(v).empty()) out.push_back(v);
    }
    return out;
}

bool skeleton_connected(const MixedGraph& g) {
    std::size_t n = g.vertex_count();
    if (n <= 1) return true;
    std::vector<char> seen(n, 0);
    std::vector<VertexId> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (VertexId u : g.neighbors(v)) {
            if (!seen[u]) {
                seen[u] = 1;
                ++reached;
                stack.push_back(u);
            }
        }
    }
    return reached == n;
}

std::optional<std::vector<VertexId>> find_directed_cycle(const MixedGraph& g) {
    std::size_t n = g.vertex_count();
    std::vector<int> state(n, 0);  // 0 fresh, 1 on stack, 2 done
    std::vector<VertexId> parent(n, 0);
    for (VertexId root = 0; root < n; ++root) {
        if (state[root] != 0) continue;
        // Iterative DFS over directed edges only.
        std::vector<std::pair<VertexId, std::size_t>> frames{{root, 0}};
        state[root] = 1;
        while (!frames.empty()) {
            auto& [v, idx] = frames.back();
            std::vector<VertexId> ch = g.children(v);
            if (idx < ch.size()) {
                VertexId u = ch[idx++];
                if (state[u] == 0) {
                    state[u] = 1;
                    parent[u] = v;
                    frames.emplace_back(u, 0);
                } else if (state[u] == 1) {
                    std::vector<VertexId> cycle{u};
                    for (VertexId w = v; w != u; w = parent[w]) cycle.push_back(w);
                    std::reverse(cycle.begin() + 1, cycle.end());
                    return cycle;
                }
            } else {
                state[v] = 2;
                frames.pop_back();
            }
        }
    }
    return std::nullopt;
}

std::size_t shd(const MixedGraph& a, const MixedGraph& b) {
    if (a.vertex_count() != b.vertex_count()) {
        throw InputError("shd requires graphs on the same vertex count");
    }
    if (a.has_labels() && b.has_labels() && a.labels() != b.labels()) {
        throw InputError("shd requires identical vertex labels");
    }
    std::size_t d = 0;
    for (VertexId u = 0; u < a.vertex_count(); ++u) {
        for (VertexId v = u + 1; v < a.vertex_count(); ++v) {
            std::optional<Edge> ea = a.edge_between(u, v);
            std::optional<Edge> eb = b.edge_between(u, v);
            if (ea.has_value() != eb.has_value()) {
                ++d;
            } else if (ea && !(*ea == *eb)) {
                ++d;
            }
        }
    }
    return d;
}

std::optional<StarShape> star_structure(const MixedGraph& g) {
    EdgeSet dir = directed_part(g);
    if (dir.empty()) return std::nullopt;
    // All directed edges must share one endpoint v.
    const Edge& first = dir[0];
    std::vector<VertexId> candidates{first.tail, first.head};
    for (VertexId v : candidates) {
        bool all_touch = true;
        for (const Edge& e : dir) {
            if (e.tail != v && e.head != v) {
                all_touch = false;
                break;
            }
        }
        if (!all_touch) continue;
        // Every edge at v must be directed.
        StarShape s;
        s.center = v;
        bool complete = true;
        for (VertexId u : g.neighbors(v)) {
            std::optional<Edge> e = g.edge_between(v, u);
            if (!e->is_directed()) {
                complete = false;
                break;
            }
            if (e->head == v) {
                s.ingoing.push_back(u);
            } else {
                s.outgoing.push_back(u);
            }
        }
        if (!complete) continue;
        return s;
    }
    return std::nullopt;
}

GraphClass classify(const MixedGraph& g) {
    std::size_t dir = g.directed_count();
    if (dir == g.edge_count() && g.edge_count() > 0) {
        return find_directed_cycle(g) ? GraphClass::Other : GraphClass::Dag;
    }
    if (dir == 0) {
        if (skeleton_connected(g) && is_chordal(g).chordal) return GraphClass::Uccg;
        return GraphClass::Other;
    }
    if (star_structure(g) && skeleton_connected(g) && is_chordal(skeleton(g)).chordal) {
        return GraphClass::Iccg;
    }
    return GraphClass::PartiallyDirected;
}

}  // namespace cold
