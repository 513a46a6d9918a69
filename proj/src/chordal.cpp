#include "cold/chordal.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "cold/errors.hpp"
#include "cold/graph_ops.hpp"

namespace cold {

std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

namespace {

void require_undirected(const MixedGraph& g, const char* who) {
    if (g.directed_count() != 0) {
        throw InputError(std::string(who) + " requires a fully undirected graph");
    }
}

}  // namespace

ChordalityResult is_chordal(const MixedGraph& g) {
    require_undirected(g, "is_chordal");
    std::size_t n = g.vertex_count();
    ChordalityResult res;
    if (n == 0) {
        res.chordal = true;
        return res;
    }

    // Maximum cardinality search. Highest weight first, smallest id on ties.
    std::vector<std::int64_t> weight(n, 0);
    std::vector<char> visited(n, 0);
    std::set<std::pair<std::int64_t, std::int64_t>> queue;  // (weight, -id)
    for (VertexId v = 0; v < n; ++v) queue.insert({0, -static_cast<std::int64_t>(v)});
    std::vector<VertexId> visit_order;
    visit_order.reserve(n);
    std::vector<std::size_t> pos(n, 0);
    while (!queue.empty()) {
        auto top = *queue.rbegin();
        queue.erase(std::prev(queue.end()));
        VertexId v = static_cast<VertexId>(-top.second);
        visited[v] = 1;
        pos[v] = visit_order.size();
        visit_order.push_back(v);
        for (VertexId u : g.neighbors(v)) {
            if (visited[u]) continue;
            queue.erase({weight[u], -static_cast<std::int64_t>(u)});
            ++weight[u];
            queue.insert({weight[u], -static_cast<std::int64_t>(u)});
        }
    }

    // Zero fill-in check: for each vertex, its earlier neighbors minus the
    // latest one must all be adjacent to that latest one.
    for (VertexId v = 0; v < n; ++v) {
        VertexId last = 0;
        bool have_last = false;
        for (VertexId u : g.neighbors(v)) {
            if (pos[u] >= pos[v]) continue;
            if (!have_last || pos[u] > pos[last]) {
                last = u;
                have_last = true;
            }
        }
        if (!have_last) continue;
        for (VertexId u : g.neighbors(v)) {
            if (pos[u] >= pos[v] || u == last) continue;
            if (!g.adjacent(u, last)) {
                res.chordal = false;
                return res;
            }
        }
    }
    res.chordal = true;
    res.elimination_order.assign(visit_order.rbegin(), visit_order.rend());
    return res;
}

namespace {

std::vector<VertexId> lexbfs_impl(const MixedGraph& g, VertexId start,
                                  const std::vector<std::uint64_t>* priority) {
    require_undirected(g, "lexbfs_order");
    std::size_t n = g.vertex_count();
    if (n == 0) return {};
    if (start >= n) throw InputError("lexbfs_order start vertex out of range");
    if (!skeleton_connected(g)) throw InputError("lexbfs_order requires a connected graph");

    // Partition refinement. Classes keep ascending id order, so the front
    // element of a class is its smallest vertex.
    std::vector<std::vector<VertexId>> classes;
    {
        std::vector<VertexId> first{start};
        std::vector<VertexId> rest;
        for (VertexId v = 0; v < n; ++v) {
            if (v != start) rest.push_back(v);
        }
        classes.push_back(std::move(first));
        if (!rest.empty()) classes.push_back(std::move(rest));
    }
    std::vector<VertexId> order;
    order.reserve(n);
    std::vector<char> done(n, 0);
    while (!classes.empty()) {
        std::vector<VertexId>& front = classes.front();
        std::size_t pick = 0;
        if (priority) {
            for (std::size_t i = 1; i < front.size(); ++i) {
                if ((*priority)[front[i]] > (*priority)[front[pick]]) pick = i;
            }
        }
        VertexId v = front[pick];
        front.erase(front.begin() + static_cast<std::ptrdiff_t>(pick));
        if (front.empty()) classes.erase(classes.begin());
        done[v] = 1;
        order.push_back(v);
        std::unordered_set<VertexId> nb(g.neighbors(v).begin(), g.neighbors(v).end());
        std::vector<std::vector<VertexId>> refined;
        refined.reserve(classes.size() + 1);
        for (auto& cls : classes) {
            std::vector<VertexId> in, out;
            for (VertexId u : cls) {
                (nb.count(u) ? in : out).push_back(u);
            }
            if (!in.empty()) refined.push_back(std::move(in));
            if (!out.empty()) refined.push_back(std::move(out));
        }
        classes = std::move(refined);
    }
    return order;
}

}  // namespace

std::vector<VertexId> lexbfs_order(const MixedGraph& g, VertexId start) {
    return lexbfs_impl(g, start, nullptr);
}

std::vector<VertexId> lexbfs_order_with_priority(const MixedGraph& g, VertexId start,
                                                 const std::vector<std::uint64_t>& priority) {
    if (priority.size() != g.vertex_count()) {
        throw InputError("priority vector size does not match vertex count");
    }
    return lexbfs_impl(g, start, &priority);
}

MixedGraph orient_by_ordering(const MixedGraph& g, const std::vector<VertexId>& order) {
    require_undirected(g, "orient_by_ordering");
    std::size_t n = g.vertex_count();
    if (order.size() != n) throw InputError("ordering must list every vertex exactly once");
    std::vector<std::size_t> pos(n, n);
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (order[i] >= n || pos[order[i]] != n) {
            throw InputError("ordering must list every vertex exactly once");
        }
        pos[order[i]] = i;
    }
    EdgeSet directed;
    for (const Edge& e : g.edges()) {
        if (pos[e.tail] < pos[e.head]) {
            directed.insert(Edge::directed(e.tail, e.head));
        } else {
            directed.insert(Edge::directed(e.head, e.tail));
        }
    }
    std::vector<std::uint64_t> labels = g.labels();
    return MixedGraph(n, directed, std::move(labels));
}

namespace {

// Bron-Kerbosch with pivoting, for the rare non-chordal caller.
void bron_kerbosch(const MixedGraph& g, std::vector<VertexId>& r, std::vector<VertexId> p,
                   std::vector<VertexId> x, std::vector<std::vector<VertexId>>& out) {
    if (p.empty() && x.empty()) {
        out.push_back(r);
        return;
    }
    VertexId pivot = !p.empty() ? p.front() : x.front();
    std::size_t best = 0;
    for (VertexId cand : p) {
        std::size_t cnt = 0;
        for (VertexId u : p) {
            if (g.adjacent(cand, u)) ++cnt;
        }
        if (cnt > best) {
            best = cnt;
            pivot = cand;
        }
    }
    std::vector<VertexId> todo;
    for (VertexId v : p) {
        if (v == pivot || !g.adjacent(pivot, v)) todo.push_back(v);
    }
    for (VertexId v : todo) {
        std::vector<VertexId> np, nx;
        for (VertexId u : p) {
            if (u != v && g.adjacent(u, v)) np.push_back(u);
        }
        for (VertexId u : x) {
            if (g.adjacent(u, v)) nx.push_back(u);
        }
        r.push_back(v);
        bron_kerbosch(g, r, std::move(np), std::move(nx), out);
        r.pop_back();
        p.erase(std::find(p.begin(), p.end(), v));
        x.push_back(v);
    }
}

}  // namespace

std::vector<std::vector<VertexId>> maximal_cliques(const MixedGraph& g) {
    require_undirected(g, "maximal_cliques");
    std::size_t n = g.vertex_count();
    std::vector<std::vector<VertexId>> cliques;
    ChordalityResult ch = is_chordal(g);
    if (ch.chordal) {
        std::vector<std::size_t> pos(n, 0);
        for (std::size_t i = 0; i < ch.elimination_order.size(); ++i) {
            pos[ch.elimination_order[i]] = i;
        }
        for (VertexId v = 0; v < n; ++v) {
            std::vector<VertexId> c{v};
            for (VertexId u : g.neighbors(v)) {
                if (pos[u] > pos[v]) c.push_back(u);
            }
            std::sort(c.begin(), c.end());
            cliques.push_back(std::move(c));
        }
    } else {
        std::vector<VertexId> r, p, x;
        for (VertexId v = 0; v < n; ++v) p.push_back(v);
        bron_kerbosch(g, r, std::move(p), std::move(x), cliques);
        for (auto& c : cliques) std::sort(c.begin(), c.end());
    }
    std::sort(cliques.begin(), cliques.end());
    cliques.erase(std::unique(cliques.begin(), cliques.end()), cliques.end());
    // Drop cliques contained in another one.
    std::vector<std::vector<VertexId>> out;
    for (std::size_t i = 0; i < cliques.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < cliques.size() && !dominated; ++j) {
            if (i == j || cliques[j].size() <= cliques[i].size()) continue;
            dominated = std::includes(cliques[j].begin(), cliques[j].end(), cliques[i].begin(),
                                      cliques[i].end());
        }
        if (!dominated) out.push_back(cliques[i]);
    }
    return out;
}

std::vector<std::vector<VertexId>> neighborhood_cliques(const MixedGraph& g, VertexId v) {
    std::vector<VertexId> nb = g.neighbors(v);
    MixedGraph local = induced_subgraph(skeleton(g), nb);
    std::vector<std::vector<VertexId>> cliques = maximal_cliques(local);
    for (auto& c : cliques) {
        for (VertexId& u : c) u = nb[u];
    }
    return cliques;
}

MixedGraph random_chordal(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (n == 0) throw InputError("random_chordal requires at least one vertex");
    std::size_t full = n * (n - 1) / 2;
    if (m + 1 < n || m > full) {
        throw InputError("random_chordal requires n-1 <= m <= n(n-1)/2");
    }
    std::mt19937_64 rng(seed);

    // Random recursive spanning tree over a shuffled vertex order.
    std::vector<VertexId> order(n);
    for (VertexId v = 0; v < n; ++v) order[v] = v;
    shuffle_vec(order, rng);
    MixedGraph g(n);
    for (std::size_t i = 1; i < n; ++i) {
        VertexId anchor = order[bounded_rand(rng, i)];
        g.add_edge(Edge::undirected(order[i], anchor));
    }

    // Remaining edges, added only when the addition keeps the graph
    // chordal. Any such addition joins two vertices at distance exactly
    // two, so candidates are sampled as open wedges: two non-adjacent
    // neighbors of a shared vertex.
    auto try_add = [&](VertexId u, VertexId v) {
        MixedGraph trial = g;
        trial.add_edge(Edge::undirected(u, v));
        if (!is_chordal(trial).chordal) return false;
        g = std::move(trial);
        return true;
    };
    std::size_t added = n - 1;
    while (added < m) {
        bool placed = false;
        for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
            VertexId w = static_cast<VertexId>(bounded_rand(rng, n));
            const std::vector<VertexId>& nb = g.neighbors(w);
            if (nb.size() < 2) continue;
            VertexId u = nb[bounded_rand(rng, nb.size())];
            VertexId v = nb[bounded_rand(rng, nb.size())];
            if (u == v || g.adjacent(u, v)) continue;
            placed = try_add(u, v);
        }
        if (!placed) {
            // Exhaustive pass over every open wedge in random order. A
            // connected chordal graph short of complete always has an
            // addable wedge, so this finds one.
            std::vector<std::pair<VertexId, VertexId>> wedges;
            std::unordered_set<std::uint64_t> seen;
            for (VertexId w = 0; w < n; ++w) {
                const std::vector<VertexId>& nb = g.neighbors(w);
                for (std::size_t i = 0; i + 1 < nb.size(); ++i) {
                    for (std::size_t j = i + 1; j < nb.size(); ++j) {
                        if (g.adjacent(nb[i], nb[j])) continue;
                        if (seen.insert(pair_code(nb[i], nb[j])).second) {
                            wedges.emplace_back(nb[i], nb[j]);
                        }
                    }
                }
            }
            shuffle_vec(wedges, rng);
            for (auto [u, v] : wedges) {
                placed = try_add(u, v);
                if (placed) break;
            }
        }
        if (!placed) throw InternalError("random_chordal could not extend a non-complete graph");
        ++added;
    }
    return g;
}

}  // namespace cold
