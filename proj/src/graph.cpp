#include "cold/graph.hpp"

#include <algorithm>

#include "cold/errors.hpp"

namespace cold {

MixedGraph::MixedGraph(std::size_t n) : n_(n), adj_(n) {}

MixedGraph::MixedGraph(std::size_t n, const EdgeSet& edges) : n_(n), adj_(n) {
    for (const Edge& e : edges) add_edge(e);
}

MixedGraph::MixedGraph(std::size_t n, const EdgeSet& edges, std::vector<std::uint64_t> labels)
    : n_(n), adj_(n), labels_(std::move(labels)) {
    if (!labels_.empty() && labels_.size() != n_) {
        throw InputError("label vector size does not match vertex count");
    }
    for (const Edge& e : edges) add_edge(e);
}

void MixedGraph::check_vertex(VertexId v) const {
    if (v >= n_) {
        throw InputError("vertex " + std::to_string(v) + " out of range, graph has " +
                         std::to_string(n_) + " vertices");
    }
}

void MixedGraph::index_edge(const Edge& e) {
    by_pair_[pair_code(e.tail, e.head)] = e;
}

void MixedGraph::add_edge(const Edge& e) {
    check_vertex(e.tail);
    check_vertex(e.head);
    auto found = by_pair_.find(pair_code(e.tail, e.head));
    if (found != by_pair_.end()) {
        const Edge& old = found->second;
        if (old == e) return;
        if (old.is_directed() && e.is_directed()) {
            throw ConflictError("cannot add " + vname(e.tail) + "->" + vname(e.head) +
                                    ": pair already directed " + vname(old.tail) + "->" +
                                    vname(old.head),
                                "existing edge " + vname(old.tail) + "->" + vname(old.head),
                                "added edge " + vname(e.tail) + "->" + vname(e.head));
        }
        if (old.is_directed()) return;  // undirected on top of directed: absorbed
        // directed on top of undirected: upgrade in place
        edges_.insert(e);
        index_edge(e);
        return;
    }
    edges_.insert(e);
    index_edge(e);
    adj_[e.lo()].insert(std::lower_bound(adj_[e.lo()].begin(), adj_[e.lo()].end(), e.hi()),
                        e.hi());
    adj_[e.hi()].insert(std::lower_bound(adj_[e.hi()].begin(), adj_[e.hi()].end(), e.lo()),
                        e.lo());
}

bool MixedGraph::adjacent(VertexId a, VertexId b) const {
    check_vertex(a);
    check_vertex(b);
    return by_pair_.count(pair_code(a, b)) != 0;
}

bool MixedGraph::has_arc(VertexId from, VertexId to) const {
    check_vertex(from);
    check_vertex(to);
    auto it = by_pair_.find(pair_code(from, to));
    return it != by_pair_.end() && it->second.is_directed() && it->second.tail == from &&
           it->second.head == to;
}

bool MixedGraph::has_undirected(VertexId a, VertexId b) const {
    check_vertex(a);
    check_vertex(b);
    auto it = by_pair_.find(pair_code(a, b));
    return it != by_pair_.end() && !it->second.is_directed();
}

std::optional<Edge> MixedGraph::edge_between(VertexId a, VertexId b) const {
    check_vertex(a);
    check_vertex(b);
    auto it = by_pair_.find(pair_code(a, b));
    if (it == by_pair_.end()) return std::nullopt;
    return it->second;
}

const std::vector<VertexId>& MixedGraph::neighbors(VertexId v) const {
    check_vertex(v);
    return adj_[v];
}

std::vector<VertexId> MixedGraph::undirected_neighbors(VertexId v) const {
    std::vector<VertexId> out;
    for (VertexId u : neighbors(v)) {
        if (has_undirected(v, u)) out.push_back(u);
    }
    return out;
}

std::vector<VertexId> MixedGraph::parents(VertexId v) const {
    std::vector<VertexId> out;
    for (VertexId u : neighbors(v)) {
        if (has_arc(u, v)) out.push_back(u);
    }
    return out;
}

std::vector<VertexId> MixedGraph::children(VertexId v) const {
    std::vector<VertexId> out;
    for (VertexId u : neighbors(v)) {
        if (has_arc(v, u)) out.push_back(u);
    }
    return out;
}

OrientResult MixedGraph::orient(VertexId from, VertexId to) {
    check_vertex(from);
    check_vertex(to);
    auto it = by_pair_.find(pair_code(from, to));
    if (it == by_pair_.end()) {
        throw InputError("cannot orient " + vname(from) + "->" + vname(to) +
                         ": vertices are not adjacent");
    }
    Edge& cur = it->second;
    if (cur.is_directed()) {
        if (cur.tail == from && cur.head == to) return OrientResult::Already;
        return OrientResult::Conflict;
    }
    Edge directed = Edge::directed(from, to);
    edges_.insert(directed);
    cur = directed;
    return OrientResult::New;
}

bool MixedGraph::fully_directed() const {
    return edges_.directed_count() == edges_.size();
}

bool MixedGraph::fully_undirected() const {
    return edges_.directed_count() == 0;
}

std::uint64_t MixedGraph::label(VertexId v) const {
    check_vertex(v);
    return labels_.empty() ? v : labels_[v];
}

std::string MixedGraph::vname(VertexId v) const {
    return "v" + std::to_string(label(v));
}

bool MixedGraph::audit() const {
    if (adj_.size() != n_) return false;
    if (edges_.has_conflict()) return false;
    if (by_pair_.size() != edges_.size()) return false;
    std::size_t degree_sum = 0;
    for (VertexId v = 0; v < n_; ++v) {
        if (!std::is_sorted(adj_[v].begin(), adj_[v].end())) return false;
        degree_sum += adj_[v].size();
        for (VertexId u : adj_[v]) {
            if (u >= n_ || u == v) return false;
            if (by_pair_.find(pair_code(u, v)) == by_pair_.end()) return false;
        }
    }
    if (degree_sum != 2 * edges_.size()) return false;
    for (const Edge& e : edges_) {
        auto it = by_pair_.find(pair_code(e.tail, e.head));
        if (it == by_pair_.end() || !(it->second == e)) return false;
    }
    return true;
}

bool MixedGraph::operator==(const MixedGraph& o) const {
    return n_ == o.n_ && edges_ == o.edges_ && labels_ == o.labels_;
}

MixedGraph induced_subgraph(const MixedGraph& g, const std::vector<VertexId>& verts) {
    if (!std::is_sorted(verts.begin(), verts.end()) ||
        std::adjacent_find(verts.begin(), verts.end()) != verts.end()) {
        throw InputError("induced_subgraph requires ascending distinct vertices");
    }
    std::unordered_map<VertexId, VertexId> to_local;
    to_local.reserve(verts.size());
    std::vector<std::uint64_t> labels(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (verts[i] >= g.vertex_count()) throw InputError("induced_subgraph vertex out of range");
        to_local[verts[i]] = static_cast<VertexId>(i);
        labels[i] = g.label(verts[i]);
    }
    MixedGraph out(verts.size(), EdgeSet{}, std::move(labels));
    for (const Edge& e : g.edges()) {
        auto a = to_local.find(e.tail);
        auto b = to_local.find(e.head);
        if (a == to_local.end() || b == to_local.end()) continue;
        Edge local = e;
        local.tail = a->second;
        local.head = b->second;
        out.add_edge(local);
    }
    return out;
}

}  // namespace cold
