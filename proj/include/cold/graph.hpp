#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cold/edge.hpp"

namespace cold {

// Outcome of trying to direct one edge of a MixedGraph.
enum class OrientResult {
    New,       // edge was undirected, now directed as requested
    Already,   // edge was already directed this way
    Conflict,  // edge is directed the other way; graph left unchanged
};

// A mixed graph on vertices 0..n-1 with a conflict-free edge set and an
// adjacency index. Optionally carries one external label per vertex so a
// subgraph can keep naming vertices the way the original graph did.
class MixedGraph {
public:
    MixedGraph() = default;
    explicit MixedGraph(std::size_t n);
    MixedGraph(std::size_t n, const EdgeSet& edges);
    MixedGraph(std::size_t n, const EdgeSet& edges, std::vector<std::uint64_t> labels);

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const EdgeSet& edges() const { return edges_; }

    void add_edge(const Edge& e);

    bool adjacent(VertexId a, VertexId b) const;
    bool has_arc(VertexId from, VertexId to) const;
    bool has_undirected(VertexId a, VertexId b) const;
    // Mark of the edge on pair (a, b), if present. The returned edge keeps
    // its stored orientation.
    std::optional<Edge> edge_between(VertexId a, VertexId b) const;

    // All neighbors in the skeleton, ascending.
    const std::vector<VertexId>& neighbors(VertexId v) const;
    std::vector<VertexId> undirected_neighbors(VertexId v) const;
    std::vector<VertexId> parents(VertexId v) const;
    std::vector<VertexId> children(VertexId v) const;

    // Directs the edge between from and to as from->to. Never throws;
    // conflicts are reported in the return value so callers can attach
    // their own context.
    OrientResult orient(VertexId from, VertexId to);

    bool fully_directed() const;
    bool fully_undirected() const;
    std::size_t directed_count() const { return edges_.directed_count(); }

    // External vertex names. Without explicit labels these are the ids.
    std::uint64_t label(VertexId v) const;
    bool has_labels() const { return !labels_.empty(); }
    const std::vector<std::uint64_t>& labels() const { return labels_; }
    // "v" followed by the label, the rendering used in dumps and messages.
    std::string vname(VertexId v) const;

    // Consistency audit of the internal indexes against the edge list.
    // Cheap enough to call from tests after every mutating operation.
    bool audit() const;

    bool operator==(const MixedGraph& o) const;

private:
    std::size_t n_ = 0;
    EdgeSet edges_;
    std::vector<std::vector<VertexId>> adj_;
    std::unordered_map<std::uint64_t, Edge> by_pair_;
    std::vector<std::uint64_t> labels_;

    void check_vertex(VertexId v) const;
    void index_edge(const Edge& e);
};

// Subgraph induced by the given vertices (ascending, no duplicates).
// Vertex i of the result is verts[i]; labels are composed through.
MixedGraph induced_subgraph(const MixedGraph& g, const std::vector<VertexId>& verts);

}  // namespace cold
