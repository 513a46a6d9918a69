#pragma once

#include <iosfwd>
#include <string>

#include "cold/graph.hpp"

namespace cold {

// Graph files are plain edge lists, one edge per line:
//
//     1 -- 2        undirected
//     2 -> 3        directed
//
// Endpoints are non-negative decimal labels; they do not have to be
// contiguous. Blank lines and lines starting with '#' are skipped.
// Vertices are numbered 0..n-1 in ascending label order and keep their
// file labels.
MixedGraph parse_edge_list(std::istream& in, const std::string& origin);
MixedGraph read_graph_file(const std::string& path);
void write_graph_file(const MixedGraph& g, const std::string& path);

// Body of a graph file for g, one edge per line, sorted by label pair.
std::string format_edge_lines(const MixedGraph& g);

// "{v1->v5, v2->v1}" for directed sets, entries sorted by (tail, head)
// label. Undirected members render as "v1--v2".
std::string format_edge_set(const MixedGraph& context, const EdgeSet& edges);

// "{v4, v7}" from vertex ids, sorted by label.
std::string format_vertex_set(const MixedGraph& context, std::vector<VertexId> verts);

// Accepts "v3" or "3" and resolves the label against the graph.
VertexId resolve_vertex_name(const MixedGraph& g, const std::string& name);

}  // namespace cold
