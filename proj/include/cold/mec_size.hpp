#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <unordered_map>

#include "cold/dp_table.hpp"
#include "cold/graph.hpp"

namespace cold {

using BigInt = boost::multiprecision::cpp_int;

// Memo of already-counted induced subgraphs, keyed by the sorted tuple of
// their vertex labels in the ambient graph. The vertex set determines an
// induced subgraph, so the key is canonical.
struct SizeMemo {
    bool enabled = true;
    std::unordered_map<std::string, BigInt> table;
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
};

struct MecCountOptions {
    // Closed-form shortcuts for trees, single-cycle counts, and
    // near-complete graphs.
    bool closed_forms = true;
    // Root each vertex with a full rule-124 closure instead of table
    // unions; reference path for A/B validation.
    bool conventional_root = false;
};

// Number of DAGs in the Markov equivalence class whose essential graph is
// the undirected connected chordal graph g. Sums, over every choice of
// root vertex, the product of counts of the chain components that remain
// undirected once the root's edges are all forced outward.
BigInt count_mec(const MixedGraph& g, SizeMemo& memo, DpTable& table,
                 const MecCountOptions& opts = {});
// Convenience overload that builds the table for g itself.
BigInt count_mec(const MixedGraph& g, SizeMemo& memo, const MecCountOptions& opts = {});

// Counts acyclic, collider-free orientations of the skeleton directly.
// Exponential; refuses graphs above the cap.
BigInt brute_force_mec_size(const MixedGraph& g, std::size_t cap = 9);

BigInt factorial(std::size_t k);

}  // namespace cold
