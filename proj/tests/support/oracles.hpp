#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cold/graph.hpp"

namespace cold::testing {

// Exhaustive reference answers, implemented as directly as possible so the
// library's accelerated paths have something independent to agree with.

// Fully directed orientations of g that are acyclic, keep every directed
// edge of g, and have exactly the unshielded colliders g already has.
// Refuses inputs with more than `cap` undirected edges.
std::uint64_t count_consistent_extensions(const MixedGraph& g, std::size_t cap = 24);
std::optional<MixedGraph> first_consistent_extension(const MixedGraph& g, std::size_t cap = 24);

// Directed edges shared by every consistent extension; nullopt when no
// extension exists.
std::optional<EdgeSet> extension_agreement(const MixedGraph& g, std::size_t cap = 24);

// Audit for claimed extensions: fully directed, acyclic, same skeleton,
// contains every directed edge of base, same unshielded colliders.
bool valid_extension_of(const MixedGraph& base, const MixedGraph& candidate);

// Directed part of the closure of skeleton(g) plus the one seed arc under
// rules 1 and 4, computed by the rule engine pass after pass.
EdgeSet single_seed_closure14(const MixedGraph& g, VertexId s, VertexId d);

}  // namespace cold::testing
