#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cold/graph.hpp"

namespace cold {

// Cache of single-edge closures over one fixed skeleton: the entry for
// s->d holds every edge that becomes directed once s->d is added to the
// otherwise undirected skeleton and rules 1 and 4 run to fixpoint.
//
// Entries fill lazily on first request, eagerly via build_all(). A filled
// entry is immutable; filling takes a single writer lock per table, so a
// table can be shared across threads. The skeleton is captured at
// construction and guarded by a fingerprint to catch reuse against a
// modified graph.
class DpTable {
public:
    // Uses the skeleton of g, which must be connected and chordal.
    explicit DpTable(const MixedGraph& g);

    // Oriented-edge set for seed s->d. Fills the entry (and any entries
    // it depends on) on first request. s and d must be adjacent.
    const EdgeSet& entry(VertexId s, VertexId d);
    bool filled(VertexId s, VertexId d) const;
    void build_all();

    std::size_t vertex_count() const { return adj_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    const std::vector<VertexId>& neighbors(VertexId v) const;
    std::uint64_t label(VertexId v) const;

    std::uint64_t fingerprint() const { return fingerprint_; }
    // Fingerprint of a graph's skeleton, for pairing tables with graphs.
    static std::uint64_t fingerprint_of(const MixedGraph& g);
    // Throws InputError when g's skeleton is not the one this table was
    // built from.
    void ensure_matches(const MixedGraph& g) const;

    // One line per entry: "v1->v2 : {v1->v2, v2->v3}", rows ordered by
    // (tail, head) label, elements likewise. Fills the whole table.
    std::string dump();

    // Entries computed since construction. Never exceeds 2|E|.
    std::uint64_t entries_computed() const { return computed_.load(std::memory_order_relaxed); }
    // Neighborhood iterations spent inside fills; the work measure that
    // scales with |E| times squared degree.
    std::uint64_t probes() const { return probes_.load(std::memory_order_relaxed); }

private:
    std::vector<std::vector<VertexId>> adj_;
    std::vector<std::uint64_t> labels_;
    std::unordered_map<std::uint64_t, std::uint32_t> pair_slot_;
    std::size_t edge_count_ = 0;
    std::uint64_t fingerprint_ = 0;

    std::vector<EdgeSet> values_;
    std::unique_ptr<std::atomic<std::uint8_t>[]> state_;
    mutable std::mutex fill_mutex_;
    std::atomic<std::uint64_t> computed_{0};
    std::atomic<std::uint64_t> probes_{0};

    std::uint32_t slot(VertexId s, VertexId d) const;
    bool adjacent(VertexId a, VertexId b) const;
    void fill_locked(VertexId s, VertexId d);
};

// Same cache for rule-1-only closures that respect a fixed set of
// v-structure arcs: expansion from d never orients d->j when j->d is one
// of the stored arcs. Skeletons here come from partially directed graphs
// and need not be chordal.
class DpoTable {
public:
    // Captures the skeleton of g and the arcs of g's v-structures.
    explicit DpoTable(const MixedGraph& g);

    // Seed s->d must be a skeleton edge and must not reverse a stored
    // v-structure arc.
    const EdgeSet& entry(VertexId s, VertexId d);
    bool filled(VertexId s, VertexId d) const;

    // True when at least one chain step leaves d for seed s->d, i.e. the
    // entry holds more than the seed itself. Lets callers skip the fill
    // for arcs whose chains cannot orient anything further.
    bool opens_chain(VertexId s, VertexId d) const;

    bool is_vstructure_arc(VertexId from, VertexId to) const;
    std::uint64_t fingerprint() const { return fingerprint_; }
    std::uint64_t entries_computed() const { return computed_.load(std::memory_order_relaxed); }
    std::uint64_t probes() const { return probes_.load(std::memory_order_relaxed); }

private:
    // Flat adjacency: neighbors of v, ascending, live in
    // adj_flat_[adj_offsets_[v] .. adj_offsets_[v + 1]). The slot of seed
    // s->d is the position of s inside d's span, giving one cell per
    // ordered adjacent pair without a hash map; this table sits on the
    // hot path of essential-graph recovery, where building the index
    // must not cost more than the closure it accelerates.
    std::vector<std::uint32_t> adj_offsets_;
    std::vector<VertexId> adj_flat_;
    std::vector<std::uint64_t> vstructure_arcs_;  // sorted arc codes
    std::size_t edge_count_ = 0;
    std::uint64_t fingerprint_ = 0;

    std::vector<EdgeSet> values_;
    std::unique_ptr<std::atomic<std::uint8_t>[]> state_;
    mutable std::mutex fill_mutex_;
    std::atomic<std::uint64_t> computed_{0};
    std::atomic<std::uint64_t> probes_{0};

    std::uint32_t slot(VertexId s, VertexId d) const;
    bool adjacent(VertexId a, VertexId b) const;
    void fill_locked(VertexId s, VertexId d);
};

}  // namespace cold
