#include "cold/dp_table.hpp"

#include <algorithm>

#include "cold/chordal.hpp"
#include "cold/errors.hpp"
#include "cold/graph_ops.hpp"

namespace cold {

namespace {

constexpr std::uint8_t kNull = 0;
constexpr std::uint8_t kInProgress = 1;
constexpr std::uint8_t kFilled = 2;

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}

std::uint64_t skeleton_hash(const MixedGraph& g) {
    std::uint64_t h = mix64(0x9e3779b97f4a7c15ULL ^ g.vertex_count());
    for (const Edge& e : g.edges()) {
        h = mix64(h ^ pair_code(e.tail, e.head));
    }
    return h;
}

struct SkeletonIndex {
    std::vector<std::vector<VertexId>> adj;
    std::vector<std::uint64_t> labels;
    std::unordered_map<std::uint64_t, std::uint32_t> pair_slot;
    std::size_t edges = 0;
};

SkeletonIndex index_skeleton(const MixedGraph& g) {
    SkeletonIndex idx;
    idx.adj.resize(g.vertex_count());
    idx.labels.resize(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        idx.adj[v] = g.neighbors(v);
        idx.labels[v] = g.label(v);
    }
    std::uint32_t next = 0;
    for (const Edge& e : g.edges()) {
        idx.pair_slot.emplace(pair_code(e.tail, e.head), next++);
    }
    idx.edges = next;
    return idx;
}

// One pending table entry during an iterative fill. deps lists the entries
// this one unions in, in the order the loops of the recursive formulation
// visit them.
struct Frame {
    VertexId s = 0;
    VertexId d = 0;
    std::vector<std::pair<VertexId, VertexId>> deps;
    std::size_t next = 0;
    EdgeSet value;
};

}  // namespace

DpTable::DpTable(const MixedGraph& g) {
    MixedGraph sk = skeleton(g);
    if (sk.vertex_count() == 0) throw InputError("dp table requires a nonempty graph");
    if (!skeleton_connected(sk)) throw InputError("dp table requires a connected skeleton");
    if (!is_chordal(sk).chordal) throw InputError("dp table requires a chordal skeleton");
    SkeletonIndex idx = index_skeleton(sk);
    adj_ = std::move(idx.adj);
    labels_ = std::move(idx.labels);
    pair_slot_ = std::move(idx.pair_slot);
    edge_count_ = idx.edges;
    fingerprint_ = skeleton_hash(sk);
    values_.resize(2 * edge_count_);
    state_ = std::make_unique<std::atomic<std::uint8_t>[]>(2 * edge_count_);
    for (std::size_t i = 0; i < 2 * edge_count_; ++i) state_[i].store(kNull);
}

std::uint64_t DpTable::fingerprint_of(const MixedGraph& g) {
    return skeleton_hash(skeleton(g));
}

void DpTable::ensure_matches(const MixedGraph& g) const {
    if (fingerprint_of(g) != fingerprint_) {
        throw InputError("dp table was built from a different skeleton than this graph");
    }
}

bool DpTable::adjacent(VertexId a, VertexId b) const {
    return pair_slot_.find(pair_code(a, b)) != pair_slot_.end();
}

std::uint32_t DpTable::slot(VertexId s, VertexId d) const {
    auto it = pair_slot_.find(pair_code(s, d));
    if (it == pair_slot_.end()) {
        throw InputError("dp entry requested for non-adjacent pair (" + std::to_string(s) +
                         ", " + std::to_string(d) + ")");
    }
    return 2 * it->second + (s < d ? 0 : 1);
}

bool DpTable::filled(VertexId s, VertexId d) const {
    return state_[slot(s, d)].load(std::memory_order_acquire) == kFilled;
}

const EdgeSet& DpTable::entry(VertexId s, VertexId d) {
    std::uint32_t i = slot(s, d);
    if (state_[i].load(std::memory_order_acquire) == kFilled) return values_[i];
    std::lock_guard<std::mutex> lock(fill_mutex_);
    if (state_[i].load(std::memory_order_acquire) != kFilled) fill_locked(s, d);
    return values_[i];
}

void DpTable::build_all() {
    std::lock_guard<std::mutex> lock(fill_mutex_);
    for (VertexId v = 0; v < adj_.size(); ++v) {
        for (VertexId u : adj_[v]) {
            std::uint32_t i = slot(v, u);
            if (state_[i].load(std::memory_order_acquire) != kFilled) fill_locked(v, u);
        }
    }
}

void DpTable::fill_locked(VertexId s_in, VertexId d_in) {
    std::vector<Frame> stack;
    std::uint64_t probes = 0;

    auto open_frame = [&](VertexId s, VertexId d) {
        state_[slot(s, d)].store(kInProgress, std::memory_order_relaxed);
        Frame f;
        f.s = s;
        f.d = d;
        f.value.insert(Edge::directed(s, d));
        // Neighbors of d outside the closed neighborhood of s trigger the
        // chain step d->j; each such j then pulls in every common neighbor
        // i of s, d, j through the shielded step i->j.
        for (VertexId j : adj_[d]) {
            ++probes;
            if (j == s || adjacent(s, j)) continue;
            f.deps.emplace_back(d, j);
            for (VertexId i : adj_[s]) {
                ++probes;
                if (i == d || !adjacent(i, d) || !adjacent(i, j)) continue;
                f.deps.emplace_back(i, j);
            }
        }
        stack.push_back(std::move(f));
    };

    open_frame(s_in, d_in);
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.next < top.deps.size()) {
            auto [a, b] = top.deps[top.next];
            std::uint32_t i = slot(a, b);
            std::uint8_t st = state_[i].load(std::memory_order_relaxed);
            if (st == kFilled) {
                top.value.insert_all(values_[i]);
                ++top.next;
            } else if (st == kNull) {
                open_frame(a, b);
            } else {
                // A dependency cycle cannot happen over a chordal skeleton;
                // seeing one means the input was not what it claimed to be.
                throw InputError("dp fill revisited an in-progress entry; skeleton is not a "
                                 "valid source for this table");
            }
        } else {
            std::uint32_t i = slot(top.s, top.d);
            values_[i] = std::move(top.value);
            state_[i].store(kFilled, std::memory_order_release);
            computed_.fetch_add(1, std::memory_order_relaxed);
            stack.pop_back();
        }
    }
    probes_.fetch_add(probes, std::memory_order_relaxed);
}

const std::vector<VertexId>& DpTable::neighbors(VertexId v) const {
    if (v >= adj_.size()) throw InputError("vertex out of range");
    return adj_[v];
}

std::uint64_t DpTable::label(VertexId v) const {
    if (v >= labels_.size()) throw InputError("vertex out of range");
    return labels_[v];
}

std::string DpTable::dump() {
    build_all();
    std::vector<std::pair<VertexId, VertexId>> arcs;
    for (VertexId v = 0; v < adj_.size(); ++v) {
        for (VertexId u : adj_[v]) arcs.emplace_back(v, u);
    }
    std::sort(arcs.begin(), arcs.end(), [&](auto& x, auto& y) {
        return std::make_pair(labels_[x.first], labels_[x.second]) <
               std::make_pair(labels_[y.first], labels_[y.second]);
    });
    auto name = [&](VertexId v) { return "v" + std::to_string(labels_[v]); };
    std::string out;
    for (auto [s, d] : arcs) {
        const EdgeSet& val = entry(s, d);
        std::vector<Edge> sorted(val.begin(), val.end());
        std::sort(sorted.begin(), sorted.end(), [&](const Edge& x, const Edge& y) {
            return std::make_pair(labels_[x.tail], labels_[x.head]) <
                   std::make_pair(labels_[y.tail], labels_[y.head]);
        });
        out += name(s) + "->" + name(d) + " : {";
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (i) out += ", ";
            out += name(sorted[i].tail) + "->" + name(sorted[i].head);
        }
        out += "}\n";
    }
    return out;
}

DpoTable::DpoTable(const MixedGraph& g) {
    if (g.vertex_count() == 0) throw InputError("dpo table requires a nonempty graph");
    std::size_t n = g.vertex_count();
    adj_offsets_.assign(n + 1, 0);
    for (VertexId v = 0; v < n; ++v) {
        adj_offsets_[v + 1] =
            adj_offsets_[v] + static_cast<std::uint32_t>(g.neighbors(v).size());
    }
    adj_flat_.resize(adj_offsets_[n]);
    for (VertexId v = 0; v < n; ++v) {
        const std::vector<VertexId>& nb = g.neighbors(v);
        std::copy(nb.begin(), nb.end(), adj_flat_.begin() + adj_offsets_[v]);
    }
    edge_count_ = g.edge_count();
    // pair_code ignores direction, so hashing g directly equals hashing
    // its skeleton.
    fingerprint_ = skeleton_hash(g);
    // Group arc tails by head straight off the edge list, then record both
    // arcs of every unshielded parent pair. This walks each edge twice and
    // checks adjacency through the flat index, avoiding per-vertex parent
    // lookups in the graph.
    std::vector<std::uint32_t> in_off(n + 1, 0);
    for (const Edge& e : g.edges()) {
        if (e.is_directed()) ++in_off[e.head + 1];
    }
    for (std::size_t v = 0; v < n; ++v) in_off[v + 1] += in_off[v];
    std::vector<VertexId> in_flat(in_off[n]);
    {
        std::vector<std::uint32_t> cur(in_off.begin(), in_off.end() - 1);
        for (const Edge& e : g.edges()) {
            if (e.is_directed()) in_flat[cur[e.head]++] = e.tail;
        }
    }
    for (VertexId k = 0; k < n; ++k) {
        for (std::uint32_t x = in_off[k]; x < in_off[k + 1]; ++x) {
            for (std::uint32_t y = x + 1; y < in_off[k + 1]; ++y) {
                if (!adjacent(in_flat[x], in_flat[y])) {
                    vstructure_arcs_.push_back(arc_code(in_flat[x], k));
                    vstructure_arcs_.push_back(arc_code(in_flat[y], k));
                }
            }
        }
    }
    std::sort(vstructure_arcs_.begin(), vstructure_arcs_.end());
    vstructure_arcs_.erase(std::unique(vstructure_arcs_.begin(), vstructure_arcs_.end()),
                           vstructure_arcs_.end());
    values_.resize(2 * edge_count_);
    state_ = std::make_unique<std::atomic<std::uint8_t>[]>(2 * edge_count_);
    for (std::size_t i = 0; i < 2 * edge_count_; ++i) state_[i].store(kNull);
}

bool DpoTable::is_vstructure_arc(VertexId from, VertexId to) const {
    return std::binary_search(vstructure_arcs_.begin(), vstructure_arcs_.end(),
                              arc_code(from, to));
}

bool DpoTable::adjacent(VertexId a, VertexId b) const {
    if (a >= adj_offsets_.size() - 1) return false;
    auto begin = adj_flat_.begin() + adj_offsets_[a];
    auto end = adj_flat_.begin() + adj_offsets_[a + 1];
    return std::binary_search(begin, end, b);
}

std::uint32_t DpoTable::slot(VertexId s, VertexId d) const {
    if (d < adj_offsets_.size() - 1) {
        auto begin = adj_flat_.begin() + adj_offsets_[d];
        auto end = adj_flat_.begin() + adj_offsets_[d + 1];
        auto it = std::lower_bound(begin, end, s);
        if (it != end && *it == s) {
            return static_cast<std::uint32_t>(it - adj_flat_.begin());
        }
    }
    throw InputError("dpo entry requested for non-adjacent pair (" + std::to_string(s) + ", " +
                     std::to_string(d) + ")");
}

bool DpoTable::filled(VertexId s, VertexId d) const {
    return state_[slot(s, d)].load(std::memory_order_acquire) == kFilled;
}

bool DpoTable::opens_chain(VertexId s, VertexId d) const {
    if (!adjacent(d, s)) {
        throw InputError("dpo chain query for non-adjacent pair (" + std::to_string(s) + ", " +
                         std::to_string(d) + ")");
    }
    for (std::uint32_t o = adj_offsets_[d]; o < adj_offsets_[d + 1]; ++o) {
        VertexId j = adj_flat_[o];
        if (j == s || adjacent(s, j)) continue;
        if (is_vstructure_arc(j, d)) continue;
        return true;
    }
    return false;
}

const EdgeSet& DpoTable::entry(VertexId s, VertexId d) {
    std::uint32_t i = slot(s, d);
    if (is_vstructure_arc(d, s)) {
        throw InputError("dpo entry for " + std::to_string(s) + "->" + std::to_string(d) +
                         " would reverse a v-structure arc");
    }
    if (state_[i].load(std::memory_order_acquire) == kFilled) return values_[i];
    std::lock_guard<std::mutex> lock(fill_mutex_);
    if (state_[i].load(std::memory_order_acquire) != kFilled) fill_locked(s, d);
    return values_[i];
}

void DpoTable::fill_locked(VertexId s_in, VertexId d_in) {
    std::vector<Frame> stack;
    std::uint64_t probes = 0;

    auto open_frame = [&](VertexId s, VertexId d) {
        state_[slot(s, d)].store(kInProgress, std::memory_order_relaxed);
        Frame f;
        f.s = s;
        f.d = d;
        f.value.insert(Edge::directed(s, d));
        for (std::uint32_t o = adj_offsets_[d]; o < adj_offsets_[d + 1]; ++o) {
            VertexId j = adj_flat_[o];
            ++probes;
            if (j == s || adjacent(s, j)) continue;
            // The chain step d->j is skipped when j->d is pinned by a
            // v-structure; that orientation stays as it is.
            if (is_vstructure_arc(j, d)) continue;
            f.deps.emplace_back(d, j);
        }
        stack.push_back(std::move(f));
    };

    open_frame(s_in, d_in);
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.next < top.deps.size()) {
            auto [a, b] = top.deps[top.next];
            std::uint32_t i = slot(a, b);
            std::uint8_t st = state_[i].load(std::memory_order_relaxed);
            if (st == kFilled) {
                top.value.insert_all(values_[i]);
                ++top.next;
            } else if (st == kNull) {
                open_frame(a, b);
            } else {
                throw InputError("dpo fill revisited an in-progress entry; input is not a "
                                 "valid partially directed source for this table");
            }
        } else {
            std::uint32_t i = slot(top.s, top.d);
            values_[i] = std::move(top.value);
            state_[i].store(kFilled, std::memory_order_release);
            computed_.fetch_add(1, std::memory_order_relaxed);
            stack.pop_back();
        }
    }
    probes_.fetch_add(probes, std::memory_order_relaxed);
}

}  // namespace cold
