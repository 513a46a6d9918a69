#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "cold/graph.hpp"

namespace cold {

enum class Rule : unsigned { R1 = 1, R2 = 2, R3 = 3, R4 = 4 };

// A subset of the four orientation rules.
class RuleSet {
public:
    RuleSet() = default;
    RuleSet(std::initializer_list<Rule> rules) {
        for (Rule r : rules) add(r);
    }
    static RuleSet all() { return {Rule::R1, Rule::R2, Rule::R3, Rule::R4}; }
    // Parses "1", "124", or "1,2,4".
    static RuleSet parse(const std::string& text);

    void add(Rule r) { mask_ |= bit(r); }
    bool contains(Rule r) const { return mask_ & bit(r); }
    bool empty() const { return mask_ == 0; }
    std::vector<Rule> list() const;
    std::string str() const;

private:
    unsigned mask_ = 0;
    static unsigned bit(Rule r) { return 1u << static_cast<unsigned>(r); }
};

// One matched rule instance. `verts` lists the pattern vertices in a
// fixed per-rule role order:
//   R1: i, k, j     (i->k, k--j, i not adjacent j)     orients k->j
//   R2: i, k, j     (i->k, k->j, i--j)                  orients i->j
//   R3: i, k, l, j  (l->k, j->k, i--k, i~l, i~j, l<j)   orients i->k
//   R4: s, d, i, j  (s->d, d~j, i~s, i~d, i--j)         orients i->j
// Positions written with '~' accept an undirected edge or a directed one
// that does not sit inside a v-structure.
struct Candidate {
    Rule rule = Rule::R1;
    std::vector<VertexId> verts;
    Edge orients;

    std::string describe(const MixedGraph& g) const;
    bool operator==(const Candidate& o) const = default;
};

// All instances of one rule present in g, in a deterministic order.
std::vector<Candidate> find_candidates(const MixedGraph& g, Rule rule);

// Rule-3 instances whose anchor premise is the arc l->k. The partner arc
// j->k ranges over all current parents of k, so sweeping this over every
// arc oriented since the last sweep finds every instance that could have
// become fireable in between.
std::vector<Candidate> rule3_instances_at_arc(const MixedGraph& g, VertexId l, VertexId k);

// Unordered vertex pairs that rule 1 must leave alone.
class ForbiddenEdges {
public:
    ForbiddenEdges() = default;
    void add(VertexId a, VertexId b) { pairs_.insert(pair_code(a, b)); }
    bool contains(VertexId a, VertexId b) const { return pairs_.count(pair_code(a, b)) != 0; }
    bool empty() const { return pairs_.empty(); }
    std::size_t size() const { return pairs_.size(); }
    // Every member must be an undirected edge of g.
    void validate_against(const MixedGraph& g) const;

private:
    std::unordered_set<std::uint64_t> pairs_;
};

struct ClosureOptions {
    RuleSet rules = RuleSet::all();
    const ForbiddenEdges* forbidden = nullptr;
    // Global rescans each round instead of the worklist engine.
    bool naive = false;
    // Randomizes candidate application order (implies naive). Test hook
    // for the order-independence property.
    std::optional<std::uint64_t> shuffle_seed;
};

// Least fixpoint of the selected rules over g. The input is never
// mutated; its skeleton and existing orientations are preserved. Two
// live rule instances that disagree about one edge raise ConflictError.
MixedGraph meek_closure(const MixedGraph& g, const ClosureOptions& opts);
MixedGraph meek_closure(const MixedGraph& g, RuleSet rules);

}  // namespace cold
