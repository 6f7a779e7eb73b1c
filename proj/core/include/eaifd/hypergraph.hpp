#pragma once

#include "eaifd/attr_set.hpp"

#include <cstdint>
#include <vector>

namespace eaifd {

struct ChangeReport {
    enum class Kind { unchanged, inserted, poisoned };
    Kind kind = Kind::unchanged;
    /// Edges dropped because the new edge is a subset of them.
    std::vector<AttrSet> removed;
};

/// Edges that entered a hypergraph during one bulk update, together with the
/// generation range the update spanned. An empty edge means "poisoned".
struct EdgeBatch {
    std::uint64_t from_generation = 0;
    std::uint64_t to_generation = 0;
    /// Inserted edges still present after the batch, ascending by mask.
    std::vector<AttrSet> edges;
    bool poisoned = false;

    bool changed() const { return to_generation != from_generation; }
};

/// Minimal hypergraph of difference sets modulo one RHS attribute.
class SubHypergraph {
public:
    SubHypergraph() = default;
    SubHypergraph(AttrId rhs, AttrId arity);

    AttrId rhs() const { return rhs_; }
    AttrId arity() const { return arity_; }
    /// Vertex set: every attribute except the RHS.
    AttrSet vertices() const { return AttrSet::full(arity_) - AttrSet::single(rhs_); }
    /// Antichain of edges ordered by cardinality, then mask.
    const std::vector<AttrSet>& edges() const { return edges_; }
    bool poisoned() const { return poisoned_; }
    std::uint64_t generation() const { return generation_; }

    /// Inserts `e` unless an existing edge is a subset of it, deleting the
    /// supersets it makes redundant. An empty edge poisons the hypergraph.
    /// Throws ContractError when `e` contains the RHS.
    ChangeReport add_edge(AttrSet e);

    /// Sequential add_edge over modulo(diffs, rhs).
    EdgeBatch bulk_update(const std::vector<AttrSet>& diffs);

    /// Adds already-projected edges (none may contain the RHS).
    EdgeBatch add_edges(const std::vector<AttrSet>& edges);

    /// Rebuilds persisted state without re-validating the antichain.
    static SubHypergraph restore(AttrId rhs, AttrId arity, std::vector<AttrSet> edges, bool poisoned,
                                 std::uint64_t generation);

    friend bool operator==(const SubHypergraph&, const SubHypergraph&) = default;

private:
    AttrId rhs_ = 0;
    AttrId arity_ = 0;
    std::vector<AttrSet> edges_;
    bool poisoned_ = false;
    std::uint64_t generation_ = 0;
};

/// Reference minimization: keeps the sets with no proper subset in the input.
std::vector<AttrSet> minimize(std::vector<AttrSet> sets);

} // namespace eaifd
