#pragma once

#include "eaifd/attr_set.hpp"
#include "eaifd/hitting.hpp"
#include "eaifd/hypergraph.hpp"
#include "eaifd/mht.hpp"
#include "eaifd/relation.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace eaifd {

/// Minimal non-trivial FDs grouped by RHS attribute.
class FdSet {
public:
    FdSet() = default;
    explicit FdSet(AttrId arity) : lhs_(arity) {}

    AttrId arity() const { return static_cast<AttrId>(lhs_.size()); }
    /// LHSs of `rhs`, ascending by mask.
    const std::vector<AttrSet>& lhs_of(AttrId rhs) const { return lhs_.at(rhs); }
    void set(AttrId rhs, std::vector<AttrSet> lhs);
    bool contains(const Candidate& fd) const;
    std::size_t size() const;
    /// Every FD, by RHS then lexicographic LHS.
    std::vector<Candidate> all() const;

    friend bool operator==(const FdSet&, const FdSet&) = default;

private:
    std::vector<std::vector<AttrSet>> lhs_;
};

struct Params {
    double epsilon = 0.3;
    double theta = 0.8;
    std::uint64_t seed = 0;

    friend bool operator==(const Params&, const Params&) = default;
};

struct DiscoveryState {
    Params params;
    FdSet fds;
    MhtTable mht;
    std::vector<SubHypergraph> hypergraphs;
    std::vector<TransversalStore> stores;

    friend bool operator==(const DiscoveryState&, const DiscoveryState&) = default;
};

struct DiscoveryStats {
    std::uint64_t sampled_pairs = 0;
    std::uint64_t rounds = 0;
    std::uint64_t candidates_validated = 0;
    std::uint64_t witness_diffs = 0;
    std::uint64_t blocks_read = 0;
};

/// One-time discovery over the base relation. `views` must be the sorted
/// views of `store`.
DiscoveryState discover(const ColumnStore& store, std::span<const SortedView> views, const Params& params,
                        DiscoveryStats* stats = nullptr);

/// Throws ContractError unless 0 < epsilon < 1 and 0 < theta <= 1.
void check_params(const Params& params);

} // namespace eaifd
