#pragma once

#include "eaifd/attr_set.hpp"
#include "eaifd/hypergraph.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace eaifd {

/// Current minimal hitting sets of one RHS attribute's sub-hypergraph.
struct TransversalStore {
    AttrId rhs = 0;
    /// Ascending by mask, duplicate-free.
    std::vector<AttrSet> mhs;
    std::uint64_t hypergraph_generation = 0;

    friend bool operator==(const TransversalStore&, const TransversalStore&) = default;
};

/// All minimal transversals of `edges` over `vertices` (MMCS). No edges
/// yields {∅}; an empty edge yields nothing.
std::vector<AttrSet> minimal_transversals(std::span<const AttrSet> edges, AttrSet vertices);

/// Minimal transversals that contain `root` (empty when none exists).
std::vector<AttrSet> minimal_transversals_containing(std::span<const AttrSet> edges, AttrSet vertices, AttrSet root);

/// enumerate(H): empty when H is poisoned.
std::vector<AttrSet> enumerate(const SubHypergraph& h);

TransversalStore make_store(const SubHypergraph& h);

struct ResumeResult {
    std::vector<AttrSet> retained;
    std::vector<AttrSet> added;
    std::vector<AttrSet> retired;
};

/// Brings `store` up to date after `batch` was applied to `h`, extending only
/// the transversals the new edges retire. Afterwards store.mhs == enumerate(h).
/// Throws StaleStoreError when the store or hypergraph generation does not
/// match the batch.
ResumeResult resume(TransversalStore& store, const SubHypergraph& h, const EdgeBatch& batch);

bool is_transversal(std::span<const AttrSet> edges, AttrSet x);
bool is_minimal_transversal(std::span<const AttrSet> edges, AttrSet x);

} // namespace eaifd
