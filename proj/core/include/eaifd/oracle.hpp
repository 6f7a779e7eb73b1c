#pragma once

#include "eaifd/attr_set.hpp"
#include "eaifd/discovery.hpp"
#include "eaifd/relation.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

// Brute-force reference implementations. They share no code with the engine
// beyond the encoded column store.
namespace eaifd::oracle {

struct FdCheck {
    bool valid = true;
    std::optional<std::pair<RowId, RowId>> witness;
};

/// Partitions every row by its exact LHS key. Throws ContractError if rhs ∈ lhs.
FdCheck check_fd(const ColumnStore& store, AttrSet lhs, AttrId rhs);

struct Limits {
    std::size_t max_rows = 20000;
    AttrId max_attributes = 16;
};

/// Level-wise search with superset pruning. Throws ContractError beyond `limits`.
FdSet brute_fds(const ColumnStore& store, const Limits& limits = {});

/// Filters all subsets of `vertices` (at most 16) by hitting and minimality.
std::vector<AttrSet> brute_mhs(std::span<const AttrSet> edges, AttrSet vertices);

/// Minimal transversals of the full pairwise difference hypergraphs, found by
/// brute_mhs. Throws ContractError beyond 5000 rows or 17 attributes.
FdSet transversal_fds(const ColumnStore& store);

} // namespace eaifd::oracle
