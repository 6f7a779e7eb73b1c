#pragma once

#include "eaifd/attr_set.hpp"
#include "eaifd/relation.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace eaifd {

/// Attributes on which two rows (possibly from different stores) disagree.
AttrSet diff(const ColumnStore& a, RowId row_a, const ColumnStore& b, RowId row_b);
inline AttrSet diff(const ColumnStore& store, RowId t1, RowId t2) { return diff(store, t1, store, t2); }

struct PairSample {
    /// Unordered pairs (i < j), ascending.
    std::vector<std::pair<RowId, RowId>> pairs;
    std::uint64_t seed = 0;
    double epsilon = 0.3;
};

/// Number of pairs drawn for n rows: round(C(n,2)^epsilon), capped at C(n,2).
std::uint64_t sample_size(std::uint64_t n, double epsilon);

/// Uniform sample without replacement over the C(n,2) unordered pairs,
/// deterministic in `seed`. Fewer than two rows give an empty sample.
/// Throws ContractError unless 0 < epsilon < 1.
PairSample sample_pairs(std::uint64_t n, double epsilon, std::uint64_t seed);

/// Maps a pair index in [0, C(n,2)) to its pair (i < j), row-major over i.
std::pair<RowId, RowId> unrank_pair(std::uint64_t index, std::uint64_t n);

/// Distinct non-empty difference sets over the sampled pairs.
std::vector<AttrSet> sampled_diffs(const ColumnStore& store, const PairSample& sample);

/// Distinct non-empty difference sets over all pairs of `store`.
std::vector<AttrSet> pairwise_diffs(const ColumnStore& store);

/// { D \ {rhs} : D in diffs, rhs in D }. An empty result set ({rhs} itself)
/// is kept: it marks a pair that agrees on everything except rhs.
std::vector<AttrSet> modulo(const std::vector<AttrSet>& diffs, AttrId rhs);

} // namespace eaifd
