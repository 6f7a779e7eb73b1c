#pragma once

#include "eaifd/attr_set.hpp"
#include "eaifd/relation.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace eaifd {

/// A row of the base store or of the pending delta batch.
struct RowRef {
    enum class Side : std::uint8_t { base, delta };
    Side side = Side::base;
    RowId row = 0;

    friend bool operator==(const RowRef&, const RowRef&) = default;
};

/// Two rows that agree on a candidate's LHS and differ on its RHS.
struct Witness {
    RowRef first;
    RowRef second;

    friend bool operator==(const Witness&, const Witness&) = default;
};

/// An LHS bucket that met the frequency threshold.
struct FreqEntry {
    CompositeKey key;
    Code rhs_code = 0;
    std::uint64_t count = 0;

    friend bool operator==(const FreqEntry&, const FreqEntry&) = default;
};

struct Verdict {
    Candidate candidate;
    bool valid = true;
    std::optional<Witness> witness;
    /// Only filled for valid candidates.
    std::vector<FreqEntry> freq_entries;
};

struct CandidateGroup {
    std::vector<Candidate> members;
    AttrSet common;
    AttrId sort_attr = 0;
};

struct ScanStats {
    std::uint64_t blocks_read = 0;
    std::uint64_t blocks_total = 0;
    std::uint64_t peak_buckets = 0;

    ScanStats& operator+=(const ScanStats& o) {
        blocks_read += o.blocks_read;
        blocks_total += o.blocks_total;
        if (o.peak_buckets > peak_buckets) peak_buckets = o.peak_buckets;
        return *this;
    }
};

struct GroupResult {
    std::vector<Verdict> verdicts;
    /// Difference sets of the witnesses, one per invalid candidate.
    std::vector<AttrSet> diffs;
    ScanStats stats;
};

/// Smallest count c with c >= theta * n.
std::uint64_t frequency_threshold(double theta, std::uint64_t n);

/// Greedy first-fit partition of same-RHS candidates with non-empty LHSs,
/// larger LHSs first. sort_attr is left as common.first().
/// Throws ContractError on an empty LHS or mixed RHS attributes.
std::vector<CandidateGroup> group(std::vector<Candidate> cands);

/// group() followed by choose_sort_attr for each group.
std::vector<CandidateGroup> group(std::vector<Candidate> cands, std::span<const SortedView> views);

/// Attribute of `common` whose view has the smallest largest block; ties go
/// to more distinct values, then the lower id.
AttrId choose_sort_attr(AttrSet common, std::span<const SortedView> views);

/// Streams the blocks of views[group.sort_attr] and buckets each block's rows
/// by exact LHS key per live candidate.
GroupResult validate_group(const CandidateGroup& group, const ColumnStore& store, std::span<const SortedView> views,
                           double theta);

/// Verdict for {} -> rhs: valid iff the column holds a single code.
Verdict validate_constant(AttrId rhs, const ColumnStore& store, double theta);

/// Validates any mix of same-RHS candidates, including the empty LHS.
GroupResult validate_candidates(const std::vector<Candidate>& cands, const ColumnStore& store,
                                std::span<const SortedView> views, double theta);

} // namespace eaifd
