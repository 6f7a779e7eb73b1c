#pragma once

#include "eaifd/discovery.hpp"
#include "eaifd/ighv.hpp"
#include "eaifd/mht.hpp"
#include "eaifd/relation.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace eaifd {

struct UpdateOptions {
    /// Read every block of the sort attribute instead of only those named by
    /// the residual delta keys. Verdicts must not change.
    bool full_scan = false;
};

struct UpdateStats {
    std::uint64_t rounds = 0;
    std::uint64_t delta_pair_diffs = 0;
    std::uint64_t witness_diffs = 0;
    std::uint64_t c1_candidates = 0;
    std::uint64_t c2_candidates = 0;
    std::uint64_t mht_valid = 0;
    std::uint64_t mht_invalid = 0;
    std::uint64_t mht_uncertain = 0;
    /// One record per table-scan invocation (one candidate group).
    std::vector<ScanStats> scans;
};

struct CandidateVerdict {
    Candidate candidate;
    bool valid = true;

    friend bool operator==(const CandidateVerdict&, const CandidateVerdict&) = default;
    friend auto operator<=>(const CandidateVerdict&, const CandidateVerdict&) = default;
};

struct UpdateReport {
    /// FDs that left / entered F, by RHS then lexicographic LHS.
    std::vector<Candidate> removed;
    std::vector<Candidate> added;
    /// Every candidate decided during the update, in decision order.
    std::vector<CandidateVerdict> verdicts;
    UpdateStats stats;

    bool changed() const { return !removed.empty() || !added.empty(); }
};

/// A candidate routed to table-scan validation together with its MHT_Δ and
/// the entries left unresolved by the MHT comparison.
struct ScanItem {
    Candidate candidate;
    std::vector<DeltaEntry> delta_table;
    std::vector<std::size_t> residual;
};

struct ScanVerdict {
    Candidate candidate;
    bool valid = true;
    std::optional<Witness> witness;
    /// Frequent buckets of the loaded blocks, counted over base and delta.
    std::vector<FreqEntry> promotions;
};

struct ScanResult {
    std::vector<ScanVerdict> verdicts;
    std::vector<AttrSet> diffs;
    ScanStats stats;
};

/// Cross-validates one group of candidates between the base blocks (sorted by
/// sort_attr) and the residual delta rows. Only blocks whose code occurs in a
/// residual key are read unless `full_scan` is set.
ScanResult table_scan(const CandidateGroup& group, std::vector<ScanItem> items, const ColumnStore& base,
                      std::span<const SortedView> views, const ColumnStore& delta, const MhtTable& mht,
                      bool full_scan);

/// Brings `state` from r to r ∪ Δr. `base` and `views` describe r and are not
/// modified; the caller folds `delta` in afterwards.
/// Throws DataError when the delta's arity differs from the base's.
UpdateReport update(DiscoveryState& state, const ColumnStore& base, std::span<const SortedView> views,
                    const DeltaRelation& delta, const UpdateOptions& options = {});

} // namespace eaifd
