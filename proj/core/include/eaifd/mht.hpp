#pragma once

#include "eaifd/attr_set.hpp"
#include "eaifd/ighv.hpp"
#include "eaifd/relation.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace eaifd {

struct MhtEntry {
    CompositeKey key;
    Code rhs_code = 0;
    /// Exact number of rows carrying this key.
    std::uint64_t count = 0;

    friend bool operator==(const MhtEntry&, const MhtEntry&) = default;
};

/// High-frequency LHS-key -> RHS-code mappings per discovered FD.
class MhtTable {
public:
    MhtTable() = default;
    MhtTable(double theta, std::uint64_t base_n) : theta_(theta), base_n_(base_n) {}

    double theta() const { return theta_; }
    std::uint64_t base_n() const { return base_n_; }
    std::uint64_t threshold() const { return frequency_threshold(theta_, base_n_); }

    /// Entries of `fd`, ascending by key; empty when none are stored.
    const std::vector<MhtEntry>& entries(const Candidate& fd) const;
    const std::map<Candidate, std::vector<MhtEntry>>& all() const { return table_; }

    /// Stores the entries meeting the threshold against n_total (replacing
    /// any stored entry with the same key), then evicts this FD's entries that
    /// fall below it. Also re-bases the table on n_total.
    void record_frequent(const Candidate& fd, const std::vector<FreqEntry>& entries, std::uint64_t n_total);

    /// Adds `delta` to the stored count of `key`; no-op when absent.
    void increment(const Candidate& fd, const CompositeKey& key, std::uint64_t delta);

    /// Re-bases on n_total and drops every entry below the threshold.
    void rebase(std::uint64_t n_total);

    void erase(const Candidate& fd) { table_.erase(fd); }
    std::uint64_t total_entries() const;

    static MhtTable restore(double theta, std::uint64_t base_n, std::map<Candidate, std::vector<MhtEntry>> table);

    friend bool operator==(const MhtTable&, const MhtTable&) = default;

private:
    double theta_ = 0.8;
    std::uint64_t base_n_ = 0;
    std::map<Candidate, std::vector<MhtEntry>> table_;
};

/// MHT_Δ row: every (key, rhs) pair of the delta with its count and rows.
struct DeltaEntry {
    CompositeKey key;
    Code rhs_code = 0;
    std::uint64_t count = 0;
    std::vector<RowId> rows;
};

/// Ascending by (key, rhs_code); counts sum to the number of delta rows.
std::vector<DeltaEntry> build_delta(const ColumnStore& delta, const Candidate& fd);

struct CompareResult {
    enum class Status { valid, invalid, uncertain };
    Status status = Status::valid;
    /// invalid: pairs (delta entry index, base entry index) with equal keys
    /// and different RHS codes.
    std::vector<std::pair<std::size_t, std::size_t>> conflicts;
    /// Delta entry indices whose key matched and agreed with a base entry.
    std::vector<std::size_t> matched;
    /// uncertain: delta entry indices with no stored key.
    std::vector<std::size_t> residual;
};

CompareResult compare(const std::vector<DeltaEntry>& delta, const std::vector<MhtEntry>& base);

} // namespace eaifd
