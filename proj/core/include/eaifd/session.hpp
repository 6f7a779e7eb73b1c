#pragma once

#include "eaifd/discovery.hpp"
#include "eaifd/incremental.hpp"
#include "eaifd/relation.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace eaifd {

/// A relation, its sorted views and the discovery state kept in step.
class Session {
public:
    static Session initialize(EncodedRelation rel, const Params& params, DiscoveryStats* stats = nullptr);
    /// Reassembles a persisted session; views are rebuilt from the relation.
    static Session restore(EncodedRelation rel, DiscoveryState state, std::uint64_t generation);

    /// Applies raw rows / a delta CSV, then folds them into the base.
    UpdateReport apply_rows(const std::vector<std::vector<std::string>>& rows, const UpdateOptions& options = {});
    UpdateReport apply_csv(const std::filesystem::path& path, const UpdateOptions& options = {});
    /// `delta` must have been encoded against relation() by append_batch/append_csv.
    UpdateReport apply(const DeltaRelation& delta, const UpdateOptions& options = {});

    const EncodedRelation& relation() const { return rel_; }
    const std::vector<SortedView>& views() const { return views_; }
    const DiscoveryState& state() const { return state_; }
    /// Number of non-empty batches applied since discovery.
    std::uint64_t generation() const { return generation_; }

private:
    EncodedRelation rel_;
    std::vector<SortedView> views_;
    DiscoveryState state_;
    std::uint64_t generation_ = 0;
};

} // namespace eaifd
