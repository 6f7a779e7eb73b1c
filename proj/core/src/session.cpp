#include "eaifd/session.hpp"

namespace eaifd {

Session Session::initialize(EncodedRelation rel, const Params& params, DiscoveryStats* stats) {
    Session s;
    s.rel_ = std::move(rel);
    s.views_ = build_sorted_views(s.rel_);
    s.state_ = discover(s.rel_.store, s.views_, params, stats);
    return s;
}

Session Session::restore(EncodedRelation rel, DiscoveryState state, std::uint64_t generation) {
    Session s;
    s.rel_ = std::move(rel);
    s.views_ = build_sorted_views(s.rel_);
    s.state_ = std::move(state);
    s.generation_ = generation;
    return s;
}

UpdateReport Session::apply_rows(const std::vector<std::vector<std::string>>& rows, const UpdateOptions& options) {
    return apply(append_batch(rel_, rows), options);
}

UpdateReport Session::apply_csv(const std::filesystem::path& path, const UpdateOptions& options) {
    return apply(append_csv(rel_, path), options);
}

UpdateReport Session::apply(const DeltaRelation& delta, const UpdateOptions& options) {
    if (delta.empty()) return {};
    UpdateReport report = update(state_, rel_.store, views_, delta, options);
    fold_delta(rel_, delta);
    views_ = build_sorted_views(rel_);
    ++generation_;
    return report;
}

} // namespace eaifd
