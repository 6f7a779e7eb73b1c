#include "eaifd/hypergraph.hpp"

#include "eaifd/diffset.hpp"
#include "eaifd/error.hpp"

#include <algorithm>

namespace eaifd {

namespace {

bool by_size(AttrSet a, AttrSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

} // namespace

SubHypergraph::SubHypergraph(AttrId rhs, AttrId arity) : rhs_(rhs), arity_(arity) {
    if (rhs >= arity) throw ContractError("rhs outside the schema");
}

ChangeReport SubHypergraph::add_edge(AttrSet e) {
    if (e.contains(rhs_)) throw ContractError("edge " + to_string(e) + " contains its own rhs");
    ChangeReport report;
    if (poisoned_) return report;
    if (e.empty()) {
        report.kind = ChangeReport::Kind::poisoned;
        report.removed = std::move(edges_);
        edges_.clear();
        poisoned_ = true;
        ++generation_;
        return report;
    }
    const int k = e.size();
    // Edges are sorted by size, so only the prefix of size <= |e| can subsume e.
    for (AttrSet existing : edges_) {
        if (existing.size() > k) break;
        if (existing.is_subset_of(e)) return report;
    }
    auto first_bigger = std::find_if(edges_.begin(), edges_.end(), [k](AttrSet x) { return x.size() > k; });
    auto keep_end = std::remove_if(first_bigger, edges_.end(), [&](AttrSet x) {
        if (!e.is_subset_of(x)) return false;
        report.removed.push_back(x);
        return true;
    });
    edges_.erase(keep_end, edges_.end());
    edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), e, by_size), e);
    report.kind = ChangeReport::Kind::inserted;
    ++generation_;
    return report;
}

EdgeBatch SubHypergraph::add_edges(const std::vector<AttrSet>& edges) {
    EdgeBatch batch;
    batch.from_generation = generation_;
    for (AttrSet e : edges) {
        const auto r = add_edge(e);
        if (r.kind == ChangeReport::Kind::inserted) {
            batch.edges.push_back(e);
            std::erase_if(batch.edges, [&](AttrSet x) {
                return std::find(r.removed.begin(), r.removed.end(), x) != r.removed.end();
            });
        } else if (r.kind == ChangeReport::Kind::poisoned) {
            batch.edges.clear();
            batch.poisoned = true;
        }
    }
    normalize(batch.edges);
    batch.to_generation = generation_;
    return batch;
}

EdgeBatch SubHypergraph::bulk_update(const std::vector<AttrSet>& diffs) { return add_edges(modulo(diffs, rhs_)); }

SubHypergraph SubHypergraph::restore(AttrId rhs, AttrId arity, std::vector<AttrSet> edges, bool poisoned,
                                     std::uint64_t generation) {
    SubHypergraph h(rhs, arity);
    std::sort(edges.begin(), edges.end(), by_size);
    h.edges_ = std::move(edges);
    h.poisoned_ = poisoned;
    h.generation_ = generation;
    return h;
}

std::vector<AttrSet> minimize(std::vector<AttrSet> sets) {
    normalize(sets);
    std::vector<AttrSet> out;
    for (AttrSet s : sets) {
        const bool dominated = std::any_of(sets.begin(), sets.end(), [&](AttrSet t) { return t.is_proper_subset_of(s); });
        if (!dominated) out.push_back(s);
    }
    return out;
}

} // namespace eaifd
