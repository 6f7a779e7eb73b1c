#include "eaifd/ighv.hpp"

#include "eaifd/diffset.hpp"
#include "eaifd/error.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace eaifd {

std::uint64_t frequency_threshold(double theta, std::uint64_t n) {
    const double raw = std::ceil(theta * static_cast<double>(n) - 1e-9);
    return raw < 1.0 ? 1 : static_cast<std::uint64_t>(raw);
}

std::vector<CandidateGroup> group(std::vector<Candidate> cands) {
    std::vector<CandidateGroup> groups;
    if (cands.empty()) return groups;
    const AttrId rhs = cands.front().rhs;
    for (const auto& c : cands) {
        if (c.lhs.empty()) throw ContractError("empty-LHS candidates are validated separately");
        if (c.rhs != rhs) throw ContractError("a candidate group must share one RHS");
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.lhs.size() != b.lhs.size()) return a.lhs.size() > b.lhs.size();
        return a.lhs < b.lhs;
    });
    for (const auto& c : cands) {
        bool placed = false;
        for (auto& g : groups) {
            const AttrSet common = g.common & c.lhs;
            if (!common.empty()) {
                g.common = common;
                g.members.push_back(c);
                placed = true;
                break;
            }
        }
        if (!placed) groups.push_back(CandidateGroup{{c}, c.lhs, c.lhs.first()});
    }
    for (auto& g : groups) g.sort_attr = g.common.first();
    return groups;
}

std::vector<CandidateGroup> group(std::vector<Candidate> cands, std::span<const SortedView> views) {
    auto groups = group(std::move(cands));
    for (auto& g : groups) g.sort_attr = choose_sort_attr(g.common, views);
    return groups;
}

AttrId choose_sort_attr(AttrSet common, std::span<const SortedView> views) {
    if (common.empty()) throw ContractError("choose_sort_attr needs a non-empty common set");
    AttrId best = common.first();
    common.for_each([&](AttrId a) {
        const auto& va = views[a];
        const auto& vb = views[best];
        if (va.max_block() < vb.max_block() ||
            (va.max_block() == vb.max_block() && va.distinct() > vb.distinct())) {
            best = a;
        }
    });
    return best;
}

namespace {

struct Bucket {
    Code rhs = 0;
    std::uint64_t count = 0;
    RowId first = 0;
};

using BucketMap = std::unordered_map<CompositeKey, Bucket, CompositeKeyHash>;

} // namespace

GroupResult validate_group(const CandidateGroup& group, const ColumnStore& store, std::span<const SortedView> views,
                           double theta) {
    GroupResult result;
    const auto& view = views[group.sort_attr];
    const std::uint64_t threshold = frequency_threshold(theta, store.rows());

    const std::size_t k = group.members.size();
    result.verdicts.resize(k);
    std::vector<bool> live(k, true);
    std::size_t live_count = k;
    for (std::size_t i = 0; i < k; ++i) {
        if (!group.members[i].lhs.contains(group.sort_attr)) {
            throw ContractError("group member does not contain the sort attribute");
        }
        result.verdicts[i].candidate = group.members[i];
    }

    std::vector<BucketMap> buckets(k);
    CompositeKey key;
    result.stats.blocks_total = view.distinct();
    for (Code code : view.codes()) {
        if (live_count == 0) break;
        const auto rows = view.rows_of(code);
        ++result.stats.blocks_read;
        std::uint64_t alive_buckets = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (!live[i]) continue;
            const Candidate& c = group.members[i];
            auto& map = buckets[i];
            map.clear();
            const auto rhs_col = store.column(c.rhs);
            for (RowId r : rows) {
                store.project(r, c.lhs, key);
                auto [it, fresh] = map.try_emplace(key, Bucket{rhs_col[r], 0, r});
                if (!fresh && it->second.rhs != rhs_col[r]) {
                    const RowId other = it->second.first;
                    result.verdicts[i].valid = false;
                    result.verdicts[i].witness = Witness{{RowRef::Side::base, other}, {RowRef::Side::base, r}};
                    result.verdicts[i].freq_entries.clear();
                    result.diffs.push_back(diff(store, other, r));
                    live[i] = false;
                    --live_count;
                    break;
                }
                ++it->second.count;
            }
            if (live[i]) {
                alive_buckets += map.size();
                if (rows.size() >= threshold) {
                    for (const auto& [bk, b] : map) {
                        if (b.count >= threshold) result.verdicts[i].freq_entries.push_back({bk, b.rhs, b.count});
                    }
                }
            }
            map.clear();
        }
        result.stats.peak_buckets = std::max(result.stats.peak_buckets, alive_buckets);
    }
    return result;
}

Verdict validate_constant(AttrId rhs, const ColumnStore& store, double theta) {
    Verdict v;
    v.candidate = Candidate{AttrSet{}, rhs};
    const auto col = store.column(rhs);
    for (RowId r = 1; r < col.size(); ++r) {
        if (col[r] != col[0]) {
            v.valid = false;
            v.witness = Witness{{RowRef::Side::base, 0}, {RowRef::Side::base, r}};
            return v;
        }
    }
    if (!col.empty() && col.size() >= frequency_threshold(theta, col.size())) {
        v.freq_entries.push_back({CompositeKey{}, col[0], col.size()});
    }
    return v;
}

GroupResult validate_candidates(const std::vector<Candidate>& cands, const ColumnStore& store,
                                std::span<const SortedView> views, double theta) {
    GroupResult out;
    std::vector<Candidate> grouped;
    for (const auto& c : cands) {
        if (c.lhs.empty()) {
            Verdict v = validate_constant(c.rhs, store, theta);
            if (!v.valid) out.diffs.push_back(diff(store, v.witness->first.row, v.witness->second.row));
            out.verdicts.push_back(std::move(v));
        } else {
            grouped.push_back(c);
        }
    }
    if (grouped.empty()) return out;
    // group() requires one RHS; split by it first.
    std::stable_sort(grouped.begin(), grouped.end(), [](const Candidate& a, const Candidate& b) { return a.rhs < b.rhs; });
    for (std::size_t i = 0; i < grouped.size();) {
        std::size_t j = i;
        while (j < grouped.size() && grouped[j].rhs == grouped[i].rhs) ++j;
        std::vector<Candidate> same(grouped.begin() + static_cast<std::ptrdiff_t>(i),
                                    grouped.begin() + static_cast<std::ptrdiff_t>(j));
        for (const auto& g : group(std::move(same), views)) {
            auto r = validate_group(g, store, views, theta);
            for (auto& v : r.verdicts) out.verdicts.push_back(std::move(v));
            out.diffs.insert(out.diffs.end(), r.diffs.begin(), r.diffs.end());
            out.stats += r.stats;
        }
        i = j;
    }
    return out;
}

} // namespace eaifd
