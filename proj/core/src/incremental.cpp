#include "eaifd/incremental.hpp"

#include "eaifd/diffset.hpp"
#include "eaifd/error.hpp"
#include "eaifd/hitting.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace eaifd {

namespace {

// Position of `attr` inside a composite key over `lhs`.
std::size_t key_position(AttrSet lhs, AttrId attr) {
    return static_cast<std::size_t>((lhs & AttrSet((std::uint64_t{1} << attr) - 1)).size());
}

struct LocalBucket {
    Code rhs = 0;
    std::uint64_t count = 0;
    RowId first = 0;
};

// Locates a base row carrying `key` on `lhs` through the smallest block among
// the LHS attributes' sorted views.
std::optional<RowId> find_base_row(const ColumnStore& base, std::span<const SortedView> views, AttrSet lhs,
                                   const CompositeKey& key) {
    if (lhs.empty()) return base.rows() > 0 ? std::optional<RowId>(0) : std::nullopt;
    std::optional<std::span<const RowId>> best;
    lhs.for_each([&](AttrId a) {
        const auto rows = views[a].rows_of(key[key_position(lhs, a)]);
        if (!best || rows.size() < best->size()) best = rows;
    });
    CompositeKey probe;
    for (RowId r : *best) {
        base.project(r, lhs, probe);
        if (probe == key) return r;
    }
    return std::nullopt;
}

} // namespace

ScanResult table_scan(const CandidateGroup& group, std::vector<ScanItem> items, const ColumnStore& base,
                      std::span<const SortedView> views, const ColumnStore& delta, const MhtTable& mht,
                      bool full_scan) {
    ScanResult result;
    const AttrId b = group.sort_attr;
    const auto& view = views[b];
    const std::uint64_t n_total = base.rows() + delta.rows();
    const std::uint64_t threshold = frequency_threshold(mht.theta(), n_total);
    result.stats.blocks_total = view.distinct();

    const std::size_t k = items.size();
    // Per item: sort-attribute code -> residual delta entry indices.
    std::vector<std::map<Code, std::vector<std::size_t>>> by_code(k);
    std::vector<std::unordered_map<CompositeKey, std::vector<std::size_t>, CompositeKeyHash>> delta_index(k);
    std::set<Code> wanted;
    for (std::size_t i = 0; i < k; ++i) {
        const auto& it = items[i];
        if (!it.candidate.lhs.contains(b)) throw ContractError("scan item does not contain the sort attribute");
        const std::size_t pos = key_position(it.candidate.lhs, b);
        for (std::size_t e : it.residual) {
            const Code code = it.delta_table[e].key[pos];
            by_code[i][code].push_back(e);
            if (!view.block(code).empty()) wanted.insert(code);
        }
        for (std::size_t e = 0; e < it.delta_table.size(); ++e) delta_index[i][it.delta_table[e].key].push_back(e);
        result.verdicts.push_back(ScanVerdict{it.candidate, true, std::nullopt, {}});
    }

    std::vector<Code> blocks;
    if (full_scan) {
        blocks = view.codes();
    } else {
        blocks.assign(wanted.begin(), wanted.end());
    }

    std::vector<bool> live(k, true);
    std::unordered_map<CompositeKey, LocalBucket, CompositeKeyHash> local;
    CompositeKey key;
    for (Code code : blocks) {
        const auto rows = view.rows_of(code);
        ++result.stats.blocks_read;
        std::uint64_t alive_buckets = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (!live[i]) continue;
            const auto residual = by_code[i].find(code);
            if (!full_scan && residual == by_code[i].end()) continue;
            const Candidate& c = items[i].candidate;
            const auto rhs_col = base.column(c.rhs);
            local.clear();
            for (RowId r : rows) {
                base.project(r, c.lhs, key);
                auto [it, fresh] = local.try_emplace(key, LocalBucket{rhs_col[r], 0, r});
                ++it->second.count;
            }
            alive_buckets += local.size();
            if (residual != by_code[i].end()) {
                for (std::size_t e : residual->second) {
                    const auto& de = items[i].delta_table[e];
                    auto hit = local.find(de.key);
                    if (hit != local.end() && hit->second.rhs != de.rhs_code) {
                        const RowId base_row = hit->second.first;
                        const RowId delta_row = de.rows.front();
                        result.verdicts[i].valid = false;
                        result.verdicts[i].witness =
                            Witness{{RowRef::Side::base, base_row}, {RowRef::Side::delta, delta_row}};
                        result.verdicts[i].promotions.clear();
                        result.diffs.push_back(diff(base, base_row, delta, delta_row));
                        live[i] = false;
                        break;
                    }
                }
            }
            if (!live[i]) continue;
            const auto& stored = mht.entries(c);
            for (const auto& [bk, bucket] : local) {
                std::uint64_t total = bucket.count;
                auto d = delta_index[i].find(bk);
                if (d != delta_index[i].end()) {
                    for (std::size_t e : d->second) {
                        if (items[i].delta_table[e].rhs_code == bucket.rhs) total += items[i].delta_table[e].count;
                    }
                }
                if (total < threshold) continue;
                const bool known = std::any_of(stored.begin(), stored.end(),
                                               [&](const MhtEntry& me) { return me.key == bk; });
                if (!known) result.verdicts[i].promotions.push_back({bk, bucket.rhs, total});
            }
        }
        result.stats.peak_buckets = std::max(result.stats.peak_buckets, alive_buckets);
    }
    return result;
}

UpdateReport update(DiscoveryState& state, const ColumnStore& base, std::span<const SortedView> views,
                    const DeltaRelation& delta, const UpdateOptions& options) {
    UpdateReport report;
    const AttrId m = base.arity();
    if (delta.store.arity() != m) throw DataError("delta arity does not match the schema");
    if (delta.base_rows != base.rows()) throw ContractError("delta was encoded against a different base size");
    if (delta.empty()) return report;

    const std::uint64_t n_total = base.rows() + delta.rows();
    const FdSet old_fds = state.fds;
    const MhtTable& mht = state.mht;

    std::vector<AttrSet> pool = pairwise_diffs(delta.store);
    report.stats.delta_pair_diffs = pool.size();

    std::vector<std::unordered_set<AttrSet>> validated(m);
    // Pending MHT work, applied only to candidates that end up valid.
    std::map<Candidate, std::vector<std::pair<CompositeKey, std::uint64_t>>> increments;
    std::map<Candidate, std::vector<FreqEntry>> promotions;

    auto settle = [&](const Candidate& c, bool valid) {
        report.verdicts.push_back({c, valid});
        if (valid) validated[c.rhs].insert(c.lhs);
    };

    for (bool first = true;; first = false) {
        if (first || !pool.empty()) {
            for (AttrId a = 0; a < m; ++a) {
                const EdgeBatch batch = state.hypergraphs[a].bulk_update(pool);
                if (batch.changed()) resume(state.stores[a], state.hypergraphs[a], batch);
            }
        }
        pool.clear();

        std::vector<Candidate> c1;
        std::vector<Candidate> c2;
        for (AttrId a = 0; a < m; ++a) {
            for (AttrSet x : state.stores[a].mhs) {
                if (validated[a].contains(x)) continue;
                const Candidate c{x, a};
                (old_fds.contains(c) ? c1 : c2).push_back(c);
            }
        }
        if (c1.empty() && c2.empty()) break;
        ++report.stats.rounds;
        report.stats.c1_candidates += c1.size();
        report.stats.c2_candidates += c2.size();

        std::vector<ScanItem> scan;
        for (const auto& c : c1) {
            auto table = build_delta(delta.store, c);
            const auto& stored = mht.entries(c);
            const CompareResult cmp = compare(table, stored);
            if (cmp.status == CompareResult::Status::invalid) {
                ++report.stats.mht_invalid;
                const auto [di, bi] = cmp.conflicts.front();
                const auto base_row = find_base_row(base, views, c.lhs, stored[bi].key);
                const RowId delta_row = table[di].rows.front();
                if (!base_row || base.project(*base_row, c.lhs) != delta.store.project(delta_row, c.lhs) ||
                    base.code(*base_row, c.rhs) == delta.store.code(delta_row, c.rhs)) {
                    throw Error("stored MHT entry is not backed by a violating base row");
                }
                pool.push_back(diff(base, *base_row, delta.store, delta_row));
                settle(c, false);
                continue;
            }
            auto& inc = increments[c];
            inc.clear();
            for (std::size_t e : cmp.matched) inc.emplace_back(table[e].key, table[e].count);
            if (cmp.status == CompareResult::Status::valid) {
                ++report.stats.mht_valid;
                settle(c, true);
            } else {
                ++report.stats.mht_uncertain;
                scan.push_back(ScanItem{c, std::move(table), cmp.residual});
            }
        }
        for (const auto& c : c2) {
            auto table = build_delta(delta.store, c);
            std::vector<std::size_t> all(table.size());
            for (std::size_t e = 0; e < all.size(); ++e) all[e] = e;
            scan.push_back(ScanItem{c, std::move(table), std::move(all)});
        }

        // The empty LHS has no sort attribute: every row shares the empty key,
        // so the base (constant, since the FD holds on r) meets every delta row.
        std::vector<Candidate> grouped;
        std::map<Candidate, ScanItem> by_candidate;
        for (auto& item : scan) {
            const Candidate c = item.candidate;
            if (c.lhs.empty()) {
                const Code base_code = base.code(0, c.rhs);
                std::optional<RowId> bad;
                for (std::size_t e : item.residual) {
                    if (item.delta_table[e].rhs_code != base_code) {
                        bad = item.delta_table[e].rows.front();
                        break;
                    }
                }
                if (bad) {
                    pool.push_back(diff(base, 0, delta.store, *bad));
                    settle(c, false);
                } else {
                    promotions[c] = {FreqEntry{CompositeKey{}, base_code, n_total}};
                    settle(c, true);
                }
                continue;
            }
            grouped.push_back(c);
            by_candidate.emplace(c, std::move(item));
        }

        std::stable_sort(grouped.begin(), grouped.end(),
                         [](const Candidate& x, const Candidate& y) { return x.rhs < y.rhs; });
        for (std::size_t i = 0; i < grouped.size();) {
            std::size_t j = i;
            while (j < grouped.size() && grouped[j].rhs == grouped[i].rhs) ++j;
            std::vector<Candidate> same(grouped.begin() + static_cast<std::ptrdiff_t>(i),
                                        grouped.begin() + static_cast<std::ptrdiff_t>(j));
            for (const auto& g : group(std::move(same), views)) {
                std::vector<ScanItem> items;
                for (const auto& c : g.members) items.push_back(std::move(by_candidate.at(c)));
                auto sr = table_scan(g, std::move(items), base, views, delta.store, mht, options.full_scan);
                report.stats.scans.push_back(sr.stats);
                for (auto& v : sr.verdicts) {
                    if (v.valid) promotions[v.candidate] = std::move(v.promotions);
                    settle(v.candidate, v.valid);
                }
                pool.insert(pool.end(), sr.diffs.begin(), sr.diffs.end());
            }
            i = j;
        }
        normalize(pool);
        report.stats.witness_diffs += pool.size();
    }

    FdSet next(m);
    for (AttrId a = 0; a < m; ++a) {
        for (AttrSet x : state.stores[a].mhs) {
            if (!validated[a].contains(x)) throw Error("update ended with an unvalidated candidate");
        }
        next.set(a, state.stores[a].mhs);
    }
    for (const auto& fd : old_fds.all()) {
        if (!next.contains(fd)) {
            report.removed.push_back(fd);
            state.mht.erase(fd);
        }
    }
    for (const auto& fd : next.all()) {
        if (!old_fds.contains(fd)) report.added.push_back(fd);
    }
    for (const auto& [fd, inc] : increments) {
        if (!next.contains(fd)) continue;
        for (const auto& [key, count] : inc) state.mht.increment(fd, key, count);
    }
    for (const auto& [fd, entries] : promotions) {
        if (next.contains(fd)) state.mht.record_frequent(fd, entries, n_total);
    }
    state.mht.rebase(n_total);
    state.fds = std::move(next);
    return report;
}

} // namespace eaifd
