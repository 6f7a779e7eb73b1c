#include "eaifd/discovery.hpp"

#include "eaifd/diffset.hpp"
#include "eaifd/error.hpp"
#include "eaifd/ighv.hpp"

#include <algorithm>
#include <unordered_set>

namespace eaifd {

void FdSet::set(AttrId rhs, std::vector<AttrSet> lhs) {
    normalize(lhs);
    lhs_.at(rhs) = std::move(lhs);
}

bool FdSet::contains(const Candidate& fd) const {
    if (fd.rhs >= lhs_.size()) return false;
    const auto& list = lhs_[fd.rhs];
    return std::binary_search(list.begin(), list.end(), fd.lhs);
}

std::size_t FdSet::size() const {
    std::size_t n = 0;
    for (const auto& l : lhs_) n += l.size();
    return n;
}

std::vector<Candidate> FdSet::all() const {
    std::vector<Candidate> out;
    for (AttrId a = 0; a < lhs_.size(); ++a) {
        std::vector<AttrSet> sorted = lhs_[a];
        std::sort(sorted.begin(), sorted.end(), lex_less);
        for (AttrSet x : sorted) out.push_back({x, a});
    }
    return out;
}

void check_params(const Params& params) {
    if (!(params.epsilon > 0.0 && params.epsilon < 1.0)) throw ContractError("epsilon must lie in (0, 1)");
    if (!(params.theta > 0.0 && params.theta <= 1.0)) throw ContractError("theta must lie in (0, 1]");
}

DiscoveryState discover(const ColumnStore& store, std::span<const SortedView> views, const Params& params,
                        DiscoveryStats* stats) {
    check_params(params);
    const AttrId m = store.arity();
    const std::uint64_t n = store.rows();
    if (n == 0) throw DataError("relation has zero tuples");

    DiscoveryStats local;
    DiscoveryState state;
    state.params = params;
    state.fds = FdSet(m);
    state.mht = MhtTable(params.theta, n);

    const PairSample sample = sample_pairs(n, params.epsilon, params.seed);
    local.sampled_pairs = sample.pairs.size();
    const auto seed_diffs = sampled_diffs(store, sample);
    for (AttrId a = 0; a < m; ++a) {
        SubHypergraph h(a, m);
        h.bulk_update(seed_diffs);
        state.stores.push_back(make_store(h));
        state.hypergraphs.push_back(std::move(h));
    }

    std::vector<std::unordered_set<AttrSet>> validated(m);
    for (;;) {
        std::vector<Candidate> cands;
        for (AttrId a = 0; a < m; ++a) {
            for (AttrSet x : state.stores[a].mhs) {
                if (!validated[a].contains(x)) cands.push_back({x, a});
            }
        }
        if (cands.empty()) break;
        ++local.rounds;
        local.candidates_validated += cands.size();

        auto result = validate_candidates(cands, store, views, params.theta);
        local.blocks_read += result.stats.blocks_read;
        for (const auto& v : result.verdicts) {
            if (!v.valid) continue;
            validated[v.candidate.rhs].insert(v.candidate.lhs);
            state.mht.record_frequent(v.candidate, v.freq_entries, n);
        }
        normalize(result.diffs);
        local.witness_diffs += result.diffs.size();
        if (result.diffs.empty()) break;
        // Witness diffs go to every sub-hypergraph whose RHS they contain.
        for (AttrId a = 0; a < m; ++a) {
            const EdgeBatch batch = state.hypergraphs[a].bulk_update(result.diffs);
            if (batch.changed()) resume(state.stores[a], state.hypergraphs[a], batch);
        }
    }

    for (AttrId a = 0; a < m; ++a) {
        for (AttrSet x : state.stores[a].mhs) {
            if (!validated[a].contains(x)) throw Error("discovery ended with an unvalidated candidate");
        }
        state.fds.set(a, state.stores[a].mhs);
    }
    if (stats) *stats = local;
    return state;
}

} // namespace eaifd
