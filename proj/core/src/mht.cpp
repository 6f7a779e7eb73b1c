#include "eaifd/mht.hpp"

#include <algorithm>

namespace eaifd {

namespace {

const std::vector<MhtEntry> kNoEntries;

bool key_less(const MhtEntry& a, const MhtEntry& b) { return a.key < b.key; }

} // namespace

const std::vector<MhtEntry>& MhtTable::entries(const Candidate& fd) const {
    auto it = table_.find(fd);
    return it == table_.end() ? kNoEntries : it->second;
}

void MhtTable::record_frequent(const Candidate& fd, const std::vector<FreqEntry>& entries, std::uint64_t n_total) {
    base_n_ = n_total;
    const std::uint64_t t = threshold();
    auto& list = table_[fd];
    for (const auto& e : entries) {
        if (e.count < t) continue;
        MhtEntry me{e.key, e.rhs_code, e.count};
        auto it = std::lower_bound(list.begin(), list.end(), me, key_less);
        if (it != list.end() && it->key == e.key) {
            *it = std::move(me);
        } else {
            list.insert(it, std::move(me));
        }
    }
    std::erase_if(list, [t](const MhtEntry& e) { return e.count < t; });
    if (list.empty()) table_.erase(fd);
}

void MhtTable::increment(const Candidate& fd, const CompositeKey& key, std::uint64_t delta) {
    auto it = table_.find(fd);
    if (it == table_.end()) return;
    auto& list = it->second;
    auto pos = std::lower_bound(list.begin(), list.end(), MhtEntry{key, 0, 0}, key_less);
    if (pos != list.end() && pos->key == key) pos->count += delta;
}

void MhtTable::rebase(std::uint64_t n_total) {
    base_n_ = n_total;
    const std::uint64_t t = threshold();
    for (auto it = table_.begin(); it != table_.end();) {
        std::erase_if(it->second, [t](const MhtEntry& e) { return e.count < t; });
        it = it->second.empty() ? table_.erase(it) : std::next(it);
    }
}

std::uint64_t MhtTable::total_entries() const {
    std::uint64_t n = 0;
    for (const auto& [fd, list] : table_) n += list.size();
    return n;
}

MhtTable MhtTable::restore(double theta, std::uint64_t base_n, std::map<Candidate, std::vector<MhtEntry>> table) {
    MhtTable t(theta, base_n);
    t.table_ = std::move(table);
    return t;
}

std::vector<DeltaEntry> build_delta(const ColumnStore& delta, const Candidate& fd) {
    std::map<std::pair<CompositeKey, Code>, DeltaEntry> acc;
    CompositeKey key;
    for (RowId r = 0; r < delta.rows(); ++r) {
        delta.project(r, fd.lhs, key);
        const Code rhs = delta.code(r, fd.rhs);
        auto [it, fresh] = acc.try_emplace({key, rhs});
        if (fresh) {
            it->second.key = key;
            it->second.rhs_code = rhs;
        }
        ++it->second.count;
        it->second.rows.push_back(r);
    }
    std::vector<DeltaEntry> out;
    out.reserve(acc.size());
    for (auto& [k, e] : acc) out.push_back(std::move(e));
    return out;
}

CompareResult compare(const std::vector<DeltaEntry>& delta, const std::vector<MhtEntry>& base) {
    CompareResult result;
    for (std::size_t i = 0; i < delta.size(); ++i) {
        auto it = std::lower_bound(base.begin(), base.end(), MhtEntry{delta[i].key, 0, 0}, key_less);
        if (it == base.end() || it->key != delta[i].key) {
            result.residual.push_back(i);
        } else if (it->rhs_code != delta[i].rhs_code) {
            result.conflicts.emplace_back(i, static_cast<std::size_t>(it - base.begin()));
        } else {
            result.matched.push_back(i);
        }
    }
    if (!result.conflicts.empty()) {
        result.status = CompareResult::Status::invalid;
    } else if (!result.residual.empty()) {
        result.status = CompareResult::Status::uncertain;
    }
    return result;
}

} // namespace eaifd
