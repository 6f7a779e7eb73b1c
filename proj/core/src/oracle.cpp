#include "eaifd/oracle.hpp"

#include "eaifd/error.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace eaifd::oracle {

namespace {

std::vector<Code> key_of(const ColumnStore& store, RowId row, const std::vector<AttrId>& attrs) {
    std::vector<Code> k;
    k.reserve(attrs.size());
    for (AttrId a : attrs) k.push_back(store.code(row, a));
    return k;
}

// Subsets of `base` grouped by cardinality, each level ascending by mask.
std::vector<std::vector<AttrSet>> subsets_by_size(AttrSet base) {
    const std::vector<AttrId> ids = base.ids();
    std::vector<std::vector<AttrSet>> levels(ids.size() + 1);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << ids.size()); ++m) {
        AttrSet s;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if ((m >> i) & 1U) s.insert(ids[i]);
        }
        levels[static_cast<std::size_t>(s.size())].push_back(s);
    }
    for (auto& l : levels) std::sort(l.begin(), l.end());
    return levels;
}

} // namespace

FdCheck check_fd(const ColumnStore& store, AttrSet lhs, AttrId rhs) {
    if (lhs.contains(rhs)) throw ContractError("trivial FD passed to check_fd");
    const std::vector<AttrId> attrs = lhs.ids();
    std::map<std::vector<Code>, RowId> first_row;
    for (RowId r = 0; r < store.rows(); ++r) {
        auto [it, fresh] = first_row.try_emplace(key_of(store, r, attrs), r);
        if (!fresh && store.code(it->second, rhs) != store.code(r, rhs)) {
            return FdCheck{false, std::make_pair(it->second, r)};
        }
    }
    return FdCheck{};
}

FdSet brute_fds(const ColumnStore& store, const Limits& limits) {
    const AttrId m = store.arity();
    if (store.rows() > limits.max_rows || m > limits.max_attributes) {
        throw ContractError("relation exceeds the oracle size guard (" + std::to_string(store.rows()) + "x" +
                            std::to_string(m) + ")");
    }
    FdSet fds(m);
    for (AttrId a = 0; a < m; ++a) {
        std::vector<AttrSet> found;
        for (const auto& level : subsets_by_size(AttrSet::full(m) - AttrSet::single(a))) {
            for (AttrSet x : level) {
                const bool covered = std::any_of(found.begin(), found.end(), [x](AttrSet f) { return f.is_subset_of(x); });
                if (!covered && check_fd(store, x, a).valid) found.push_back(x);
            }
        }
        fds.set(a, std::move(found));
    }
    return fds;
}

std::vector<AttrSet> brute_mhs(std::span<const AttrSet> edges, AttrSet vertices) {
    if (vertices.size() > 16) throw ContractError("brute_mhs is limited to 16 vertices");
    auto hits = [&](AttrSet x) {
        return std::all_of(edges.begin(), edges.end(), [x](AttrSet e) { return e.intersects(x); });
    };
    std::vector<AttrSet> out;
    for (const auto& level : subsets_by_size(vertices)) {
        for (AttrSet x : level) {
            if (!hits(x)) continue;
            bool minimal = true;
            x.for_each([&](AttrId v) {
                AttrSet y = x;
                y.erase(v);
                if (hits(y)) minimal = false;
            });
            if (minimal) out.push_back(x);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

FdSet transversal_fds(const ColumnStore& store) {
    const AttrId m = store.arity();
    if (store.rows() > 5000 || m > 17) throw ContractError("relation exceeds the transversal oracle size guard");
    std::vector<std::vector<AttrSet>> edges(m);
    for (RowId i = 0; i < store.rows(); ++i) {
        for (RowId j = i + 1; j < store.rows(); ++j) {
            AttrSet d;
            for (AttrId a = 0; a < m; ++a) {
                if (store.code(i, a) != store.code(j, a)) d.insert(a);
            }
            d.for_each([&](AttrId a) {
                AttrSet e = d;
                e.erase(a);
                edges[a].push_back(e);
            });
        }
    }
    FdSet fds(m);
    for (AttrId a = 0; a < m; ++a) {
        auto& list = edges[a];
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        fds.set(a, brute_mhs(list, AttrSet::full(m) - AttrSet::single(a)));
    }
    return fds;
}

} // namespace eaifd::oracle
