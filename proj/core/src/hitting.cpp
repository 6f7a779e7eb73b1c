#include "eaifd/hitting.hpp"

#include "eaifd/error.hpp"

#include <algorithm>
#include <array>

namespace eaifd {

namespace {

using EdgeList = std::vector<std::uint32_t>;

struct CritEntry {
    AttrId vertex;
    EdgeList edges;
};

// Minimal-hitting-set enumeration by hyperedge branching with critical-edge
// minimality pruning.
class Mmcs {
public:
    Mmcs(std::span<const AttrSet> edges, AttrSet vertices, std::vector<AttrSet>& out)
        : edges_(edges), vertices_(vertices), out_(out) {
        for (AttrSet e : edges_) e.for_each([&](AttrId a) { ++frequency_[a]; });
    }

    void run(AttrSet root) {
        EdgeList uncov;
        std::vector<CritEntry> crit;
        root.for_each([&](AttrId u) { crit.push_back({u, {}}); });
        for (std::uint32_t i = 0; i < edges_.size(); ++i) {
            const AttrSet hit = edges_[i] & root;
            if (hit.empty()) {
                uncov.push_back(i);
            } else if (hit.size() == 1) {
                const AttrId u = hit.first();
                for (auto& c : crit) {
                    if (c.vertex == u) c.edges.push_back(i);
                }
            }
        }
        for (const auto& c : crit) {
            if (c.edges.empty()) return;
        }
        search(root, vertices_ - root, uncov, crit);
    }

private:
    void search(AttrSet s, AttrSet cand, const EdgeList& uncov, const std::vector<CritEntry>& crit) {
        if (uncov.empty()) {
            out_.push_back(s);
            return;
        }
        // Branch on the uncovered edge with the fewest candidate vertices.
        std::uint32_t pick = uncov.front();
        int best = 65;
        for (std::uint32_t e : uncov) {
            const int k = (edges_[e] & cand).size();
            if (k < best) {
                best = k;
                pick = e;
                if (k == 0) break;
            }
        }
        const AttrSet branch = edges_[pick] & cand;
        if (branch.empty()) return;

        std::vector<AttrId> order = branch.ids();
        std::stable_sort(order.begin(), order.end(),
                         [this](AttrId a, AttrId b) { return frequency_[a] < frequency_[b]; });

        cand = cand - branch;
        for (AttrId v : order) {
            std::vector<CritEntry> child;
            child.reserve(crit.size() + 1);
            bool viable = true;
            for (const auto& c : crit) {
                CritEntry next{c.vertex, {}};
                for (std::uint32_t e : c.edges) {
                    if (!edges_[e].contains(v)) next.edges.push_back(e);
                }
                if (next.edges.empty()) {
                    viable = false;
                    break;
                }
                child.push_back(std::move(next));
            }
            if (viable) {
                CritEntry own{v, {}};
                EdgeList rest;
                for (std::uint32_t e : uncov) {
                    (edges_[e].contains(v) ? own.edges : rest).push_back(e);
                }
                child.push_back(std::move(own));
                AttrSet next_s = s;
                next_s.insert(v);
                search(next_s, cand, rest, child);
            }
            cand.insert(v);
        }
    }

    std::span<const AttrSet> edges_;
    AttrSet vertices_;
    std::vector<AttrSet>& out_;
    std::array<std::uint32_t, kMaxAttributes> frequency_{};
};

} // namespace

std::vector<AttrSet> minimal_transversals_containing(std::span<const AttrSet> edges, AttrSet vertices, AttrSet root) {
    std::vector<AttrSet> out;
    for (AttrSet e : edges) {
        if (e.empty()) return out;
    }
    Mmcs(edges, vertices, out).run(root);
    normalize(out);
    return out;
}

std::vector<AttrSet> minimal_transversals(std::span<const AttrSet> edges, AttrSet vertices) {
    return minimal_transversals_containing(edges, vertices, AttrSet{});
}

std::vector<AttrSet> enumerate(const SubHypergraph& h) {
    if (h.poisoned()) return {};
    return minimal_transversals(h.edges(), h.vertices());
}

TransversalStore make_store(const SubHypergraph& h) {
    return TransversalStore{h.rhs(), enumerate(h), h.generation()};
}

ResumeResult resume(TransversalStore& store, const SubHypergraph& h, const EdgeBatch& batch) {
    if (store.rhs != h.rhs()) throw ContractError("store and hypergraph belong to different attributes");
    if (store.hypergraph_generation != batch.from_generation || h.generation() != batch.to_generation) {
        throw StaleStoreError("transversal store generation " + std::to_string(store.hypergraph_generation) +
                              " does not match batch [" + std::to_string(batch.from_generation) + ", " +
                              std::to_string(batch.to_generation) + "] on hypergraph generation " +
                              std::to_string(h.generation()));
    }
    ResumeResult result;
    if (h.poisoned()) {
        result.retired = std::move(store.mhs);
        store.mhs.clear();
        store.hypergraph_generation = h.generation();
        return result;
    }
    for (AttrSet x : store.mhs) {
        const bool hits_all = std::all_of(batch.edges.begin(), batch.edges.end(),
                                          [x](AttrSet e) { return e.intersects(x); });
        (hits_all ? result.retained : result.retired).push_back(x);
    }
    // Every new minimal transversal contains a retired one; extend each.
    for (AttrSet x : result.retired) {
        auto grown = minimal_transversals_containing(h.edges(), h.vertices(), x);
        result.added.insert(result.added.end(), grown.begin(), grown.end());
    }
    normalize(result.added);
    std::erase_if(result.added, [&](AttrSet y) { return !is_minimal_transversal(h.edges(), y); });

    store.mhs = result.retained;
    store.mhs.insert(store.mhs.end(), result.added.begin(), result.added.end());
    normalize(store.mhs);
    store.hypergraph_generation = h.generation();
    return result;
}

bool is_transversal(std::span<const AttrSet> edges, AttrSet x) {
    return std::all_of(edges.begin(), edges.end(), [x](AttrSet e) { return e.intersects(x); });
}

bool is_minimal_transversal(std::span<const AttrSet> edges, AttrSet x) {
    if (!is_transversal(edges, x)) return false;
    bool minimal = true;
    x.for_each([&](AttrId v) {
        AttrSet smaller = x;
        smaller.erase(v);
        if (is_transversal(edges, smaller)) minimal = false;
    });
    return minimal;
}

} // namespace eaifd
