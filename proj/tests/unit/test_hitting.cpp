#include "eaifd/error.hpp"
#include "eaifd/hitting.hpp"
#include "eaifd/oracle.hpp"

#include "random_data.hpp"

#include <gtest/gtest.h>

using namespace eaifd;
using namespace eaifd::testing;

namespace {
constexpr AttrId A = 0, B = 1, C = 2, D = 3;
} // namespace

TEST(Enumerate, SingleEdge) {
    SubHypergraph h(A, 3);
    h.add_edge(AttrSet::of({B, C}));
    EXPECT_EQ(enumerate(h), (std::vector<AttrSet>{AttrSet::of({B}), AttrSet::of({C})}));
}

TEST(Enumerate, Triangle) {
    SubHypergraph h(D, 4);
    h.add_edges({AttrSet::of({A, B}), AttrSet::of({B, C}), AttrSet::of({A, C})});
    const auto got = enumerate(h);
    EXPECT_EQ(got, oracle::brute_mhs(h.edges(), h.vertices()));
    EXPECT_EQ(got.size(), 3u);
    for (AttrSet x : got) EXPECT_EQ(x.size(), 2);
}

TEST(Enumerate, NoEdgesGivesEmptySet) {
    SubHypergraph h(A, 3);
    EXPECT_EQ(enumerate(h), (std::vector<AttrSet>{AttrSet{}}));
}

TEST(Enumerate, PoisonedGivesNothing) {
    SubHypergraph h(A, 3);
    h.add_edge(AttrSet{});
    EXPECT_TRUE(enumerate(h).empty());
}

TEST(Enumerate, MatchesBruteForceWithCriticalEdges) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const AttrId nv = 1 + trial % 12;
        const AttrSet vertices = AttrSet::full(nv);
        const auto edges = minimize(random_edges(rng, vertices, 1 + trial % 20));
        const auto got = minimal_transversals(edges, vertices);
        ASSERT_EQ(got, oracle::brute_mhs(edges, vertices));
        for (AttrSet x : got) {
            // Every member owns an edge that no other member hits.
            x.for_each([&](AttrId v) {
                const bool critical = std::any_of(edges.begin(), edges.end(),
                                                  [&](AttrSet e) { return (e & x) == AttrSet::single(v); });
                EXPECT_TRUE(critical);
            });
        }
    }
}

TEST(Resume, RetiresAndExtends) {
    SubHypergraph h(A, 4);
    h.add_edge(AttrSet::of({B}));
    TransversalStore store = make_store(h);
    ASSERT_EQ(store.mhs, (std::vector<AttrSet>{AttrSet::of({B})}));
    const auto batch = h.add_edges({AttrSet::of({C, D})});
    const auto r = resume(store, h, batch);
    EXPECT_TRUE(r.retained.empty());
    EXPECT_EQ(r.retired, (std::vector<AttrSet>{AttrSet::of({B})}));
    EXPECT_EQ(r.added, (std::vector<AttrSet>{AttrSet::of({B, C}), AttrSet::of({B, D})}));
    EXPECT_EQ(store.mhs, enumerate(h));
}

TEST(Resume, AlreadyHitEdgeChangesNothing) {
    SubHypergraph h(A, 4);
    h.add_edge(AttrSet::of({B}));
    TransversalStore store = make_store(h);
    const auto batch = h.add_edges({AttrSet::of({B, C})});
    const auto r = resume(store, h, batch);
    EXPECT_TRUE(r.added.empty());
    EXPECT_TRUE(r.retired.empty());
    EXPECT_EQ(r.retained, store.mhs);
}

TEST(Resume, StaleStoreIsRejected) {
    SubHypergraph h(A, 4);
    TransversalStore store = make_store(h);
    h.add_edges({AttrSet::of({B})});
    const auto batch = h.add_edges({AttrSet::of({C})});
    EXPECT_THROW(resume(store, h, batch), StaleStoreError);
}

TEST(Resume, PoisonRetiresEverything) {
    SubHypergraph h(A, 4);
    h.add_edge(AttrSet::of({B, C}));
    TransversalStore store = make_store(h);
    const auto batch = h.add_edges({AttrSet{}});
    const auto r = resume(store, h, batch);
    EXPECT_EQ(r.retired.size(), 2u);
    EXPECT_TRUE(store.mhs.empty());
}

TEST(Resume, EqualsRestartOnRandomSequences) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const AttrId m = 2 + trial % 10;
        SubHypergraph h(0, m);
        TransversalStore store = make_store(h);
        for (int step = 0; step < 5; ++step) {
            const auto edges = random_edges(rng, h.vertices(), 1 + trial % 3);
            const auto batch = h.add_edges(edges);
            if (!batch.changed()) continue;
            const auto before = store.mhs;
            const auto r = resume(store, h, batch);
            ASSERT_EQ(store.mhs, enumerate(h));
            for (AttrSet y : r.added) {
                EXPECT_TRUE(std::any_of(r.retired.begin(), r.retired.end(),
                                        [y](AttrSet x) { return x.is_proper_subset_of(y); }));
            }
            EXPECT_EQ(r.retained.size() + r.retired.size(), before.size());
        }
    }
}
