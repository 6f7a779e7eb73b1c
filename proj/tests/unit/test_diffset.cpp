#include "eaifd/diffset.hpp"
#include "eaifd/error.hpp"

#include "fixtures.hpp"
#include "random_data.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace eaifd;
using namespace eaifd::testing;

TEST(Diff, SameNameDifferentAge) {
    const auto rel = ingest_csv(data_file("example_base.csv"));
    const AttrSet d = diff(rel.store, 1, 5);  // s2, s6
    EXPECT_FALSE(d.contains(*rel.schema.find("SName")));
    EXPECT_TRUE(d.contains(*rel.schema.find("SAge")));
}

TEST(Diff, MatchesCellComparisonOnAllPairs) {
    std::mt19937_64 rng(5);
    const auto table = random_table(rng, {20, 5, 1, 3, 0.2});
    const auto rel = encode_table(table);
    for (RowId i = 0; i < 20; ++i) {
        for (RowId j = 0; j < 20; ++j) {
            AttrSet expected;
            for (AttrId a = 0; a < 5; ++a) {
                if (table.rows[i][a] != table.rows[j][a]) expected.insert(a);
            }
            EXPECT_EQ(diff(rel.store, i, j), expected);
            EXPECT_EQ(diff(rel.store, i, j), diff(rel.store, j, i));
        }
    }
}

TEST(Sample, SizeArithmetic) {
    EXPECT_EQ(sample_size(3, 0.3), 1u);
    EXPECT_EQ(sample_size(2, 0.3), 1u);
    EXPECT_EQ(sample_size(1, 0.3), 0u);
    EXPECT_EQ(sample_size(1000, 0.3), static_cast<std::uint64_t>(std::llround(std::pow(499500.0, 0.3))));
}

TEST(Sample, TwoRowsGiveTheOnlyPair) {
    const auto s = sample_pairs(2, 0.3, 1);
    ASSERT_EQ(s.pairs.size(), 1u);
    EXPECT_EQ(s.pairs[0], std::make_pair(RowId{0}, RowId{1}));
    EXPECT_TRUE(sample_pairs(1, 0.3, 1).pairs.empty());
}

TEST(Sample, DeterministicDistinctAndBounded) {
    for (std::uint64_t n : {3u, 10u, 57u, 1000u}) {
        const auto a = sample_pairs(n, 0.5, 42);
        const auto b = sample_pairs(n, 0.5, 42);
        EXPECT_EQ(a.pairs, b.pairs);
        EXPECT_EQ(a.pairs.size(), sample_size(n, 0.5));
        std::set<std::pair<RowId, RowId>> uniq(a.pairs.begin(), a.pairs.end());
        EXPECT_EQ(uniq.size(), a.pairs.size());
        for (auto [i, j] : a.pairs) {
            EXPECT_LT(i, j);
            EXPECT_LT(j, n);
        }
    }
    EXPECT_THROW(sample_pairs(10, 0.0, 1), ContractError);
    EXPECT_THROW(sample_pairs(10, 1.0, 1), ContractError);
}

TEST(Sample, UnrankCoversEveryPairOnce) {
    const std::uint64_t n = 9;
    std::set<std::pair<RowId, RowId>> all;
    for (std::uint64_t k = 0; k < n * (n - 1) / 2; ++k) all.insert(unrank_pair(k, n));
    EXPECT_EQ(all.size(), n * (n - 1) / 2);
    EXPECT_EQ(unrank_pair(0, n), std::make_pair(RowId{0}, RowId{1}));
}

TEST(PairwiseDiffs, SingleRowHasNone) {
    const auto store = ColumnStore::from_columns({{1}, {2}});
    EXPECT_TRUE(pairwise_diffs(store).empty());
}

TEST(PairwiseDiffs, StudentIncrement) {
    auto rel = ingest_csv(data_file("example_base.csv"));
    const auto delta = append_csv(rel, data_file("example_delta.csv"));
    std::set<AttrSet> expected;
    for (RowId i = 0; i < 4; ++i) {
        for (RowId j = i + 1; j < 4; ++j) expected.insert(diff(delta.store, i, j));
    }
    const auto got = pairwise_diffs(delta.store);
    EXPECT_EQ(std::set<AttrSet>(got.begin(), got.end()), expected);
}

TEST(PairwiseDiffs, RandomDeltaMatchesExhaustive) {
    std::mt19937_64 rng(8);
    const auto rel = encode_table(random_table(rng, {10, 4, 1, 2, 0.1}));
    std::set<AttrSet> expected;
    for (RowId i = 0; i < 10; ++i) {
        for (RowId j = i + 1; j < 10; ++j) {
            const AttrSet d = diff(rel.store, i, j);
            if (!d.empty()) expected.insert(d);
        }
    }
    const auto got = pairwise_diffs(rel.store);
    EXPECT_EQ(std::vector<AttrSet>(expected.begin(), expected.end()), got);
}

TEST(Modulo, Definition) {
    const std::vector<AttrSet> diffs{AttrSet::of({0, 1}), AttrSet::of({1, 2})};
    EXPECT_EQ(modulo(diffs, 0), (std::vector<AttrSet>{AttrSet::of({1})}));
    EXPECT_EQ(modulo(diffs, 2), (std::vector<AttrSet>{AttrSet::of({1})}));
    EXPECT_EQ(modulo({AttrSet::of({3})}, 3), (std::vector<AttrSet>{AttrSet{}}));
}

TEST(Modulo, RandomPoolsMatchComprehension) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const auto pool = random_edges(rng, AttrSet::full(6), 12);
        for (AttrId a = 0; a < 6; ++a) {
            std::set<AttrSet> expected;
            for (AttrSet d : pool) {
                if (d.contains(a)) expected.insert(d - AttrSet::single(a));
            }
            auto got = modulo(pool, a);
            for (AttrSet e : got) EXPECT_FALSE(e.contains(a));
            EXPECT_EQ(std::set<AttrSet>(got.begin(), got.end()), expected);
        }
    }
}
