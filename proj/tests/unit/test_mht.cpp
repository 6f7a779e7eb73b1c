#include "eaifd/mht.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <set>

using namespace eaifd;
using namespace eaifd::testing;

namespace {
const Candidate kFd{AttrSet::of({0}), 1};
} // namespace

TEST(MhtTable, ThresholdAdmission) {
    MhtTable t(0.8, 10);
    t.record_frequent(kFd, {{{5}, 1, 9}}, 10);
    EXPECT_EQ(t.entries(kFd).size(), 1u);
    MhtTable u(0.8, 10);
    u.record_frequent(kFd, {{{5}, 1, 7}}, 10);
    EXPECT_TRUE(u.entries(kFd).empty());
    EXPECT_EQ(u.total_entries(), 0u);
}

TEST(MhtTable, RebaseEvictsAndIncrementKeepsCountsExact) {
    MhtTable t(0.8, 10);
    t.record_frequent(kFd, {{{5}, 1, 9}}, 10);
    t.increment(kFd, {5}, 2);
    EXPECT_EQ(t.entries(kFd)[0].count, 11u);
    t.rebase(14);  // threshold 12
    EXPECT_TRUE(t.entries(kFd).empty());
    EXPECT_EQ(t.base_n(), 14u);
}

TEST(MhtTable, AtMostOneEntryPerFdAtDefaultTheta) {
    // Disjoint buckets can't both hold 80% of the rows.
    MhtTable t(0.8, 10);
    t.record_frequent(kFd, {{{1}, 0, 8}, {{2}, 0, 2}}, 10);
    EXPECT_LE(t.entries(kFd).size(), 1u);
}

TEST(BuildDelta, OneRow) {
    const auto store = ColumnStore::from_columns({{4}, {7}});
    const auto d = build_delta(store, kFd);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].key, CompositeKey{4});
    EXPECT_EQ(d[0].rhs_code, 7u);
    EXPECT_EQ(d[0].rows, (std::vector<RowId>{0}));
}

TEST(BuildDelta, StudentIncrementMajorDorm) {
    auto rel = ingest_csv(data_file("example_base.csv"));
    const auto delta = append_csv(rel, data_file("example_delta.csv"));
    const AttrId major = *rel.schema.find("SMajor");
    const AttrId dorm = *rel.schema.find("SDorm");
    const auto d = build_delta(delta.store, {AttrSet::single(major), dorm});
    std::set<std::string> majors;
    std::uint64_t total = 0;
    for (const auto& e : d) {
        majors.insert(rel.dictionaries[major].decode(e.key[0]));
        total += e.count;
    }
    EXPECT_EQ(majors, (std::set<std::string>{"CS", "EE", "Math"}));
    EXPECT_EQ(total, 4u);
}

TEST(BuildDelta, CountsSumToRows) {
    std::vector<Code> k, v;
    for (Code i = 0; i < 50; ++i) {
        k.push_back(i % 7);
        v.push_back(i % 3);
    }
    const auto store = ColumnStore::from_columns({k, v});
    const auto d = build_delta(store, kFd);
    const auto total = std::accumulate(d.begin(), d.end(), std::uint64_t{0},
                                       [](std::uint64_t s, const DeltaEntry& e) { return s + e.count; });
    EXPECT_EQ(total, 50u);
}

TEST(Compare, ThreeOutcomes) {
    const std::vector<MhtEntry> base{{{1}, 10, 9}, {{2}, 20, 9}};
    EXPECT_EQ(compare({{{1}, 10, 3, {0, 1, 2}}}, base).status, CompareResult::Status::valid);

    const auto bad = compare({{{2}, 21, 1, {0}}}, base);
    EXPECT_EQ(bad.status, CompareResult::Status::invalid);
    ASSERT_EQ(bad.conflicts.size(), 1u);
    EXPECT_EQ(bad.conflicts[0], std::make_pair(std::size_t{0}, std::size_t{1}));

    const auto unsure = compare({{{1}, 10, 1, {0}}, {{3}, 30, 1, {1}}}, base);
    EXPECT_EQ(unsure.status, CompareResult::Status::uncertain);
    EXPECT_EQ(unsure.residual, (std::vector<std::size_t>{1}));
    EXPECT_EQ(unsure.matched, (std::vector<std::size_t>{0}));

    EXPECT_EQ(compare({{{3}, 30, 1, {0}}}, {}).status, CompareResult::Status::uncertain);
}
