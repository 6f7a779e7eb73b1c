#include "eaifd/diffset.hpp"
#include "eaifd/hitting.hpp"
#include "eaifd/ighv.hpp"
#include "eaifd/session.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace eaifd;

namespace {

CsvTable make_table(std::size_t rows, std::size_t cols, std::uint64_t card, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    CsvTable t;
    for (std::size_t c = 0; c < cols; ++c) t.header.push_back("A" + std::to_string(c));
    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<std::string> row;
        for (std::size_t c = 0; c < cols; ++c) row.push_back("v" + std::to_string(rng() % (card + c)));
        t.rows.push_back(std::move(row));
    }
    return t;
}

void BM_MmcsEnumerate(benchmark::State& state) {
    const auto arity = static_cast<AttrId>(state.range(0));
    std::mt19937_64 rng(11);
    SubHypergraph h(0, arity);
    std::vector<AttrSet> edges;
    for (int i = 0; i < 4 * arity; ++i) {
        AttrSet e;
        h.vertices().for_each([&](AttrId v) {
            if (rng() % 3 == 0) e.insert(v);
        });
        if (!e.empty()) edges.push_back(e);
    }
    h.add_edges(edges);
    for (auto _ : state) benchmark::DoNotOptimize(enumerate(h));
    state.counters["mhs"] = static_cast<double>(enumerate(h).size());
}
BENCHMARK(BM_MmcsEnumerate)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

// A0 is a function of A1, so every candidate below holds and scans run to the end.
void BM_IghvValidate(benchmark::State& state) {
    auto table = make_table(static_cast<std::size_t>(state.range(0)), 8, 6, 3);
    for (auto& row : table.rows) row[0] = "f" + row[1];
    const auto rel = encode_table(table, {});
    const auto views = build_sorted_views(rel);
    std::vector<Candidate> cands;
    for (AttrId a = 2; a < 8; ++a) cands.push_back({AttrSet::of({1, a}), 0});
    for (auto _ : state) benchmark::DoNotOptimize(validate_candidates(cands, rel.store, views, 0.8));
}
BENCHMARK(BM_IghvValidate)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_IncrementalUpdate(benchmark::State& state) {
    const auto rows = static_cast<std::size_t>(state.range(0));
    const auto table = make_table(rows, 7, 5, 5);
    const std::size_t cut = rows * 8 / 10;
    CsvTable base{table.header, {table.rows.begin(), table.rows.begin() + static_cast<std::ptrdiff_t>(cut)}};
    const std::vector<std::vector<std::string>> delta(table.rows.begin() + static_cast<std::ptrdiff_t>(cut),
                                                      table.rows.end());
    const auto initial = Session::initialize(encode_table(base, {}), Params{});
    for (auto _ : state) {
        state.PauseTiming();
        auto s = initial;
        state.ResumeTiming();
        benchmark::DoNotOptimize(s.apply_rows(delta));
    }
}
BENCHMARK(BM_IncrementalUpdate)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_Initialize(benchmark::State& state) {
    const auto rel = encode_table(make_table(static_cast<std::size_t>(state.range(0)), 7, 5, 9), {});
    for (auto _ : state) benchmark::DoNotOptimize(Session::initialize(rel, Params{}));
}
BENCHMARK(BM_Initialize)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
