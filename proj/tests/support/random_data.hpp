#pragma once

#include "eaifd/csv.hpp"
#include "eaifd/hypergraph.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace eaifd::testing {

struct RandomTableSpec {
    std::size_t rows = 50;
    std::size_t cols = 5;
    /// Per-column distinct-value counts are drawn from [min_card, max_card].
    std::uint32_t min_card = 1;
    std::uint32_t max_card = 6;
    /// Probability that a cell is left empty (NULL).
    double null_rate = 0.0;
};

/// Table with headers A0, A1, ... and cells like "v3", or "" for NULL.
CsvTable random_table(std::mt19937_64& rng, const RandomTableSpec& spec);

/// Spec for the oracle matrix: n <= 200, m <= 8, mixed cardinalities, NULLs.
RandomTableSpec matrix_spec(std::mt19937_64& rng);

/// Random non-empty subsets of `vertices`.
std::vector<AttrSet> random_edges(std::mt19937_64& rng, AttrSet vertices, std::size_t count);

/// Rows [lo, hi) of `t` as a new table with the same header.
CsvTable slice(const CsvTable& t, std::size_t lo, std::size_t hi);

} // namespace eaifd::testing
