#include "eaifd/diffset.hpp"

#include "eaifd/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <unordered_set>

namespace eaifd {

AttrSet diff(const ColumnStore& a, RowId row_a, const ColumnStore& b, RowId row_b) {
    std::uint64_t bits = 0;
    for (AttrId attr = 0; attr < a.arity(); ++attr) {
        if (a.code(row_a, attr) != b.code(row_b, attr)) bits |= std::uint64_t{1} << attr;
    }
    return AttrSet(bits);
}

std::uint64_t sample_size(std::uint64_t n, double epsilon) {
    if (n < 2) return 0;
    const std::uint64_t total = n * (n - 1) / 2;
    const auto want = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(total), epsilon)));
    return std::min(want, total);
}

std::pair<RowId, RowId> unrank_pair(std::uint64_t index, std::uint64_t n) {
    // Row i owns the (n-1-i) pairs (i, i+1..n-1); find i by solving the
    // triangular offset, then correct for floating-point drift.
    const double nn = static_cast<double>(n);
    const double disc = (2 * nn - 1) * (2 * nn - 1) - 8.0 * static_cast<double>(index);
    auto i = static_cast<std::uint64_t>(std::floor(((2 * nn - 1) - std::sqrt(std::max(disc, 0.0))) / 2));
    auto offset = [n](std::uint64_t row) { return row * (2 * n - row - 1) / 2; };
    while (i > 0 && offset(i) > index) --i;
    while (i + 1 < n && offset(i + 1) <= index) ++i;
    const std::uint64_t j = i + 1 + (index - offset(i));
    return {static_cast<RowId>(i), static_cast<RowId>(j)};
}

namespace {

// Portable bounded draw; std::uniform_int_distribution differs across
// standard libraries, which would break cross-platform determinism.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

} // namespace

PairSample sample_pairs(std::uint64_t n, double epsilon, std::uint64_t seed) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ContractError("epsilon must lie in (0, 1)");
    PairSample sample;
    sample.seed = seed;
    sample.epsilon = epsilon;
    const std::uint64_t k = sample_size(n, epsilon);
    if (k == 0) return sample;
    const std::uint64_t total = n * (n - 1) / 2;

    // Floyd's algorithm: k distinct indices out of [0, total).
    std::mt19937_64 rng(seed);
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(k) * 2);
    for (std::uint64_t j = total - k; j < total; ++j) {
        const std::uint64_t t = draw_below(rng, j + 1);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<std::uint64_t> indices(chosen.begin(), chosen.end());
    std::sort(indices.begin(), indices.end());
    sample.pairs.reserve(indices.size());
    for (auto idx : indices) sample.pairs.push_back(unrank_pair(idx, n));
    return sample;
}

std::vector<AttrSet> sampled_diffs(const ColumnStore& store, const PairSample& sample) {
    std::vector<AttrSet> out;
    out.reserve(sample.pairs.size());
    for (auto [i, j] : sample.pairs) {
        const AttrSet d = diff(store, i, j);
        if (!d.empty()) out.push_back(d);
    }
    normalize(out);
    return out;
}

std::vector<AttrSet> pairwise_diffs(const ColumnStore& store) {
    std::unordered_set<AttrSet> seen;
    const auto n = static_cast<RowId>(store.rows());
    for (RowId i = 0; i < n; ++i) {
        for (RowId j = i + 1; j < n; ++j) {
            const AttrSet d = diff(store, i, j);
            if (!d.empty()) seen.insert(d);
        }
    }
    std::vector<AttrSet> out(seen.begin(), seen.end());
    normalize(out);
    return out;
}

std::vector<AttrSet> modulo(const std::vector<AttrSet>& diffs, AttrId rhs) {
    std::vector<AttrSet> out;
    for (AttrSet d : diffs) {
        if (!d.contains(rhs)) continue;
        d.erase(rhs);
        out.push_back(d);
    }
    normalize(out);
    return out;
}

} // namespace eaifd
