#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace eaifd::bench {

struct DatasetSpec {
    std::string id;
    std::filesystem::path path;
    bool header = true;
    std::string null_token;
    /// Published (n, m, |F|); |F| is compared exactly only when n and m match.
    std::optional<std::uint64_t> expected_rows;
    std::optional<std::uint64_t> expected_attributes;
    std::optional<std::uint64_t> expected_fds;
};

struct SuiteConfig {
    std::vector<DatasetSpec> datasets;
    std::vector<double> thetas{0.7, 0.75, 0.8, 0.85, 0.9};
    double epsilon = 0.3;
    double theta = 0.8;
    std::uint64_t seed = 0;
    /// Leading fraction of rows used as the base for the incremental run.
    double base_fraction = 0.8;
    std::uint32_t batches = 1;
    /// Cross-check |F| against the brute-force oracle when it fits its guard.
    bool oracle = true;
};

/// Parses a JSON config; relative dataset paths resolve against `base_dir`,
/// then against each directory in `search_dirs` by file name.
SuiteConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir,
                         const std::vector<std::filesystem::path>& search_dirs = {});
SuiteConfig load_config(const std::filesystem::path& path, const std::vector<std::filesystem::path>& search_dirs = {});

struct ThetaPoint {
    double theta = 0;
    std::uint64_t mht_entries = 0;
    double init_ms = 0;
};

struct Report {
    std::string id;
    /// "ok", or "skipped: <reason>".
    std::string status;
    std::uint64_t rows = 0;
    std::uint64_t attributes = 0;
    std::uint64_t fds = 0;
    std::optional<std::uint64_t> expected_fds;
    /// "exact-match", "exact-mismatch", "informational" or "none".
    std::string expectation;
    double init_ms = 0;
    std::vector<double> update_ms;
    std::uint64_t incremental_fds = 0;
    bool incremental_equal = false;
    /// "equal", "different" or "skipped".
    std::string oracle;
    std::uint64_t table_scans = 0;
    std::uint64_t selective_scans = 0;
    std::uint64_t blocks_read = 0;
    std::uint64_t blocks_total = 0;
    std::uint64_t mht_entries = 0;
    std::vector<ThetaPoint> theta_sweep;
    bool theta_monotone = true;

    bool ok() const { return status == "ok"; }
};

/// Runs one dataset; a missing or unreadable file yields a skipped report.
Report run_dataset(const DatasetSpec& spec, const SuiteConfig& config, std::ostream& log);
std::vector<Report> run_suite(const SuiteConfig& config, std::ostream& log);

/// Header line plus one row per report; see the README for the columns.
void write_csv(std::ostream& out, const std::vector<Report>& reports);

} // namespace eaifd::bench
