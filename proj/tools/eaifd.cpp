// eaifd: discover and maintain functional dependencies of a CSV relation.

#include "eaifd/bench_suite.hpp"
#include "eaifd/error.hpp"
#include "eaifd/fd_text.hpp"
#include "eaifd/oracle.hpp"
#include "eaifd/session.hpp"
#include "eaifd/state_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

namespace fs = std::filesystem;
using namespace eaifd;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kState = 3, kMismatch = 4 };

const std::map<std::string, FdFormat> kFormats{{"text", FdFormat::text}, {"jsonlike", FdFormat::jsonlike}};

bool dir_is_empty_or_absent(const fs::path& dir) {
    std::error_code ec;
    if (!fs::exists(dir, ec)) return true;
    if (!fs::is_directory(dir, ec)) return false;
    return fs::directory_iterator(dir, ec) == fs::directory_iterator();
}

void require_state(const fs::path& dir) {
    if (!state_exists(dir)) throw StateError("no state in " + dir.string());
}

SaveHooks crash_hooks() {
    SaveHooks hooks;
    // Fault injection for durability tests: die after writing, before the swap.
    if (const char* v = std::getenv("EAIFD_CRASH_BEFORE_SWAP"); v && *v && std::string(v) != "0") {
        hooks.before_swap = [] { std::_Exit(9); };
    }
    return hooks;
}

void print_counts(const Session& s) {
    const auto& fds = s.state().fds;
    const auto& schema = s.relation().schema;
    std::cout << "|F| = " << fds.size() << "\n";
    for (AttrId a = 0; a < schema.arity(); ++a) {
        std::cout << "  " << schema.name(a) << ": " << fds.lhs_of(a).size() << "\n";
    }
}

int cmd_init(const fs::path& input, const fs::path& dir, const Params& params, const std::string& null_token,
             bool no_header) {
    if (!dir_is_empty_or_absent(dir)) {
        throw StateError("refusing to initialize: " + dir.string() + " is not empty");
    }
    fs::create_directories(dir);
    StateLock lock(dir);
    IngestOptions opts;
    opts.null_token = null_token;
    opts.csv.has_header = !no_header;
    Session s = Session::initialize(ingest_csv(input, opts), params);
    save_session(dir, s, crash_hooks());
    std::cout << "n = " << s.relation().rows() << ", m = " << s.relation().arity() << "\n";
    print_counts(s);
    return kOk;
}

int cmd_update(const fs::path& delta, const fs::path& dir, bool full_scan) {
    require_state(dir);
    StateLock lock(dir);
    Session s = load_session(dir);
    const std::uint64_t before = s.generation();
    const UpdateReport report = s.apply_csv(delta, UpdateOptions{full_scan});
    if (s.generation() != before) save_session(dir, s, crash_hooks());
    const auto& schema = s.relation().schema;
    if (!report.changed()) {
        std::cout << "no change\n";
        return kOk;
    }
    for (const auto& fd : report.removed) std::cout << "- " << format_fd(schema, fd) << "\n";
    for (const auto& fd : report.added) std::cout << "+ " << format_fd(schema, fd) << "\n";
    return kOk;
}

int cmd_fds(const fs::path& dir, FdFormat format) {
    require_state(dir);
    StateLock lock(dir);
    const Session s = load_session(dir);
    std::cout << format_fds(s.relation().schema, s.state().fds, format);
    return kOk;
}

int cmd_mht(const fs::path& dir) {
    require_state(dir);
    StateLock lock(dir);
    const Session s = load_session(dir);
    const auto& rel = s.relation();
    const auto& mht = s.state().mht;
    std::cout << "theta = " << mht.theta() << ", n = " << mht.base_n() << ", threshold = " << mht.threshold()
              << ", entries = " << mht.total_entries() << "\n";
    for (const auto& [fd, entries] : mht.all()) {
        for (const auto& e : entries) {
            std::cout << format_fd(rel.schema, fd) << " : [";
            std::size_t i = 0;
            fd.lhs.for_each([&](AttrId a) {
                std::cout << (i ? "," : "") << rel.dictionaries[a].decode(e.key[i]);
                ++i;
            });
            std::cout << "] -> " << rel.dictionaries[fd.rhs].decode(e.rhs_code) << " x" << e.count << "\n";
        }
    }
    return kOk;
}

int cmd_check(const fs::path& input, const std::string& delta, const fs::path& dir) {
    require_state(dir);
    StateLock lock(dir);
    const Session s = load_session(dir);
    IngestOptions opts;
    opts.null_token = s.relation().null_token;
    EncodedRelation rel = ingest_csv(input, opts);
    if (rel.schema != s.relation().schema) throw DataError("input header differs from the state's schema");
    if (!delta.empty()) fold_delta(rel, append_csv(rel, delta));
    const FdSet expected = oracle::brute_fds(rel.store);
    if (expected == s.state().fds) {
        std::cout << "equal: " << expected.size() << " FDs\n";
        return kOk;
    }
    const auto& schema = rel.schema;
    for (const auto& fd : s.state().fds.all()) {
        if (!expected.contains(fd)) std::cout << "only in state: " << format_fd(schema, fd) << "\n";
    }
    for (const auto& fd : expected.all()) {
        if (!s.state().fds.contains(fd)) std::cout << "only in oracle: " << format_fd(schema, fd) << "\n";
    }
    return kMismatch;
}

int cmd_oracle(const fs::path& input, const std::string& null_token, FdFormat format) {
    const EncodedRelation rel = ingest_csv(input, null_token);
    std::cout << format_fds(rel.schema, oracle::brute_fds(rel.store), format);
    return kOk;
}

int cmd_bench(const fs::path& config_path, const std::string& output) {
    std::vector<fs::path> search;
    if (const char* dirs = std::getenv("EAIFD_DATASETS"); dirs && *dirs) {
        std::string all = dirs;
        std::size_t start = 0;
        for (;;) {
            const auto colon = all.find(':', start);
            search.emplace_back(all.substr(start, colon - start));
            if (colon == std::string::npos) break;
            start = colon + 1;
        }
    }
    const auto config = bench::load_config(config_path, search);
    const auto reports = bench::run_suite(config, std::cerr);
    if (output.empty()) {
        bench::write_csv(std::cout, reports);
    } else {
        std::ofstream out(output);
        if (!out) throw DataError("cannot write " + output);
        bench::write_csv(out, reports);
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discover and incrementally maintain minimal functional dependencies"};
    app.require_subcommand(1);

    std::string input, state, delta, null_token, format = "text", config, output;
    Params params;
    bool no_header = false;
    bool full_scan = false;

    auto* init = app.add_subcommand("init", "discover the FDs of a base CSV and create a state directory");
    init->add_option("--input", input, "base CSV file")->required();
    init->add_option("--state", state, "state directory (absent or empty)")->required();
    init->add_option("--epsilon", params.epsilon, "pair sampling exponent")->capture_default_str();
    init->add_option("--theta", params.theta, "MHT frequency threshold")->capture_default_str();
    init->add_option("--seed", params.seed, "sampling seed")->capture_default_str();
    init->add_option("--null-token", null_token, "cell spelling treated as NULL (empty cells always are)");
    init->add_flag("--no-header", no_header, "the first line is data; columns are named col0, col1, ...");

    auto* upd = app.add_subcommand("update", "apply a batch of inserted tuples");
    upd->add_option("--delta", delta, "delta CSV with the base header")->required();
    upd->add_option("--state", state, "state directory")->required();
    upd->add_flag("--full-scan", full_scan, "read every block during table-scan validation");

    auto* fds = app.add_subcommand("fds", "print the current FD set");
    fds->add_option("--state", state, "state directory")->required();
    fds->add_option("--format", format, "text or jsonlike")->check(CLI::IsMember({"text", "jsonlike"}));

    auto* mht = app.add_subcommand("mht", "print the stored high-frequency mappings");
    mht->add_option("--state", state, "state directory")->required();

    auto* check = app.add_subcommand("check", "compare the state's FDs with the brute-force oracle");
    check->add_option("--input", input, "base CSV file")->required();
    check->add_option("--delta", delta, "delta CSV applied since init");
    check->add_option("--state", state, "state directory")->required();

    auto* orc = app.add_subcommand("oracle", "print the brute-force FD set of a CSV");
    orc->add_option("--input", input, "CSV file")->required();
    orc->add_option("--null-token", null_token, "cell spelling treated as NULL");
    orc->add_option("--format", format, "text or jsonlike")->check(CLI::IsMember({"text", "jsonlike"}));

    auto* bench = app.add_subcommand("bench", "run the dataset suite and emit a CSV report");
    bench->add_option("--config", config, "JSON suite config")->required();
    bench->add_option("--output", output, "CSV report path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*init) return cmd_init(input, state, params, null_token, no_header);
        if (*upd) return cmd_update(delta, state, full_scan);
        if (*fds) return cmd_fds(state, kFormats.at(format));
        if (*mht) return cmd_mht(state);
        if (*check) return cmd_check(input, delta, state);
        if (*orc) return cmd_oracle(input, null_token, kFormats.at(format));
        if (*bench) return cmd_bench(config, output);
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kData;
    } catch (const StateError& e) {
        std::cerr << "state error: " << e.what() << "\n";
        return kState;
    } catch (const ContractError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kState;
    }
    return kUsage;
}
