#include "eaifd/bench_suite.hpp"

#include "eaifd/csv.hpp"
#include "eaifd/error.hpp"
#include "eaifd/oracle.hpp"
#include "eaifd/session.hpp"

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

namespace eaifd::bench {

namespace fs = std::filesystem;

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

fs::path resolve(const fs::path& p, const fs::path& base_dir, const std::vector<fs::path>& search_dirs) {
    if (p.is_absolute()) return p;
    const fs::path local = base_dir / p;
    if (fs::exists(local)) return local;
    for (const auto& dir : search_dirs) {
        const fs::path alt = dir / p.filename();
        if (fs::exists(alt)) return alt;
    }
    return local;
}

std::string csv_number(double v) {
    std::ostringstream s;
    s.precision(6);
    s << std::fixed << v;
    return s.str();
}

} // namespace

SuiteConfig parse_config(const std::string& json_text, const fs::path& base_dir, const std::vector<fs::path>& search_dirs) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("bench config: ") + e.what());
    }
    SuiteConfig c;
    try {
        c.thetas = j.value("thetas", c.thetas);
        c.epsilon = j.value("epsilon", c.epsilon);
        c.theta = j.value("theta", c.theta);
        c.seed = j.value("seed", c.seed);
        c.base_fraction = j.value("base_fraction", c.base_fraction);
        c.batches = j.value("batches", c.batches);
        c.oracle = j.value("oracle", c.oracle);
        for (const auto& d : j.at("datasets")) {
            DatasetSpec s;
            s.id = d.at("id").get<std::string>();
            s.path = resolve(d.at("path").get<std::string>(), base_dir, search_dirs);
            s.header = d.value("header", true);
            s.null_token = d.value("null_token", std::string{});
            if (d.contains("n")) s.expected_rows = d["n"].get<std::uint64_t>();
            if (d.contains("m")) s.expected_attributes = d["m"].get<std::uint64_t>();
            if (d.contains("fds")) s.expected_fds = d["fds"].get<std::uint64_t>();
            c.datasets.push_back(std::move(s));
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("bench config: ") + e.what());
    }
    if (c.batches == 0) throw DataError("bench config: batches must be positive");
    if (!(c.base_fraction > 0.0 && c.base_fraction < 1.0)) throw DataError("bench config: base_fraction must lie in (0, 1)");
    return c;
}

SuiteConfig load_config(const fs::path& path, const std::vector<fs::path>& search_dirs) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read bench config " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.parent_path(), search_dirs);
}

Report run_dataset(const DatasetSpec& spec, const SuiteConfig& config, std::ostream& log) {
    Report rep;
    rep.id = spec.id;
    rep.expected_fds = spec.expected_fds;
    rep.expectation = "none";
    rep.oracle = "skipped";
    if (!fs::exists(spec.path)) {
        rep.status = "skipped: missing " + spec.path.string();
        log << spec.id << ": skipped, " << spec.path.string() << " not found\n";
        return rep;
    }
    CsvTable table;
    try {
        table = read_csv(spec.path, CsvOptions{',', spec.header});
    } catch (const Error& e) {
        rep.status = std::string("skipped: ") + e.what();
        log << spec.id << ": skipped, " << e.what() << "\n";
        return rep;
    }
    const Params params{config.epsilon, config.theta, config.seed};

    EncodedRelation rel = encode_table(table, spec.null_token);
    rep.rows = rel.rows();
    rep.attributes = rel.arity();

    auto t0 = std::chrono::steady_clock::now();
    Session full = Session::initialize(rel, params);
    rep.init_ms = elapsed_ms(t0);
    rep.fds = full.state().fds.size();
    rep.mht_entries = full.state().mht.total_entries();
    if (spec.expected_fds) {
        const bool shape = spec.expected_rows == rep.rows && spec.expected_attributes == rep.attributes;
        rep.expectation = !shape ? "informational" : (rep.fds == *spec.expected_fds ? "exact-match" : "exact-mismatch");
    }
    if (config.oracle && rep.rows <= 5000 && rep.attributes <= 16) {
        rep.oracle = oracle::brute_fds(rel.store) == full.state().fds ? "equal" : "different";
    }

    // Incremental run: leading base, remainder in equal batches.
    const std::size_t base_rows =
        std::max<std::size_t>(1, static_cast<std::size_t>(static_cast<double>(table.rows.size()) * config.base_fraction));
    CsvTable base_table{table.header, {table.rows.begin(), table.rows.begin() + static_cast<std::ptrdiff_t>(base_rows)}};
    Session inc = Session::initialize(encode_table(base_table, spec.null_token), params);
    const std::size_t rest = table.rows.size() - base_rows;
    for (std::uint32_t b = 0; b < config.batches; ++b) {
        const std::size_t lo = base_rows + rest * b / config.batches;
        const std::size_t hi = base_rows + rest * (b + 1) / config.batches;
        if (lo == hi) continue;
        std::vector<std::vector<std::string>> rows(table.rows.begin() + static_cast<std::ptrdiff_t>(lo),
                                                   table.rows.begin() + static_cast<std::ptrdiff_t>(hi));
        t0 = std::chrono::steady_clock::now();
        const UpdateReport ur = inc.apply_rows(rows);
        rep.update_ms.push_back(elapsed_ms(t0));
        for (const auto& s : ur.stats.scans) {
            ++rep.table_scans;
            if (s.blocks_read < s.blocks_total) ++rep.selective_scans;
            rep.blocks_read += s.blocks_read;
            rep.blocks_total += s.blocks_total;
        }
    }
    rep.incremental_fds = inc.state().fds.size();
    rep.incremental_equal = inc.state().fds == full.state().fds;

    std::optional<std::uint64_t> prev;
    for (double theta : config.thetas) {
        t0 = std::chrono::steady_clock::now();
        Session s = Session::initialize(rel, Params{config.epsilon, theta, config.seed});
        ThetaPoint p{theta, s.state().mht.total_entries(), elapsed_ms(t0)};
        if (prev && p.mht_entries > *prev) rep.theta_monotone = false;
        prev = p.mht_entries;
        rep.theta_sweep.push_back(p);
    }
    rep.status = "ok";
    log << spec.id << ": n=" << rep.rows << " m=" << rep.attributes << " |F|=" << rep.fds << " (" << rep.expectation
        << ")\n";
    return rep;
}

std::vector<Report> run_suite(const SuiteConfig& config, std::ostream& log) {
    std::vector<Report> out;
    for (const auto& d : config.datasets) out.push_back(run_dataset(d, config, log));
    return out;
}

void write_csv(std::ostream& out, const std::vector<Report>& reports) {
    out << "dataset,status,n,m,fds,expected_fds,expectation,oracle,init_ms,update_ms,incremental_fds,"
           "incremental_equal,table_scans,selective_scans,blocks_read,blocks_total,mht_entries,theta_sweep,"
           "theta_monotone\n";
    for (const auto& r : reports) {
        std::string updates;
        for (double ms : r.update_ms) updates += (updates.empty() ? "" : ";") + csv_number(ms);
        std::string sweep;
        for (const auto& p : r.theta_sweep) {
            sweep += (sweep.empty() ? "" : ";") + csv_number(p.theta).substr(0, 4) + ":" + std::to_string(p.mht_entries);
        }
        out << csv_escape(r.id) << ',' << csv_escape(r.status) << ',' << r.rows << ',' << r.attributes << ',' << r.fds
            << ',' << (r.expected_fds ? std::to_string(*r.expected_fds) : "") << ',' << r.expectation << ','
            << r.oracle << ',' << csv_number(r.init_ms) << ',' << updates << ',' << r.incremental_fds << ','
            << (r.incremental_equal ? "true" : "false") << ',' << r.table_scans << ',' << r.selective_scans << ','
            << r.blocks_read << ',' << r.blocks_total << ',' << r.mht_entries << ',' << sweep << ','
            << (r.theta_monotone ? "true" : "false") << '\n';
    }
}

} // namespace eaifd::bench
