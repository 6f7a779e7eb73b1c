#include "eaifd/state_io.hpp"

#include "eaifd/error.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

namespace eaifd {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[8] = {'E', 'A', 'I', 'F', 'D', 'S', 'E', 'C'};
constexpr std::uint32_t kFormatVersion = 1;

enum class Section : std::uint32_t { relation = 1, hypergraphs = 2, stores = 3, fds = 4, mht = 5 };

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

class Writer {
public:
    void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void str(const std::string& s) {
        u64(s.size());
        buf_ += s;
    }
    const std::string& bytes() const { return buf_; }

private:
    std::string buf_;
};

class Reader {
public:
    Reader(std::string bytes, std::string name) : buf_(std::move(bytes)), name_(std::move(name)) {}

    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(buf_[pos_++]);
    }
    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t{u8()} << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t{u8()} << (8 * i);
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
    std::string str() {
        const std::uint64_t n = u64();
        need(n);
        std::string s = buf_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    // Guards length prefixes against absurd values from corrupt files.
    std::uint64_t count(std::uint64_t unit) {
        const std::uint64_t n = u64();
        if (unit != 0 && n > (buf_.size() - pos_) / unit) fail("length prefix out of range");
        return n;
    }
    bool done() const { return pos_ == buf_.size(); }
    [[noreturn]] void fail(const std::string& what) const { throw StateError(name_ + ": " + what); }

private:
    void need(std::uint64_t n) const {
        if (n > buf_.size() - pos_) fail("truncated section");
    }

    std::string buf_;
    std::string name_;
    std::size_t pos_ = 0;
};

void write_file(const fs::path& path, const std::string& bytes) {
    const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd < 0) throw StateError("cannot write " + path.string() + ": " + std::strerror(errno));
    std::size_t done = 0;
    while (done < bytes.size()) {
        const ssize_t w = ::write(fd, bytes.data() + done, bytes.size() - done);
        if (w < 0) {
            if (errno == EINTR) continue;
            ::close(fd);
            throw StateError("write failed on " + path.string());
        }
        done += static_cast<std::size_t>(w);
    }
    ::fsync(fd);
    ::close(fd);
}

void sync_dir(const fs::path& dir) {
    const int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY);
    if (fd >= 0) {
        ::fsync(fd);
        ::close(fd);
    }
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StateError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string seal(Section kind, std::uint64_t generation, const Writer& payload) {
    Writer w;
    for (char c : kMagic) w.u8(static_cast<std::uint8_t>(c));
    w.u32(kFormatVersion);
    w.u32(static_cast<std::uint32_t>(kind));
    w.u64(generation);
    std::string out = w.bytes() + payload.bytes();
    Writer tail;
    tail.u64(fnv1a(out));
    return out + tail.bytes();
}

Reader open_section(const fs::path& path, Section kind, std::uint64_t generation) {
    std::string bytes = read_file(path);
    const std::string name = path.filename().string();
    if (bytes.size() < 32) throw StateError(name + ": truncated section");
    const std::string body = bytes.substr(0, bytes.size() - 8);
    Reader tail(bytes.substr(bytes.size() - 8), name);
    if (tail.u64() != fnv1a(body)) throw StateError(name + ": checksum mismatch");
    Reader r(body, name);
    for (char c : kMagic) {
        if (r.u8() != static_cast<std::uint8_t>(c)) r.fail("bad magic");
    }
    if (r.u32() != kFormatVersion) r.fail("unsupported format version");
    if (r.u32() != static_cast<std::uint32_t>(kind)) r.fail("unexpected section kind");
    if (r.u64() != generation) r.fail("generation does not match the manifest");
    return r;
}

void expect_done(const Reader& r) {
    if (!r.done()) r.fail("trailing bytes");
}

std::string hex(const std::string& s) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (unsigned char c : s) {
        out += digits[c >> 4];
        out += digits[c & 15];
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Manifest {
    std::uint64_t generation = 0;
    std::uint64_t rows = 0;
    std::uint64_t arity = 0;
    std::uint64_t epsilon_bits = 0;
    std::uint64_t theta_bits = 0;
    std::uint64_t seed = 0;
};

std::string render_manifest(const Session& s) {
    const auto& rel = s.relation();
    const auto& p = s.state().params;
    std::ostringstream out;
    out << "eaifd-state " << kFormatVersion << "\n";
    out << "generation " << s.generation() << "\n";
    out << "rows " << rel.rows() << "\n";
    out << "arity " << rel.arity() << "\n";
    out << "epsilon " << format_double(p.epsilon) << " " << std::bit_cast<std::uint64_t>(p.epsilon) << "\n";
    out << "theta " << format_double(p.theta) << " " << std::bit_cast<std::uint64_t>(p.theta) << "\n";
    out << "seed " << p.seed << "\n";
    out << "null_token_hex " << hex(rel.null_token) << "\n";
    out << "fds " << s.state().fds.size() << "\n";
    out << "mht_entries " << s.state().mht.total_entries() << "\n";
    for (AttrId a = 0; a < rel.arity(); ++a) out << "attribute_hex " << hex(rel.schema.name(a)) << "\n";
    return out.str();
}

Manifest parse_manifest(const std::string& text) {
    std::istringstream in(text);
    std::string word;
    std::uint64_t version = 0;
    if (!(in >> word >> version) || word != "eaifd-state") throw StateError("manifest: bad header");
    if (version != kFormatVersion) throw StateError("manifest: unsupported format version");
    Manifest m;
    std::string scratch;
    bool seen_generation = false;
    while (in >> word) {
        if (word == "generation") {
            in >> m.generation;
            seen_generation = true;
        } else if (word == "rows") {
            in >> m.rows;
        } else if (word == "arity") {
            in >> m.arity;
        } else if (word == "epsilon") {
            in >> scratch >> m.epsilon_bits;
        } else if (word == "theta") {
            in >> scratch >> m.theta_bits;
        } else if (word == "seed") {
            in >> m.seed;
        } else {
            std::getline(in, scratch);
        }
        if (!in) throw StateError("manifest: malformed line '" + word + "'");
    }
    if (!seen_generation) throw StateError("manifest: missing generation");
    return m;
}

std::string encode_relation(const EncodedRelation& rel, std::uint64_t generation) {
    Writer w;
    w.u32(rel.arity());
    for (const auto& name : rel.schema.names()) w.str(name);
    w.str(rel.null_token);
    w.u64(rel.rows());
    for (AttrId a = 0; a < rel.arity(); ++a) {
        const auto& d = rel.dictionaries[a];
        w.u64(d.size());
        for (const auto& v : d.values()) w.str(v);
        w.u8(d.null_code() ? 1 : 0);
        w.u32(d.null_code().value_or(0));
        for (Code c : rel.store.column(a)) w.u32(c);
    }
    return seal(Section::relation, generation, w);
}

EncodedRelation decode_relation(Reader r) {
    EncodedRelation rel;
    const std::uint32_t m = r.u32();
    if (m == 0 || m > kMaxAttributes) r.fail("bad arity");
    std::vector<std::string> names;
    for (std::uint32_t a = 0; a < m; ++a) names.push_back(r.str());
    rel.schema = Schema(std::move(names));
    rel.null_token = r.str();
    const std::uint64_t n = r.u64();
    std::vector<std::vector<Code>> columns(m);
    for (std::uint32_t a = 0; a < m; ++a) {
        const std::uint64_t size = r.count(8);
        std::vector<std::string> values;
        values.reserve(size);
        for (std::uint64_t i = 0; i < size; ++i) values.push_back(r.str());
        const bool has_null = r.u8() != 0;
        const Code null_code = r.u32();
        if (has_null && null_code >= size) r.fail("null code out of range");
        rel.dictionaries.push_back(
            Dictionary::restore(std::move(values), has_null ? std::optional<Code>(null_code) : std::nullopt));
        auto& col = columns[a];
        col.reserve(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            const Code c = r.u32();
            if (c >= size) r.fail("code out of dictionary range");
            col.push_back(c);
        }
    }
    expect_done(r);
    rel.store = ColumnStore::from_columns(std::move(columns));
    return rel;
}

void write_sets(Writer& w, const std::vector<AttrSet>& sets) {
    w.u64(sets.size());
    for (AttrSet s : sets) w.u64(s.bits());
}

std::vector<AttrSet> read_sets(Reader& r) {
    const std::uint64_t n = r.count(8);
    std::vector<AttrSet> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.emplace_back(r.u64());
    return out;
}

std::string encode_hypergraphs(const DiscoveryState& s, std::uint64_t generation) {
    Writer w;
    w.u32(static_cast<std::uint32_t>(s.hypergraphs.size()));
    for (const auto& h : s.hypergraphs) {
        w.u32(h.rhs());
        w.u32(h.arity());
        w.u8(h.poisoned() ? 1 : 0);
        w.u64(h.generation());
        write_sets(w, h.edges());
    }
    return seal(Section::hypergraphs, generation, w);
}

std::string encode_stores(const DiscoveryState& s, std::uint64_t generation) {
    Writer w;
    w.u32(static_cast<std::uint32_t>(s.stores.size()));
    for (const auto& st : s.stores) {
        w.u32(st.rhs);
        w.u64(st.hypergraph_generation);
        write_sets(w, st.mhs);
    }
    return seal(Section::stores, generation, w);
}

std::string encode_fds(const DiscoveryState& s, std::uint64_t generation) {
    Writer w;
    w.u32(s.fds.arity());
    for (AttrId a = 0; a < s.fds.arity(); ++a) write_sets(w, s.fds.lhs_of(a));
    return seal(Section::fds, generation, w);
}

std::string encode_mht(const DiscoveryState& s, std::uint64_t generation) {
    Writer w;
    w.f64(s.mht.theta());
    w.u64(s.mht.base_n());
    w.u64(s.mht.all().size());
    for (const auto& [fd, entries] : s.mht.all()) {
        w.u64(fd.lhs.bits());
        w.u32(fd.rhs);
        w.u64(entries.size());
        for (const auto& e : entries) {
            w.u64(e.key.size());
            for (Code c : e.key) w.u32(c);
            w.u32(e.rhs_code);
            w.u64(e.count);
        }
    }
    return seal(Section::mht, generation, w);
}

const char* const kFiles[] = {"relation.bin", "hypergraphs.bin", "stores.bin", "fds.bin", "mht.bin"};

} // namespace

StateLock::StateLock(const fs::path& dir) {
    const fs::path path = dir / "LOCK";
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ < 0) throw StateError("cannot open lock file " + path.string());
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
        ::close(fd_);
        fd_ = -1;
        throw StateError("state directory " + dir.string() + " is locked by another process");
    }
}

StateLock::~StateLock() {
    if (fd_ >= 0) {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
}

bool state_exists(const fs::path& dir) {
    std::error_code ec;
    return fs::is_regular_file(dir / "CURRENT", ec);
}

fs::path current_version(const fs::path& dir) {
    std::string name = read_file(dir / "CURRENT");
    while (!name.empty() && (name.back() == '\n' || name.back() == '\r')) name.pop_back();
    if (name.empty() || name.find('/') != std::string::npos) throw StateError("CURRENT is malformed");
    return name;
}

void save_session(const fs::path& dir, const Session& session, const SaveHooks& hooks) {
    fs::create_directories(dir);
    std::uint64_t next = 1;
    std::optional<fs::path> previous;
    if (state_exists(dir)) {
        previous = current_version(dir);
        const std::string prev = previous->string();
        if (prev.size() > 1 && prev[0] == 'v') next = std::stoull(prev.substr(1)) + 1;
    }
    char name[32];
    std::snprintf(name, sizeof name, "v%06llu", static_cast<unsigned long long>(next));
    const fs::path version = dir / name;
    fs::remove_all(version);
    fs::create_directory(version);

    const auto& state = session.state();
    const std::uint64_t g = session.generation();
    write_file(version / "manifest.txt", render_manifest(session));
    write_file(version / kFiles[0], encode_relation(session.relation(), g));
    write_file(version / kFiles[1], encode_hypergraphs(state, g));
    write_file(version / kFiles[2], encode_stores(state, g));
    write_file(version / kFiles[3], encode_fds(state, g));
    write_file(version / kFiles[4], encode_mht(state, g));
    sync_dir(version);

    if (hooks.before_swap) hooks.before_swap();

    write_file(dir / "CURRENT.tmp", std::string(name) + "\n");
    fs::rename(dir / "CURRENT.tmp", dir / "CURRENT");
    sync_dir(dir);
    if (previous && *previous != name) fs::remove_all(dir / *previous);
}

Session load_session(const fs::path& dir) {
    if (!state_exists(dir)) throw StateError("no state in " + dir.string());
    const fs::path version = dir / current_version(dir);
    const Manifest man = parse_manifest(read_file(version / "manifest.txt"));
    const std::uint64_t g = man.generation;

    EncodedRelation rel = decode_relation(open_section(version / kFiles[0], Section::relation, g));
    if (rel.rows() != man.rows || rel.arity() != man.arity) throw StateError("manifest disagrees with relation.bin");
    const AttrId m = rel.arity();

    DiscoveryState state;
    state.params = Params{std::bit_cast<double>(man.epsilon_bits), std::bit_cast<double>(man.theta_bits), man.seed};

    {
        Reader r = open_section(version / kFiles[1], Section::hypergraphs, g);
        if (r.u32() != m) r.fail("arity mismatch");
        for (AttrId a = 0; a < m; ++a) {
            const AttrId rhs = r.u32();
            const AttrId arity = r.u32();
            const bool poisoned = r.u8() != 0;
            const std::uint64_t gen = r.u64();
            auto edges = read_sets(r);
            if (rhs != a || arity != m) r.fail("hypergraph header mismatch");
            state.hypergraphs.push_back(SubHypergraph::restore(rhs, arity, std::move(edges), poisoned, gen));
        }
        expect_done(r);
    }
    {
        Reader r = open_section(version / kFiles[2], Section::stores, g);
        if (r.u32() != m) r.fail("arity mismatch");
        for (AttrId a = 0; a < m; ++a) {
            TransversalStore st;
            st.rhs = r.u32();
            st.hypergraph_generation = r.u64();
            st.mhs = read_sets(r);
            if (st.rhs != a || st.hypergraph_generation != state.hypergraphs[a].generation()) {
                r.fail("store is stale against its hypergraph");
            }
            state.stores.push_back(std::move(st));
        }
        expect_done(r);
    }
    {
        Reader r = open_section(version / kFiles[3], Section::fds, g);
        if (r.u32() != m) r.fail("arity mismatch");
        state.fds = FdSet(m);
        for (AttrId a = 0; a < m; ++a) state.fds.set(a, read_sets(r));
        expect_done(r);
    }
    {
        Reader r = open_section(version / kFiles[4], Section::mht, g);
        const double theta = r.f64();
        const std::uint64_t base_n = r.u64();
        std::map<Candidate, std::vector<MhtEntry>> table;
        const std::uint64_t fds = r.count(20);
        for (std::uint64_t i = 0; i < fds; ++i) {
            Candidate fd{AttrSet(r.u64()), r.u32()};
            auto& entries = table[fd];
            const std::uint64_t k = r.count(20);
            for (std::uint64_t j = 0; j < k; ++j) {
                MhtEntry e;
                const std::uint64_t len = r.count(4);
                for (std::uint64_t t = 0; t < len; ++t) e.key.push_back(r.u32());
                e.rhs_code = r.u32();
                e.count = r.u64();
                entries.push_back(std::move(e));
            }
        }
        expect_done(r);
        if (std::bit_cast<std::uint64_t>(theta) != man.theta_bits) r.fail("theta disagrees with the manifest");
        state.mht = MhtTable::restore(theta, base_n, std::move(table));
    }
    return Session::restore(std::move(rel), std::move(state), g);
}

} // namespace eaifd
