#include "eaifd/fd_text.hpp"

#include "eaifd/error.hpp"

#include <json.hpp>

namespace eaifd {

std::string format_fd(const Schema& schema, const Candidate& fd) {
    std::string out;
    if (fd.lhs.empty()) {
        out = "{}";
    } else {
        fd.lhs.for_each([&](AttrId a) {
            if (!out.empty()) out += ',';
            out += schema.name(a);
        });
    }
    out += "->";
    out += schema.name(fd.rhs);
    return out;
}

Candidate parse_fd(const Schema& schema, std::string_view line) {
    const auto arrow = line.find("->");
    if (arrow == std::string_view::npos) throw DataError("missing '->' in FD '" + std::string(line) + "'");
    auto lookup = [&](std::string_view name) {
        auto id = schema.find(name);
        if (!id) throw DataError("unknown attribute '" + std::string(name) + "'");
        return *id;
    };
    Candidate fd;
    fd.rhs = lookup(line.substr(arrow + 2));
    const std::string_view lhs = line.substr(0, arrow);
    if (lhs != "{}") {
        std::size_t start = 0;
        for (;;) {
            const auto comma = lhs.find(',', start);
            fd.lhs.insert(lookup(lhs.substr(start, comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
    }
    if (fd.lhs.contains(fd.rhs)) throw DataError("trivial FD '" + std::string(line) + "'");
    return fd;
}

std::string format_fds(const Schema& schema, const std::vector<Candidate>& fds, FdFormat format) {
    if (format == FdFormat::jsonlike) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& fd : fds) {
            auto lhs = nlohmann::ordered_json::array();
            fd.lhs.for_each([&](AttrId a) { lhs.push_back(schema.name(a)); });
            arr.push_back({{"lhs", std::move(lhs)}, {"rhs", schema.name(fd.rhs)}});
        }
        return arr.dump(2) + "\n";
    }
    std::string out;
    for (const auto& fd : fds) {
        out += format_fd(schema, fd);
        out += '\n';
    }
    return out;
}

std::string format_fds(const Schema& schema, const FdSet& fds, FdFormat format) {
    return format_fds(schema, fds.all(), format);
}

} // namespace eaifd
