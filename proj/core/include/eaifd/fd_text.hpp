#pragma once

#include "eaifd/attr_set.hpp"
#include "eaifd/discovery.hpp"
#include "eaifd/relation.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace eaifd {

enum class FdFormat { text, jsonlike };

/// `A,B->C` with the LHS in attribute order; `{}->C` for an empty LHS.
std::string format_fd(const Schema& schema, const Candidate& fd);

/// Inverse of format_fd. Throws DataError on unknown names or bad syntax.
Candidate parse_fd(const Schema& schema, std::string_view line);

/// One FD per line (text) or a JSON array of {"lhs": [...], "rhs": ...}
/// objects, by RHS then LHS.
std::string format_fds(const Schema& schema, const FdSet& fds, FdFormat format = FdFormat::text);
std::string format_fds(const Schema& schema, const std::vector<Candidate>& fds, FdFormat format = FdFormat::text);

} // namespace eaifd
