#pragma once

#include "eaifd/csv.hpp"
#include "eaifd/relation.hpp"

#include <filesystem>
#include <set>
#include <string>

namespace eaifd::testing {

std::filesystem::path data_dir();
std::filesystem::path data_file(const std::string& name);

/// The six FDs listed for the student table of the worked example.
std::set<std::string> example_fds();

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);
void write_table(const std::filesystem::path& path, const CsvTable& table);

} // namespace eaifd::testing
