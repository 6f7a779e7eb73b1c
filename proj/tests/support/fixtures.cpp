#include "fixtures.hpp"

#include <atomic>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace eaifd::testing {

namespace fs = std::filesystem;

fs::path data_dir() { return EAIFD_DATA_DIR; }
fs::path data_file(const std::string& name) { return data_dir() / name; }

std::set<std::string> example_fds() {
    return {"SNO->SName", "SNO->SAge", "SNO->SGrade", "SNO->SMajor", "SNO->SDorm", "SMajor->SDorm"};
}

TempDir::TempDir() {
    static std::atomic<unsigned> counter{0};
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            ("eaifd-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + "-" + std::to_string(rd()));
    fs::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_table(const fs::path& path, const CsvTable& table) {
    std::string text;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text += ',';
            text += csv_escape(cells[i]);
        }
        text += '\n';
    };
    line(table.header);
    for (const auto& r : table.rows) line(r);
    write_text(path, text);
}

} // namespace eaifd::testing
