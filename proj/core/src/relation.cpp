#include "eaifd/relation.hpp"

#include "eaifd/error.hpp"

#include <algorithm>
#include <unordered_set>

namespace eaifd {

Schema::Schema(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw DataError("schema has no attributes");
    if (names_.size() > kMaxAttributes) {
        throw DataError("schema has " + std::to_string(names_.size()) + " attributes; at most 64 are supported");
    }
    std::unordered_set<std::string> seen;
    for (const auto& n : names_) {
        if (!seen.insert(n).second) throw DataError("duplicate attribute name: " + n);
    }
}

std::optional<AttrId> Schema::find(std::string_view name) const {
    for (AttrId a = 0; a < arity(); ++a) {
        if (names_[a] == name) return a;
    }
    return std::nullopt;
}

Code Dictionary::encode(std::string_view cell, bool is_null) {
    if (is_null) {
        if (!null_code_) {
            null_code_ = static_cast<Code>(values_.size());
            values_.emplace_back(cell);
        }
        return *null_code_;
    }
    auto [it, inserted] = index_.try_emplace(std::string(cell), static_cast<Code>(values_.size()));
    if (inserted) values_.emplace_back(cell);
    return it->second;
}

std::optional<Code> Dictionary::find(std::string_view cell, bool is_null) const {
    if (is_null) return null_code_;
    auto it = index_.find(std::string(cell));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Dictionary Dictionary::restore(std::vector<std::string> values, std::optional<Code> null_code) {
    Dictionary d;
    d.values_ = std::move(values);
    d.null_code_ = null_code;
    for (Code c = 0; c < d.values_.size(); ++c) {
        if (null_code && c == *null_code) continue;
        d.index_.emplace(d.values_[c], c);
    }
    return d;
}

void ColumnStore::append_row(std::span<const Code> codes) {
    for (AttrId a = 0; a < arity(); ++a) columns_[a].push_back(codes[a]);
}

void ColumnStore::append(const ColumnStore& other) {
    for (AttrId a = 0; a < arity(); ++a) {
        columns_[a].insert(columns_[a].end(), other.columns_[a].begin(), other.columns_[a].end());
    }
}

void ColumnStore::reserve(std::size_t rows) {
    for (auto& c : columns_) c.reserve(rows);
}

void ColumnStore::project(RowId row, AttrSet attrs, CompositeKey& out) const {
    out.clear();
    attrs.for_each([&](AttrId a) { out.push_back(columns_[a][row]); });
}

ColumnStore ColumnStore::from_columns(std::vector<std::vector<Code>> columns) {
    for (const auto& c : columns) {
        if (c.size() != columns.front().size()) throw ContractError("columns differ in length");
    }
    ColumnStore s;
    s.columns_ = std::move(columns);
    return s;
}

EncodedRelation encode_table(const CsvTable& table, std::string null_token) {
    EncodedRelation rel;
    rel.schema = Schema(table.header);
    rel.null_token = std::move(null_token);
    if (table.rows.empty()) throw DataError("relation has zero tuples");
    const AttrId m = rel.schema.arity();
    rel.dictionaries.resize(m);
    rel.store = ColumnStore(m);
    rel.store.reserve(table.rows.size());
    std::vector<Code> codes(m);
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (row.size() != m) throw DataError("ragged row " + std::to_string(r + 1));
        for (AttrId a = 0; a < m; ++a) codes[a] = rel.dictionaries[a].encode(row[a], rel.is_null(row[a]));
        rel.store.append_row(codes);
    }
    return rel;
}

EncodedRelation ingest_csv(const std::filesystem::path& path, const IngestOptions& options) {
    return encode_table(read_csv(path, options.csv), options.null_token);
}

DeltaRelation append_batch(EncodedRelation& rel, const std::vector<std::vector<std::string>>& rows) {
    const AttrId m = rel.arity();
    DeltaRelation delta;
    delta.base_rows = rel.rows();
    delta.store = ColumnStore(m);
    delta.store.reserve(rows.size());
    std::vector<Code> codes(m);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m) {
            throw DataError("delta row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                            " fields; schema has " + std::to_string(m));
        }
        for (AttrId a = 0; a < m; ++a) codes[a] = rel.dictionaries[a].encode(rows[r][a], rel.is_null(rows[r][a]));
        delta.store.append_row(codes);
    }
    return delta;
}

DeltaRelation append_csv(EncodedRelation& rel, const std::filesystem::path& path, const CsvOptions& csv) {
    CsvTable table;
    try {
        table = read_csv(path, csv);
    } catch (const DataError&) {
        if (std::filesystem::exists(path) && std::filesystem::file_size(path) == 0) return append_batch(rel, {});
        throw;
    }
    if (csv.has_header && !table.header.empty() && table.header != rel.schema.names()) {
        throw DataError("delta header does not match the relation schema");
    }
    return append_batch(rel, table.rows);
}

void fold_delta(EncodedRelation& rel, const DeltaRelation& delta) {
    if (delta.base_rows != rel.rows()) throw ContractError("delta was not built against this relation");
    rel.store.append(delta.store);
}

SortedView::SortedView(const ColumnStore& store, AttrId attr) : attribute_(attr) {
    const auto col = store.column(attr);
    const std::size_t n = col.size();
    Code max_code = 0;
    for (Code c : col) max_code = std::max(max_code, c);
    // Counting sort by code keeps ties in row-id order.
    std::vector<RowId> counts(n == 0 ? 0 : static_cast<std::size_t>(max_code) + 2, 0);
    for (Code c : col) ++counts[c + 1];
    for (std::size_t i = 1; i < counts.size(); ++i) counts[i] += counts[i - 1];
    blocks_.resize(counts.empty() ? 0 : counts.size() - 1);
    for (std::size_t c = 0; c + 1 < counts.size(); ++c) {
        blocks_[c] = BlockRange{counts[c], counts[c + 1]};
        if (!blocks_[c].empty()) {
            present_.push_back(static_cast<Code>(c));
            max_block_ = std::max(max_block_, blocks_[c].size());
        }
    }
    order_.resize(n);
    std::vector<RowId> cursor(counts.begin(), counts.end());
    for (RowId r = 0; r < n; ++r) order_[cursor[col[r]]++] = r;
}

std::vector<SortedView> build_sorted_views(const ColumnStore& store) {
    std::vector<SortedView> views;
    views.reserve(store.arity());
    for (AttrId a = 0; a < store.arity(); ++a) views.emplace_back(store, a);
    return views;
}

} // namespace eaifd
