#pragma once

#include "eaifd/attr_set.hpp"
#include "eaifd/csv.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace eaifd {

using Code = std::uint32_t;
using RowId = std::uint32_t;

/// Exact projection of one row onto an attribute set: the codes of the
/// set's attributes in ascending attribute order.
using CompositeKey = std::vector<Code>;

struct CompositeKeyHash {
    std::size_t operator()(const CompositeKey& key) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (Code c : key) {
            h ^= c;
            h *= 0x100000001b3ULL;
            h ^= h >> 29;
        }
        return static_cast<std::size_t>(h);
    }
};

class Schema {
public:
    Schema() = default;
    /// Throws DataError on duplicate names, an empty list, or more than 64 attributes.
    explicit Schema(std::vector<std::string> names);

    AttrId arity() const { return static_cast<AttrId>(names_.size()); }
    const std::string& name(AttrId a) const { return names_.at(a); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<AttrId> find(std::string_view name) const;
    AttrSet all() const { return AttrSet::full(arity()); }

    friend bool operator==(const Schema&, const Schema&) = default;

private:
    std::vector<std::string> names_;
};

/// Per-column bijection between cell strings and dense codes, assigned in
/// first-seen order. Every NULL cell of the column shares one code.
class Dictionary {
public:
    Code encode(std::string_view cell, bool is_null);
    std::optional<Code> find(std::string_view cell, bool is_null) const;
    /// The NULL code decodes to the first raw NULL spelling seen.
    const std::string& decode(Code code) const { return values_.at(code); }
    std::size_t size() const { return values_.size(); }
    std::optional<Code> null_code() const { return null_code_; }
    const std::vector<std::string>& values() const { return values_; }

    /// Rebuilds a dictionary from persisted values.
    static Dictionary restore(std::vector<std::string> values, std::optional<Code> null_code);

    friend bool operator==(const Dictionary& a, const Dictionary& b) {
        return a.values_ == b.values_ && a.null_code_ == b.null_code_;
    }

private:
    std::vector<std::string> values_;
    std::unordered_map<std::string, Code> index_;
    std::optional<Code> null_code_;
};

/// Column-major code matrix.
class ColumnStore {
public:
    ColumnStore() = default;
    explicit ColumnStore(AttrId arity) : columns_(arity) {}

    AttrId arity() const { return static_cast<AttrId>(columns_.size()); }
    std::size_t rows() const { return columns_.empty() ? 0 : columns_.front().size(); }
    Code code(RowId row, AttrId attr) const { return columns_[attr][row]; }
    std::span<const Code> column(AttrId attr) const { return columns_[attr]; }

    void append_row(std::span<const Code> codes);
    void append(const ColumnStore& other);
    void reserve(std::size_t rows);

    /// Writes the projection of `row` onto `attrs` into `out`.
    void project(RowId row, AttrSet attrs, CompositeKey& out) const;
    CompositeKey project(RowId row, AttrSet attrs) const {
        CompositeKey k;
        project(row, attrs, k);
        return k;
    }

    /// Builds a store from whole columns; all columns must have equal length.
    static ColumnStore from_columns(std::vector<std::vector<Code>> columns);

    friend bool operator==(const ColumnStore&, const ColumnStore&) = default;

private:
    std::vector<std::vector<Code>> columns_;
};

struct EncodedRelation {
    Schema schema;
    std::vector<Dictionary> dictionaries;
    ColumnStore store;
    std::string null_token;

    std::size_t rows() const { return store.rows(); }
    AttrId arity() const { return schema.arity(); }
    bool is_null(std::string_view cell) const { return cell.empty() || cell == null_token; }
    const std::string& decode(RowId row, AttrId attr) const { return dictionaries[attr].decode(store.code(row, attr)); }

    friend bool operator==(const EncodedRelation&, const EncodedRelation&) = default;
};

/// A batch of inserted tuples, encoded against the (extended) base dictionaries
/// and held apart from the base store.
struct DeltaRelation {
    ColumnStore store;
    std::size_t base_rows = 0;

    std::size_t rows() const { return store.rows(); }
    std::size_t total_rows() const { return base_rows + store.rows(); }
    bool empty() const { return store.rows() == 0; }
};

struct IngestOptions {
    std::string null_token;
    CsvOptions csv;
};

/// Encodes an in-memory table. Throws DataError when it has no rows.
EncodedRelation encode_table(const CsvTable& table, std::string null_token = {});

EncodedRelation ingest_csv(const std::filesystem::path& path, const IngestOptions& options = {});
inline EncodedRelation ingest_csv(const std::filesystem::path& path, std::string null_token) {
    return ingest_csv(path, IngestOptions{std::move(null_token), {}});
}

/// Encodes `rows` against `rel`'s dictionaries (growing them for unseen values).
/// The base store and its sorted views are left untouched.
DeltaRelation append_batch(EncodedRelation& rel, const std::vector<std::vector<std::string>>& rows);

/// Reads a delta CSV whose header must equal the relation's schema. An empty
/// or header-only file yields an empty batch.
DeltaRelation append_csv(EncodedRelation& rel, const std::filesystem::path& path, const CsvOptions& csv = {});

/// Makes the delta rows part of the base store.
void fold_delta(EncodedRelation& rel, const DeltaRelation& delta);

struct BlockRange {
    RowId begin = 0;
    RowId end = 0;
    std::size_t size() const { return end - begin; }
    bool empty() const { return begin == end; }
    friend bool operator==(const BlockRange&, const BlockRange&) = default;
};

/// Rows of one attribute ordered by code, with the contiguous range each
/// code occupies (a value-homogeneous block).
class SortedView {
public:
    SortedView() = default;
    SortedView(const ColumnStore& store, AttrId attr);

    AttrId attribute() const { return attribute_; }
    std::span<const RowId> order() const { return order_; }
    /// Empty range for codes that do not occur in the base rows.
    BlockRange block(Code code) const { return code < blocks_.size() ? blocks_[code] : BlockRange{}; }
    std::span<const RowId> rows_of(Code code) const {
        const auto r = block(code);
        return std::span<const RowId>(order_).subspan(r.begin, r.size());
    }
    /// Codes that own a non-empty block, ascending.
    const std::vector<Code>& codes() const { return present_; }
    std::size_t distinct() const { return present_.size(); }
    std::size_t max_block() const { return max_block_; }

private:
    AttrId attribute_ = 0;
    std::vector<RowId> order_;
    std::vector<BlockRange> blocks_;
    std::vector<Code> present_;
    std::size_t max_block_ = 0;
};

std::vector<SortedView> build_sorted_views(const ColumnStore& store);
inline std::vector<SortedView> build_sorted_views(const EncodedRelation& rel) { return build_sorted_views(rel.store); }

} // namespace eaifd
