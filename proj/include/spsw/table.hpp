#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace spsw {

// A row of string-valued attributes, aligned 1:1 with its table's schema.
using Tuple = std::vector<std::string>;

// Ordered attribute names. Names are unique and non-empty; order is
// significant and preserved through load/save.
class Schema {
 public:
  Schema() = default;
  explicit Schema(std::vector<std::string> attribute_names);

  std::size_t arity() const { return names_.size(); }
  const std::vector<std::string>& attribute_names() const { return names_; }
  const std::string& name(std::size_t i) const;
  std::optional<std::size_t> index_of(std::string_view attribute) const;

  bool operator==(const Schema&) const = default;

 private:
  std::vector<std::string> names_;
};

// Ordered rows under a schema. Tables are value types: operations that
// "modify" a table return a new one, so instances can be shared freely
// across threads once built.
class Table {
 public:
  Table() = default;
  explicit Table(Schema schema) : schema_(std::move(schema)) {}
  Table(Schema schema, std::vector<Tuple> rows);

  const Schema& schema() const { return schema_; }
  std::size_t n() const { return rows_.size(); }
  const std::vector<Tuple>& rows() const { return rows_; }
  const Tuple& row(std::size_t i) const;

  void append(Tuple row);
  void reserve(std::size_t n) { rows_.reserve(n); }

  bool operator==(const Table&) const = default;

 private:
  Schema schema_;
  std::vector<Tuple> rows_;
};

// Deterministic identity of a tuple over an attribute subset. Built by an
// escaping join, so distinct value lists always yield distinct keys.
struct CanonicalKey {
  std::string value;
  bool operator==(const CanonicalKey&) const = default;
};

// All attribute indices in schema order, minus an optional excluded column
// (typically a synthetic primary key, which attackers may renumber).
std::vector<std::size_t> default_match_subset(
    const Schema& schema, std::optional<std::size_t> excluded = std::nullopt);

CanonicalKey canonical_key(const Tuple& tuple,
                           const std::vector<std::size_t>& subset);

// One-time index over a table's canonical keys; membership queries are O(1)
// afterwards. Also folds a digest of the indexed keys, used where a
// deterministic per-table coin is needed.
class TableIndex {
 public:
  TableIndex(const Table& table, std::vector<std::size_t> subset);

  bool contains(const CanonicalKey& key) const;
  std::size_t count(const CanonicalKey& key) const;
  const std::vector<std::size_t>& subset() const { return subset_; }
  std::uint64_t digest() const { return digest_; }

 private:
  std::vector<std::size_t> subset_;
  std::unordered_map<std::string, std::size_t> counts_;
  std::uint64_t digest_ = 0;
};

inline bool contains(const TableIndex& index, const CanonicalKey& key) {
  return index.contains(key);
}

}  // namespace spsw
