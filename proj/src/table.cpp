#include "spsw/table.hpp"

#include <unordered_set>

#include "spsw/error.hpp"
#include "spsw/rng.hpp"

namespace spsw {

Schema::Schema(std::vector<std::string> attribute_names)
    : names_(std::move(attribute_names)) {
  if (names_.empty())
    throw ValidationError("schema needs at least one attribute");
  std::unordered_set<std::string_view> seen;
  for (const auto& name : names_) {
    if (name.empty()) throw ValidationError("schema attribute name is empty");
    if (!seen.insert(name).second)
      throw ValidationError("duplicate schema attribute: " + name);
  }
}

const std::string& Schema::name(std::size_t i) const {
  if (i >= names_.size())
    throw ValidationError("attribute index out of range");
  return names_[i];
}

std::optional<std::size_t> Schema::index_of(std::string_view attribute) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == attribute) return i;
  return std::nullopt;
}

Table::Table(Schema schema, std::vector<Tuple> rows)
    : schema_(std::move(schema)), rows_(std::move(rows)) {
  for (const auto& row : rows_)
    if (row.size() != schema_.arity())
      throw ValidationError("row arity does not match schema");
}

const Tuple& Table::row(std::size_t i) const {
  if (i >= rows_.size()) throw ValidationError("row index out of range");
  return rows_[i];
}

void Table::append(Tuple row) {
  if (row.size() != schema_.arity())
    throw ValidationError("row arity does not match schema");
  rows_.push_back(std::move(row));
}

std::vector<std::size_t> default_match_subset(
    const Schema& schema, std::optional<std::size_t> excluded) {
  if (excluded && *excluded >= schema.arity())
    throw ValidationError("excluded attribute index out of range");
  std::vector<std::size_t> subset;
  subset.reserve(schema.arity());
  for (std::size_t i = 0; i < schema.arity(); ++i)
    if (!excluded || i != *excluded) subset.push_back(i);
  if (subset.empty())
    throw ValidationError("match subset must keep at least one attribute");
  return subset;
}

CanonicalKey canonical_key(const Tuple& tuple,
                           const std::vector<std::size_t>& subset) {
  // '|' joins fields, '\' escapes; escaping makes the join injective over
  // distinct value lists even when values contain the separator.
  std::string out;
  bool first = true;
  for (std::size_t idx : subset) {
    if (idx >= tuple.size())
      throw ValidationError("match subset index out of range");
    if (!first) out.push_back('|');
    first = false;
    for (char c : tuple[idx]) {
      if (c == '\\' || c == '|') out.push_back('\\');
      out.push_back(c);
    }
  }
  return CanonicalKey{std::move(out)};
}

TableIndex::TableIndex(const Table& table, std::vector<std::size_t> subset)
    : subset_(std::move(subset)) {
  counts_.reserve(table.n() * 2);
  std::uint64_t digest = 0x9ae16a3b2f90404fULL;
  for (const auto& row : table.rows()) {
    CanonicalKey key = canonical_key(row, subset_);
    digest = splitmix64(digest ^ hash64(key.value));
    ++counts_[std::move(key.value)];
  }
  digest_ = digest;
}

bool TableIndex::contains(const CanonicalKey& key) const {
  return counts_.find(key.value) != counts_.end();
}

std::size_t TableIndex::count(const CanonicalKey& key) const {
  auto it = counts_.find(key.value);
  return it == counts_.end() ? 0 : it->second;
}

}  // namespace spsw
