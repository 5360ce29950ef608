#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spsw/rng.hpp"
#include "spsw/table.hpp"

namespace spsw {

// L groups of x fake tuples: the embedding material. All tuples carry
// pairwise-distinct canonical keys over match_subset and collide with no
// real tuple of the source table at generation time.
struct FakeTupleSet {
  Schema schema;
  std::vector<std::size_t> match_subset;
  std::vector<std::vector<Tuple>> groups;

  std::size_t group_count() const { return groups.size(); }
  std::size_t group_size() const {
    return groups.empty() ? 0 : groups[0].size();
  }
  std::size_t total() const;

  bool operator==(const FakeTupleSet&) const = default;
};

// Checks the shape and disjointness invariants above; `source_index` may be
// null when the source table is no longer available.
void validate_fake_tuples(const FakeTupleSet& fakes,
                          const TableIndex* source_index);

struct GeneratorSpec {
  enum class Kind { statistical_mimic, external_service };

  Kind kind = Kind::statistical_mimic;
  std::uint64_t seed = 0;
  // Column that holds a synthetic primary key: excluded from the match
  // subset and filled with fresh identifiers instead of mimicked values.
  std::optional<std::size_t> pk_column;
  // external_service only.
  std::string endpoint;
  int timeout_ms = 5000;
  // Resampling budget is max_retries * L * x candidate draws (or, for the
  // external service, max_retries requests).
  int max_retries = 64;
};

// Draws one plausible row: each attribute sampled independently from that
// attribute's empirical value distribution in `table`; the pk column, when
// configured, gets a fresh synthetic identifier.
Tuple statistical_mimic_row(const Table& table, Rng& rng,
                            std::optional<std::size_t> pk_column = {});

// Requests `count` schema-conformant rows from the external generator
// service: HTTP POST of JSON {schema, sample_rows, count} returning
// {rows: [[...]]}. Arity of every returned row is validated here;
// uniqueness is the caller's job.
std::vector<Tuple> external_generate(const Schema& schema,
                                     const std::vector<Tuple>& sample_rows,
                                     std::size_t count,
                                     const std::string& endpoint,
                                     int timeout_ms = 5000);

// Produces the full fake-tuple set. Deterministic for fixed
// (table, group_count, group_size, spec.seed) under the statistical mimic.
FakeTupleSet generate_fake_tuples(const Table& table, const TableIndex& index,
                                  std::size_t group_count,
                                  std::size_t group_size,
                                  const GeneratorSpec& spec);
FakeTupleSet generate_fake_tuples(const Table& table, std::size_t group_count,
                                  std::size_t group_size,
                                  const GeneratorSpec& spec);

}  // namespace spsw
