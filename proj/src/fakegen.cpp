#include "spsw/fakegen.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_set>
#include <utility>

#include "spsw/error.hpp"

namespace spsw {

std::size_t FakeTupleSet::total() const {
  std::size_t count = 0;
  for (const auto& group : groups) count += group.size();
  return count;
}

void validate_fake_tuples(const FakeTupleSet& fakes,
                          const TableIndex* source_index) {
  if (fakes.groups.empty())
    throw ValidationError("fake tuple set has no groups");
  const std::size_t x = fakes.groups[0].size();
  if (x == 0) throw ValidationError("fake tuple groups are empty");
  std::unordered_set<std::string> keys;
  for (std::size_t g = 0; g < fakes.groups.size(); ++g) {
    if (fakes.groups[g].size() != x)
      throw ValidationError("fake tuple groups have unequal sizes");
    for (const auto& tuple : fakes.groups[g]) {
      if (tuple.size() != fakes.schema.arity())
        throw ValidationError("fake tuple arity does not match schema");
      CanonicalKey key = canonical_key(tuple, fakes.match_subset);
      if (source_index && source_index->contains(key))
        throw ValidationError("fake tuple collides with a real tuple");
      if (!keys.insert(std::move(key.value)).second)
        throw ValidationError("fake tuples have colliding canonical keys");
    }
  }
}

Tuple statistical_mimic_row(const Table& table, Rng& rng,
                            std::optional<std::size_t> pk_column) {
  if (table.n() == 0)
    throw ValidationError("statistical mimic needs a non-empty table");
  const std::size_t arity = table.schema().arity();
  if (pk_column && *pk_column >= arity)
    throw ValidationError("pk column index out of range");

  Tuple row(arity);
  for (std::size_t c = 0; c < arity; ++c) {
    if (pk_column && c == *pk_column) {
      char buf[20];
      std::snprintf(buf, sizeof buf, "fk-%012llx",
                    static_cast<unsigned long long>(rng.next() & 0xffffffffffffULL));
      row[c] = buf;
    } else {
      row[c] = table.row(static_cast<std::size_t>(rng.below(table.n())))[c];
    }
  }
  return row;
}

namespace {

class CandidateSource {
 public:
  CandidateSource(const Table& table, const GeneratorSpec& spec,
                  std::size_t needed, Rng& rng)
      : table_(table), spec_(spec), needed_(needed), rng_(rng) {}

  Tuple next() {
    if (spec_.kind == GeneratorSpec::Kind::statistical_mimic)
      return statistical_mimic_row(table_, rng_, spec_.pk_column);

    if (buffer_pos_ >= buffer_.size()) refill();
    return std::move(buffer_[buffer_pos_++]);
  }

 private:
  void refill() {
    if (requests_ >= spec_.max_retries)
      throw GenerationError(
          "external generator could not supply enough unique tuples; "
          "widen attributes or lower L*x");
    ++requests_;
    // First request asks for the whole set; later ones top up.
    const std::size_t count = buffer_.empty() && requests_ == 1
                                  ? needed_
                                  : std::max<std::size_t>(needed_ / 2, 1);
    std::vector<Tuple> sample;
    const std::size_t sample_count = std::min<std::size_t>(table_.n(), 8);
    sample.reserve(sample_count);
    for (std::size_t i = 0; i < sample_count; ++i)
      sample.push_back(table_.row(i));
    buffer_ = external_generate(table_.schema(), sample, count,
                                spec_.endpoint, spec_.timeout_ms);
    buffer_pos_ = 0;
  }

  const Table& table_;
  const GeneratorSpec& spec_;
  std::size_t needed_;
  Rng& rng_;
  std::vector<Tuple> buffer_;
  std::size_t buffer_pos_ = 0;
  int requests_ = 0;
};

}  // namespace

FakeTupleSet generate_fake_tuples(const Table& table, const TableIndex& index,
                                  std::size_t group_count,
                                  std::size_t group_size,
                                  const GeneratorSpec& spec) {
  if (group_count < 1 || group_size < 1)
    throw ValidationError("group_count and group_size must be >= 1");
  if (spec.kind == GeneratorSpec::Kind::statistical_mimic && table.n() == 0)
    throw ValidationError("statistical mimic needs a non-empty table");
  if (spec.kind == GeneratorSpec::Kind::external_service &&
      spec.endpoint.empty())
    throw ValidationError("external generator needs an endpoint");

  FakeTupleSet fakes;
  fakes.schema = table.schema();
  fakes.match_subset = default_match_subset(table.schema(), spec.pk_column);
  if (index.subset() != fakes.match_subset)
    throw ValidationError("table index subset does not match generator spec");

  Rng rng(mix_seed({spec.seed, 0xfa6e5u, group_count, group_size}));
  CandidateSource source(table, spec, group_count * group_size, rng);

  const std::size_t budget = static_cast<std::size_t>(spec.max_retries) *
                             group_count * group_size;
  std::size_t rejected = 0;
  std::unordered_set<std::string> used;

  fakes.groups.assign(group_count, {});
  for (auto& group : fakes.groups) {
    group.reserve(group_size);
    while (group.size() < group_size) {
      Tuple candidate = source.next();
      CanonicalKey key = canonical_key(candidate, fakes.match_subset);
      if (index.contains(key) || used.count(key.value)) {
        if (spec.kind == GeneratorSpec::Kind::statistical_mimic &&
            ++rejected > budget)
          throw GenerationError(
              "could not draw enough unique fake tuples within the retry "
              "budget; widen attributes or lower L*x");
        continue;
      }
      used.insert(std::move(key.value));
      group.push_back(std::move(candidate));
    }
  }
  return fakes;
}

FakeTupleSet generate_fake_tuples(const Table& table, std::size_t group_count,
                                  std::size_t group_size,
                                  const GeneratorSpec& spec) {
  TableIndex index(table, default_match_subset(table.schema(), spec.pk_column));
  return generate_fake_tuples(table, index, group_count, group_size, spec);
}

}  // namespace spsw
