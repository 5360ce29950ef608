#include "spsw/baseline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>
#include <utility>

#include <nlohmann/json.hpp>

#include "spsw/error.hpp"
#include "spsw/fakegen.hpp"
#include "spsw/rng.hpp"

namespace spsw {

namespace {

constexpr std::uint64_t kKeySalt = 0x8f1b6c2d3a4e5f01ULL;
constexpr std::uint64_t kGroupSalt = 0x4a3f21c857d90b6eULL;
constexpr std::uint64_t kPolaritySalt = 0xd6e91a0c74b52f38ULL;
constexpr std::uint64_t kCoinSalt = 0x1c9e470d25b8a6f3ULL;

std::uint64_t key_seed(const BaselineParams& params) {
  return hash64(params.key, kKeySalt);
}

}  // namespace

void validate_baseline_params(const BaselineParams& params) {
  if (params.length < 1)
    throw ValidationError("baseline group count must be >= 1");
  if (params.group_size < 1)
    throw ValidationError("baseline group size must be >= 1");
}

TupleClass classify(const Tuple& tuple, const BaselineParams& params,
                    const std::vector<std::size_t>& match_subset) {
  validate_baseline_params(params);
  const CanonicalKey key = canonical_key(tuple, match_subset);
  const std::uint64_t ks = key_seed(params);
  TupleClass out;
  out.group = hash64(key.value, ks ^ kGroupSalt) % params.length;
  out.one = (hash64(key.value, ks ^ kPolaritySalt) & 1) != 0;
  return out;
}

BaselineEmbedResult baseline_embed(const Table& table,
                                   const WatermarkSequence& w,
                                   const BaselineParams& params,
                                   std::uint64_t seed,
                                   std::optional<std::size_t> pk_column) {
  validate_baseline_params(params);
  if (w.length() != params.length)
    throw ValidationError("watermark length does not match group count");
  if (pk_column && *pk_column >= table.schema().arity())
    throw ValidationError("pk column index out of range");

  const std::vector<std::size_t> subset =
      default_match_subset(table.schema(), pk_column);
  const TableIndex index(table, subset);
  const std::size_t group_count = params.length;
  const std::size_t group_size = params.group_size;

  // Anchor pool per group: real rows of that group whose polarity equals the
  // group's watermark bit. The fake goes directly below its anchor, carrying
  // the opposite polarity.
  std::vector<std::vector<std::size_t>> anchors(group_count);
  for (std::size_t i = 0; i < table.n(); ++i) {
    const TupleClass cls = classify(table.row(i), params, subset);
    if (cls.one == w.bit(cls.group)) anchors[cls.group].push_back(i);
  }
  for (std::size_t j = 0; j < group_count; ++j) {
    if (anchors[j].empty())
      throw CapacityError("group " + std::to_string(j) +
                          " has no anchor row with polarity " +
                          (w.bit(j) ? std::string("1") : std::string("0")));
  }

  Rng rng(mix_seed({seed, key_seed(params), 0xba5e11ULL}));
  std::vector<std::vector<Tuple>> groups(group_count);
  std::vector<std::vector<Tuple>> below(table.n());
  std::unordered_set<std::string> used_keys;

  for (std::size_t j = 0; j < group_count; ++j) {
    const bool anchor_polarity = w.bit(j);
    const std::vector<std::size_t>& pool = anchors[j];
    std::vector<std::size_t> picks;
    picks.reserve(group_size);
    if (pool.size() >= group_size) {
      for (std::size_t idx : rng.sample_indices(pool.size(), group_size))
        picks.push_back(pool[idx]);
      std::sort(picks.begin(), picks.end());
    } else {
      for (std::size_t t = 0; t < group_size; ++t)
        picks.push_back(pool[t % pool.size()]);
    }

    const TupleClass want{j, !anchor_polarity};
    // A random candidate hits a given (group, polarity) cell with chance
    // ~1/(2L); the budget leaves generous headroom over that.
    const std::size_t budget = 256 * group_count * group_size + 1024;
    std::size_t attempts = 0;
    for (std::size_t t = 0; t < group_size; ++t) {
      for (;;) {
        if (++attempts > budget)
          throw GenerationError("fake-tuple generation for group " +
                                std::to_string(j) +
                                " exhausted its sampling budget");
        Tuple candidate = statistical_mimic_row(table, rng, pk_column);
        if (classify(candidate, params, subset) != want) continue;
        const CanonicalKey ck = canonical_key(candidate, subset);
        if (index.contains(ck)) continue;
        if (!used_keys.insert(ck.value).second) continue;
        groups[j].push_back(candidate);
        below[picks[t]].push_back(std::move(candidate));
        break;
      }
    }
  }

  Table out(table.schema());
  out.reserve(table.n() + group_count * group_size);
  for (std::size_t i = 0; i < table.n(); ++i) {
    out.append(table.row(i));
    for (Tuple& fake : below[i]) out.append(std::move(fake));
  }

  BaselineState state;
  state.schema = table.schema();
  state.match_subset = subset;
  state.groups = std::move(groups);
  return BaselineEmbedResult{std::move(out), std::move(state)};
}

WatermarkSequence baseline_extract(const Table& table,
                                   const BaselineState& state,
                                   const BaselineParams& params) {
  validate_baseline_params(params);
  if (state.groups.size() != params.length)
    throw ValidationError("state group count does not match params");
  if (!(table.schema() == state.schema))
    throw ValidationError("table schema does not match embedding state");

  const TableIndex index(table, state.match_subset);
  const std::uint64_t ks = key_seed(params);
  WatermarkSequence out(params.length);

  for (std::size_t j = 0; j < params.length; ++j) {
    std::size_t votes_one = 0;
    std::size_t votes_zero = 0;
    for (const Tuple& fake : state.groups[j]) {
      if (!index.contains(canonical_key(fake, state.match_subset))) continue;
      // A surviving zero-polarity fake witnesses a "10" pair (bit 1); a
      // one-polarity fake witnesses "01" (bit 0).
      if (classify(fake, params, state.match_subset).one)
        ++votes_zero;
      else
        ++votes_one;
    }
    bool bit;
    if (votes_one != votes_zero) {
      bit = votes_one > votes_zero;
    } else {
      bit = (mix_seed({ks, kCoinSalt, index.digest(),
                       static_cast<std::uint64_t>(j)}) &
             1) != 0;
    }
    out.set_bit(j, bit);
  }
  return out;
}

std::size_t baseline_wiped_groups(const Table& table,
                                  const BaselineState& state) {
  const TableIndex index(table, state.match_subset);
  std::size_t wiped = 0;
  for (const std::vector<Tuple>& group : state.groups) {
    bool survivor = false;
    for (const Tuple& fake : group) {
      if (index.contains(canonical_key(fake, state.match_subset))) {
        survivor = true;
        break;
      }
    }
    if (!survivor) ++wiped;
  }
  return wiped;
}

std::string baseline_state_to_json(const BaselineState& state) {
  nlohmann::json doc;
  doc["schema"] = state.schema.attribute_names();
  doc["match_subset"] = state.match_subset;
  doc["groups"] = state.groups;
  return doc.dump(2) + "\n";
}

BaselineState baseline_state_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed state JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("schema") ||
      !doc.contains("match_subset") || !doc.contains("groups"))
    throw ValidationError(
        "state JSON must carry schema, match_subset and groups");

  BaselineState state;
  try {
    state.schema = Schema(doc["schema"].get<std::vector<std::string>>());
    state.match_subset = doc["match_subset"].get<std::vector<std::size_t>>();
    state.groups = doc["groups"].get<std::vector<std::vector<Tuple>>>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("state JSON has wrong shape: ") +
                          e.what());
  }

  const std::size_t arity = state.schema.arity();
  for (std::size_t col : state.match_subset)
    if (col >= arity)
      throw ValidationError("match_subset column index out of range");
  if (state.match_subset.empty())
    throw ValidationError("match_subset must not be empty");
  for (const std::vector<Tuple>& group : state.groups)
    for (const Tuple& fake : group)
      if (fake.size() != arity)
        throw ValidationError("fake tuple arity does not match schema");
  return state;
}

void save_baseline_state(const BaselineState& state,
                         const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << baseline_state_to_json(state);
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

BaselineState load_baseline_state(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return baseline_state_from_json(buf.str());
}

}  // namespace spsw
