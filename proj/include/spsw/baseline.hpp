#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spsw/codebook.hpp"
#include "spsw/table.hpp"

namespace spsw {

// Grouped fake-tuple scheme used as the comparison target: every group gets
// exactly `group_size` fake tuples regardless of the watermark, so insertion
// cost is always group_size * length.
struct BaselineParams {
  std::size_t length = 0;      // watermark bits, one group per bit
  std::size_t group_size = 0;  // fake tuples inserted per group
  std::string key;             // secret driving the keyed classification
};

void validate_baseline_params(const BaselineParams& params);

// Keyed classification of a tuple by content: a group number and a 0/1
// polarity, both independent of row order.
struct TupleClass {
  std::size_t group = 0;
  bool one = false;

  bool operator==(const TupleClass&) const = default;
};

TupleClass classify(const Tuple& tuple, const BaselineParams& params,
                    const std::vector<std::size_t>& match_subset);

// Secret side record of an embedding: which fake tuples went into which
// group. Extraction votes over the survivors.
struct BaselineState {
  Schema schema;
  std::vector<std::size_t> match_subset;
  std::vector<std::vector<Tuple>> groups;

  bool operator==(const BaselineState&) const = default;
};

struct BaselineEmbedResult {
  Table table;
  BaselineState state;
};

// Inserts group_size fakes per group, each directly below an anchor row of
// its group whose polarity equals the group's watermark bit; the fake
// carries the opposite polarity. Throws CapacityError when a group has no
// anchor row of the required polarity.
BaselineEmbedResult baseline_embed(const Table& table,
                                   const WatermarkSequence& w,
                                   const BaselineParams& params,
                                   std::uint64_t seed,
                                   std::optional<std::size_t> pk_column = {});

// Per group: every surviving fake votes for the bit opposite its polarity;
// majority wins, and a tie (including a wiped-out group) falls back to a
// keyed coin derived from the table digest.
WatermarkSequence baseline_extract(const Table& table,
                                   const BaselineState& state,
                                   const BaselineParams& params);

// Groups of `state` with no surviving fake in `table`: the empirical
// complete-deletion events.
std::size_t baseline_wiped_groups(const Table& table,
                                  const BaselineState& state);

std::string baseline_state_to_json(const BaselineState& state);
BaselineState baseline_state_from_json(const std::string& text);
void save_baseline_state(const BaselineState& state,
                         const std::filesystem::path& path);
BaselineState load_baseline_state(const std::filesystem::path& path);

}  // namespace spsw
