#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spsw/codebook.hpp"
#include "spsw/fakegen.hpp"
#include "spsw/table.hpp"

namespace spsw {

struct Suspect {
  std::string user_id;
  std::size_t distance = 0;
  bool operator==(const Suspect&) const = default;
};

// Outcome of extraction + identification. exact_match is set iff the
// extracted sequence equals some codebook watermark; suspects are ordered by
// ascending Hamming distance, ties by codebook (sparsest-first) order.
struct ExtractionResult {
  WatermarkSequence extracted;
  std::optional<std::string> exact_match;
  std::vector<Suspect> suspects;
};

// Returns a new table containing all original rows plus, for every '1' bit
// j, all tuples of fakes.groups[j]. Inserted rows are scattered at
// seed-determined positions rather than appended as a strippable block;
// original rows keep their relative order.
Table embed(const Table& table, const WatermarkSequence& watermark,
            const FakeTupleSet& fakes, std::uint64_t seed);

// One independently watermarked table per codebook entry. Per-user seeds are
// derived from (seed, user index), so users may be processed in any order or
// in parallel with identical results.
std::vector<std::pair<std::string, Table>> embed_all(const Table& table,
                                                     const Codebook& codebook,
                                                     const FakeTupleSet& fakes,
                                                     std::uint64_t seed);

// Bit j is '1' iff at least one tuple of group j is present in the table
// (membership over fakes.match_subset). A single surviving group member is
// enough; deletion can clear bits but never set them.
WatermarkSequence extract(const Table& table, const FakeTupleSet& fakes);
// Same, over a prebuilt index of the leaked table (index subset must equal
// fakes.match_subset).
WatermarkSequence extract(const TableIndex& leaked_index,
                          const FakeTupleSet& fakes);

// Exact codebook match wins outright. Otherwise candidates are the entries
// whose watermark covers the extracted one (deletion only flips 1 -> 0),
// ranked by ascending Hamming distance; when no entry covers it (arbitrary
// tampering), all users are ranked instead.
ExtractionResult identify(const WatermarkSequence& extracted,
                          const Codebook& codebook);

}  // namespace spsw
