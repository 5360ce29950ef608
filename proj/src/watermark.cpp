#include "spsw/watermark.hpp"

#include <algorithm>

#include "spsw/error.hpp"
#include "spsw/rng.hpp"

namespace spsw {

Table embed(const Table& table, const WatermarkSequence& watermark,
            const FakeTupleSet& fakes, std::uint64_t seed) {
  if (watermark.length() != fakes.group_count())
    throw ValidationError("watermark length does not match fake group count");
  if (fakes.schema != table.schema())
    throw ValidationError("fake tuple schema does not match table schema");

  std::vector<const Tuple*> inserts;
  for (std::size_t j = 0; j < watermark.length(); ++j) {
    if (!watermark.bit(j)) continue;
    for (const auto& tuple : fakes.groups[j]) inserts.push_back(&tuple);
  }

  const std::size_t n = table.n();
  const std::size_t m = inserts.size();
  Table out(table.schema());
  out.reserve(n + m);
  if (m == 0) {
    for (const auto& row : table.rows()) out.append(row);
    return out;
  }

  Rng rng(mix_seed({seed, 0xe13bedULL, m}));
  auto slots = rng.sample_indices(n + m, m);
  std::sort(slots.begin(), slots.end());

  std::size_t next_insert = 0;
  std::size_t next_original = 0;
  for (std::size_t pos = 0; pos < n + m; ++pos) {
    if (next_insert < m && slots[next_insert] == pos)
      out.append(*inserts[next_insert++]);
    else
      out.append(table.row(next_original++));
  }
  return out;
}

std::vector<std::pair<std::string, Table>> embed_all(const Table& table,
                                                     const Codebook& codebook,
                                                     const FakeTupleSet& fakes,
                                                     std::uint64_t seed) {
  std::vector<std::pair<std::string, Table>> out;
  out.reserve(codebook.size());
  for (std::size_t i = 0; i < codebook.size(); ++i) {
    const auto& entry = codebook.entry(i);
    out.emplace_back(entry.user_id,
                     embed(table, entry.watermark, fakes, mix_seed({seed, i})));
  }
  return out;
}

WatermarkSequence extract(const TableIndex& leaked_index,
                          const FakeTupleSet& fakes) {
  if (leaked_index.subset() != fakes.match_subset)
    throw ValidationError("index subset does not match fake tuple subset");
  WatermarkSequence extracted(fakes.group_count());
  for (std::size_t j = 0; j < fakes.group_count(); ++j) {
    for (const auto& tuple : fakes.groups[j]) {
      if (leaked_index.contains(canonical_key(tuple, fakes.match_subset))) {
        extracted.set_bit(j, true);
        break;
      }
    }
  }
  return extracted;
}

WatermarkSequence extract(const Table& table, const FakeTupleSet& fakes) {
  TableIndex index(table, fakes.match_subset);
  return extract(index, fakes);
}

ExtractionResult identify(const WatermarkSequence& extracted,
                          const Codebook& codebook) {
  if (codebook.size() == 0) throw ValidationError("codebook is empty");
  if (extracted.length() != codebook.entry(0).watermark.length())
    throw ValidationError("extracted length does not match codebook");

  ExtractionResult result;
  result.extracted = extracted;

  if (auto hit = codebook.find_watermark(extracted)) {
    result.exact_match = codebook.entry(*hit).user_id;
    result.suspects = {{codebook.entry(*hit).user_id, 0}};
    return result;
  }

  std::vector<Suspect> candidates;
  for (const auto& entry : codebook.entries())
    if (entry.watermark.covers(extracted))
      candidates.push_back(
          {entry.user_id, entry.watermark.hamming_distance(extracted)});
  if (candidates.empty()) {
    // Only possible under tampering beyond deletion; fall back to ranking
    // every user.
    for (const auto& entry : codebook.entries())
      candidates.push_back(
          {entry.user_id, entry.watermark.hamming_distance(extracted)});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Suspect& a, const Suspect& b) {
                     return a.distance < b.distance;
                   });
  result.suspects = std::move(candidates);
  return result;
}

}  // namespace spsw
