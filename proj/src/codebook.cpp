#include "spsw/codebook.hpp"

#include <bit>
#include <unordered_set>

#include "spsw/error.hpp"

namespace spsw {

WatermarkSequence WatermarkSequence::from_string(std::string_view text) {
  WatermarkSequence w;
  w.bits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1')
      throw ValidationError("watermark bitstring may contain only 0 and 1");
    w.bits_.push_back(c == '1' ? 1 : 0);
  }
  return w;
}

WatermarkSequence WatermarkSequence::from_value(std::uint64_t value,
                                                std::size_t length) {
  if (length > 64)
    throw ValidationError("watermark length exceeds 64 bits");
  if (length < 64 && (value >> length) != 0)
    throw ValidationError("value does not fit in the watermark length");
  WatermarkSequence w(length);
  for (std::size_t j = 0; j < length; ++j)
    w.bits_[j] = static_cast<std::uint8_t>((value >> (length - 1 - j)) & 1);
  return w;
}

bool WatermarkSequence::bit(std::size_t j) const {
  if (j >= bits_.size()) throw ValidationError("bit index out of range");
  return bits_[j] != 0;
}

void WatermarkSequence::set_bit(std::size_t j, bool value) {
  if (j >= bits_.size()) throw ValidationError("bit index out of range");
  bits_[j] = value ? 1 : 0;
}

std::size_t WatermarkSequence::popcount() const {
  std::size_t count = 0;
  for (auto b : bits_) count += b;
  return count;
}

std::uint64_t WatermarkSequence::value() const {
  if (bits_.size() > 64)
    throw ValidationError("watermark longer than 64 bits has no numeric value");
  std::uint64_t v = 0;
  for (auto b : bits_) v = (v << 1) | b;
  return v;
}

std::string WatermarkSequence::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::size_t WatermarkSequence::hamming_distance(
    const WatermarkSequence& other) const {
  if (other.bits_.size() != bits_.size())
    throw ValidationError("hamming distance needs equal lengths");
  std::size_t d = 0;
  for (std::size_t j = 0; j < bits_.size(); ++j)
    d += (bits_[j] != other.bits_[j]) ? 1 : 0;
  return d;
}

bool WatermarkSequence::covers(const WatermarkSequence& other) const {
  if (other.bits_.size() != bits_.size())
    throw ValidationError("superset check needs equal lengths");
  for (std::size_t j = 0; j < bits_.size(); ++j)
    if (other.bits_[j] && !bits_[j]) return false;
  return true;
}

Codebook::Codebook(std::vector<CodebookEntry> entries)
    : entries_(std::move(entries)) {
  std::unordered_set<std::string_view> users;
  std::unordered_set<std::uint64_t> seen;
  std::size_t previous_popcount = 0;
  for (const auto& e : entries_) {
    if (!entries_.empty() && e.watermark.length() != entries_[0].watermark.length())
      throw ValidationError("codebook watermarks must share one length");
    if (!users.insert(e.user_id).second)
      throw ValidationError("duplicate user id: " + e.user_id);
    if (!seen.insert(e.watermark.value()).second)
      throw ValidationError("duplicate watermark: " + e.watermark.to_string());
    if (e.watermark.popcount() < previous_popcount)
      throw ValidationError("codebook entries must be ordered sparsest-first");
    previous_popcount = e.watermark.popcount();
  }
}

const CodebookEntry& Codebook::entry(std::size_t i) const {
  if (i >= entries_.size())
    throw ValidationError("codebook index out of range");
  return entries_[i];
}

std::optional<std::size_t> Codebook::find_user(std::string_view user_id) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].user_id == user_id) return i;
  return std::nullopt;
}

std::optional<std::size_t> Codebook::find_watermark(
    const WatermarkSequence& w) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].watermark == w) return i;
  return std::nullopt;
}

void validate_params(const SchemeParams& params) {
  if (params.group_size < 1) throw ValidationError("group_size must be >= 1");
  if (params.watermark_bits != watermark_length(params.user_count))
    throw ValidationError("watermark_bits must equal ceil(log2(user_count))");
}

std::size_t watermark_length(std::size_t user_count) {
  if (user_count < 2)
    throw ValidationError("watermark_length requires at least 2 users");
  return static_cast<std::size_t>(std::bit_width(user_count - 1));
}

std::vector<WatermarkSequence> sparse_prefix(std::size_t length,
                                             std::size_t count) {
  if (length < 1 || length > 63)
    throw ValidationError("sparse order supports lengths 1..63");
  const std::uint64_t total =
      length >= 64 ? UINT64_MAX : (std::uint64_t{1} << length);
  if (count > total)
    throw CapacityError("requested more sequences than 2^length");

  std::vector<WatermarkSequence> out;
  out.reserve(count);
  if (count == 0) return out;

  // Ascending popcount levels; within a level, ascending numeric value via
  // Gosper's next-bit-permutation.
  for (std::size_t ones = 0; ones <= length && out.size() < count; ++ones) {
    if (ones == 0) {
      out.push_back(WatermarkSequence::from_value(0, length));
      continue;
    }
    std::uint64_t v = (std::uint64_t{1} << ones) - 1;
    const std::uint64_t limit = std::uint64_t{1} << length;
    while (v < limit && out.size() < count) {
      out.push_back(WatermarkSequence::from_value(v, length));
      const std::uint64_t c = v & -v;
      const std::uint64_t r = v + c;
      if (r >= limit) break;
      v = (((r ^ v) >> 2) / c) | r;
    }
  }
  return out;
}

std::vector<WatermarkSequence> sparse_order(std::size_t length) {
  if (length > 24)
    throw ValidationError("sparse_order enumerates 2^length; max length 24");
  return sparse_prefix(length, std::size_t{1} << length);
}

Codebook assign_codebook(const std::vector<std::string>& user_ids,
                         std::size_t length) {
  if (user_ids.empty()) throw ValidationError("no users to assign");
  if (length < 1 || length > 63)
    throw ValidationError("watermark length must be in 1..63");
  if (length < 64 && user_ids.size() > (std::uint64_t{1} << length))
    throw CapacityError("more users than 2^length watermark sequences");

  auto sequences = sparse_prefix(length, user_ids.size());
  std::vector<CodebookEntry> entries;
  entries.reserve(user_ids.size());
  for (std::size_t i = 0; i < user_ids.size(); ++i)
    entries.push_back({user_ids[i], std::move(sequences[i])});
  return Codebook(std::move(entries));  // rejects duplicate user ids
}

}  // namespace spsw
