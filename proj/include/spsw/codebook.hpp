#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spsw {

// Fixed-length bit vector identifying one user. Bit 0 is the leftmost
// character of the written form ("10" has bit 0 = 1) and corresponds to
// fake-tuple group 0.
class WatermarkSequence {
 public:
  WatermarkSequence() = default;
  explicit WatermarkSequence(std::size_t length) : bits_(length, 0) {}

  static WatermarkSequence from_string(std::string_view text);
  // `value` read as an unsigned integer whose most significant of `length`
  // bits is bit 0 (the leftmost written character).
  static WatermarkSequence from_value(std::uint64_t value, std::size_t length);

  std::size_t length() const { return bits_.size(); }
  bool bit(std::size_t j) const;
  void set_bit(std::size_t j, bool value);

  std::size_t popcount() const;
  // Numeric value of the written bitstring, leftmost character most
  // significant. Requires length <= 64.
  std::uint64_t value() const;
  std::string to_string() const;

  std::size_t hamming_distance(const WatermarkSequence& other) const;
  // True when this sequence's '1' bits are a superset of `other`'s.
  bool covers(const WatermarkSequence& other) const;

  bool operator==(const WatermarkSequence&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

inline std::size_t popcount(const WatermarkSequence& w) {
  return w.popcount();
}

struct CodebookEntry {
  std::string user_id;
  WatermarkSequence watermark;
  bool operator==(const CodebookEntry&) const = default;
};

// Ordered user -> watermark mapping. Entries are kept sparsest-first:
// ascending popcount, ties by ascending numeric value of the bitstring.
class Codebook {
 public:
  Codebook() = default;
  explicit Codebook(std::vector<CodebookEntry> entries);

  std::size_t size() const { return entries_.size(); }
  const std::vector<CodebookEntry>& entries() const { return entries_; }
  const CodebookEntry& entry(std::size_t i) const;
  std::optional<std::size_t> find_user(std::string_view user_id) const;
  std::optional<std::size_t> find_watermark(const WatermarkSequence& w) const;

  bool operator==(const Codebook&) const = default;

 private:
  std::vector<CodebookEntry> entries_;
};

// All knobs the scheme ranges over. watermark_bits must equal
// watermark_length(user_count); group_size is the number of fake tuples
// carrying each watermark bit.
struct SchemeParams {
  std::size_t user_count = 0;
  std::size_t watermark_bits = 0;
  std::size_t group_size = 0;
  std::uint64_t seed = 0;

  bool operator==(const SchemeParams&) const = default;
};

void validate_params(const SchemeParams& params);

// Minimal length that gives every one of `user_count` users a distinct
// sequence: ceil(log2(user_count)). user_count must be >= 2; a single user
// needs no tracing and would get a zero-length watermark.
std::size_t watermark_length(std::size_t user_count);

// The `count` sparsest sequences of the given length, ascending popcount,
// ties by ascending numeric value.
std::vector<WatermarkSequence> sparse_prefix(std::size_t length,
                                             std::size_t count);

// All 2^length sequences in sparse order. length must be <= 24 so the
// result stays enumerable.
std::vector<WatermarkSequence> sparse_order(std::size_t length);

// Pairs user_ids[i] with sparse_order(length)[i], in that order.
Codebook assign_codebook(const std::vector<std::string>& user_ids,
                         std::size_t length);

}  // namespace spsw
