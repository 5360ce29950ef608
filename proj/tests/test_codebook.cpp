#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "spsw/codebook.hpp"
#include "spsw/error.hpp"

namespace {

std::vector<std::string> make_ids(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("u" + std::to_string(i));
  return ids;
}

std::vector<std::string> strings_of(
    const std::vector<spsw::WatermarkSequence>& seqs) {
  std::vector<std::string> out;
  for (const auto& s : seqs) out.push_back(s.to_string());
  return out;
}

}  // namespace

TEST_CASE("watermark sequence string round-trip and bit order") {
  auto w = spsw::WatermarkSequence::from_string("10");
  CHECK(w.length() == 2);
  CHECK(w.bit(0));  // leftmost character is bit 0
  CHECK_FALSE(w.bit(1));
  CHECK(w.to_string() == "10");
  CHECK(w.value() == 2);
  CHECK(spsw::WatermarkSequence::from_value(2, 2) == w);
}

TEST_CASE("watermark sequence popcount") {
  CHECK(spsw::WatermarkSequence::from_string("00").popcount() == 0);
  CHECK(spsw::WatermarkSequence::from_string("1010").popcount() == 2);
  CHECK(spsw::WatermarkSequence::from_string("111111").popcount() == 6);
}

TEST_CASE("watermark sequence hamming distance and covers") {
  auto a = spsw::WatermarkSequence::from_string("1010");
  auto b = spsw::WatermarkSequence::from_string("1110");
  CHECK(a.hamming_distance(b) == 1);
  CHECK(b.covers(a));
  CHECK_FALSE(a.covers(b));
  CHECK(a.covers(a));
  auto zero = spsw::WatermarkSequence::from_string("0000");
  CHECK(a.covers(zero));
}

TEST_CASE("from_string rejects junk") {
  CHECK_THROWS_AS(spsw::WatermarkSequence::from_string("10a1"), spsw::Error);
  CHECK_THROWS_AS(spsw::WatermarkSequence::from_string(" 10"), spsw::Error);
  CHECK(spsw::WatermarkSequence::from_string("").length() == 0);
}

TEST_CASE("watermark_length") {
  CHECK(spsw::watermark_length(2) == 1);
  CHECK(spsw::watermark_length(3) == 2);
  CHECK(spsw::watermark_length(4) == 2);
  CHECK(spsw::watermark_length(50) == 6);
  CHECK(spsw::watermark_length(64) == 6);
  CHECK(spsw::watermark_length(65) == 7);
  CHECK_THROWS_AS(spsw::watermark_length(1), spsw::Error);
  CHECK_THROWS_AS(spsw::watermark_length(0), spsw::Error);
}

TEST_CASE("sparse_order L=2 matches the canonical ordering") {
  CHECK(strings_of(spsw::sparse_order(2)) ==
        std::vector<std::string>{"00", "01", "10", "11"});
}

TEST_CASE("sparse_order L=1") {
  CHECK(strings_of(spsw::sparse_order(1)) ==
        std::vector<std::string>{"0", "1"});
}

TEST_CASE("sparse_order L=3 popcount then numeric") {
  CHECK(strings_of(spsw::sparse_order(3)) ==
        std::vector<std::string>{"000", "001", "010", "100", "011", "101",
                                 "110", "111"});
}

TEST_CASE("sparse_order is a permutation with non-decreasing popcount") {
  for (std::size_t length = 1; length <= 10; ++length) {
    auto order = spsw::sparse_order(length);
    CHECK(order.size() == (std::size_t{1} << length));
    std::set<std::string> seen;
    std::size_t prev = 0;
    for (const auto& w : order) {
      CHECK(w.length() == length);
      CHECK(seen.insert(w.to_string()).second);
      CHECK(w.popcount() >= prev);
      prev = w.popcount();
    }
  }
}

TEST_CASE("sparse_prefix equals the head of sparse_order") {
  auto full = spsw::sparse_order(6);
  auto head = spsw::sparse_prefix(6, 50);
  REQUIRE(head.size() == 50);
  for (std::size_t i = 0; i < head.size(); ++i) CHECK(head[i] == full[i]);
}

TEST_CASE("assign: three users get 00, 01, 10") {
  auto cb = spsw::assign_codebook(make_ids(3), 2);
  REQUIRE(cb.size() == 3);
  CHECK(cb.entry(0).watermark.to_string() == "00");
  CHECK(cb.entry(1).watermark.to_string() == "01");
  CHECK(cb.entry(2).watermark.to_string() == "10");
  CHECK(cb.entry(0).user_id == "u0");
}

TEST_CASE("assign: 50 users at L=6 peak at popcount 4") {
  auto cb = spsw::assign_codebook(make_ids(50), 6);
  std::size_t max_pop = 0;
  for (const auto& e : cb.entries()) {
    max_pop = std::max(max_pop, e.watermark.popcount());
  }
  // 1+6+15+20 = 42 sequences have popcount <= 3; entries 43..50 need 4.
  CHECK(max_pop == 4);
}

TEST_CASE("assign: a single user gets the all-zero sequence") {
  // With an explicit length, one user is assignable and gets "0": zero
  // fake tuples are ever inserted for them.
  auto cb = spsw::assign_codebook({"only"}, 1);
  REQUIRE(cb.size() == 1);
  CHECK(cb.entry(0).watermark.to_string() == "0");
}

TEST_CASE("assign: capacity and duplicate checks") {
  CHECK_THROWS_AS(spsw::assign_codebook(make_ids(5), 2), spsw::CapacityError);
  std::vector<std::string> dup{"a", "b", "a"};
  CHECK_THROWS_AS(spsw::assign_codebook(dup, 2), spsw::Error);
}

TEST_CASE("assign: mean popcount below L/2 when not full, equal when full") {
  for (std::size_t length = 1; length <= 6; ++length) {
    std::size_t full = std::size_t{1} << length;
    for (std::size_t n_u = 2; n_u <= full; ++n_u) {
      auto cb = spsw::assign_codebook(make_ids(n_u), length);
      double total = 0;
      for (const auto& e : cb.entries()) total += double(e.watermark.popcount());
      double mean = total / double(n_u);
      if (n_u < full) {
        CHECK(mean < double(length) / 2.0);
      } else {
        CHECK(mean == doctest::Approx(double(length) / 2.0));
      }
    }
  }
}

TEST_CASE("codebook lookups") {
  auto cb = spsw::assign_codebook(make_ids(4), 2);
  CHECK(cb.find_user("u2") == 2);
  CHECK_FALSE(cb.find_user("nope").has_value());
  CHECK(cb.find_watermark(spsw::WatermarkSequence::from_string("10")) == 2);
  CHECK_FALSE(
      cb.find_watermark(spsw::WatermarkSequence::from_string("11111"))
          .has_value());
}

TEST_CASE("params validation ties L to user count") {
  spsw::SchemeParams good{50, 6, 5, 42};
  CHECK_NOTHROW(spsw::validate_params(good));
  spsw::SchemeParams wrong_bits{50, 5, 5, 42};
  CHECK_THROWS_AS(spsw::validate_params(wrong_bits), spsw::ValidationError);
  spsw::SchemeParams zero_x{50, 6, 0, 42};
  CHECK_THROWS_AS(spsw::validate_params(zero_x), spsw::ValidationError);
  spsw::SchemeParams one_user{1, 1, 5, 42};
  CHECK_THROWS_AS(spsw::validate_params(one_user), spsw::Error);
}
