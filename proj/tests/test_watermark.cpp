#include <doctest.h>

#include <string>
#include <vector>

#include "spsw/attacks.hpp"
#include "spsw/codebook.hpp"
#include "spsw/error.hpp"
#include "spsw/fakegen.hpp"
#include "spsw/rng.hpp"
#include "spsw/sample_data.hpp"
#include "spsw/watermark.hpp"

namespace {

struct Fixture {
  spsw::Table table;
  spsw::FakeTupleSet fakes;

  Fixture(std::size_t n, std::size_t length, std::size_t x,
          std::uint64_t seed = 21) {
    table = spsw::make_sample_table(n, 17);
    spsw::GeneratorSpec spec;
    spec.seed = seed;
    spec.pk_column = 0;
    fakes = spsw::generate_fake_tuples(table, length, x, spec);
  }
};

spsw::WatermarkSequence w(const char* s) {
  return spsw::WatermarkSequence::from_string(s);
}

bool is_fake(const spsw::Tuple& row, const spsw::FakeTupleSet& fakes) {
  auto key = spsw::canonical_key(row, fakes.match_subset);
  for (const auto& group : fakes.groups) {
    for (const auto& tuple : group) {
      if (spsw::canonical_key(tuple, fakes.match_subset) == key) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("embed: only '1' groups are inserted") {
  Fixture fx(100, 2, 1);
  auto out = spsw::embed(fx.table, w("10"), fx.fakes, 5);
  CHECK(out.n() == 101);
  // Group 0's single tuple is present, group 1's is not.
  spsw::TableIndex index(out, fx.fakes.match_subset);
  CHECK(index.contains(
      spsw::canonical_key(fx.fakes.groups[0][0], fx.fakes.match_subset)));
  CHECK_FALSE(index.contains(
      spsw::canonical_key(fx.fakes.groups[1][0], fx.fakes.match_subset)));
}

TEST_CASE("embed: all-zero watermark inserts nothing") {
  Fixture fx(60, 3, 2);
  auto out = spsw::embed(fx.table, w("000"), fx.fakes, 5);
  CHECK(out == fx.table);
}

TEST_CASE("embed: row growth is popcount times group size") {
  Fixture fx(80, 2, 3);
  auto out = spsw::embed(fx.table, w("11"), fx.fakes, 5);
  CHECK(out.n() == 80 + 2 * 3);
}

TEST_CASE("embed: original rows survive unchanged and in order") {
  Fixture fx(120, 3, 2);
  auto out = spsw::embed(fx.table, w("101"), fx.fakes, 99);
  std::vector<spsw::Tuple> originals;
  for (const auto& row : out.rows()) {
    if (!is_fake(row, fx.fakes)) originals.push_back(row);
  }
  CHECK(originals == fx.table.rows());
}

TEST_CASE("embed: insertions are scattered, not appended") {
  Fixture fx(200, 2, 5);
  auto out = spsw::embed(fx.table, w("11"), fx.fakes, 7);
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < out.n(); ++i) {
    if (is_fake(out.row(i), fx.fakes)) positions.push_back(i);
  }
  REQUIRE(positions.size() == 10);
  // A block append would put every fake at the tail.
  CHECK(positions.front() < 200);

  // Placement is a pure function of the seed.
  CHECK(spsw::embed(fx.table, w("11"), fx.fakes, 7) == out);
  CHECK(spsw::embed(fx.table, w("11"), fx.fakes, 8) != out);
}

TEST_CASE("embed: length mismatch is rejected") {
  Fixture fx(50, 2, 1);
  CHECK_THROWS_AS(spsw::embed(fx.table, w("101"), fx.fakes, 5),
                  spsw::ValidationError);
}

TEST_CASE("embed_all: insertion counts follow assigned popcounts") {
  Fixture fx(90, 2, 4);
  auto cb = spsw::assign_codebook({"ua", "ub", "uc"}, 2);  // 00, 01, 10
  auto outs = spsw::embed_all(fx.table, cb, fx.fakes, 31);
  REQUIRE(outs.size() == 3);
  CHECK(outs[0].first == "ua");
  CHECK(outs[0].second.n() == 90);
  CHECK(outs[1].second.n() == 90 + 4);
  CHECK(outs[2].second.n() == 90 + 4);
}

TEST_CASE("embed_all: total insertions over the full code space") {
  const std::size_t length = 3;
  Fixture fx(40, length, 1);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < (std::size_t{1} << length); ++i)
    ids.push_back("u" + std::to_string(i));
  auto cb = spsw::assign_codebook(ids, length);
  auto outs = spsw::embed_all(fx.table, cb, fx.fakes, 31);
  std::size_t total_insertions = 0;
  for (const auto& [user, out] : outs) total_insertions += out.n() - 40;
  // Sum of popcounts over all L-bit strings at x=1 is L * 2^(L-1).
  CHECK(total_insertions == length * (std::size_t{1} << (length - 1)));
}

TEST_CASE("extract: round-trips every user unattacked") {
  Fixture fx(150, 3, 2);
  std::vector<std::string> ids{"u0", "u1", "u2", "u3", "u4", "u5"};
  auto cb = spsw::assign_codebook(ids, 3);
  for (const auto& [user, out] : spsw::embed_all(fx.table, cb, fx.fakes, 8)) {
    auto extracted = spsw::extract(out, fx.fakes);
    auto idx = cb.find_user(user);
    REQUIRE(idx.has_value());
    CHECK(extracted == cb.entry(*idx).watermark);
    auto result = spsw::identify(extracted, cb);
    REQUIRE(result.exact_match.has_value());
    CHECK(*result.exact_match == user);
    REQUIRE(result.suspects.size() == 1);
    CHECK(result.suspects[0].distance == 0);
  }
}

TEST_CASE("extract: one survivor keeps the bit, full wipe clears it") {
  Fixture fx(100, 2, 3);
  auto out = spsw::embed(fx.table, w("11"), fx.fakes, 12);

  // Drop all but one tuple of group 0 and every tuple of group 1.
  auto keep_key =
      spsw::canonical_key(fx.fakes.groups[0][0], fx.fakes.match_subset);
  spsw::Table damaged(out.schema());
  for (const auto& row : out.rows()) {
    if (!is_fake(row, fx.fakes)) {
      damaged.append(row);
      continue;
    }
    if (spsw::canonical_key(row, fx.fakes.match_subset) == keep_key)
      damaged.append(row);
  }
  auto extracted = spsw::extract(damaged, fx.fakes);
  CHECK(extracted == w("10"));
}

TEST_CASE("extract: empty table yields all zeros") {
  Fixture fx(50, 3, 2);
  spsw::Table empty(fx.table.schema());
  CHECK(spsw::extract(empty, fx.fakes) == w("000"));
}

TEST_CASE("extract: deletion damage is a bitwise and-mask") {
  Fixture fx(120, 4, 2);
  auto embedded = w("1011");
  auto out = spsw::embed(fx.table, embedded, fx.fakes, 3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    double p = 0.05 * double(seed % 19);
    auto attacked = spsw::delete_random(out, {p, seed});
    auto extracted = spsw::extract(attacked, fx.fakes);
    CHECK(embedded.covers(extracted));
  }
}

TEST_CASE("identify: superset candidates ranked by distance") {
  std::vector<spsw::CodebookEntry> entries{
      {"u-1110", w("1110")},
      {"u-1011", w("1011")},
      {"u-1111", w("1111")},
  };
  spsw::Codebook cb(entries);
  auto result = spsw::identify(w("1010"), cb);
  CHECK_FALSE(result.exact_match.has_value());
  REQUIRE(result.suspects.size() == 3);
  CHECK(result.suspects[0].user_id == "u-1110");
  CHECK(result.suspects[0].distance == 1);
  CHECK(result.suspects[1].user_id == "u-1011");
  CHECK(result.suspects[1].distance == 1);
  CHECK(result.suspects[2].user_id == "u-1111");
  CHECK(result.suspects[2].distance == 2);
}

TEST_CASE("identify: covering entries exclude the rest") {
  std::vector<spsw::CodebookEntry> entries{
      {"u-0101", w("0101")},
      {"u-1011", w("1011")},
  };
  spsw::Codebook cb(entries);
  auto result = spsw::identify(w("1010"), cb);
  // 0101 lacks bit 0, so only 1011 (which has bits 0 and 2) remains.
  REQUIRE(result.suspects.size() == 1);
  CHECK(result.suspects[0].user_id == "u-1011");
  CHECK(result.suspects[0].distance == 1);
}

TEST_CASE("identify: falls back to ranking everyone when nothing covers") {
  // Neither entry has bit 0, which only insertion tampering could explain.
  std::vector<spsw::CodebookEntry> entries{
      {"u-0101", w("0101")},
      {"u-0111", w("0111")},
  };
  spsw::Codebook cb(entries);
  auto result = spsw::identify(w("1010"), cb);
  CHECK_FALSE(result.exact_match.has_value());
  REQUIRE(result.suspects.size() == 2);
  CHECK(result.suspects[0].user_id == "u-0111");
  CHECK(result.suspects[0].distance == 3);
  CHECK(result.suspects[1].user_id == "u-0101");
  CHECK(result.suspects[1].distance == 4);
}

TEST_CASE("identify: exact match wins outright") {
  auto cb = spsw::assign_codebook({"a", "b", "c"}, 2);
  auto result = spsw::identify(w("01"), cb);
  REQUIRE(result.exact_match.has_value());
  CHECK(*result.exact_match == "b");
  REQUIRE(result.suspects.size() == 1);
  CHECK(result.suspects[0].user_id == "b");
  CHECK(result.suspects[0].distance == 0);
}

TEST_CASE("identify: all-zeros belongs to the sparsest user") {
  auto cb = spsw::assign_codebook({"zero", "one", "two"}, 2);
  auto result = spsw::identify(w("00"), cb);
  REQUIRE(result.exact_match.has_value());
  CHECK(*result.exact_match == "zero");
  CHECK(result.suspects[0].distance == 0);
}

TEST_CASE("identify: length mismatch is rejected") {
  auto cb = spsw::assign_codebook({"a", "b", "c"}, 2);
  CHECK_THROWS_AS(spsw::identify(w("010"), cb), spsw::ValidationError);
}
