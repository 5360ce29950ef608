#include "spsw/attacks.hpp"

#include <cmath>

#include "spsw/error.hpp"
#include "spsw/rng.hpp"

namespace spsw {

std::size_t deletion_count(std::size_t n, double ratio) {
  if (ratio < 0.0 || ratio > 1.0)
    throw ValidationError("deletion ratio must be in [0, 1]");
  return static_cast<std::size_t>(
      std::llround(ratio * static_cast<double>(n)));
}

Table delete_random(const Table& table, const AttackSpec& spec) {
  const std::size_t n = table.n();
  const std::size_t d = deletion_count(n, spec.deletion_ratio);

  std::vector<bool> deleted(n, false);
  Rng rng(mix_seed({spec.seed, 0xde1e7eULL}));
  for (std::size_t idx : rng.sample_indices(n, d)) deleted[idx] = true;

  Table out(table.schema());
  out.reserve(n - d);
  for (std::size_t i = 0; i < n; ++i)
    if (!deleted[i]) out.append(table.row(i));
  return out;
}

namespace {

void check_oracle_args(std::size_t n, std::size_t x, std::size_t d) {
  if (n == 0) throw ValidationError("n must be >= 1");
  if (x < 1 || x > n) throw ValidationError("x must be in [1, n]");
  if (d > n) throw ValidationError("d must be <= n");
}

}  // namespace

double complete_deletion_rate_mc(std::size_t n, std::size_t x, std::size_t d,
                                 std::size_t trials, std::uint64_t seed) {
  check_oracle_args(n, x, d);
  if (trials < 1) throw ValidationError("trials must be >= 1");
  if (d < x) return 0.0;

  // Marked tuples are indices 0..x-1; symmetry makes the choice irrelevant.
  Rng rng(mix_seed({seed, 0x0aac1eULL, n, x, d}));
  std::vector<std::size_t> pool(n);
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    std::size_t marked_deleted = 0;
    for (std::size_t i = 0; i < d; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
      std::swap(pool[i], pool[j]);
      if (pool[i] < x) ++marked_deleted;
    }
    if (marked_deleted == x) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

double complete_deletion_rate_exact(std::size_t n, std::size_t x,
                                    std::size_t d) {
  check_oracle_args(n, x, d);
  if (n > 24)
    throw ValidationError("exhaustive enumeration supports n <= 24");
  if (d < x) return 0.0;
  if (d == 0) return 0.0;

  // Walk every d-subset of {0..n-1} as a bitmask (Gosper's hack) and count
  // those containing all of the marked low x bits.
  const std::uint64_t marked = (std::uint64_t{1} << x) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t subsets = 0;
  std::uint64_t containing = 0;
  std::uint64_t v = (std::uint64_t{1} << d) - 1;
  while (v < limit) {
    ++subsets;
    if ((v & marked) == marked) ++containing;
    const std::uint64_t c = v & -v;
    const std::uint64_t r = v + c;
    if (r >= limit) break;
    v = (((r ^ v) >> 2) / c) | r;
  }
  return static_cast<double>(containing) / static_cast<double>(subsets);
}

}  // namespace spsw
