#pragma once

#include <cstddef>
#include <cstdint>

#include "spsw/table.hpp"

namespace spsw {

struct AttackSpec {
  double deletion_ratio = 0.0;  // p in [0, 1]
  std::uint64_t seed = 0;
};

// round(p * n), half away from zero.
std::size_t deletion_count(std::size_t n, double ratio);

// Removes exactly deletion_count(n, p) rows, chosen uniformly without
// replacement; survivors keep their original relative order. Deterministic
// for fixed (table, seed).
Table delete_random(const Table& table, const AttackSpec& spec);

// Monte Carlo estimate of the probability that a fixed marked x-subset lies
// entirely inside a uniformly random d-subset of n. This is the brute-force
// oracle for the closed-form complete-deletion probability.
double complete_deletion_rate_mc(std::size_t n, std::size_t x, std::size_t d,
                                 std::size_t trials, std::uint64_t seed);

// Exact value by exhaustive enumeration of all C(n, d) deletion subsets.
// Feasible for n <= 24.
double complete_deletion_rate_exact(std::size_t n, std::size_t x,
                                    std::size_t d);

}  // namespace spsw
