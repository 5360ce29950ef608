#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "spsw/codebook.hpp"

namespace spsw {

// Exact binomial coefficient. Throws ValidationError when k > n or the value
// does not fit in 64 bits.
std::uint64_t binomial_coefficient(unsigned n, unsigned k);

// Probability that one group of x marked tuples is completely deleted when
// d = round(p*n) of n tuples are removed uniformly without replacement:
// prod_{i<x} (d-i)/(n-i), zero when d < x.
double complete_deletion_probability(std::size_t n, double p, std::size_t x);

// Upper bound p^x on the complete-deletion probability.
double complete_deletion_bound(double p, std::size_t x);

// Survival probability of one watermark bit: 1-p_cd for a '1' bit (its group
// must not be wiped out), exactly 1 for a '0' bit (deletion cannot create
// fake tuples).
double bit_survival_probability(bool one_bit, double p_cd);

// Probability a k-ones watermark of given length extracts exactly:
// (1-p_cd)^k.
double watermark_survival_probability(double p_cd, std::size_t k,
                                      std::size_t length);

// Probability a uniformly random watermark of given length has exactly k
// ones: C(length,k)/2^length.
double ones_count_probability(std::size_t length, std::size_t k);

// Expected exact-extraction rate when watermarks are uniform over all
// 2^length codes: (1 - p_cd/2)^length.
double exact_extraction_rate_uniform(double p_cd, std::size_t length);

// Same quantity via the explicit sum over ones-counts; agrees with the
// closed form to 1e-12 (binomial identity).
double exact_extraction_rate_uniform_sum(double p_cd, std::size_t length);

// Expected exact-extraction rate of the grouped-baseline scheme, whose wiped
// groups flip a fair coin per bit: (1 - p_cd/2)^length.
double exact_extraction_rate_baseline(double p_cd, std::size_t length);

// Expected exact-extraction rate under the sparse-priority codebook:
// mean of (1-p_cd)^popcount over the user_count sparsest codes of the given
// length. Requires user_count <= 2^length.
double exact_extraction_rate_sparse(std::size_t user_count, std::size_t length,
                                    double p_cd);

// Worst-case insertions per recipient: group_size * ceil(log2 user_count) / 2.
double insertion_bound(std::size_t group_size, std::size_t user_count);

// Mean insertions per recipient over an assigned codebook:
// group_size * mean popcount.
double expected_insertions(const Codebook& codebook, std::size_t group_size);

// One row of the theory table: every closed form evaluated at a single
// (n, p, x, length, user_count) configuration.
struct TheoryPoint {
  std::size_t n = 0;
  double p = 0.0;
  std::size_t x = 0;
  std::size_t length = 0;      // watermark bits L
  std::size_t user_count = 0;  // n_u
  double p_cd_exact = 0.0;
  double p_cd_approx = 0.0;
  double p1 = 0.0;
  double ep = 0.0;
  double ep_baseline = 0.0;
  double ep_sparse = 0.0;
  double ni_bound = 0.0;
};

// Evaluates all derived quantities; the ep columns use the exact p_cd.
TheoryPoint evaluate_theory_point(std::size_t n, double p, std::size_t x,
                                  std::size_t length, std::size_t user_count);

// Shortest stable decimal rendering of a number (round-trips a double).
std::string format_number(double value);

// CSV with header n,p,x,L,n_u,p_cd_exact,p_cd_approx,p1,ep,ep_baseline,
// ep_sparse,ni_bound.
std::string theory_csv(const std::vector<TheoryPoint>& points);

}  // namespace spsw
