#include "spsw/analytics.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

#include "spsw/attacks.hpp"
#include "spsw/error.hpp"

namespace spsw {

namespace {

void check_probability(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0))
    throw ValidationError(std::string(name) + " must be in [0, 1]");
}

}  // namespace

std::uint64_t binomial_coefficient(unsigned n, unsigned k) {
  if (k > n) throw ValidationError("binomial coefficient requires k <= n");
  if (k > n - k) k = n - k;
  unsigned __int128 result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    // result * (n-k+i) is divisible by i: it equals C(n-k+i, i) * i.
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max())
      throw ValidationError("binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(result);
}

double complete_deletion_probability(std::size_t n, double p, std::size_t x) {
  if (n == 0) throw ValidationError("n must be >= 1");
  if (x < 1 || x > n) throw ValidationError("x must be in [1, n]");
  check_probability(p, "deletion ratio");

  const std::size_t d = deletion_count(n, p);
  if (d < x) return 0.0;

  if (x > 50) {
    // Long products of sub-unit factors: accumulate in log space.
    double log_sum = 0.0;
    for (std::size_t i = 0; i < x; ++i)
      log_sum += std::log(static_cast<double>(d - i)) -
                 std::log(static_cast<double>(n - i));
    return std::exp(log_sum);
  }
  double prob = 1.0;
  for (std::size_t i = 0; i < x; ++i)
    prob *= static_cast<double>(d - i) / static_cast<double>(n - i);
  return prob;
}

double complete_deletion_bound(double p, std::size_t x) {
  check_probability(p, "deletion ratio");
  if (x < 1) throw ValidationError("group size must be >= 1");
  return std::pow(p, static_cast<double>(x));
}

double bit_survival_probability(bool one_bit, double p_cd) {
  check_probability(p_cd, "p_cd");
  return one_bit ? 1.0 - p_cd : 1.0;
}

double watermark_survival_probability(double p_cd, std::size_t k,
                                      std::size_t length) {
  check_probability(p_cd, "p_cd");
  if (k > length) throw ValidationError("ones count exceeds watermark length");
  return std::pow(1.0 - p_cd, static_cast<double>(k));
}

double ones_count_probability(std::size_t length, std::size_t k) {
  if (k > length) throw ValidationError("ones count exceeds watermark length");
  if (length <= 62) {
    const double count = static_cast<double>(binomial_coefficient(
        static_cast<unsigned>(length), static_cast<unsigned>(k)));
    return std::ldexp(count, -static_cast<int>(length));
  }
  const double n = static_cast<double>(length);
  const double kk = static_cast<double>(k);
  const double log_count = std::lgamma(n + 1.0) - std::lgamma(kk + 1.0) -
                           std::lgamma(n - kk + 1.0);
  return std::exp(log_count - n * std::log(2.0));
}

double exact_extraction_rate_uniform(double p_cd, std::size_t length) {
  check_probability(p_cd, "p_cd");
  return std::pow(1.0 - 0.5 * p_cd, static_cast<double>(length));
}

double exact_extraction_rate_uniform_sum(double p_cd, std::size_t length) {
  check_probability(p_cd, "p_cd");
  if (length > 62)
    throw ValidationError("summation form supports length <= 62");
  const double survive = 1.0 - p_cd;
  double total = 0.0;
  for (std::size_t k = 0; k <= length; ++k) {
    const double count = static_cast<double>(binomial_coefficient(
        static_cast<unsigned>(length), static_cast<unsigned>(k)));
    total += std::ldexp(count * std::pow(survive, static_cast<double>(k)),
                        -static_cast<int>(length));
  }
  return total;
}

double exact_extraction_rate_baseline(double p_cd, std::size_t length) {
  // A wiped-out group leaves the baseline guessing that bit with a fair
  // coin, so each bit is correct with probability 1 - p_cd/2.
  return exact_extraction_rate_uniform(p_cd, length);
}

double exact_extraction_rate_sparse(std::size_t user_count, std::size_t length,
                                    double p_cd) {
  check_probability(p_cd, "p_cd");
  if (user_count < 1) throw ValidationError("user count must be >= 1");
  if (length < 1) throw ValidationError("watermark length must be >= 1");
  if (length < 64 &&
      user_count > (std::uint64_t{1} << length))
    throw CapacityError("user count exceeds codebook capacity 2^length");

  const double survive = 1.0 - p_cd;
  double total = 0.0;
  std::uint64_t remaining = user_count;
  for (std::size_t ones = 0; ones <= length && remaining > 0; ++ones) {
    const std::uint64_t level = binomial_coefficient(
        static_cast<unsigned>(length), static_cast<unsigned>(ones));
    const std::uint64_t take = std::min(level, remaining);
    total +=
        static_cast<double>(take) * std::pow(survive, static_cast<double>(ones));
    remaining -= take;
  }
  return total / static_cast<double>(user_count);
}

double insertion_bound(std::size_t group_size, std::size_t user_count) {
  if (group_size < 1) throw ValidationError("group size must be >= 1");
  return static_cast<double>(group_size) *
         static_cast<double>(watermark_length(user_count)) / 2.0;
}

double expected_insertions(const Codebook& codebook, std::size_t group_size) {
  if (group_size < 1) throw ValidationError("group size must be >= 1");
  std::size_t total_ones = 0;
  for (std::size_t i = 0; i < codebook.size(); ++i)
    total_ones += codebook.entry(i).watermark.popcount();
  return static_cast<double>(group_size) * static_cast<double>(total_ones) /
         static_cast<double>(codebook.size());
}

TheoryPoint evaluate_theory_point(std::size_t n, double p, std::size_t x,
                                  std::size_t length,
                                  std::size_t user_count) {
  TheoryPoint point;
  point.n = n;
  point.p = p;
  point.x = x;
  point.length = length;
  point.user_count = user_count;
  point.p_cd_exact = complete_deletion_probability(n, p, x);
  point.p_cd_approx = complete_deletion_bound(p, x);
  point.p1 = bit_survival_probability(true, point.p_cd_exact);
  point.ep = exact_extraction_rate_uniform(point.p_cd_exact, length);
  point.ep_baseline = exact_extraction_rate_baseline(point.p_cd_exact, length);
  point.ep_sparse =
      exact_extraction_rate_sparse(user_count, length, point.p_cd_exact);
  point.ni_bound = insertion_bound(x, user_count);
  return point;
}

std::string format_number(double value) {
  std::array<char, 64> buf;
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), result.ptr);
}

std::string theory_csv(const std::vector<TheoryPoint>& points) {
  std::string out =
      "n,p,x,L,n_u,p_cd_exact,p_cd_approx,p1,ep,ep_baseline,ep_sparse,"
      "ni_bound\n";
  for (const TheoryPoint& point : points) {
    out += std::to_string(point.n);
    out += ',';
    out += format_number(point.p);
    out += ',';
    out += std::to_string(point.x);
    out += ',';
    out += std::to_string(point.length);
    out += ',';
    out += std::to_string(point.user_count);
    out += ',';
    out += format_number(point.p_cd_exact);
    out += ',';
    out += format_number(point.p_cd_approx);
    out += ',';
    out += format_number(point.p1);
    out += ',';
    out += format_number(point.ep);
    out += ',';
    out += format_number(point.ep_baseline);
    out += ',';
    out += format_number(point.ep_sparse);
    out += ',';
    out += format_number(point.ni_bound);
    out += '\n';
  }
  return out;
}

}  // namespace spsw
