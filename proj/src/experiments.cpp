#include "spsw/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <utility>

#include "spsw/analytics.hpp"
#include "spsw/attacks.hpp"
#include "spsw/baseline.hpp"
#include "spsw/codebook.hpp"
#include "spsw/error.hpp"
#include "spsw/fakegen.hpp"
#include "spsw/rng.hpp"
#include "spsw/watermark.hpp"

namespace spsw {

namespace {

// Runs body(0..count-1) over a small thread pool. The first exception wins;
// remaining work is drained. Callers write to disjoint output slots, so
// scheduling never affects results.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& body) {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 4;
  workers = std::min<unsigned>(workers, 16);
  if (count < 2 || workers < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<std::string> make_user_ids(std::size_t n_u) {
  std::vector<std::string> ids;
  ids.reserve(n_u);
  for (std::size_t i = 0; i < n_u; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "user-%04zu", i);
    ids.emplace_back(buf);
  }
  return ids;
}

struct GridPoint {
  std::size_t n_u_index = 0;
  std::size_t n_u = 0;
  std::size_t x = 0;
  double p = 0.0;
};

std::vector<GridPoint> flatten(const ExperimentGrid& grid) {
  std::vector<GridPoint> points;
  points.reserve(grid.n_u_values.size() * grid.x_values.size() *
                 grid.p_values.size());
  for (std::size_t ni = 0; ni < grid.n_u_values.size(); ++ni)
    for (std::size_t x : grid.x_values)
      for (double p : grid.p_values)
        points.push_back(GridPoint{ni, grid.n_u_values[ni], x, p});
  return points;
}

std::string point_context(const GridPoint& pt, std::size_t trial) {
  return "n_u=" + std::to_string(pt.n_u) + " x=" + std::to_string(pt.x) +
         " p=" + format_number(pt.p) + " trial=" + std::to_string(trial);
}

TrialRecord run_spsw_trial(const Table& table, const ExperimentGrid& grid,
                           const GridPoint& pt, std::size_t trial,
                           const Codebook& codebook) {
  const std::uint64_t ts =
      trial_seed(grid.base_seed, pt.n_u, pt.x, pt.p, trial);
  const std::size_t length = watermark_length(pt.n_u);

  GeneratorSpec gen;
  gen.kind = GeneratorSpec::Kind::statistical_mimic;
  gen.seed = mix_seed({ts, 1});
  gen.pk_column = grid.pk_column;
  const FakeTupleSet fakes = generate_fake_tuples(table, length, pt.x, gen);

  Rng chooser(mix_seed({ts, 2}));
  const std::size_t user_index =
      static_cast<std::size_t>(chooser.below(pt.n_u));
  const CodebookEntry& truth = codebook.entry(user_index);

  const Table marked = embed(table, truth.watermark, fakes, mix_seed({ts, 3}));
  const Table attacked =
      delete_random(marked, AttackSpec{pt.p, mix_seed({ts, 4})});
  const WatermarkSequence extracted = extract(attacked, fakes);
  const ExtractionResult result = identify(extracted, codebook);

  TrialRecord rec;
  rec.scheme = "spsw";
  rec.n = table.n();
  rec.n_u = pt.n_u;
  rec.x = pt.x;
  rec.p = pt.p;
  rec.trial = trial;
  rec.seed = ts;
  rec.exact_match = extracted == truth.watermark;
  rec.bit_accuracy =
      static_cast<double>(length - extracted.hamming_distance(truth.watermark)) /
      static_cast<double>(length);
  rec.suspect_rank = pt.n_u;
  for (std::size_t i = 0; i < result.suspects.size(); ++i) {
    if (result.suspects[i].user_id == truth.user_id) {
      rec.suspect_rank = i + 1;
      break;
    }
  }
  rec.embedded_ones = truth.watermark.popcount();
  rec.extracted_ones = extracted.popcount();
  // Extraction can only lose '1' bits, so the difference is exactly the
  // number of wiped embedded groups.
  rec.wiped_groups = rec.embedded_ones - rec.extracted_ones;
  return rec;
}

TrialRecord run_baseline_trial(const Table& table, const ExperimentGrid& grid,
                               const GridPoint& pt, std::size_t trial,
                               const Codebook& codebook) {
  const std::uint64_t ts =
      trial_seed(grid.base_seed, pt.n_u, pt.x, pt.p, trial);
  const std::size_t length = watermark_length(pt.n_u);

  Rng chooser(mix_seed({ts, 2}));
  const std::size_t user_index =
      static_cast<std::size_t>(chooser.below(pt.n_u));
  const CodebookEntry& truth = codebook.entry(user_index);

  BaselineParams params;
  params.length = length;
  params.group_size = pt.x;
  params.key = "baseline-key-" + std::to_string(grid.base_seed);

  const BaselineEmbedResult embedded =
      baseline_embed(table, truth.watermark, params, mix_seed({ts, 5}),
                     grid.pk_column);
  // Same attack-seed stream as the spsw trial at this grid point.
  const Table attacked =
      delete_random(embedded.table, AttackSpec{pt.p, mix_seed({ts, 4})});
  const WatermarkSequence extracted =
      baseline_extract(attacked, embedded.state, params);

  TrialRecord rec;
  rec.scheme = "baseline";
  rec.n = table.n();
  rec.n_u = pt.n_u;
  rec.x = pt.x;
  rec.p = pt.p;
  rec.trial = trial;
  rec.seed = ts;
  rec.exact_match = extracted == truth.watermark;
  rec.bit_accuracy =
      static_cast<double>(length - extracted.hamming_distance(truth.watermark)) /
      static_cast<double>(length);

  // Rank every codebook entry by distance to the extraction, stable in
  // codebook order, and report where the truth lands.
  const std::size_t truth_distance = extracted.hamming_distance(truth.watermark);
  std::size_t rank = 1;
  for (std::size_t i = 0; i < codebook.size(); ++i) {
    if (i == user_index) continue;
    const std::size_t d =
        extracted.hamming_distance(codebook.entry(i).watermark);
    if (d < truth_distance || (d == truth_distance && i < user_index)) ++rank;
  }
  rec.suspect_rank = rank;
  rec.embedded_ones = truth.watermark.popcount();
  rec.extracted_ones = extracted.popcount();
  rec.wiped_groups = baseline_wiped_groups(attacked, embedded.state);
  return rec;
}

}  // namespace

void validate_grid(const ExperimentGrid& grid) {
  if (grid.x_values.empty() || grid.p_values.empty() ||
      grid.n_u_values.empty())
    throw ValidationError("grid value lists must not be empty");
  if (grid.trials < 1) throw ValidationError("trials must be >= 1");
  for (std::size_t x : grid.x_values)
    if (x < 1) throw ValidationError("group size must be >= 1");
  for (double p : grid.p_values)
    if (!(p >= 0.0 && p <= 1.0))
      throw ValidationError("deletion ratio must be in [0, 1]");
  for (std::size_t n_u : grid.n_u_values)
    if (n_u < 2) throw ValidationError("user count must be >= 2");
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t n_u,
                         std::size_t x, double p, std::size_t trial) {
  const std::uint64_t p_key =
      static_cast<std::uint64_t>(std::llround(p * 1e9));
  return mix_seed({base_seed, n_u, x, p_key, trial});
}

std::vector<TrialRecord> run_robustness(const Table& table,
                                        const ExperimentGrid& grid) {
  validate_grid(grid);
  if (table.n() < 1) throw ValidationError("source table is empty");

  std::vector<Codebook> codebooks;
  codebooks.reserve(grid.n_u_values.size());
  for (std::size_t n_u : grid.n_u_values)
    codebooks.push_back(
        assign_codebook(make_user_ids(n_u), watermark_length(n_u)));

  const std::vector<GridPoint> points = flatten(grid);
  std::vector<TrialRecord> records(points.size() * grid.trials);
  parallel_for(records.size(), [&](std::size_t task) {
    const GridPoint& pt = points[task / grid.trials];
    const std::size_t trial = task % grid.trials;
    try {
      records[task] =
          run_spsw_trial(table, grid, pt, trial, codebooks[pt.n_u_index]);
    } catch (const Error& e) {
      throw Error(point_context(pt, trial) + ": " + e.what());
    }
  });
  return records;
}

std::vector<TransparencyPoint> run_transparency(
    const std::vector<std::size_t>& n_u_values, std::size_t x) {
  if (n_u_values.empty())
    throw ValidationError("user-count list must not be empty");
  if (x < 1) throw ValidationError("group size must be >= 1");

  std::vector<TransparencyPoint> out;
  out.reserve(n_u_values.size());
  for (std::size_t n_u : n_u_values) {
    if (n_u < 2) throw ValidationError("user count must be >= 2");
    const std::size_t length = watermark_length(n_u);
    const Codebook codebook = assign_codebook(make_user_ids(n_u), length);
    TransparencyPoint pt;
    pt.n_u = n_u;
    pt.x = x;
    pt.length = length;
    pt.measured_ni = expected_insertions(codebook, x);
    pt.ni_bound = insertion_bound(x, n_u);
    out.push_back(pt);
  }
  return out;
}

std::vector<TrialRecord> run_comparison(const Table& table,
                                        const ExperimentGrid& grid) {
  validate_grid(grid);
  if (table.n() < 1) throw ValidationError("source table is empty");

  std::vector<Codebook> codebooks;
  codebooks.reserve(grid.n_u_values.size());
  for (std::size_t n_u : grid.n_u_values)
    codebooks.push_back(
        assign_codebook(make_user_ids(n_u), watermark_length(n_u)));

  const std::vector<GridPoint> points = flatten(grid);
  std::vector<TrialRecord> records(points.size() * grid.trials * 2);
  parallel_for(points.size() * grid.trials, [&](std::size_t task) {
    const GridPoint& pt = points[task / grid.trials];
    const std::size_t trial = task % grid.trials;
    try {
      records[task * 2] =
          run_spsw_trial(table, grid, pt, trial, codebooks[pt.n_u_index]);
      records[task * 2 + 1] =
          run_baseline_trial(table, grid, pt, trial, codebooks[pt.n_u_index]);
    } catch (const Error& e) {
      throw Error(point_context(pt, trial) + ": " + e.what());
    }
  });
  return records;
}

std::string records_to_csv(const std::vector<TrialRecord>& records) {
  std::string out =
      "scheme,n,n_u,x,p,trial,seed,exact_match,bit_accuracy,suspect_rank,"
      "embedded_ones,extracted_ones,wiped_groups\n";
  for (const TrialRecord& rec : records) {
    out += rec.scheme;
    out += ',';
    out += std::to_string(rec.n);
    out += ',';
    out += std::to_string(rec.n_u);
    out += ',';
    out += std::to_string(rec.x);
    out += ',';
    out += format_number(rec.p);
    out += ',';
    out += std::to_string(rec.trial);
    out += ',';
    out += std::to_string(rec.seed);
    out += ',';
    out += rec.exact_match ? '1' : '0';
    out += ',';
    out += format_number(rec.bit_accuracy);
    out += ',';
    out += std::to_string(rec.suspect_rank);
    out += ',';
    out += std::to_string(rec.embedded_ones);
    out += ',';
    out += std::to_string(rec.extracted_ones);
    out += ',';
    out += std::to_string(rec.wiped_groups);
    out += '\n';
  }
  return out;
}

std::string plot_data_csv(const std::vector<TrialRecord>& records) {
  struct Aggregate {
    std::string scheme;
    std::size_t n_u = 0;
    std::size_t x = 0;
    double p = 0.0;
    std::size_t trials = 0;
    std::size_t exact = 0;
    double bit_sum = 0.0;
    std::size_t top_ranked = 0;
    std::size_t wiped = 0;
    std::size_t group_slots = 0;
  };

  std::vector<Aggregate> aggregates;
  std::unordered_map<std::string, std::size_t> index;
  for (const TrialRecord& rec : records) {
    const std::string key = rec.scheme + '|' + std::to_string(rec.n_u) + '|' +
                            std::to_string(rec.x) + '|' + format_number(rec.p);
    auto [it, inserted] = index.try_emplace(key, aggregates.size());
    if (inserted) {
      Aggregate agg;
      agg.scheme = rec.scheme;
      agg.n_u = rec.n_u;
      agg.x = rec.x;
      agg.p = rec.p;
      aggregates.push_back(std::move(agg));
    }
    Aggregate& agg = aggregates[it->second];
    agg.trials += 1;
    agg.exact += rec.exact_match ? 1 : 0;
    agg.bit_sum += rec.bit_accuracy;
    agg.top_ranked += rec.suspect_rank == 1 ? 1 : 0;
    agg.wiped += rec.wiped_groups;
    agg.group_slots += rec.scheme == "baseline" ? watermark_length(rec.n_u)
                                                : rec.embedded_ones;
  }

  std::string out =
      "scheme,n_u,x,p,trials,exact_match_rate,bit_accuracy_mean,"
      "identification_rate,wiped_group_rate\n";
  for (const Aggregate& agg : aggregates) {
    const double trials = static_cast<double>(agg.trials);
    out += agg.scheme;
    out += ',';
    out += std::to_string(agg.n_u);
    out += ',';
    out += std::to_string(agg.x);
    out += ',';
    out += format_number(agg.p);
    out += ',';
    out += std::to_string(agg.trials);
    out += ',';
    out += format_number(static_cast<double>(agg.exact) / trials);
    out += ',';
    out += format_number(agg.bit_sum / trials);
    out += ',';
    out += format_number(static_cast<double>(agg.top_ranked) / trials);
    out += ',';
    out += format_number(agg.group_slots == 0
                             ? 0.0
                             : static_cast<double>(agg.wiped) /
                                   static_cast<double>(agg.group_slots));
    out += '\n';
  }
  return out;
}

std::string transparency_to_csv(const std::vector<TransparencyPoint>& points) {
  std::string out = "n_u,x,L,measured_ni,ni_bound\n";
  for (const TransparencyPoint& pt : points) {
    out += std::to_string(pt.n_u);
    out += ',';
    out += std::to_string(pt.x);
    out += ',';
    out += std::to_string(pt.length);
    out += ',';
    out += format_number(pt.measured_ni);
    out += ',';
    out += format_number(pt.ni_bound);
    out += '\n';
  }
  return out;
}

}  // namespace spsw
