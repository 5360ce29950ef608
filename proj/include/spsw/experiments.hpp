#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spsw/table.hpp"

namespace spsw {

// One embed/attack/extract/identify round. `seed` is the per-trial seed all
// randomness of the trial derives from; records are pure functions of
// (table, grid, base_seed).
struct TrialRecord {
  std::string scheme;          // "spsw" or "baseline"
  std::size_t n = 0;           // source table rows, before embedding
  std::size_t n_u = 0;
  std::size_t x = 0;
  double p = 0.0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool exact_match = false;
  double bit_accuracy = 0.0;
  // 1-based rank of the true recipient in the suspect list; n_u when the
  // identification points elsewhere entirely.
  std::size_t suspect_rank = 0;
  std::size_t embedded_ones = 0;   // popcount of the embedded watermark
  std::size_t extracted_ones = 0;  // popcount of the extracted sequence
  // Groups that lost every fake tuple: for spsw counted over the embedded
  // ('1') groups, for the baseline over all L groups.
  std::size_t wiped_groups = 0;
};

struct ExperimentGrid {
  std::vector<std::size_t> x_values;
  std::vector<double> p_values;
  std::vector<std::size_t> n_u_values;
  std::size_t trials = 50;
  std::uint64_t base_seed = 20240501;
  // Synthetic primary-key column of the source table, if any; excluded from
  // matching and refreshed on generated fakes.
  std::optional<std::size_t> pk_column;
};

void validate_grid(const ExperimentGrid& grid);

// Per-trial seed: mixes the base seed with the grid point and trial index,
// so any sub-grid reproduces the full run's records exactly.
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t n_u,
                         std::size_t x, double p, std::size_t trial);

// Full robustness protocol at every (n_u, x, p) grid point: assign codebook,
// generate fakes, embed for a uniformly chosen user, attack, extract,
// identify. Trials run in parallel; output order is canonical.
std::vector<TrialRecord> run_robustness(const Table& table,
                                        const ExperimentGrid& grid);

struct TransparencyPoint {
  std::size_t n_u = 0;
  std::size_t x = 0;
  std::size_t length = 0;  // watermark bits L
  double measured_ni = 0.0;
  double ni_bound = 0.0;
};

// Mean insertions over the assigned codebook vs the worst-case bound, per
// user count.
std::vector<TransparencyPoint> run_transparency(
    const std::vector<std::size_t>& n_u_values, std::size_t x);

// Robustness protocol run for both schemes with identical attack seeds at
// each grid point; two records (spsw, baseline) per trial.
std::vector<TrialRecord> run_comparison(const Table& table,
                                        const ExperimentGrid& grid);

// CSV with header scheme,n,n_u,x,p,trial,seed,exact_match,bit_accuracy,
// suspect_rank,embedded_ones,extracted_ones,wiped_groups.
std::string records_to_csv(const std::vector<TrialRecord>& records);

// Aggregated series for plotting, one row per (scheme, n_u, x, p): header
// scheme,n_u,x,p,trials,exact_match_rate,bit_accuracy_mean,
// identification_rate,wiped_group_rate.
std::string plot_data_csv(const std::vector<TrialRecord>& records);

// CSV with header n_u,x,L,measured_ni,ni_bound.
std::string transparency_to_csv(const std::vector<TransparencyPoint>& points);

}  // namespace spsw
