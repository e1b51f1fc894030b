#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hgsr/dataset.hpp"
#include "hgsr/hypergraph.hpp"
#include "hgsr/lre.hpp"

namespace hgsr {

/// Graph label propagation on the clique expansion of `h`.
///
/// Each c-vertex hyperedge adds 1/(c-1) to the weight of every vertex pair it
/// contains. Starting from f_init (observed values, `init_unobserved`
/// elsewhere) it iterates f <- alpha * S f + (1 - alpha) * f_init with S the
/// symmetrically normalized adjacency, re-clamping observed entries to y after
/// each round. Isolated vertices keep their initial value.
Signal baseline_label_propagation(const Hypergraph& h, const Observation& obs,
                                  std::size_t iterations, double alpha,
                                  double init_unobserved = 0.5);

struct ExperimentConfig {
  std::string signal_feature;  // empty: take it from the schema
  double positive_level = 0.95;
  double negative_level = 0.05;
  double threshold = 0.5;
  std::size_t n_vertices = 30;
  std::vector<double> fractions = {0.4, 0.5, 0.6, 0.7};
  std::size_t n_trials = 1000;
  std::uint64_t seed = 20210601;
  SolverConfig solver;
  bool baseline_enabled = true;
  double baseline_alpha = 0.9;
  std::size_t baseline_iterations = 200;
  std::size_t max_hyperedge_cardinality = 0;  // 0: no cap
  bool resample_vertices = true;  // false: one subsample shared by every trial
  std::size_t threads = 0;        // 0: hardware concurrency

  /// Observed-vertex count for a fraction: floor(fraction * n_vertices).
  std::size_t sample_count(double fraction) const;

  /// Throws ValidationError on bad fields; with n_instances > 0 also checks
  /// that the subsample fits the dataset.
  void validate(std::size_t n_instances = 0) const;
};

struct TrialReport {
  double fraction = 0.0;
  std::size_t trial_index = 0;
  double accuracy_unobserved = 0.0;
  std::optional<double> baseline_accuracy;
  std::size_t n_observed = 0;
  double majority_rate = 0.0;  // share of the larger class among unobserved vertices
  bool converged = false;
};

/// Dataset plus the resolved schema, checked once per sweep.
struct ExperimentData {
  Dataset dataset;
  DatasetSchema schema;
  std::string signal_feature;

  ExperimentData(Dataset ds, DatasetSchema schema, const ExperimentConfig& cfg);
};

/// One Monte Carlo trial: subsample, build topology, observe, recover, score.
/// Draws the subsample from `rng` unless `fixed_subset` is non-empty.
TrialReport run_trial(const ExperimentConfig& cfg, const ExperimentData& data, double fraction,
                      std::mt19937_64& rng, std::span<const std::size_t> fixed_subset = {});

/// Per-trial generator for (seed, fraction index, trial index).
std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t fraction_index, std::size_t trial_index);

struct SweepRow {
  double fraction = 0.0;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
  double baseline_mean = 0.0;  // NaN when the baseline is disabled
  double baseline_std = 0.0;
  std::size_t n_trials = 0;
  double majority_mean = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<TrialReport> trials;  // fraction-major, trial-minor
};

/// Runs n_trials per fraction, in parallel when cfg.threads allows. Output
/// depends only on the data and config, not on the thread count.
SweepResult run_sweep(const ExperimentConfig& cfg, const ExperimentData& data);

/// CSV `fraction,mean_accuracy,std_accuracy,baseline_mean,baseline_std,n_trials`.
void write_sweep_table(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace hgsr
