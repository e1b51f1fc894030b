#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "hgsr/dataset.hpp"
#include "hgsr/errors.hpp"
#include "hgsr/experiment.hpp"

namespace hgsr {
namespace {

ExperimentData zoo_data(const ExperimentConfig& cfg) {
  return ExperimentData(load_dataset(HGSR_DATA_DIR "/zoo.csv"), load_schema(HGSR_DATA_DIR "/zoo.schema.json"),
                        cfg);
}

ExperimentConfig quick_config() {
  ExperimentConfig cfg;
  cfg.n_trials = 6;
  cfg.threads = 1;
  cfg.solver.max_iters = 3000;
  return cfg;
}

// Solves (I - alpha S_UU) f_U = alpha S_UO y + (1 - alpha) init by Gaussian elimination.
Signal propagation_fixed_point(const std::vector<std::vector<double>>& w, const Observation& obs, double alpha,
                               double init) {
  const std::size_t n = w.size();
  std::vector<double> deg(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (double x : w[i]) deg[i] += x;
  auto s = [&](std::size_t i, std::size_t j) { return w[i][j] / std::sqrt(deg[i] * deg[j]); };
  std::vector<int> pos(n, -1);
  Signal y(n, 0.0);
  for (std::size_t k = 0; k < obs.size(); ++k) {
    pos[obs.indices()[k]] = -2;
    y[obs.indices()[k]] = obs.values()[k];
  }
  std::vector<std::size_t> u;
  for (std::size_t i = 0; i < n; ++i) {
    if (pos[i] == -1) {
      pos[i] = static_cast<int>(u.size());
      u.push_back(i);
    }
  }
  const std::size_t m = u.size();
  std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
  for (std::size_t r = 0; r < m; ++r) {
    a[r][r] = 1.0;
    a[r][m] = (1.0 - alpha) * init;
    for (std::size_t j = 0; j < n; ++j) {
      if (w[u[r]][j] == 0.0) continue;
      if (pos[j] >= 0) {
        a[r][static_cast<std::size_t>(pos[j])] -= alpha * s(u[r], j);
      } else {
        a[r][m] += alpha * s(u[r], j) * y[j];
      }
    }
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < m; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == c) continue;
      const double k = a[r][c] / a[c][c];
      for (std::size_t j = c; j <= m; ++j) a[r][j] -= k * a[c][j];
    }
  }
  Signal f = y;
  for (std::size_t r = 0; r < m; ++r) f[u[r]] = a[r][m] / a[r][r];
  return f;
}

TEST(LabelPropagation, SingleEdgeUnitAlphaCopiesObservation) {
  const Hypergraph h(2, {{0, 1}});
  const Observation obs(2, {0}, {0.95});
  const Signal f = baseline_label_propagation(h, obs, 50, 1.0);
  EXPECT_DOUBLE_EQ(f[0], 0.95);
  EXPECT_DOUBLE_EQ(f[1], 0.95);
}

TEST(LabelPropagation, SingleEdgeDampedReachesFixedPoint) {
  const Hypergraph h(2, {{0, 1}});
  const Observation obs(2, {0}, {0.95});
  const Signal f = baseline_label_propagation(h, obs, 200, 0.9);
  EXPECT_NEAR(f[1], 0.9 * 0.95 + 0.1 * 0.5, 1e-12);
}

TEST(LabelPropagation, NoEdgesKeepsInitialValues) {
  const Hypergraph h(4, {});
  const Observation obs(4, {2}, {0.05});
  EXPECT_EQ(baseline_label_propagation(h, obs, 10, 0.9), (Signal{0.5, 0.5, 0.05, 0.5}));
  EXPECT_EQ(baseline_label_propagation(h, obs, 10, 0.9, 0.3), (Signal{0.3, 0.3, 0.05, 0.3}));
}

TEST(LabelPropagation, MatchesLinearSystemOnCliqueExpansion) {
  const Hypergraph h(6, {{0, 1, 2}, {2, 3}, {3, 4, 5}, {0, 5}, {1, 2, 3, 4}});
  std::vector<std::vector<double>> w(6, std::vector<double>(6, 0.0));
  for (const auto& e : h.hyperedges()) {
    for (VertexId a : e)
      for (VertexId b : e)
        if (a != b) w[a][b] += 1.0 / static_cast<double>(e.size() - 1);
  }
  const Observation obs(6, {0, 4}, {0.95, 0.05});
  const Signal expect = propagation_fixed_point(w, obs, 0.9, 0.5);
  const Signal f = baseline_label_propagation(h, obs, 2000, 0.9);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(f[i], expect[i], 1e-8) << "i=" << i;
}

TEST(LabelPropagation, RejectsBadArguments) {
  const Hypergraph h(3, {{0, 1}});
  EXPECT_THROW(baseline_label_propagation(h, Observation(3, {0}, {1.0}), 5, 0.0), ValidationError);
  EXPECT_THROW(baseline_label_propagation(h, Observation(4, {0}, {1.0}), 5, 0.5), DimensionError);
}

TEST(ExperimentConfig, SampleCountFloors) {
  ExperimentConfig cfg;
  EXPECT_EQ(cfg.sample_count(0.4), 12u);
  EXPECT_EQ(cfg.sample_count(0.7), 21u);
  cfg.n_vertices = 7;
  EXPECT_EQ(cfg.sample_count(0.5), 3u);
}

TEST(ExperimentConfig, ValidationRejectsDegenerateSplits) {
  ExperimentConfig cfg;
  EXPECT_NO_THROW(cfg.validate(101));
  cfg.n_vertices = 200;
  EXPECT_THROW(cfg.validate(101), ValidationError);
  cfg = ExperimentConfig{};
  cfg.fractions = {0.01};
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg.fractions = {0.5, 0.4};
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg = ExperimentConfig{};
  cfg.threshold = 0.99;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg = ExperimentConfig{};
  cfg.n_trials = 0;
  EXPECT_THROW(cfg.validate(), ValidationError);
}

TEST(ExperimentData, UnknownSignalFeatureIsValidationError) {
  ExperimentConfig cfg = quick_config();
  cfg.signal_feature = "wings";
  EXPECT_THROW(zoo_data(cfg), ValidationError);
}

TEST(RunTrial, OneUnobservedVertexScoresZeroOrOne) {
  ExperimentConfig cfg = quick_config();
  cfg.fractions = {0.97};
  const ExperimentData data = zoo_data(cfg);
  for (std::size_t t = 0; t < 5; ++t) {
    auto rng = trial_rng(cfg.seed, 0, t);
    const TrialReport r = run_trial(cfg, data, 0.97, rng);
    EXPECT_EQ(r.n_observed, 29u);
    EXPECT_TRUE(r.accuracy_unobserved == 0.0 || r.accuracy_unobserved == 1.0);
  }
}

TEST(RunTrial, ConstantSignalIsRecoveredPerfectly) {
  std::ostringstream csv;
  csv << "id,a,b,sig\n";
  for (int i = 0; i < 12; ++i) csv << "r" << i << ',' << (i % 2) << ',' << (i % 3 == 0) << ",1\n";
  std::istringstream in(csv.str());
  DatasetSchema schema;
  schema.signal_feature = "sig";
  schema.boolean_features = {"a", "b", "sig"};
  ExperimentConfig cfg = quick_config();
  cfg.n_vertices = 10;
  const ExperimentData data(read_dataset(in), schema, cfg);
  auto rng = trial_rng(1, 0, 0);
  const TrialReport r = run_trial(cfg, data, 0.5, rng);
  EXPECT_EQ(r.accuracy_unobserved, 1.0);
  EXPECT_EQ(r.majority_rate, 1.0);
}

TEST(RunTrial, SameGeneratorStateGivesSameReport) {
  const ExperimentConfig cfg = quick_config();
  const ExperimentData data = zoo_data(cfg);
  auto a = trial_rng(cfg.seed, 1, 3);
  auto b = trial_rng(cfg.seed, 1, 3);
  const TrialReport ra = run_trial(cfg, data, 0.5, a);
  const TrialReport rb = run_trial(cfg, data, 0.5, b);
  EXPECT_EQ(ra.accuracy_unobserved, rb.accuracy_unobserved);
  EXPECT_EQ(ra.baseline_accuracy, rb.baseline_accuracy);
  EXPECT_EQ(ra.majority_rate, rb.majority_rate);
}

TEST(RunTrial, DegenerateFractionThrows) {
  const ExperimentConfig cfg = quick_config();
  const ExperimentData data = zoo_data(cfg);
  auto rng = trial_rng(1, 0, 0);
  EXPECT_THROW(run_trial(cfg, data, 0.01, rng), ValidationError);
}

TEST(RunSweep, SingleTrialRowEqualsTheTrial) {
  ExperimentConfig cfg = quick_config();
  cfg.n_trials = 1;
  cfg.fractions = {0.5};
  const ExperimentData data = zoo_data(cfg);
  const SweepResult sweep = run_sweep(cfg, data);
  ASSERT_EQ(sweep.rows.size(), 1u);
  auto rng = trial_rng(cfg.seed, 0, 0);
  const TrialReport r = run_trial(cfg, data, 0.5, rng);
  EXPECT_EQ(sweep.rows[0].mean_accuracy, r.accuracy_unobserved);
  EXPECT_EQ(sweep.rows[0].std_accuracy, 0.0);
  EXPECT_EQ(sweep.rows[0].baseline_mean, *r.baseline_accuracy);
}

TEST(RunSweep, TableIsReproducibleAndThreadIndependent) {
  ExperimentConfig cfg = quick_config();
  const ExperimentData data = zoo_data(cfg);
  auto table = [&](std::size_t threads) {
    ExperimentConfig c = cfg;
    c.threads = threads;
    std::ostringstream out;
    write_sweep_table(out, run_sweep(c, data).rows);
    return out.str();
  };
  const std::string serial = table(1);
  EXPECT_EQ(serial, table(1));
  EXPECT_EQ(serial, table(3));
  cfg.seed += 1;
  EXPECT_NE(serial, table(1));
}

TEST(RunSweep, DisabledBaselineIsNaN) {
  ExperimentConfig cfg = quick_config();
  cfg.baseline_enabled = false;
  cfg.fractions = {0.4};
  const SweepResult s = run_sweep(cfg, zoo_data(cfg));
  EXPECT_TRUE(std::isnan(s.rows[0].baseline_mean));
  EXPECT_FALSE(s.trials[0].baseline_accuracy.has_value());
}

TEST(RunSweep, FixedSubsampleSharesVerticesAcrossTrials) {
  ExperimentConfig cfg = quick_config();
  cfg.resample_vertices = false;
  cfg.fractions = {0.5};
  const SweepResult s = run_sweep(cfg, zoo_data(cfg));
  ASSERT_EQ(s.trials.size(), 6u);
  for (const auto& t : s.trials) EXPECT_EQ(t.n_observed, 15u);
}

TEST(WriteSweepTable, FormatsRows) {
  SweepRow row;
  row.fraction = 0.4;
  row.mean_accuracy = 0.9;
  row.std_accuracy = 0.1;
  row.baseline_mean = 0.8;
  row.baseline_std = 0.2;
  row.n_trials = 1000;
  std::ostringstream out;
  write_sweep_table(out, std::span<const SweepRow>(&row, 1));
  EXPECT_EQ(out.str(),
            "fraction,mean_accuracy,std_accuracy,baseline_mean,baseline_std,n_trials\n"
            "0.4000,0.900000,0.100000,0.800000,0.200000,1000\n");
}

}  // namespace
}  // namespace hgsr
