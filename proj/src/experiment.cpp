#include "hgsr/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "hgsr/errors.hpp"
#include "hgsr/laplacian.hpp"

namespace hgsr {

Signal baseline_label_propagation(const Hypergraph& h, const Observation& obs,
                                  std::size_t iterations, double alpha, double init_unobserved) {
  if (obs.n_vertices() != h.n_vertices()) throw DimensionError("label propagation: vertex count mismatch");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ValidationError("label propagation: alpha must lie in (0, 1]");
  const std::size_t n = h.n_vertices();

  std::vector<std::map<VertexId, double>> weights(n);
  for (const auto& e : h.hyperedges()) {
    const double w = 1.0 / static_cast<double>(e.size() - 1);
    for (std::size_t a = 0; a < e.size(); ++a) {
      for (std::size_t b = a + 1; b < e.size(); ++b) {
        weights[e[a]][e[b]] += w;
        weights[e[b]][e[a]] += w;
      }
    }
  }
  std::vector<double> inv_sqrt_deg(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double d = 0.0;
    for (const auto& [j, w] : weights[i]) d += w;
    if (d > 0.0) inv_sqrt_deg[i] = 1.0 / std::sqrt(d);
  }
  struct Entry {
    VertexId col;
    double value;
  };
  std::vector<std::vector<Entry>> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [j, w] : weights[i]) s[i].push_back({j, w * inv_sqrt_deg[i] * inv_sqrt_deg[j]});
  }

  Signal init(n, init_unobserved);
  for (std::size_t k = 0; k < obs.size(); ++k) init[obs.indices()[k]] = obs.values()[k];
  Signal f = init;
  Signal next(n);
  for (std::size_t it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      if (s[i].empty()) {
        next[i] = init[i];
        continue;
      }
      double acc = 0.0;
      for (const auto& entry : s[i]) acc += entry.value * f[entry.col];
      next[i] = alpha * acc + (1.0 - alpha) * init[i];
    }
    for (std::size_t k = 0; k < obs.size(); ++k) next[obs.indices()[k]] = obs.values()[k];
    std::swap(f, next);
  }
  return f;
}

std::size_t ExperimentConfig::sample_count(double fraction) const {
  // The epsilon keeps e.g. 0.7 * 30 from flooring to 20.
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n_vertices) + 1e-9));
}

void ExperimentConfig::validate(std::size_t n_instances) const {
  auto fail = [](const std::string& msg) { throw ValidationError("experiment config: " + msg); };
  solver.validate();
  if (n_vertices < 2) fail("n_vertices must be at least 2");
  if (n_instances > 0 && n_vertices > n_instances) {
    fail("n_vertices=" + std::to_string(n_vertices) + " exceeds the dataset's " +
         std::to_string(n_instances) + " instances");
  }
  if (fractions.empty()) fail("fractions must not be empty");
  if (!std::is_sorted(fractions.begin(), fractions.end())) fail("fractions must be sorted");
  for (double fr : fractions) {
    if (!(fr > 0.0 && fr < 1.0)) fail("fraction " + fmt::format("{}", fr) + " outside (0, 1)");
    const std::size_t s = sample_count(fr);
    if (s < 1 || s > n_vertices - 1) {
      fail("fraction " + fmt::format("{}", fr) + " observes " + std::to_string(s) + " of " +
           std::to_string(n_vertices) + " vertices; need between 1 and N-1");
    }
  }
  if (n_trials == 0) fail("n_trials must be positive");
  if (!(negative_level >= 0.0 && positive_level <= 1.0 && negative_level < positive_level)) {
    fail("signal levels must satisfy 0 <= negative < positive <= 1");
  }
  if (!(threshold > negative_level && threshold < positive_level)) {
    fail("threshold must lie strictly between the signal levels");
  }
  if (!(baseline_alpha > 0.0 && baseline_alpha <= 1.0)) fail("baseline_alpha must lie in (0, 1]");
  if (max_hyperedge_cardinality == 1) fail("max_hyperedge_cardinality must be 0 or >= 2");
}

ExperimentData::ExperimentData(Dataset ds, DatasetSchema sch, const ExperimentConfig& cfg)
    : dataset(std::move(ds)), schema(std::move(sch)),
      signal_feature(cfg.signal_feature.empty() ? schema.signal_feature : cfg.signal_feature) {
  schema.signal_feature = signal_feature;
  validate_schema(schema, dataset);
  cfg.validate(dataset.n_instances());
}

namespace {

// First k entries of a uniformly shuffled 0..n-1 (partial Fisher-Yates).
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(k);
  return pool;
}

double accuracy_over(std::span<const std::size_t> vertices, std::span<const double> labels,
                     std::span<const double> truth) {
  std::size_t correct = 0;
  for (std::size_t v : vertices) correct += labels[v] == truth[v] ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(vertices.size());
}

struct Stats {
  double mean;
  double std;
};

Stats mean_std(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

}  // namespace

TrialReport run_trial(const ExperimentConfig& cfg, const ExperimentData& data, double fraction,
                      std::mt19937_64& rng, std::span<const std::size_t> fixed_subset) {
  const std::size_t n = cfg.n_vertices;
  const std::size_t s = cfg.sample_count(fraction);
  if (s == 0 || s >= n) {
    throw ValidationError("degenerate split: fraction " + fmt::format("{}", fraction) + " observes " +
                          std::to_string(s) + " of " + std::to_string(n) + " vertices");
  }
  std::vector<std::size_t> subset;
  if (fixed_subset.empty()) {
    subset = sample_without_replacement(data.dataset.n_instances(), n, rng);
  } else {
    if (fixed_subset.size() != n) throw DimensionError("fixed subsample size differs from n_vertices");
    subset.assign(fixed_subset.begin(), fixed_subset.end());
  }

  const Hypergraph h = build_topology(data.dataset, data.schema, data.signal_feature, subset,
                                      cfg.max_hyperedge_cardinality);
  const Signal truth = signal_levels(data.dataset, data.schema, data.signal_feature, subset,
                                     cfg.negative_level, cfg.positive_level);

  auto observed = sample_without_replacement(n, s, rng);
  std::sort(observed.begin(), observed.end());
  std::vector<VertexId> idx;
  std::vector<double> ys;
  std::vector<bool> is_observed(n, false);
  for (std::size_t v : observed) {
    idx.push_back(static_cast<VertexId>(v));
    ys.push_back(truth[v]);
    is_observed[v] = true;
  }
  std::vector<std::size_t> unobserved;
  for (std::size_t v = 0; v < n; ++v) {
    if (!is_observed[v]) unobserved.push_back(v);
  }
  const Observation obs(n, std::move(idx), std::move(ys));

  TrialReport report;
  report.fraction = fraction;
  report.n_observed = s;

  const LaplacianModel model = build_model(h);
  const RecoveryResult rec = recover(cfg.solver, obs, model);
  report.converged = rec.converged;
  const Signal labels = threshold_labels(rec.estimate, cfg.threshold, cfg.negative_level, cfg.positive_level);
  report.accuracy_unobserved = accuracy_over(unobserved, labels, truth);

  if (cfg.baseline_enabled) {
    const Signal scores = baseline_label_propagation(h, obs, cfg.baseline_iterations, cfg.baseline_alpha,
                                                     cfg.solver.init_unobserved);
    const Signal base_labels = threshold_labels(scores, cfg.threshold, cfg.negative_level, cfg.positive_level);
    report.baseline_accuracy = accuracy_over(unobserved, base_labels, truth);
  }

  const auto positives = static_cast<std::size_t>(std::count_if(
      unobserved.begin(), unobserved.end(), [&](std::size_t v) { return truth[v] == cfg.positive_level; }));
  report.majority_rate = static_cast<double>(std::max(positives, unobserved.size() - positives)) /
                         static_cast<double>(unobserved.size());
  return report;
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t fraction_index, std::size_t trial_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                    static_cast<std::uint32_t>(fraction_index), static_cast<std::uint32_t>(trial_index)};
  return std::mt19937_64(seq);
}

SweepResult run_sweep(const ExperimentConfig& cfg, const ExperimentData& data) {
  cfg.validate(data.dataset.n_instances());
  std::vector<std::size_t> fixed;
  if (!cfg.resample_vertices) {
    // Fraction index one past the last keeps this stream apart from every trial's.
    auto rng = trial_rng(cfg.seed, cfg.fractions.size(), 0);
    fixed = sample_without_replacement(data.dataset.n_instances(), cfg.n_vertices, rng);
  }

  const std::size_t n_jobs = cfg.fractions.size() * cfg.n_trials;
  SweepResult result;
  result.trials.resize(n_jobs);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::string error_context;
  std::mutex error_mutex;

  auto worker = [&] {
    for (std::size_t job = next++; job < n_jobs && !failed; job = next++) {
      const std::size_t fi = job / cfg.n_trials;
      const std::size_t ti = job % cfg.n_trials;
      try {
        auto rng = trial_rng(cfg.seed, fi, ti);
        TrialReport r = run_trial(cfg, data, cfg.fractions[fi], rng, fixed);
        r.trial_index = ti;
        result.trials[job] = r;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) {
          error = std::current_exception();
          error_context = fmt::format("trial {} at fraction {}", ti, cfg.fractions[fi]);
        }
        failed = true;
      }
    }
  };

  std::size_t n_threads = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  n_threads = std::clamp<std::size_t>(n_threads, 1, std::max<std::size_t>(n_jobs, 1));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) {
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      throw RuntimeFailure("sweep aborted at " + error_context + ": " + e.what());
    }
  }

  for (std::size_t fi = 0; fi < cfg.fractions.size(); ++fi) {
    std::vector<double> acc;
    std::vector<double> base;
    std::vector<double> major;
    for (std::size_t ti = 0; ti < cfg.n_trials; ++ti) {
      const auto& r = result.trials[fi * cfg.n_trials + ti];
      acc.push_back(r.accuracy_unobserved);
      major.push_back(r.majority_rate);
      if (r.baseline_accuracy) base.push_back(*r.baseline_accuracy);
    }
    SweepRow row;
    row.fraction = cfg.fractions[fi];
    row.n_trials = cfg.n_trials;
    const Stats a = mean_std(acc);
    row.mean_accuracy = a.mean;
    row.std_accuracy = a.std;
    row.majority_mean = mean_std(major).mean;
    if (base.empty()) {
      row.baseline_mean = row.baseline_std = std::numeric_limits<double>::quiet_NaN();
    } else {
      const Stats b = mean_std(base);
      row.baseline_mean = b.mean;
      row.baseline_std = b.std;
    }
    result.rows.push_back(row);
  }
  return result;
}

void write_sweep_table(std::ostream& out, std::span<const SweepRow> rows) {
  out << "fraction,mean_accuracy,std_accuracy,baseline_mean,baseline_std,n_trials\n";
  for (const auto& r : rows) {
    out << fmt::format("{:.4f},{:.6f},{:.6f},{:.6f},{:.6f},{}\n", r.fraction, r.mean_accuracy,
                       r.std_accuracy, r.baseline_mean, r.baseline_std, r.n_trials);
  }
}

}  // namespace hgsr
