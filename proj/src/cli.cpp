#include "hgsr/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <unistd.h>

#include "hgsr/config.hpp"
#include "hgsr/errors.hpp"
#include "hgsr/experiment.hpp"
#include "hgsr/laplacian.hpp"
#include "hgsr/lre.hpp"
#include "hgsr/verify.hpp"

namespace hgsr::cli {

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += fmt::format(".tmp{}", ::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw RuntimeFailure("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw RuntimeFailure("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw RuntimeFailure("cannot rename onto " + path);
  }
}

namespace {

std::string histogram(const Hypergraph& h) {
  std::map<std::size_t, std::size_t> counts;
  for (const auto& e : h.hyperedges()) ++counts[e.size()];
  std::string s = "{";
  for (const auto& [c, k] : counts) s += fmt::format("{}{}:{}", s.size() > 1 ? ", " : "", c, k);
  return s + "}";
}

int cmd_inspect(const std::string& path, std::ostream& out) {
  const Hypergraph h = load_hypergraph(path);
  const PretreatedHypergraph pre = pretreat(h);
  out << fmt::format("N={} K={}; cardinalities {}; aux={}\n", h.n_vertices(), h.n_hyperedges(),
                     histogram(h), pre.transform.n_aux());
  for (const auto& part : decompose(h)) {
    out << fmt::format("partial c={}: {} hyperedges\n", part.cardinality(), part.n_hyperedges());
  }
  const auto deg = h.degrees();
  const auto [lo, hi] = std::minmax_element(deg.begin(), deg.end());
  const double mean = static_cast<double>(std::accumulate(deg.begin(), deg.end(), std::size_t{0})) /
                      static_cast<double>(deg.size());
  const auto isolated = std::count(deg.begin(), deg.end(), std::size_t{0});
  out << fmt::format("degree min={} max={} mean={:.3f} isolated={}\n", *lo, *hi, mean, isolated);
  out << fmt::format("pretreated N+t={} cardinalities {}\n", pre.hypergraph.n_vertices(),
                     histogram(pre.hypergraph));
  return kOk;
}

struct SolverOverrides {
  std::optional<double> lambda;
  std::optional<double> step;
  std::optional<std::size_t> max_iters;
  std::optional<double> grad_tol;
  std::optional<std::string> loss;

  void apply(SolverConfig& s) const {
    if (lambda) s.lambda = *lambda;
    if (step) s.step_size = *step;
    if (max_iters) s.max_iters = *max_iters;
    if (grad_tol) s.grad_tol = *grad_tol;
    if (loss) s.loss = parse_loss_kind(*loss);
  }
};

void add_solver_flags(CLI::App* app, SolverOverrides& o) {
  app->add_option("--lambda", o.lambda, "Regularization weight");
  app->add_option("--step", o.step, "Gradient step size");
  app->add_option("--max-iters", o.max_iters, "Iteration cap");
  app->add_option("--grad-tol", o.grad_tol, "Stop when the gradient infinity norm drops below this");
  app->add_option("--loss", o.loss, "cross_entropy or squared_error");
}

int cmd_recover(const std::string& hg_path, const std::string& obs_path, const std::string& config_path,
                const SolverOverrides& overrides, const std::string& out_path, std::ostream& out) {
  ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
  overrides.apply(cfg.solver);
  cfg.solver.validate();
  const Hypergraph h = load_hypergraph(hg_path);
  const Observation obs = load_observation(obs_path, h.n_vertices());
  const LaplacianModel model = build_model(h);
  const RecoveryResult res = recover(cfg.solver, obs, model);
  const Signal labels = threshold_labels(res.estimate, cfg.threshold, cfg.negative_level, cfg.positive_level);

  std::string body = "# vertex estimate label\n";
  for (std::size_t i = 0; i < res.estimate.size(); ++i) {
    body += fmt::format("{} {:.10f} {:g}\n", i, res.estimate[i], labels[i]);
  }
  if (out_path.empty()) {
    out << body;
  } else {
    write_file_atomic(out_path, body);
  }
  out << fmt::format("iterations={} final_objective={:.10g} converged={}\n", res.iterations_run,
                     res.final_objective, res.converged ? "true" : "false");
  return kOk;
}

struct SweepOptions {
  std::string dataset;
  std::string schema;
  std::string config;
  std::string out;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  std::optional<std::size_t> vertices;
  std::vector<double> fractions;
  bool no_baseline = false;
  bool fixed_subsample = false;
  SolverOverrides solver;
};

int cmd_sweep(const SweepOptions& o, std::ostream& out) {
  ExperimentConfig cfg = o.config.empty() ? ExperimentConfig{} : load_config(o.config);
  o.solver.apply(cfg.solver);
  if (o.trials) cfg.n_trials = *o.trials;
  if (o.seed) cfg.seed = *o.seed;
  if (o.threads) cfg.threads = *o.threads;
  if (o.vertices) cfg.n_vertices = *o.vertices;
  if (!o.fractions.empty()) cfg.fractions = o.fractions;
  if (o.no_baseline) cfg.baseline_enabled = false;
  if (o.fixed_subsample) cfg.resample_vertices = false;
  cfg.validate();

  DatasetSchema schema = load_schema(o.schema);
  Dataset ds = load_dataset(o.dataset);
  const ExperimentData data(std::move(ds), std::move(schema), cfg);
  const SweepResult result = run_sweep(cfg, data);

  std::ostringstream table;
  write_sweep_table(table, result.rows);
  if (o.out.empty()) {
    out << table.str();
  } else {
    write_file_atomic(o.out, table.str());
    out << "wrote " << o.out << '\n';
  }
  for (const auto& row : result.rows) {
    out << fmt::format("fraction={:.2f} lre={:.4f}+-{:.4f} baseline={:.4f} majority={:.4f} trials={}\n",
                       row.fraction, row.mean_accuracy, row.std_accuracy, row.baseline_mean,
                       row.majority_mean, row.n_trials);
  }
  return kOk;
}

int cmd_verify(const std::string& scope, std::uint64_t seed, bool inject_odd, std::ostream& out) {
  static const char* scopes[] = {"all", "example", "psd", "oracle", "gradient", "odd-order"};
  if (std::find(std::begin(scopes), std::end(scopes), scope) == std::end(scopes)) {
    throw ValidationError("unknown verify scope '" + scope + "'");
  }
  const bool all = scope == "all";
  if (inject_odd) {
    if (scope != "psd") throw ValidationError("--inject-odd-order applies to scope=psd only");
    UniformPartial odd(3, 3);
    const VertexId e[] = {0, 1, 2};
    odd.add(e);
    try {
      check_psd(odd, 1000, seed);
    } catch (const ContractViolation& ex) {
      out << "psd: odd-order partial rejected (contract enforced): " << ex.what() << '\n';
      return kValidationError;
    }
    out << "psd: odd-order partial was NOT rejected\n";
    return kCheckFailed;
  }

  std::vector<verify::CheckResult> results;
  if (all || scope == "example") results.push_back(verify::check_example(seed));
  if (all || scope == "psd") results.push_back(verify::check_psd_random(seed + 1));
  if (all || scope == "oracle") results.push_back(verify::check_oracle(seed + 2));
  if (all || scope == "gradient") results.push_back(verify::check_gradient(seed + 3));
  if (all || scope == "odd-order") results.push_back(verify::check_odd_order_counterexample(seed + 4));
  bool ok = true;
  for (const auto& r : results) {
    out << fmt::format("{:<10} {}  worst={:.3e}  {}\n", r.name, r.passed ? "PASS" : "FAIL", r.worst, r.detail);
    ok = ok && r.passed;
  }
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hypergraph signal recovery with multi-order Laplacian total variation", "hgsr"};
  app.require_subcommand(1);

  std::string inspect_path;
  auto* inspect = app.add_subcommand("inspect", "Summarize a hypergraph file");
  inspect->add_option("hypergraph", inspect_path, "Hypergraph text file")->required();

  std::string rec_hg, rec_obs, rec_config, rec_out;
  SolverOverrides rec_overrides;
  auto* recover_cmd = app.add_subcommand("recover", "Recover a signal from partial observations");
  recover_cmd->add_option("hypergraph", rec_hg, "Hypergraph text file")->required();
  recover_cmd->add_option("observations", rec_obs, "Lines of `vertex_index value`")->required();
  recover_cmd->add_option("--config", rec_config, "JSON config file");
  recover_cmd->add_option("--out", rec_out, "Estimate output file (default: stdout)");
  add_solver_flags(recover_cmd, rec_overrides);

  SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo accuracy sweep over observation fractions");
  sweep->add_option("dataset", sweep_opts.dataset, "Categorical CSV dataset")->required();
  sweep->add_option("schema", sweep_opts.schema, "JSON schema sidecar")->required();
  sweep->add_option("--config", sweep_opts.config, "JSON config file");
  sweep->add_option("--out", sweep_opts.out, "Result table file (default: stdout)");
  sweep->add_option("--trials", sweep_opts.trials, "Trials per fraction");
  sweep->add_option("--seed", sweep_opts.seed, "Base RNG seed");
  sweep->add_option("--threads", sweep_opts.threads, "Worker threads (0: all cores)");
  sweep->add_option("--vertices", sweep_opts.vertices, "Subsample size N");
  sweep->add_option("--fractions", sweep_opts.fractions, "Observation fractions")->delimiter(',');
  sweep->add_flag("--no-baseline", sweep_opts.no_baseline, "Skip the label-propagation baseline");
  sweep->add_flag("--fixed-subsample", sweep_opts.fixed_subsample, "Share one vertex subsample across trials");
  add_solver_flags(sweep, sweep_opts.solver);

  std::string scope = "all";
  std::uint64_t seed = 1;
  bool inject_odd = false;
  auto* verify_cmd = app.add_subcommand("verify", "Run the numerical self-checks");
  verify_cmd->add_option("--scope", scope, "all, example, psd, oracle, gradient or odd-order");
  verify_cmd->add_option("--seed", seed, "RNG seed");
  verify_cmd->add_flag("--inject-odd-order", inject_odd, "Feed an order-3 partial to the psd check");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (*inspect) return cmd_inspect(inspect_path, out);
    if (*recover_cmd) return cmd_recover(rec_hg, rec_obs, rec_config, rec_overrides, rec_out, out);
    if (*sweep) return cmd_sweep(sweep_opts, out);
    if (*verify_cmd) return cmd_verify(scope, seed, inject_odd, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kParseError;
}

}  // namespace hgsr::cli
