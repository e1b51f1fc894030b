#include "hgsr/lre.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hgsr/errors.hpp"

namespace hgsr {

Observation::Observation(std::size_t n_vertices, std::vector<VertexId> indices,
                         std::vector<double> values)
    : n_vertices_(n_vertices), indices_(std::move(indices)), values_(std::move(values)) {
  if (indices_.size() != values_.size()) {
    throw ValidationError("observation: " + std::to_string(indices_.size()) + " indices but " +
                          std::to_string(values_.size()) + " values");
  }
  std::vector<bool> seen(n_vertices_, false);
  for (VertexId v : indices_) {
    if (v >= n_vertices_) {
      throw ValidationError("observation: vertex " + std::to_string(v) + " out of range for N=" +
                            std::to_string(n_vertices_));
    }
    if (seen[v]) throw ValidationError("observation: vertex " + std::to_string(v) + " observed twice");
    seen[v] = true;
  }
  for (double y : values_) {
    if (!std::isfinite(y)) throw ValidationError("observation: non-finite value");
  }
}

Observation load_observation(const std::string& path, std::size_t n_vertices) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::vector<VertexId> idx;
  std::vector<double> val;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ss(line);
    long long v = -1;
    double y = 0.0;
    std::string extra;
    if (!(ss >> v >> y) || (ss >> extra) || v < 0) {
      throw ParseError(path, lineno, "expected `vertex_index value`");
    }
    if (static_cast<std::size_t>(v) >= n_vertices) {
      throw ParseError(path, lineno, "vertex " + std::to_string(v) + " out of range for N=" +
                                         std::to_string(n_vertices));
    }
    idx.push_back(static_cast<VertexId>(v));
    val.push_back(y);
  }
  try {
    return Observation(n_vertices, std::move(idx), std::move(val));
  } catch (const ValidationError& e) {
    throw ParseError(path, 0, e.what());
  }
}

Signal apply_sampling(const Observation& obs, std::span<const double> f) {
  if (f.size() != obs.n_vertices()) throw DimensionError("apply_sampling: signal length mismatch");
  Signal out;
  out.reserve(obs.size());
  for (VertexId v : obs.indices()) out.push_back(f[v]);
  return out;
}

Signal scatter(const Observation& obs, std::span<const double> y) {
  if (y.size() != obs.size()) throw DimensionError("scatter: vector length mismatch");
  Signal out(obs.n_vertices(), 0.0);
  for (std::size_t s = 0; s < obs.size(); ++s) out[obs.indices()[s]] = y[s];
  return out;
}

LossKind parse_loss_kind(const std::string& name) {
  if (name == "cross_entropy") return LossKind::cross_entropy;
  if (name == "squared_error") return LossKind::squared_error;
  throw ValidationError("unknown loss '" + name + "' (expected cross_entropy or squared_error)");
}

std::string to_string(LossKind kind) {
  return kind == LossKind::cross_entropy ? "cross_entropy" : "squared_error";
}

void SolverConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ValidationError("solver config: " + msg); };
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) fail("lambda must be finite and >= 0");
  if (!(step_size > 0.0) || !std::isfinite(step_size)) fail("step_size must be > 0");
  if (max_iters == 0) fail("max_iters must be positive");
  if (!(grad_tol >= 0.0)) fail("grad_tol must be >= 0");
  if (!(clamp_eps > 0.0 && clamp_eps < 0.5)) fail("clamp_eps must lie in (0, 0.5)");
  if (!(init_unobserved >= 0.0 && init_unobserved <= 1.0)) fail("init_unobserved must lie in [0, 1]");
  if (loss == LossKind::cross_entropy && !project) {
    fail("cross_entropy requires projected iterates");
  }
}

LossValue loss_and_grad(LossKind kind, const Observation& obs, std::span<const double> f,
                        double clamp_eps) {
  if (f.size() != obs.n_vertices()) throw DimensionError("loss_and_grad: signal length mismatch");
  LossValue out{0.0, Signal(f.size(), 0.0)};
  const auto& idx = obs.indices();
  const auto& ys = obs.values();
  if (kind == LossKind::squared_error) {
    for (std::size_t s = 0; s < idx.size(); ++s) {
      const double r = f[idx[s]] - ys[s];
      out.value += 0.5 * r * r;
      out.gradient[idx[s]] = r;
    }
    return out;
  }
  for (std::size_t s = 0; s < idx.size(); ++s) {
    const double y = ys[s];
    if (!(y >= 0.0 && y <= 1.0)) {
      throw DomainError("cross_entropy: observed value " + std::to_string(y) + " at vertex " +
                        std::to_string(idx[s]) + " outside [0,1]");
    }
    const double raw = f[idx[s]];
    const double fc = std::clamp(raw, clamp_eps, 1.0 - clamp_eps);
    out.value -= y * std::log(fc) + (1.0 - y) * std::log(1.0 - fc);
    if (fc == raw) out.gradient[idx[s]] = -y / fc + (1.0 - y) / (1.0 - fc);
  }
  return out;
}

LossValue objective_and_grad(const SolverConfig& cfg, const Observation& obs,
                             const LaplacianModel& model, std::span<const double> f) {
  LossValue out = loss_and_grad(cfg.loss, obs, f, cfg.clamp_eps);
  const auto& tm = model.pretreated.transform;
  const Signal ft = apply_transform(tm, f);
  Signal gt(ft.size(), 0.0);
  double tv = 0.0;
  for (const auto& op : model.operators) tv += tv_partial_accumulate(op, ft, cfg.lambda, gt);
  const Signal g = transpose_apply(tm, gt);
  for (std::size_t i = 0; i < g.size(); ++i) out.gradient[i] += g[i];
  out.value += cfg.lambda * tv;
  return out;
}

double objective(const SolverConfig& cfg, const Observation& obs, const LaplacianModel& model,
                 std::span<const double> f) {
  return loss_and_grad(cfg.loss, obs, f, cfg.clamp_eps).value + cfg.lambda * tv_total(model, f);
}

namespace {

double projected_inf_norm(std::span<const double> f, std::span<const double> g, bool project) {
  double norm = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (project && ((f[i] <= 0.0 && g[i] > 0.0) || (f[i] >= 1.0 && g[i] < 0.0))) continue;
    norm = std::max(norm, std::abs(g[i]));
  }
  return norm;
}

}  // namespace

RecoveryResult recover(const SolverConfig& cfg, const Observation& obs, const LaplacianModel& model) {
  cfg.validate();
  if (obs.n_vertices() != model.n_vertices()) {
    throw DimensionError("recover: observation over " + std::to_string(obs.n_vertices()) +
                         " vertices, hypergraph has " + std::to_string(model.n_vertices()));
  }
  RecoveryResult result;
  Signal f(model.n_vertices(), cfg.init_unobserved);
  for (std::size_t s = 0; s < obs.size(); ++s) {
    f[obs.indices()[s]] = cfg.project ? std::clamp(obs.values()[s], 0.0, 1.0) : obs.values()[s];
  }
  result.objective_trace.reserve(std::min<std::size_t>(cfg.max_iters + 1, 1 << 16));

  std::size_t it = 0;
  for (;; ++it) {
    const LossValue lv = objective_and_grad(cfg, obs, model, f);
    if (!std::isfinite(lv.value)) throw DivergenceError(it, "objective is not finite");
    if (!std::all_of(lv.gradient.begin(), lv.gradient.end(), [](double x) { return std::isfinite(x); })) {
      throw DivergenceError(it, "gradient is not finite");
    }
    result.objective_trace.push_back(lv.value);
    if (projected_inf_norm(f, lv.gradient, cfg.project) < cfg.grad_tol) {
      result.converged = true;
      break;
    }
    if (it == cfg.max_iters) break;
    for (std::size_t i = 0; i < f.size(); ++i) {
      f[i] -= cfg.step_size * lv.gradient[i];
      if (cfg.project) f[i] = std::clamp(f[i], 0.0, 1.0);
    }
  }
  result.iterations_run = it;
  result.final_objective = result.objective_trace.back();
  result.estimate = std::move(f);
  return result;
}

Signal threshold_labels(std::span<const double> f, double threshold, double lo, double hi) {
  Signal out(f.size());
  std::transform(f.begin(), f.end(), out.begin(), [&](double x) { return x >= threshold ? hi : lo; });
  return out;
}

}  // namespace hgsr
