#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hgsr/hypergraph.hpp"
#include "hgsr/laplacian.hpp"

namespace hgsr {

/// Observed vertices and their values; the sampling operator is the index list.
class Observation {
 public:
  Observation() = default;
  /// Throws ValidationError on repeated or out-of-range indices or size mismatch.
  Observation(std::size_t n_vertices, std::vector<VertexId> indices, std::vector<double> values);

  std::size_t n_vertices() const noexcept { return n_vertices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  const std::vector<VertexId>& indices() const noexcept { return indices_; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::size_t n_vertices_ = 0;
  std::vector<VertexId> indices_;
  std::vector<double> values_;
};

/// Lines of `vertex_index value`; '#' comments allowed.
Observation load_observation(const std::string& path, std::size_t n_vertices);

/// Psi f: the observed coordinates of f.
Signal apply_sampling(const Observation& obs, std::span<const double> f);

/// Psi^T y: y scattered into a zero vector of length N.
Signal scatter(const Observation& obs, std::span<const double> y);

enum class LossKind { cross_entropy, squared_error };

LossKind parse_loss_kind(const std::string& name);
std::string to_string(LossKind kind);

struct SolverConfig {
  double lambda = 0.001;
  double step_size = 0.05;
  std::size_t max_iters = 10000;
  double grad_tol = 1e-6;
  LossKind loss = LossKind::cross_entropy;
  double clamp_eps = 1e-6;
  double init_unobserved = 0.5;
  bool project = true;  // clip iterates to [0,1] after each step

  /// Throws ValidationError when a field is out of range.
  void validate() const;
};

struct LossValue {
  double value;
  Signal gradient;  // length N
};

/// Cross-entropy evaluates on f clamped to [clamp_eps, 1-clamp_eps]; gradient
/// entries where the clamp is active are zero. Throws DomainError for a
/// cross-entropy target outside [0,1].
LossValue loss_and_grad(LossKind kind, const Observation& obs, std::span<const double> f,
                        double clamp_eps = 1e-6);

/// loss + lambda * TV.
double objective(const SolverConfig& cfg, const Observation& obs, const LaplacianModel& model,
                 std::span<const double> f);

/// Objective value and its gradient in one pass over the hyperedges.
LossValue objective_and_grad(const SolverConfig& cfg, const Observation& obs,
                             const LaplacianModel& model, std::span<const double> f);

struct RecoveryResult {
  Signal estimate;
  std::size_t iterations_run = 0;
  double final_objective = 0.0;
  bool converged = false;
  std::vector<double> objective_trace;  // objective at f_0, f_1, ..., estimate
};

/// Fixed-step gradient descent on loss + lambda * TV.
///
/// Starts from y on observed vertices and cfg.init_unobserved elsewhere, and
/// with cfg.project clips each iterate to [0,1]. Convergence is declared when
/// the infinity norm of the projected gradient (components that would push a
/// bound coordinate outward are ignored) drops below cfg.grad_tol. Throws
/// DivergenceError on a non-finite objective or gradient.
RecoveryResult recover(const SolverConfig& cfg, const Observation& obs, const LaplacianModel& model);

/// hi where f_i >= threshold, lo elsewhere.
Signal threshold_labels(std::span<const double> f, double threshold, double lo, double hi);

}  // namespace hgsr
