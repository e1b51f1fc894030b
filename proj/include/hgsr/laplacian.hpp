#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hgsr/hypergraph.hpp"

namespace hgsr {

/// Implicit Laplacian tensor L = D - A of one uniform partial hypergraph.
///
/// Each c-vertex hyperedge e places 1/(c-1)! at all c! permutations of its
/// vertices in A and adds one to each member's degree, so the full contraction
/// collapses per hyperedge to
///
///     L f^c = sum_e ( sum_{v in e} f_v^c  -  c * prod_{v in e} f_v )
///
/// and the (c-1)-fold contraction to entries sum_{e ni i} (f_i^{c-1} - prod_{v in e\i} f_v).
/// The dense tensor is never formed here; see oracle/dense_tensor.hpp.
class LaplacianOperator {
 public:
  explicit LaplacianOperator(UniformPartial partial);

  const UniformPartial& partial() const noexcept { return partial_; }
  std::size_t order() const noexcept { return partial_.cardinality(); }
  std::size_t dimension() const noexcept { return partial_.dimension(); }
  const std::vector<double>& degrees() const noexcept { return degrees_; }

 private:
  UniformPartial partial_;
  std::vector<double> degrees_;
};

/// L f^c for an even-order operator. Throws ContractViolation for odd order,
/// DimensionError on length mismatch.
double tv_partial(const LaplacianOperator& op, std::span<const double> f_tilde);

/// L f^{c-1} (contraction over all but one mode), same preconditions as tv_partial.
Signal contract(const LaplacianOperator& op, std::span<const double> f_tilde);

/// Adds L f^c to the return value and `scale * c * L f^{c-1}` into `grad`.
/// One pass over the pins; used by the solver's inner loop.
double tv_partial_accumulate(const LaplacianOperator& op, std::span<const double> f_tilde,
                             double scale, std::span<double> grad);

/// The pretreated topology with one operator per (even) cardinality.
struct LaplacianModel {
  PretreatedHypergraph pretreated;
  std::vector<LaplacianOperator> operators;

  std::size_t n_vertices() const noexcept { return pretreated.transform.n_original(); }
};

LaplacianModel build_model(const Hypergraph& h);

/// TV(f) = sum_c L_(c) (T f)^c.
double tv_total(std::span<const LaplacianOperator> parts, const TransformationMatrix& tm,
                std::span<const double> f);
double tv_total(const LaplacianModel& model, std::span<const double> f);

/// dTV/df = sum_c c T^T (L_(c) (T f)^{c-1}).
Signal tv_gradient(std::span<const LaplacianOperator> parts, const TransformationMatrix& tm,
                   std::span<const double> f);
Signal tv_gradient(const LaplacianModel& model, std::span<const double> f);

struct PsdReport {
  bool passed;
  double worst;  // minimum tv_partial observed; 0 for an empty partial
};

inline constexpr double kPsdTolerance = -1e-9;

/// Samples `n_samples` standard-normal signals and reports whether every
/// tv_partial value is >= kPsdTolerance. Throws ContractViolation for odd order.
PsdReport check_psd(const UniformPartial& partial, std::size_t n_samples, std::uint64_t seed);

}  // namespace hgsr
