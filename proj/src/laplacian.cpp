#include "hgsr/laplacian.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <string>

#include "hgsr/errors.hpp"

namespace hgsr {

namespace {

double ipow(double x, std::size_t n) {
  double result = 1.0;
  while (n > 0) {
    if (n & 1U) result *= x;
    x *= x;
    n >>= 1U;
  }
  return result;
}

void require_even(const LaplacianOperator& op, const char* what) {
  if (op.order() % 2 != 0) {
    throw ContractViolation(std::string(what) + ": order-" + std::to_string(op.order()) +
                            " Laplacian is not positive semidefinite; pretreat the hypergraph first");
  }
}

void require_length(const LaplacianOperator& op, std::span<const double> f, const char* what) {
  if (f.size() != op.dimension()) {
    throw DimensionError(std::string(what) + ": signal length " + std::to_string(f.size()) +
                         ", operator dimension " + std::to_string(op.dimension()));
  }
}

// Per-hyperedge kernel. Products excluding one member come from prefix and
// suffix products so zero entries need no special casing.
template <typename OnVertex>
double hyperedge_terms(std::span<const VertexId> e, std::span<const double> f,
                       std::vector<double>& prefix, OnVertex&& on_vertex) {
  const std::size_t c = e.size();
  prefix.resize(c + 1);
  prefix[0] = 1.0;
  for (std::size_t j = 0; j < c; ++j) prefix[j + 1] = prefix[j] * f[e[j]];
  double suffix = 1.0;
  double power_sum = 0.0;
  for (std::size_t j = c; j-- > 0;) {
    const double x = f[e[j]];
    const double pw = ipow(x, c - 1);
    power_sum += pw * x;
    on_vertex(e[j], pw - prefix[j] * suffix);
    suffix *= x;
  }
  return power_sum - static_cast<double>(c) * prefix[c];
}

}  // namespace

LaplacianOperator::LaplacianOperator(UniformPartial partial)
    : partial_(std::move(partial)), degrees_(partial_.dimension(), 0.0) {
  for (VertexId v : partial_.pins()) degrees_[v] += 1.0;
}

double tv_partial(const LaplacianOperator& op, std::span<const double> f_tilde) {
  require_even(op, "tv_partial");
  require_length(op, f_tilde, "tv_partial");
  const std::size_t c = op.order();
  const auto& part = op.partial();
  double total = 0.0;
  for (std::size_t k = 0; k < part.n_hyperedges(); ++k) {
    double power_sum = 0.0;
    double product = 1.0;
    for (VertexId v : part.hyperedge(k)) {
      power_sum += ipow(f_tilde[v], c);
      product *= f_tilde[v];
    }
    total += power_sum - static_cast<double>(c) * product;
  }
  return total;
}

Signal contract(const LaplacianOperator& op, std::span<const double> f_tilde) {
  require_even(op, "contract");
  require_length(op, f_tilde, "contract");
  Signal out(op.dimension(), 0.0);
  std::vector<double> prefix;
  const auto& part = op.partial();
  for (std::size_t k = 0; k < part.n_hyperedges(); ++k) {
    hyperedge_terms(part.hyperedge(k), f_tilde, prefix,
                    [&](VertexId v, double term) { out[v] += term; });
  }
  return out;
}

double tv_partial_accumulate(const LaplacianOperator& op, std::span<const double> f_tilde,
                             double scale, std::span<double> grad) {
  require_even(op, "tv_partial_accumulate");
  require_length(op, f_tilde, "tv_partial_accumulate");
  if (grad.size() != op.dimension()) throw DimensionError("tv_partial_accumulate: gradient length");
  const double w = scale * static_cast<double>(op.order());
  std::vector<double> prefix;
  const auto& part = op.partial();
  double total = 0.0;
  for (std::size_t k = 0; k < part.n_hyperedges(); ++k) {
    total += hyperedge_terms(part.hyperedge(k), f_tilde, prefix,
                             [&](VertexId v, double term) { grad[v] += w * term; });
  }
  return total;
}

LaplacianModel build_model(const Hypergraph& h) {
  LaplacianModel model{pretreat(h), {}};
  for (auto& part : decompose(model.pretreated.hypergraph)) {
    model.operators.emplace_back(std::move(part));
  }
  return model;
}

double tv_total(std::span<const LaplacianOperator> parts, const TransformationMatrix& tm,
                std::span<const double> f) {
  const Signal ft = apply_transform(tm, f);
  double total = 0.0;
  for (const auto& op : parts) total += tv_partial(op, ft);
  return total;
}

double tv_total(const LaplacianModel& model, std::span<const double> f) {
  return tv_total(model.operators, model.pretreated.transform, f);
}

Signal tv_gradient(std::span<const LaplacianOperator> parts, const TransformationMatrix& tm,
                   std::span<const double> f) {
  const Signal ft = apply_transform(tm, f);
  Signal g(ft.size(), 0.0);
  for (const auto& op : parts) {
    const Signal partial = contract(op, ft);
    const double c = static_cast<double>(op.order());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += c * partial[i];
  }
  return transpose_apply(tm, g);
}

Signal tv_gradient(const LaplacianModel& model, std::span<const double> f) {
  return tv_gradient(model.operators, model.pretreated.transform, f);
}

PsdReport check_psd(const UniformPartial& partial, std::size_t n_samples, std::uint64_t seed) {
  const LaplacianOperator op(partial);
  require_even(op, "check_psd");
  if (partial.n_hyperedges() == 0) return {true, 0.0};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Signal f(partial.dimension());
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (auto& x : f) x = normal(rng);
    worst = std::min(worst, tv_partial(op, f));
  }
  if (n_samples == 0) worst = 0.0;
  return {worst >= kPsdTolerance, worst};
}

}  // namespace hgsr
