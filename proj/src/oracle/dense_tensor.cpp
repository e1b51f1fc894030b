#include "hgsr/oracle/dense_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "hgsr/errors.hpp"

namespace hgsr::oracle {

namespace {

std::size_t checked_power(std::size_t base, std::size_t exp) {
  std::size_t result = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (base != 0 && result > kDenseBudget / base) {
      throw OracleBudgetError("dense tensor of dimension " + std::to_string(base) + " and order " +
                              std::to_string(exp) + " exceeds the oracle budget");
    }
    result *= base;
  }
  return result;
}

double factorial(std::size_t n) {
  double r = 1.0;
  for (std::size_t k = 2; k <= n; ++k) r *= static_cast<double>(k);
  return r;
}

std::vector<std::vector<double>> dense_transform(const TransformationMatrix& tm) {
  std::vector<std::vector<double>> rows;
  rows.reserve(tm.n_rows());
  for (std::size_t i = 0; i < tm.n_rows(); ++i) rows.push_back(tm.dense_row(i));
  return rows;
}

}  // namespace

DenseTensor::DenseTensor(std::size_t order, std::size_t dimension)
    : order_(order), dimension_(dimension), entries_(checked_power(dimension, order), 0.0) {}

std::size_t DenseTensor::flat(std::span<const std::size_t> index) const {
  std::size_t i = 0;
  for (std::size_t k : index) i = i * dimension_ + k;
  return i;
}

std::vector<std::size_t> DenseTensor::unflat(std::size_t i) const {
  std::vector<std::size_t> index(order_);
  for (std::size_t k = order_; k-- > 0;) {
    index[k] = i % dimension_;
    i /= dimension_;
  }
  return index;
}

DenseTensor build_dense_adjacency(const UniformPartial& partial) {
  DenseTensor a(partial.cardinality(), partial.dimension());
  const double weight = 1.0 / factorial(partial.cardinality() - 1);
  for (std::size_t k = 0; k < partial.n_hyperedges(); ++k) {
    auto e = partial.hyperedge(k);
    std::vector<std::size_t> perm(e.begin(), e.end());
    std::sort(perm.begin(), perm.end());
    do {
      a.at(perm) += weight;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return a;
}

DenseTensor build_dense_laplacian(const UniformPartial& partial) {
  DenseTensor l = build_dense_adjacency(partial);
  for (std::size_t i = 0; i < l.entries().size(); ++i) l.at_flat(i) = -l.at_flat(i);
  std::vector<std::size_t> diag(partial.cardinality());
  for (VertexId v : partial.pins()) {
    std::fill(diag.begin(), diag.end(), v);
    l.at(diag) += 1.0;
  }
  return l;
}

DenseTensor mode_product(const DenseTensor& t, std::span<const double> f, std::size_t mode) {
  if (f.size() != t.dimension()) throw DimensionError("mode_product: vector length mismatch");
  if (mode >= t.order()) throw DimensionError("mode_product: mode out of range");
  const std::size_t d = t.dimension();
  DenseTensor out(t.order() - 1, d);
  const std::size_t low_stride = checked_power(d, t.order() - 1 - mode);
  for (std::size_t i = 0; i < t.entries().size(); ++i) {
    const std::size_t low = i % low_stride;
    const std::size_t digit = (i / low_stride) % d;
    const std::size_t high = i / (low_stride * d);
    out.at_flat(high * low_stride + low) += t.at_flat(i) * f[digit];
  }
  return out;
}

double nmode_contract_full(const DenseTensor& t, std::span<const double> f) {
  if (f.size() != t.dimension()) throw DimensionError("nmode_contract_full: vector length mismatch");
  DenseTensor cur = t;
  while (cur.order() > 0) cur = mode_product(cur, f, 0);
  return cur.at_flat(0);
}

std::vector<double> nmode_contract_all_but_first(const DenseTensor& t, std::span<const double> f) {
  if (t.order() == 0) throw DimensionError("nmode_contract_all_but_first: order-0 tensor");
  DenseTensor cur = t;
  while (cur.order() > 1) cur = mode_product(cur, f, cur.order() - 1);
  return {cur.entries().begin(), cur.entries().end()};
}

bool is_permutation_symmetric(const DenseTensor& t) {
  // Adjacent transpositions generate the symmetric group.
  for (std::size_t i = 0; i < t.entries().size(); ++i) {
    auto index = t.unflat(i);
    for (std::size_t k = 0; k + 1 < t.order(); ++k) {
      std::swap(index[k], index[k + 1]);
      if (t.at(index) != t.at_flat(i)) return false;
      std::swap(index[k], index[k + 1]);
    }
  }
  return true;
}

double diagonal_dominance_gap(const DenseTensor& t) {
  if (t.order() == 0) return 0.0;
  const std::size_t d = t.dimension();
  const std::size_t slice = t.entries().size() / d;
  double gap = 0.0;
  std::vector<std::size_t> diag(t.order());
  for (std::size_t i = 0; i < d; ++i) {
    std::fill(diag.begin(), diag.end(), i);
    const std::size_t diag_flat = t.flat(diag);
    double off = 0.0;
    for (std::size_t j = i * slice; j < (i + 1) * slice; ++j) {
      if (j != diag_flat) off += std::abs(t.at_flat(j));
    }
    gap = std::max(gap, std::abs(t.at_flat(diag_flat) - off));
  }
  return gap;
}

double dense_tv_total(std::span<const DenseTensor> laplacians, const TransformationMatrix& tm,
                      std::span<const double> f) {
  const auto rows = dense_transform(tm);
  std::vector<double> ft(rows.size(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) ft[i] += rows[i][j] * f[j];
  }
  double total = 0.0;
  for (const auto& l : laplacians) total += nmode_contract_full(l, ft);
  return total;
}

std::vector<double> dense_tv_gradient(std::span<const DenseTensor> laplacians,
                                      const TransformationMatrix& tm, std::span<const double> f) {
  const auto rows = dense_transform(tm);
  std::vector<double> ft(rows.size(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) ft[i] += rows[i][j] * f[j];
  }
  std::vector<double> g(f.size(), 0.0);
  for (const auto& l : laplacians) {
    const auto v = nmode_contract_all_but_first(l, ft);
    const double c = static_cast<double>(l.order());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < f.size(); ++j) g[j] += c * rows[i][j] * v[i];
    }
  }
  return g;
}

std::vector<DenseTensor> dense_laplacians(const Hypergraph& pretreated) {
  std::vector<DenseTensor> out;
  for (const auto& part : decompose(pretreated)) out.push_back(build_dense_laplacian(part));
  return out;
}

double search_negative(const DenseTensor& laplacian, std::size_t n_samples, std::uint64_t seed,
                       std::vector<double>& witness) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> f(laplacian.dimension());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (auto& x : f) x = normal(rng);
    const double v = nmode_contract_full(laplacian, f);
    if (v < best) {
      best = v;
      witness = f;
    }
  }
  return best;
}

}  // namespace hgsr::oracle
