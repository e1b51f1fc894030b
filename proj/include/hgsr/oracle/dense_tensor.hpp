#pragma once

// Dense symmetric tensors and n-mode products. Reference implementation for
// checking the per-hyperedge Laplacian formulas; exponential in the order, so
// sizes are capped at kDenseBudget entries.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hgsr/hypergraph.hpp"

namespace hgsr::oracle {

inline constexpr std::size_t kDenseBudget = 10'000'000;

class DenseTensor {
 public:
  /// Throws OracleBudgetError if dimension^order exceeds kDenseBudget.
  DenseTensor(std::size_t order, std::size_t dimension);

  std::size_t order() const noexcept { return order_; }
  std::size_t dimension() const noexcept { return dimension_; }
  std::span<const double> entries() const noexcept { return entries_; }

  double& at(std::span<const std::size_t> index) { return entries_[flat(index)]; }
  double at(std::span<const std::size_t> index) const { return entries_[flat(index)]; }
  double& at_flat(std::size_t i) { return entries_[i]; }
  double at_flat(std::size_t i) const { return entries_[i]; }

  std::size_t flat(std::span<const std::size_t> index) const;
  std::vector<std::size_t> unflat(std::size_t i) const;

 private:
  std::size_t order_;
  std::size_t dimension_;
  std::vector<double> entries_;
};

/// Adjacency tensor: 1/(c-1)! at every permutation of every hyperedge.
DenseTensor build_dense_adjacency(const UniformPartial& partial);

/// Laplacian tensor D - A, with the degree count on the diagonal.
/// Odd orders are allowed here so their indefiniteness can be exhibited.
DenseTensor build_dense_laplacian(const UniformPartial& partial);

/// n-mode product of `t` with the row vector f^T along `mode` (0-based);
/// the result has one fewer mode. A scalar comes back as an order-0 tensor.
DenseTensor mode_product(const DenseTensor& t, std::span<const double> f, std::size_t mode);

/// t x_1 f^T x_2 ... x_M f^T.
double nmode_contract_full(const DenseTensor& t, std::span<const double> f);

/// Contraction with f along every mode except the first: the vector t f^{M-1}.
std::vector<double> nmode_contract_all_but_first(const DenseTensor& t, std::span<const double> f);

/// True iff every entry equals the entry at each permutation of its index, exactly.
bool is_permutation_symmetric(const DenseTensor& t);

/// max_i | t_{i..i} - sum_{off-diagonal j in slice i} |t_{i,j2..jM}| |.
double diagonal_dominance_gap(const DenseTensor& t);

/// Total variation and its gradient through dense tensors: sum_c L_(c) (T f)^c
/// and sum_c c T^T (L_(c) (T f)^{c-1}).
double dense_tv_total(std::span<const DenseTensor> laplacians, const TransformationMatrix& tm,
                      std::span<const double> f);
std::vector<double> dense_tv_gradient(std::span<const DenseTensor> laplacians,
                                      const TransformationMatrix& tm, std::span<const double> f);

/// Dense Laplacians for every partial of a pretreated hypergraph.
std::vector<DenseTensor> dense_laplacians(const Hypergraph& pretreated);

/// Random search for a signal with negative L f^M. Returns the most negative
/// value found and writes the signal to `witness`.
double search_negative(const DenseTensor& laplacian, std::size_t n_samples, std::uint64_t seed,
                       std::vector<double>& witness);

}  // namespace hgsr::oracle
