#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hgsr/hypergraph.hpp"

namespace hgsr::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;  // check-specific worst-case statistic
  double tolerance = 0.0;
  std::string detail;
};

/// Seven vertices; hyperedges {0,1,4}, {1,2,3,4}, {2,5}, {5,6}.
Hypergraph example_hypergraph();

/// The explicit order-4 and order-2 total variation polynomials of the
/// example hypergraph after pretreatment (0-based vertex names).
double example_tv4_polynomial(std::span<const double> f);
double example_tv2_polynomial(std::span<const double> f);

/// `n_edges` hyperedges over `n_vertices`, each cardinality drawn uniformly
/// from `cardinalities` (capped at n_vertices).
Hypergraph random_hypergraph(std::mt19937_64& rng, std::size_t n_vertices, std::size_t n_edges,
                             std::span<const std::size_t> cardinalities);

/// Max |TV - explicit polynomial| over random signals, tolerance 1e-10.
CheckResult check_example(std::uint64_t seed, std::size_t n_signals = 20);

/// Minimum sampled TV over random even-order hypergraphs (c in {2,4,6}, N <= 20),
/// tolerance -1e-9.
CheckResult check_psd_random(std::uint64_t seed, std::size_t n_hypergraphs = 100,
                             std::size_t n_signals = 1000);

/// Max deviation of per-hyperedge TV and gradient from dense n-mode contraction,
/// on pretreated random hypergraphs with dimension <= 8, tolerance 1e-10.
CheckResult check_oracle(std::uint64_t seed, std::size_t n_instances = 50);

/// Max relative error of the analytic TV gradient against central differences
/// (step 1e-5) on random instances, half of them with odd hyperedges, tolerance 1e-6.
CheckResult check_gradient(std::uint64_t seed, std::size_t n_instances = 50);

/// Searches for a negative value of an order-3 Laplacian via the dense oracle
/// and confirms the production path refuses odd orders. Passes when both hold.
CheckResult check_odd_order_counterexample(std::uint64_t seed, std::size_t n_samples = 1000);

}  // namespace hgsr::verify
