#include "hgsr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "hgsr/errors.hpp"
#include "hgsr/laplacian.hpp"
#include "hgsr/lre.hpp"
#include "hgsr/oracle/dense_tensor.hpp"

namespace hgsr::verify {

namespace {

Signal uniform_signal(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Signal f(n);
  for (auto& x : f) x = dist(rng);
  return f;
}

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

Hypergraph example_hypergraph() {
  return Hypergraph(7, {{0, 1, 4}, {1, 2, 3, 4}, {2, 5}, {5, 6}});
}

double example_tv4_polynomial(std::span<const double> f) {
  const double f1 = f[0], f2 = f[1], f3 = f[2], f4 = f[3], f5 = f[4];
  const double m = (f1 + f2 + f5) / 3.0;
  auto p4 = [](double x) { return x * x * x * x; };
  return (p4(f1) + p4(f2) + p4(f5) + p4(m) - 4.0 * f1 * f2 * f5 * m) +
         (p4(f2) + p4(f3) + p4(f4) + p4(f5) - 4.0 * f2 * f3 * f4 * f5);
}

double example_tv2_polynomial(std::span<const double> f) {
  const double a = f[2] - f[5];
  const double b = f[5] - f[6];
  return a * a + b * b;
}

Hypergraph random_hypergraph(std::mt19937_64& rng, std::size_t n_vertices, std::size_t n_edges,
                             std::span<const std::size_t> cardinalities) {
  std::uniform_int_distribution<std::size_t> pick_card(0, cardinalities.size() - 1);
  std::vector<VertexId> pool(n_vertices);
  std::vector<Hyperedge> edges;
  for (std::size_t k = 0; k < n_edges; ++k) {
    const std::size_t c = std::min(cardinalities[pick_card(rng)], n_vertices);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < c; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n_vertices - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    edges.emplace_back(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(c));
  }
  return Hypergraph(n_vertices, std::move(edges));
}

CheckResult check_example(std::uint64_t seed, std::size_t n_signals) {
  CheckResult r{"example", false, 0.0, 1e-10, {}};
  const LaplacianModel model = build_model(example_hypergraph());
  const LaplacianOperator* order4 = nullptr;
  for (const auto& op : model.operators) {
    if (op.order() == 4) order4 = &op;
  }
  if (order4 == nullptr || model.pretreated.transform.n_aux() != 1) {
    r.detail = "pretreated example lacks the expected order-4 partial";
    return r;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < n_signals; ++s) {
    const Signal f = uniform_signal(rng, 7, -1.5, 1.5);
    const Signal ft = apply_transform(model.pretreated.transform, f);
    const double tv4 = tv_partial(*order4, ft);
    const double total = tv_total(model, f);
    r.worst = std::max({r.worst, std::abs(tv4 - example_tv4_polynomial(f)),
                        std::abs(total - example_tv4_polynomial(f) - example_tv2_polynomial(f))});
  }
  r.passed = r.worst < r.tolerance;
  r.detail = fmt::format("max residual {:.3e} over {} signals", r.worst, n_signals);
  return r;
}

CheckResult check_psd_random(std::uint64_t seed, std::size_t n_hypergraphs, std::size_t n_signals) {
  CheckResult r{"psd", false, std::numeric_limits<double>::infinity(), kPsdTolerance, {}};
  std::mt19937_64 rng(seed);
  const std::size_t orders[] = {2, 4, 6};
  std::uniform_int_distribution<std::size_t> pick_n(6, 20);
  std::uniform_int_distribution<std::size_t> pick_k(1, 12);
  std::size_t partials = 0;
  for (std::size_t g = 0; g < n_hypergraphs; ++g) {
    const Hypergraph h = random_hypergraph(rng, pick_n(rng), pick_k(rng), orders);
    for (const auto& part : decompose(h)) {
      const PsdReport rep = check_psd(part, n_signals, rng());
      r.worst = std::min(r.worst, rep.worst);
      ++partials;
    }
  }
  r.passed = r.worst >= r.tolerance;
  r.detail = fmt::format("min TV {:.3e} over {} partials x {} signals", r.worst, partials, n_signals);
  return r;
}

CheckResult check_oracle(std::uint64_t seed, std::size_t n_instances) {
  CheckResult r{"oracle", false, 0.0, 1e-10, {}};
  std::mt19937_64 rng(seed);
  const std::size_t cards[] = {2, 3, 4, 5, 6};
  std::uniform_int_distribution<std::size_t> pick_n(3, 6);
  std::uniform_int_distribution<std::size_t> pick_k(1, 4);
  std::size_t done = 0;
  while (done < n_instances) {
    const Hypergraph h = random_hypergraph(rng, pick_n(rng), pick_k(rng), cards);
    const LaplacianModel model = build_model(h);
    if (model.pretreated.hypergraph.n_vertices() > 8) continue;
    const auto dense = oracle::dense_laplacians(model.pretreated.hypergraph);
    const auto& tm = model.pretreated.transform;
    for (std::size_t s = 0; s < 4; ++s) {
      const Signal f = uniform_signal(rng, h.n_vertices(), -1.0, 1.0);
      const Signal ft = apply_transform(tm, f);
      for (std::size_t p = 0; p < dense.size(); ++p) {
        r.worst = std::max(r.worst, std::abs(tv_partial(model.operators[p], ft) -
                                             oracle::nmode_contract_full(dense[p], ft)));
        const Signal c = contract(model.operators[p], ft);
        const auto cd = oracle::nmode_contract_all_but_first(dense[p], ft);
        for (std::size_t i = 0; i < c.size(); ++i) r.worst = std::max(r.worst, std::abs(c[i] - cd[i]));
      }
      r.worst = std::max(r.worst, std::abs(tv_total(model, f) - oracle::dense_tv_total(dense, tm, f)));
      const Signal g = tv_gradient(model, f);
      const auto gd = oracle::dense_tv_gradient(dense, tm, f);
      for (std::size_t i = 0; i < g.size(); ++i) r.worst = std::max(r.worst, std::abs(g[i] - gd[i]));
    }
    ++done;
  }
  r.passed = r.worst <= r.tolerance;
  r.detail = fmt::format("max deviation {:.3e} over {} instances", r.worst, n_instances);
  return r;
}

CheckResult check_gradient(std::uint64_t seed, std::size_t n_instances) {
  CheckResult r{"gradient", false, 0.0, 1e-6, {}};
  std::mt19937_64 rng(seed);
  const std::size_t even[] = {2, 4, 6};
  const std::size_t mixed[] = {2, 3, 4, 5, 6, 7};
  std::uniform_int_distribution<std::size_t> pick_n(4, 12);
  std::uniform_int_distribution<std::size_t> pick_k(1, 8);
  constexpr double h = 1e-5;
  std::size_t with_aux = 0;
  for (std::size_t inst = 0; inst < n_instances; ++inst) {
    const std::span<const std::size_t> cards = inst % 2 == 0 ? std::span<const std::size_t>(mixed)
                                                             : std::span<const std::size_t>(even);
    const LaplacianModel model = build_model(random_hypergraph(rng, pick_n(rng), pick_k(rng), cards));
    if (model.pretreated.transform.n_aux() > 0) ++with_aux;
    Signal f = uniform_signal(rng, model.n_vertices(), -1.0, 1.0);
    const Signal g = tv_gradient(model, f);
    Signal fd(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double x = f[i];
      f[i] = x + h;
      const double up = tv_total(model, f);
      f[i] = x - h;
      const double down = tv_total(model, f);
      f[i] = x;
      fd[i] = (up - down) / (2.0 * h);
    }
    double diff = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) diff = std::max(diff, std::abs(g[i] - fd[i]));
    r.worst = std::max(r.worst, diff / std::max(1.0, inf_norm(g)));
  }
  r.passed = r.worst < r.tolerance && with_aux > 0;
  r.detail = fmt::format("max relative error {:.3e} over {} instances ({} with auxiliary vertices)",
                         r.worst, n_instances, with_aux);
  return r;
}

CheckResult check_odd_order_counterexample(std::uint64_t seed, std::size_t n_samples) {
  CheckResult r{"odd-order", false, 0.0, 0.0, {}};
  UniformPartial part(3, 3);
  const VertexId e[] = {0, 1, 2};
  part.add(e);
  std::vector<double> witness;
  r.worst = oracle::search_negative(oracle::build_dense_laplacian(part), n_samples, seed, witness);

  bool rejected = false;
  try {
    LaplacianModel model{pretreat(Hypergraph(3, {})), {}};
    model.operators.emplace_back(part);
    const Observation obs(3, {0}, {0.5});
    objective_and_grad(SolverConfig{}, obs, model, Signal(3, 0.5));
  } catch (const ContractViolation&) {
    rejected = true;
  }
  r.passed = r.worst < 0.0 && rejected;
  r.detail = fmt::format("min L f^3 = {:.4f} at f = ({:.3f}, {:.3f}, {:.3f}); solver {} odd order",
                         r.worst, witness.at(0), witness.at(1), witness.at(2),
                         rejected ? "rejects" : "ACCEPTS");
  return r;
}

}  // namespace hgsr::verify
