#include "hgsr/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "hgsr/errors.hpp"

namespace hgsr {

Hypergraph::Hypergraph(std::size_t n_vertices, std::vector<Hyperedge> hyperedges)
    : n_vertices_(n_vertices), hyperedges_(std::move(hyperedges)) {
  for (std::size_t k = 0; k < hyperedges_.size(); ++k) {
    auto& e = hyperedges_[k];
    if (e.size() < 2) {
      throw ValidationError("hyperedge " + std::to_string(k) + " has cardinality " +
                            std::to_string(e.size()) + "; at least 2 required");
    }
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw ValidationError("hyperedge " + std::to_string(k) + " repeats a vertex");
    }
    if (e.back() >= n_vertices_) {
      throw ValidationError("hyperedge " + std::to_string(k) + " names vertex " +
                            std::to_string(e.back()) + " but N=" + std::to_string(n_vertices_));
    }
  }
}

std::vector<std::size_t> Hypergraph::degrees() const {
  std::vector<std::size_t> deg(n_vertices_, 0);
  for (const auto& e : hyperedges_) {
    for (VertexId v : e) ++deg[v];
  }
  return deg;
}

std::vector<std::size_t> cardinality_set(const Hypergraph& h) {
  std::vector<std::size_t> cards;
  for (const auto& e : h.hyperedges()) cards.push_back(e.size());
  std::sort(cards.begin(), cards.end());
  cards.erase(std::unique(cards.begin(), cards.end()), cards.end());
  return cards;
}

UniformPartial::UniformPartial(std::size_t cardinality, std::size_t dimension)
    : cardinality_(cardinality), dimension_(dimension) {
  if (cardinality_ < 2) throw ValidationError("partial cardinality must be >= 2");
}

void UniformPartial::add(std::span<const VertexId> vertices) {
  if (vertices.size() != cardinality_) {
    throw ValidationError("hyperedge of size " + std::to_string(vertices.size()) +
                          " added to " + std::to_string(cardinality_) + "-uniform partial");
  }
  for (VertexId v : vertices) {
    if (v >= dimension_) throw ValidationError("vertex out of range for partial");
  }
  pins_.insert(pins_.end(), vertices.begin(), vertices.end());
}

std::vector<UniformPartial> decompose(const Hypergraph& h) {
  std::map<std::size_t, UniformPartial> by_card;
  for (const auto& e : h.hyperedges()) {
    auto it = by_card.try_emplace(e.size(), e.size(), h.n_vertices()).first;
    it->second.add(e);
  }
  std::vector<UniformPartial> parts;
  parts.reserve(by_card.size());
  for (auto& [c, part] : by_card) parts.push_back(std::move(part));
  return parts;
}

void TransformationMatrix::add_aux_row(std::vector<VertexId> columns) {
  std::sort(columns.begin(), columns.end());
  if (columns.empty() || columns.back() >= n_original_) {
    throw ValidationError("auxiliary row must reference original vertices only");
  }
  const double w = 1.0 / static_cast<double>(columns.size());
  aux_rows_.push_back({std::move(columns), w});
}

std::vector<double> TransformationMatrix::dense_row(std::size_t i) const {
  std::vector<double> row(n_original_, 0.0);
  if (i < n_original_) {
    row[i] = 1.0;
  } else {
    const auto& aux = aux_rows_.at(i - n_original_);
    for (VertexId v : aux.columns) row[v] = aux.weight;
  }
  return row;
}

Signal apply_transform(const TransformationMatrix& tm, std::span<const double> f) {
  if (f.size() != tm.n_original()) {
    throw DimensionError("apply_transform: signal length " + std::to_string(f.size()) +
                         ", expected " + std::to_string(tm.n_original()));
  }
  Signal out(f.begin(), f.end());
  out.reserve(tm.n_rows());
  for (const auto& row : tm.aux_rows()) {
    double s = 0.0;
    for (VertexId v : row.columns) s += f[v];
    out.push_back(s * row.weight);
  }
  return out;
}

Signal transpose_apply(const TransformationMatrix& tm, std::span<const double> g) {
  if (g.size() != tm.n_rows()) {
    throw DimensionError("transpose_apply: vector length " + std::to_string(g.size()) +
                         ", expected " + std::to_string(tm.n_rows()));
  }
  const std::size_t n = tm.n_original();
  Signal out(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(n));
  for (std::size_t j = 0; j < tm.n_aux(); ++j) {
    const auto& row = tm.aux_rows()[j];
    const double contrib = row.weight * g[n + j];
    for (VertexId v : row.columns) out[v] += contrib;
  }
  return out;
}

PretreatedHypergraph pretreat(const Hypergraph& h) {
  const std::size_t n = h.n_vertices();
  TransformationMatrix tm(n);
  std::vector<std::size_t> origin;
  std::vector<Hyperedge> edges;
  edges.reserve(h.n_hyperedges());
  for (std::size_t k = 0; k < h.n_hyperedges(); ++k) {
    Hyperedge e = h.hyperedge(k);
    if (e.size() % 2 == 1) {
      tm.add_aux_row(e);
      e.push_back(static_cast<VertexId>(n + origin.size()));
      origin.push_back(k);
    }
    edges.push_back(std::move(e));
  }
  Hypergraph out(n + origin.size(), std::move(edges));
  return {std::move(out), std::move(tm), std::move(origin)};
}

namespace {

bool skip_line(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

}  // namespace

Hypergraph read_hypergraph(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  bool have_header = false;
  std::vector<Hyperedge> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (skip_line(line)) continue;
    std::istringstream ss(line);
    if (!have_header) {
      long long nn = -1;
      long long kk = -1;
      std::string extra;
      if (!(ss >> nn >> kk) || (ss >> extra) || nn <= 0 || kk < 0) {
        throw ParseError(source, lineno, "expected header `N K` with N > 0, K >= 0");
      }
      n = static_cast<std::size_t>(nn);
      k = static_cast<std::size_t>(kk);
      have_header = true;
      continue;
    }
    if (edges.size() == k) throw ParseError(source, lineno, "more hyperedge lines than K");
    Hyperedge e;
    std::string tok;
    while (ss >> tok) {
      std::size_t used = 0;
      long long v = -1;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || v < 0) {
        throw ParseError(source, lineno, "invalid vertex index '" + tok + "'");
      }
      if (static_cast<std::size_t>(v) >= n) {
        throw ParseError(source, lineno, "vertex " + tok + " out of range for N=" + std::to_string(n));
      }
      e.push_back(static_cast<VertexId>(v));
    }
    if (e.size() < 2) {
      throw ParseError(source, lineno, "hyperedge of cardinality " + std::to_string(e.size()) +
                                           "; at least 2 required");
    }
    auto sorted = e;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ParseError(source, lineno, "hyperedge repeats a vertex");
    }
    edges.push_back(std::move(e));
  }
  if (!have_header) throw ParseError(source, 0, "missing `N K` header");
  if (edges.size() != k) {
    throw ParseError(source, lineno, "expected " + std::to_string(k) + " hyperedges, found " +
                                         std::to_string(edges.size()));
  }
  return Hypergraph(n, std::move(edges));
}

Hypergraph load_hypergraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return read_hypergraph(in, path);
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
  out << h.n_vertices() << ' ' << h.n_hyperedges() << '\n';
  for (const auto& e : h.hyperedges()) {
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
    out << '\n';
  }
}

}  // namespace hgsr
