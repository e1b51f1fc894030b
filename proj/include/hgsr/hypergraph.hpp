#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hgsr {

using VertexId = std::uint32_t;
using Hyperedge = std::vector<VertexId>;
using Signal = std::vector<double>;

/// Undirected, unweighted hypergraph over vertices 0..n_vertices-1.
///
/// Hyperedges are stored sorted and keep their input order in the list.
/// Identical hyperedges are kept as separate entries and count twice toward
/// degrees and total variation.
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Throws ValidationError if a hyperedge has fewer than two vertices,
  /// repeats a vertex, or names a vertex >= n_vertices.
  Hypergraph(std::size_t n_vertices, std::vector<Hyperedge> hyperedges);

  std::size_t n_vertices() const noexcept { return n_vertices_; }
  std::size_t n_hyperedges() const noexcept { return hyperedges_.size(); }
  const std::vector<Hyperedge>& hyperedges() const noexcept { return hyperedges_; }
  const Hyperedge& hyperedge(std::size_t k) const { return hyperedges_.at(k); }

  /// Number of hyperedges containing each vertex.
  std::vector<std::size_t> degrees() const;

 private:
  std::size_t n_vertices_ = 0;
  std::vector<Hyperedge> hyperedges_;
};

/// Sorted distinct hyperedge cardinalities occurring in `h`.
std::vector<std::size_t> cardinality_set(const Hypergraph& h);

/// All hyperedges of one cardinality, stored flat (row-major, `cardinality`
/// vertices per hyperedge) over a vertex range of size `dimension`.
class UniformPartial {
 public:
  UniformPartial(std::size_t cardinality, std::size_t dimension);

  std::size_t cardinality() const noexcept { return cardinality_; }
  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t n_hyperedges() const noexcept { return pins_.size() / cardinality_; }
  std::span<const VertexId> hyperedge(std::size_t k) const {
    return {pins_.data() + k * cardinality_, cardinality_};
  }
  std::span<const VertexId> pins() const noexcept { return pins_; }

  /// Throws ValidationError on wrong size or out-of-range vertex.
  void add(std::span<const VertexId> vertices);

 private:
  std::size_t cardinality_;
  std::size_t dimension_;
  std::vector<VertexId> pins_;
};

/// One partial per distinct cardinality, ascending by cardinality.
std::vector<UniformPartial> decompose(const Hypergraph& h);

/// The (N+t)xN map from an original signal to the pretreated signal. The top
/// NxN block is the identity; auxiliary row j averages the original members of
/// the hyperedge auxiliary vertex N+j was added to.
class TransformationMatrix {
 public:
  struct AuxRow {
    std::vector<VertexId> columns;  // original vertices, sorted
    double weight;                  // 1/(c-1), c the pretreated cardinality
  };

  explicit TransformationMatrix(std::size_t n_original) : n_original_(n_original) {}

  std::size_t n_original() const noexcept { return n_original_; }
  std::size_t n_aux() const noexcept { return aux_rows_.size(); }
  std::size_t n_rows() const noexcept { return n_original_ + aux_rows_.size(); }
  const std::vector<AuxRow>& aux_rows() const noexcept { return aux_rows_; }

  void add_aux_row(std::vector<VertexId> columns);

  /// Dense row i of T (length n_original).
  std::vector<double> dense_row(std::size_t i) const;

 private:
  std::size_t n_original_;
  std::vector<AuxRow> aux_rows_;
};

/// f~ = T f. Throws DimensionError unless f.size() == n_original.
Signal apply_transform(const TransformationMatrix& tm, std::span<const double> f);

/// T^T g. Throws DimensionError unless g.size() == n_rows.
Signal transpose_apply(const TransformationMatrix& tm, std::span<const double> g);

struct PretreatedHypergraph {
  Hypergraph hypergraph;  // over N+t vertices, every cardinality even
  TransformationMatrix transform;
  std::vector<std::size_t> aux_origin;  // hyperedge index each auxiliary vertex joined
};

/// Appends a fresh auxiliary vertex to every odd-cardinality hyperedge.
/// Auxiliary vertices get indices N..N+t-1 in hyperedge-list order.
PretreatedHypergraph pretreat(const Hypergraph& h);

/// Text format: first non-comment line `N K`, then K lines of vertex indices.
/// Lines starting with '#' and blank lines are skipped. `source` names the
/// input in error messages.
Hypergraph read_hypergraph(std::istream& in, const std::string& source = "<input>");
Hypergraph load_hypergraph(const std::string& path);
void write_hypergraph(std::ostream& out, const Hypergraph& h);

}  // namespace hgsr
