#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hgsr/hypergraph.hpp"

namespace hgsr {

/// Categorical table: one row per instance, one column per named feature.
struct Dataset {
  std::vector<std::string> instance_ids;
  std::vector<std::string> feature_names;
  std::vector<std::vector<std::string>> values;  // [instance][feature]

  std::size_t n_instances() const noexcept { return instance_ids.size(); }
  std::optional<std::size_t> feature_index(const std::string& name) const;
};

/// Comma-separated text: header line, first column is the instance id.
/// Throws ParseError on an empty input, a row with the wrong column count
/// (naming the line), or a repeated instance id.
Dataset read_dataset(std::istream& in, const std::string& source = "<input>");
Dataset load_dataset(const std::string& path);

/// Sidecar describing how dataset columns are used.
struct DatasetSchema {
  std::string signal_feature;
  std::string positive_value = "1";
  std::string boolean_true_value = "1";
  std::vector<std::string> boolean_features;
  std::vector<std::string> multivalue_features;
};

/// JSON with keys signal_feature, positive_value, boolean_true_value,
/// boolean_features, multivalue_features (and an optional id_column).
DatasetSchema load_schema(const std::string& path);
DatasetSchema parse_schema(const std::string& text, const std::string& source = "<input>");

/// Throws ValidationError if the schema names a feature the dataset lacks,
/// lists a feature twice, or the signal feature has no positive instance.
void validate_schema(const DatasetSchema& schema, const Dataset& ds);

/// Hyperedges from shared feature values over `vertex_subset` (vertex i of
/// the result is instance vertex_subset[i]):
///   - a Boolean feature contributes the set of vertices holding the true value;
///   - a multi-value feature contributes one set per distinct value (ascending);
///   - the signal feature never contributes;
///   - sets smaller than 2, or larger than `max_cardinality` when it is
///     nonzero, are dropped.
/// Features are visited in dataset column order.
Hypergraph build_topology(const Dataset& ds, const DatasetSchema& schema,
                          const std::string& signal_feature,
                          std::span<const std::size_t> vertex_subset,
                          std::size_t max_cardinality = 0);

/// hi for instances whose signal feature equals the positive value, lo otherwise.
Signal signal_levels(const Dataset& ds, const DatasetSchema& schema,
                     const std::string& signal_feature,
                     std::span<const std::size_t> vertex_subset, double lo, double hi);

}  // namespace hgsr
