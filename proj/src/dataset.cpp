#include "hgsr/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "hgsr/errors.hpp"

namespace hgsr {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::optional<std::size_t> Dataset::feature_index(const std::string& name) const {
  auto it = std::find(feature_names.begin(), feature_names.end(), name);
  if (it == feature_names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - feature_names.begin());
}

Dataset read_dataset(std::istream& in, const std::string& source) {
  Dataset ds;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::size_t n_cols = 0;
  std::unordered_set<std::string> ids;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto cells = split_csv(line);
    if (!have_header) {
      if (cells.size() < 2) throw ParseError(source, lineno, "header needs an id column and at least one feature");
      n_cols = cells.size();
      ds.feature_names.assign(cells.begin() + 1, cells.end());
      have_header = true;
      continue;
    }
    if (cells.size() != n_cols) {
      throw ParseError(source, lineno, "expected " + std::to_string(n_cols) + " columns, found " +
                                           std::to_string(cells.size()));
    }
    if (cells[0].empty()) throw ParseError(source, lineno, "empty instance id");
    if (!ids.insert(cells[0]).second) {
      throw ParseError(source, lineno, "duplicate instance id '" + cells[0] + "'");
    }
    ds.instance_ids.push_back(cells[0]);
    ds.values.emplace_back(cells.begin() + 1, cells.end());
  }
  if (!have_header) throw ParseError(source, 0, "empty dataset file");
  if (ds.instance_ids.empty()) throw ParseError(source, lineno, "dataset has a header but no rows");
  return ds;
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return read_dataset(in, path);
}

DatasetSchema parse_schema(const std::string& text, const std::string& source) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source, 0, e.what());
  }
  if (!j.is_object()) throw ParseError(source, 0, "schema must be a JSON object");
  static const std::set<std::string> known = {"id_column", "signal_feature", "positive_value",
                                              "boolean_true_value", "boolean_features",
                                              "multivalue_features"};
  DatasetSchema s;
  try {
    for (const auto& [key, value] : j.items()) {
      if (!known.contains(key)) throw ValidationError("schema: unknown key '" + key + "'");
    }
    s.signal_feature = j.at("signal_feature").get<std::string>();
    s.positive_value = j.value("positive_value", s.positive_value);
    s.boolean_true_value = j.value("boolean_true_value", s.boolean_true_value);
    s.boolean_features = j.value("boolean_features", std::vector<std::string>{});
    s.multivalue_features = j.value("multivalue_features", std::vector<std::string>{});
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source, 0, std::string("schema: ") + e.what());
  }
  return s;
}

DatasetSchema load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_schema(buf.str(), path);
}

void validate_schema(const DatasetSchema& schema, const Dataset& ds) {
  std::set<std::string> seen;
  auto check = [&](const std::string& name, const char* role) {
    if (!ds.feature_index(name)) {
      throw ValidationError(std::string("schema: ") + role + " feature '" + name +
                            "' is not a dataset column");
    }
  };
  check(schema.signal_feature, "signal");
  for (const auto* list : {&schema.boolean_features, &schema.multivalue_features}) {
    for (const auto& name : *list) {
      check(name, "topology");
      if (!seen.insert(name).second) {
        throw ValidationError("schema: feature '" + name + "' declared more than once");
      }
    }
  }
  const std::size_t col = *ds.feature_index(schema.signal_feature);
  const bool any_positive = std::any_of(ds.values.begin(), ds.values.end(), [&](const auto& row) {
    return row[col] == schema.positive_value;
  });
  if (!any_positive) {
    throw ValidationError("schema: no instance has " + schema.signal_feature + "=" +
                          schema.positive_value);
  }
}

Hypergraph build_topology(const Dataset& ds, const DatasetSchema& schema,
                          const std::string& signal_feature,
                          std::span<const std::size_t> vertex_subset, std::size_t max_cardinality) {
  const std::set<std::string> boolean(schema.boolean_features.begin(), schema.boolean_features.end());
  const std::set<std::string> multi(schema.multivalue_features.begin(), schema.multivalue_features.end());
  std::vector<Hyperedge> edges;
  auto keep = [&](Hyperedge e) {
    if (e.size() < 2) return;
    if (max_cardinality != 0 && e.size() > max_cardinality) return;
    edges.push_back(std::move(e));
  };
  for (std::size_t col = 0; col < ds.feature_names.size(); ++col) {
    const auto& name = ds.feature_names[col];
    if (name == signal_feature) continue;
    if (boolean.contains(name)) {
      Hyperedge e;
      for (std::size_t i = 0; i < vertex_subset.size(); ++i) {
        if (ds.values[vertex_subset[i]][col] == schema.boolean_true_value) {
          e.push_back(static_cast<VertexId>(i));
        }
      }
      keep(std::move(e));
    } else if (multi.contains(name)) {
      std::map<std::string, Hyperedge> groups;
      for (std::size_t i = 0; i < vertex_subset.size(); ++i) {
        groups[ds.values[vertex_subset[i]][col]].push_back(static_cast<VertexId>(i));
      }
      for (auto& [value, e] : groups) keep(std::move(e));
    }
  }
  return Hypergraph(vertex_subset.size(), std::move(edges));
}

Signal signal_levels(const Dataset& ds, const DatasetSchema& schema,
                     const std::string& signal_feature,
                     std::span<const std::size_t> vertex_subset, double lo, double hi) {
  const auto col = ds.feature_index(signal_feature);
  if (!col) throw ValidationError("signal feature '" + signal_feature + "' is not a dataset column");
  Signal f;
  f.reserve(vertex_subset.size());
  for (std::size_t inst : vertex_subset) {
    f.push_back(ds.values.at(inst)[*col] == schema.positive_value ? hi : lo);
  }
  return f;
}

}  // namespace hgsr
