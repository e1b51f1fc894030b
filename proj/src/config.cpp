#include "hgsr/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

#include <json.hpp>

#include "hgsr/errors.hpp"

namespace hgsr {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  if (!obj.is_object()) throw ValidationError("config: '" + where + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) throw ValidationError("config: unknown key '" + where + "." + key + "'");
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (!obj.contains(key)) return;
  if constexpr (std::is_unsigned_v<T> && !std::is_same_v<T, bool>) {
    if (!obj.at(key).is_number_unsigned()) {
      throw ValidationError(std::string("config: '") + key + "' must be a non-negative integer");
    }
  }
  out = obj.at(key).get<T>();
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, 0, e.what());
  }
  ExperimentConfig cfg;
  try {
    reject_unknown(j, {"solver", "experiment"}, "<root>");
    if (j.contains("solver")) {
      const auto& s = j.at("solver");
      reject_unknown(s, {"lambda", "step_size", "max_iters", "grad_tol", "loss", "clamp_eps",
                         "init_unobserved", "project"},
                     "solver");
      read(s, "lambda", cfg.solver.lambda);
      read(s, "step_size", cfg.solver.step_size);
      read(s, "max_iters", cfg.solver.max_iters);
      read(s, "grad_tol", cfg.solver.grad_tol);
      read(s, "clamp_eps", cfg.solver.clamp_eps);
      read(s, "init_unobserved", cfg.solver.init_unobserved);
      read(s, "project", cfg.solver.project);
      if (s.contains("loss")) cfg.solver.loss = parse_loss_kind(s.at("loss").get<std::string>());
    }
    if (j.contains("experiment")) {
      const auto& e = j.at("experiment");
      reject_unknown(e, {"signal_feature", "positive_level", "negative_level", "threshold",
                         "n_vertices", "fractions", "n_trials", "seed", "baseline",
                         "baseline_alpha", "baseline_iterations", "max_hyperedge_cardinality",
                         "resample_vertices", "threads"},
                     "experiment");
      read(e, "signal_feature", cfg.signal_feature);
      read(e, "positive_level", cfg.positive_level);
      read(e, "negative_level", cfg.negative_level);
      read(e, "threshold", cfg.threshold);
      read(e, "n_vertices", cfg.n_vertices);
      read(e, "fractions", cfg.fractions);
      read(e, "n_trials", cfg.n_trials);
      read(e, "seed", cfg.seed);
      read(e, "baseline", cfg.baseline_enabled);
      read(e, "baseline_alpha", cfg.baseline_alpha);
      read(e, "baseline_iterations", cfg.baseline_iterations);
      read(e, "max_hyperedge_cardinality", cfg.max_hyperedge_cardinality);
      read(e, "resample_vertices", cfg.resample_vertices);
      read(e, "threads", cfg.threads);
    }
  } catch (const json::exception& e) {
    throw ValidationError("config " + source + ": " + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace hgsr
