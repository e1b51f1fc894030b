#pragma once

#include <string>

#include "hgsr/experiment.hpp"

namespace hgsr {

/// Reads a JSON config of the form
///
///   { "solver": { "lambda": 0.001, "step_size": 0.05, "max_iters": 10000,
///                 "grad_tol": 1e-6, "loss": "cross_entropy", "clamp_eps": 1e-6,
///                 "init_unobserved": 0.5, "project": true },
///     "experiment": { "signal_feature": "", "positive_level": 0.95,
///                     "negative_level": 0.05, "threshold": 0.5, "n_vertices": 30,
///                     "fractions": [0.4, 0.5, 0.6, 0.7], "n_trials": 1000,
///                     "seed": 20210601, "baseline": true, "baseline_alpha": 0.9,
///                     "baseline_iterations": 200, "max_hyperedge_cardinality": 0,
///                     "resample_vertices": true, "threads": 0 } }
///
/// Every key is optional and defaults to the value above; unknown keys and
/// wrongly typed values are rejected. Throws ParseError for malformed JSON and
/// ValidationError for out-of-range fields.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<input>");
ExperimentConfig load_config(const std::string& path);

}  // namespace hgsr
