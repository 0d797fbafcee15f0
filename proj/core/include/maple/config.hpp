#pragma once
// Single configuration document for divergence weights, proximity
// thresholds, sequence mining and result formatting.

#include <string>

#include "maple/metrics.hpp"
#include "maple/query.hpp"

namespace maple::config {

struct ToolkitConfig {
    metrics::DivergenceConfig weights;
    int package_fragment_threshold = 4;  // P_frag
    int window = 3;                      // w
    int top_n = 5;
    query::FormatConfig format;          // tau, delta
};

/// JSON keys: weights {lexical, structural, file_same, lexical_cross,
/// structural_cross, file_cross}, P_frag, w, top_n, tau, delta.
/// Missing keys keep their defaults.
ToolkitConfig load_config(const std::string& path);

}  // namespace maple::config
