#include "maple/config.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace maple::config {

using nlohmann::json;

ToolkitConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        throw std::runtime_error("malformed config: " + path);

    ToolkitConfig cfg;
    if (doc.contains("weights")) {
        const json& w = doc["weights"];
        cfg.weights.lexical_weight = w.value("lexical", cfg.weights.lexical_weight);
        cfg.weights.structural_weight = w.value("structural", cfg.weights.structural_weight);
        cfg.weights.file_weight_same = w.value("file_same", cfg.weights.file_weight_same);
        cfg.weights.lexical_weight_cross =
            w.value("lexical_cross", cfg.weights.lexical_weight_cross);
        cfg.weights.structural_weight_cross =
            w.value("structural_cross", cfg.weights.structural_weight_cross);
        cfg.weights.file_weight_cross = w.value("file_cross", cfg.weights.file_weight_cross);
    }
    cfg.package_fragment_threshold = doc.value("P_frag", cfg.package_fragment_threshold);
    cfg.window = doc.value("w", cfg.window);
    cfg.top_n = doc.value("top_n", cfg.top_n);
    cfg.format.display_threshold = doc.value("tau", cfg.format.display_threshold);
    cfg.format.context_lines = doc.value("delta", cfg.format.context_lines);
    return cfg;
}

}  // namespace maple::config
