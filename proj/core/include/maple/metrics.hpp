#pragma once
// Effectiveness, complexity and operational-dynamics metrics over
// normalized repair records.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maple/patch.hpp"
#include "maple/test_outcomes.hpp"
#include "maple/trajectory.hpp"

namespace maple::metrics {

struct DivergenceConfig {
    // same-file regime
    double lexical_weight = 0.4;
    double structural_weight = 0.4;
    double file_weight_same = 0.2;
    // cross-file regime amplifies the file-level contribution
    double lexical_weight_cross = 0.3;
    double structural_weight_cross = 0.3;
    double file_weight_cross = 0.4;
};

enum class ProximityClass { Nucleus, Cluster, Orbit, Sprawl, Fragment };

const char* to_string(ProximityClass p);
std::optional<ProximityClass> proximity_from_string(const std::string& name);

struct MetricReport {
    std::string bug_id;
    std::string agent;
    int localization = 0;
    int compilation = 0;
    int accuracy = 0;
    std::optional<int> regression_reduction;  // defined iff compiled
    double divergence = 0.0;
    ProximityClass proximity = ProximityClass::Nucleus;
    std::uint64_t total_tokens = 0;
    double runtime_s = 0.0;
    std::map<traj::Category, double> tool_utilization;
    std::map<traj::Category, std::uint64_t> tool_counts;
};

// --- effectiveness ---------------------------------------------------------

int localization_success(const patch::GroundTruth& gt, const patch::Patch& p);
int repair_accuracy(const outcomes::TestOutcomes& o, const patch::Patch& p);
std::optional<int> regression_reduction(const outcomes::TestOutcomes& o);

// --- complexity ------------------------------------------------------------

/// Identifier-level token set of a hunk's changed lines (split on
/// non-identifier characters, whitespace dropped, case kept).
std::vector<std::string> changed_line_tokens(const patch::Hunk& h);

/// Syntax-node-kind multiset of a hunk's changed code, obtained by
/// classifying each statement fragment. Empty when nothing classifies.
std::map<std::string, int> fragment_node_kinds(const patch::Hunk& h);

/// Weighted lexical/structural/file dissimilarity in [0, 1]. Cross-file
/// pairs use the cross regime weights.
double pairwise_divergence(const patch::Hunk& a, const patch::Hunk& b,
                           const DivergenceConfig& cfg = {});

/// Div(P) = ln(n) * mean pairwise score over all C(n,2) pairs; in [0, ln n].
/// Throws std::domain_error for fewer than two hunks.
double hunk_divergence(const std::vector<patch::Hunk>& hunks,
                       const DivergenceConfig& cfg = {});

/// Dispersion class of a hunk set. `package_fragment_threshold` is the
/// minimum distinct-package count for Fragment. The package of a file is its
/// directory path. Throws std::domain_error on an empty hunk list.
ProximityClass classify_proximity(const std::vector<patch::Hunk>& hunks,
                                  int package_fragment_threshold = 4);

// --- operational dynamics --------------------------------------------------

struct TokenTotals {
    std::uint64_t input = 0;
    std::uint64_t output = 0;
    std::uint64_t total = 0;  // input + output; cache counters excluded
};

TokenTotals token_totals(const traj::TokenUsage& usage);
double runtime_seconds(const traj::Trajectory& t);

/// Relative call frequency per category; fractions sum to 1. Empty
/// trajectories yield an empty map (flagged by the caller, excluded from
/// aggregation).
std::map<traj::Category, double> tool_utilization(const traj::Trajectory& t);
std::map<traj::Category, std::uint64_t> tool_counts(const traj::Trajectory& t);

}  // namespace maple::metrics
