#pragma once
// Batch aggregation: per-agent rollups, overlap sets, outcome splits,
// correlation and artifact emission.

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "maple/config.hpp"
#include "maple/metrics.hpp"
#include "maple/sequences.hpp"

namespace maple::report {

struct AggregateRow {
    std::string agent;
    int total_bugs = 0;
    int localization_count = 0;
    int compilation_count = 0;
    int accuracy_count = 0;
    double regression_mean = 0.0;  // over defined values only
    int regression_defined = 0;

    double localization_pct() const;
    double compilation_pct() const;
    double accuracy_pct() const;
};

/// Renders 100*count/total to exactly two decimals, e.g. "93.28".
std::string format_percent(int count, int total);

struct OverlapSet {
    std::set<std::string> membership;  // agents; exact-membership semantics
    std::set<std::string> bug_ids;
    std::map<metrics::ProximityClass, int> per_proximity;
};

struct ClassStats {
    std::size_t count = 0;
    std::optional<double> divergence_median, divergence_mean, divergence_max;
    std::optional<double> runtime_mean;
    std::optional<double> tokens_mean;
    std::map<traj::Category, double> tool_shares;
};

struct OutcomeSplit {
    ClassStats pass;
    ClassStats fail;
};

struct AggregationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One row per agent, ordered by ascending accuracy. All agents must cover
/// the same bug universe; mixed universes raise AggregationError.
std::vector<AggregateRow> aggregate(const std::vector<metrics::MetricReport>& reports);

/// All nonempty agent memberships with exact-membership semantics: each bug
/// belongs to the set of exactly the agents that fixed it.
std::vector<OverlapSet> overlap_sets(
    const std::map<std::string, std::set<std::string>>& fixed,
    const std::map<std::string, metrics::ProximityClass>& proximity);

/// Pass/fail partition by accuracy with per-class descriptive statistics.
/// Medians use lower interpolation for even counts; empty classes report
/// absent statistics.
OutcomeSplit outcome_split(const std::vector<metrics::MetricReport>& reports);

/// Sample Pearson correlation; nullopt when either variable has zero
/// variance or fewer than two points are given.
std::optional<double> correlation(const std::vector<double>& x,
                                  const std::vector<double>& y);

// ---------------------------------------------------------------------------
// Run-directory pipeline
// ---------------------------------------------------------------------------

struct BugRecord {
    std::string agent;
    std::string bug_id;
    traj::Trajectory trajectory;
    patch::Patch patch;
    outcomes::TestOutcomes outcomes;
};

struct RunData {
    std::map<std::string, patch::GroundTruth> ground_truth;  // by bug id
    std::map<std::string, metrics::ProximityClass> proximity;  // optional metadata
    std::vector<BugRecord> records;  // sorted by (agent, bug_id)
};

/// Loads `<run>/<agent>/<bug>/{trajectory.log,patch.diff,tests_before.csv,
/// tests_after.csv}` plus `ground_truth/<bug>.diff` and optional
/// `proximity.csv`.
RunData load_run(const std::filesystem::path& run_dir, const traj::CategoryTable& table,
                 std::ostream* warnings = nullptr);

std::vector<metrics::MetricReport> compute_reports(const RunData& run,
                                                   const config::ToolkitConfig& cfg);

struct RunArtifacts {
    std::vector<metrics::MetricReport> reports;
    std::vector<AggregateRow> aggregate_rows;
    std::vector<OverlapSet> overlaps;
    std::map<std::string, OutcomeSplit> splits_by_agent;
    std::map<std::string, std::vector<sequences::OutcomeSequences>> sequences_by_agent;
};

RunArtifacts build_artifacts(const RunData& run, const config::ToolkitConfig& cfg);

/// Writes aggregate.csv, per_bug.json, overlaps.json, splits.json and
/// sequences.json (or their CSV forms) into `out_dir`. Byte-deterministic
/// for fixed inputs. Returns a process exit status.
int emit(const RunArtifacts& artifacts, const std::string& format,
         const std::filesystem::path& out_dir);

}  // namespace maple::report
