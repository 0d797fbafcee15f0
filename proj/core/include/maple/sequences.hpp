#pragma once
// Sliding-window mining of tool-category sequences.

#include <cstdint>
#include <string>
#include <vector>

#include "maple/trajectory.hpp"

namespace maple::sequences {

struct SequencePattern {
    std::vector<traj::Category> window;  // length w
    std::uint64_t count = 0;
    double share = 0.0;  // count / total windows of the outcome class
};

struct OutcomeSequences {
    std::string outcome;  // "pass", "fail", or "all"
    std::uint64_t total_windows = 0;
    std::vector<SequencePattern> top;
};

struct LabeledSequence {
    std::vector<traj::Category> categories;
    bool pass = false;
};

std::vector<traj::Category> categories_of(const traj::Trajectory& t);

/// Extracts every contiguous length-w window (i <= n-w+1), aggregates counts
/// per outcome class and returns the top_n patterns by count, ties broken
/// lexicographically on the window. Sequences shorter than w contribute no
/// windows. w must be >= 2.
std::vector<OutcomeSequences> mine_sequences(const std::vector<LabeledSequence>& input,
                                             int w, int top_n,
                                             bool split_by_outcome);

std::string window_label(const std::vector<traj::Category>& window);

}  // namespace maple::sequences
