#pragma once
// Unified-diff parsing into hunks, plus the modified-file set.

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "maple/code_index.hpp"

namespace maple::patch {

struct Hunk {
    std::string file;
    index::LineRange range;  // post-image; pure deletions anchor on the pre-image start
    std::vector<std::string> removed_lines;
    std::vector<std::string> added_lines;
    std::optional<std::string> enclosing_type;
    std::optional<std::string> enclosing_method;
};

struct Patch {
    std::string bug_id;
    std::string agent;
    std::vector<Hunk> hunks;
    bool empty = true;  // empty <=> hunks.empty(); encodes failed/timeout runs
};

struct GroundTruth {
    std::string bug_id;
    std::vector<Hunk> hunks;  // m >= 2 for multi-hunk bugs
    std::set<std::string> files;
};

struct PatchParseError : std::runtime_error {
    PatchParseError(const std::string& msg, int line)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ")"),
          line_number(line) {}
    int line_number;
};

/// Empty or blank input yields an empty Patch; otherwise one Hunk per `@@`
/// section with the file taken from the `+++` header. Malformed input throws
/// PatchParseError with the offending line number.
Patch parse_patch(const std::string& diff_text);

/// H(S) = set of files modified by the patch; empty patch -> empty set.
std::set<std::string> derive_modified_files(const Patch& patch);

GroundTruth make_ground_truth(const std::string& bug_id, const std::string& diff_text);

/// Fills enclosing type/method on each hunk via scope resolution when an
/// index is available. Uses the hunk's first post-image line.
void fill_hunk_scopes(std::vector<Hunk>& hunks, const index::CodeIndex& ix);

}  // namespace maple::patch
