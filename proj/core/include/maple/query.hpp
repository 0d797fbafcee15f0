#pragma once
// Scope-aware queries over an immutable CodeIndex.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maple/code_index.hpp"

namespace maple::query {

using index::CodeIndex;
using index::LineRange;

struct QueryResult {
    std::string file;
    std::optional<std::string> enclosing_type;
    std::optional<std::string> enclosing_method;
    LineRange range;
    std::string code;  // exactly the file lines range.start..range.end

    friend bool operator==(const QueryResult&, const QueryResult&) = default;
};

struct FormatConfig {
    int display_threshold = 3;  // tau
    int context_lines = 3;      // delta
};

// Global lookups. Unknown names yield empty lists, never errors.
std::vector<QueryResult> find_class(const CodeIndex& ix, const std::string& name);
std::vector<QueryResult> find_method(const CodeIndex& ix, const std::string& name);
std::vector<QueryResult> find_method_in_class(const CodeIndex& ix,
                                              const std::string& method,
                                              const std::string& type_name);
std::vector<QueryResult> find_code(const CodeIndex& ix, const std::string& snippet,
                                   int context_lines = 3);

// File-scoped variants: results restricted to paths ending with `file_suffix`
// at a path-component boundary.
std::vector<QueryResult> find_class_in_file(const CodeIndex& ix, const std::string& name,
                                            const std::string& file_suffix);
std::vector<QueryResult> find_method_in_file(const CodeIndex& ix, const std::string& name,
                                             const std::string& file_suffix);
std::vector<QueryResult> find_code_in_file(const CodeIndex& ix, const std::string& snippet,
                                           const std::string& file_suffix,
                                           int context_lines = 3);

/// Package line, import lines, type headers and method signature lines of the
/// first file matching the suffix, in file order. Unknown or unparsed files
/// produce an explanatory payload rather than an error.
std::string extract_class_skeleton(const CodeIndex& ix, const std::string& file_suffix);

/// Deterministic directory tree: directories before files, lexicographic,
/// same discovery rules as indexing.
std::string repo_structure(const std::filesystem::path& root);

/// Innermost (type, method) whose indexed range contains the line; falls back
/// to top-level methods; (nullopt, nullopt) when nothing contains it.
std::pair<std::optional<std::string>, std::optional<std::string>> resolve_scope(
    const CodeIndex& ix, const std::string& file, int line);

/// Adaptive rendering: up to `display_threshold` full tagged blocks, then a
/// summary of the remaining file paths and match counts. Deterministic and
/// total; the empty list renders a fixed "no matches" line.
std::string format_results(const std::vector<QueryResult>& results,
                           const FormatConfig& config);

}  // namespace maple::query
