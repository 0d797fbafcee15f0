#pragma once
// Precomputed type/method indices over a Java codebase.
//
// Three complementary indices back every query: a type index, a two-level
// type -> method index, and a top-level method index kept for language
// generality (always empty for Java). All occurrence sets are stored
// sorted by (path, start line); the index is immutable after build and
// safe for concurrent readers.

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "maple/java_parser.hpp"

namespace maple::index {

struct Occurrence {
    std::string file;  // path relative to the codebase root, '/'-separated
    LineRange range;

    friend bool operator==(const Occurrence&, const Occurrence&) = default;
    friend auto operator<=>(const Occurrence& a, const Occurrence& b) {
        return std::tie(a.file, a.range.start, a.range.end) <=>
               std::tie(b.file, b.range.start, b.range.end);
    }
};

// Per-file metadata retained for code extraction and skeleton rendering.
struct FileRecord {
    std::vector<std::string> lines;
    ParseStatus status = ParseStatus::failed;
    std::vector<int> package_import_lines;
    // declaration start line -> signature end (opening brace) for types
    std::map<int, int> type_signature_end;
    std::vector<int> declaration_lines;  // sorted type + method start lines
};

struct CodeIndex {
    std::filesystem::path root;
    std::map<std::string, std::vector<Occurrence>> type_index;
    std::map<std::string, std::map<std::string, std::vector<Occurrence>>> method_index;
    std::map<std::string, std::vector<Occurrence>> top_level_method_index;
    std::vector<std::pair<std::string, std::string>> failures;  // (path, reason)
    std::map<std::string, FileRecord> files;                    // parsed + recovered
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Recursive discovery of `.java` files under `root`: suffix match,
/// symlinks not followed, hidden directories skipped. Sorted by path.
std::vector<std::filesystem::path> discover_sources(const std::filesystem::path& root);

/// Builds the three indices over every `.java` file under `root`.
/// Unparseable files land in `failures` and are reported on `diagnostics`
/// as `PARSE-FAIL <path> <reason>`; they never block the remaining files.
/// Throws ConfigError when the root does not exist.
CodeIndex build_index(const std::filesystem::path& root, std::ostream* diagnostics = nullptr);

}  // namespace maple::index
