#pragma once
// Normalized agent execution records: trajectories, token accounting and
// the raw-tool -> category mapping table.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace maple::traj {

enum class Category {
    WRITE,
    READ,
    TEST,
    BUILD,
    SEARCH_CONTENT,
    SEARCH_FILES,
    NAVIGATE,
    OTHER,
};

const char* to_string(Category c);
std::optional<Category> category_from_string(const std::string& name);

enum class ActionKind { native, shell };
enum class Terminal { completed, timeout, runtime_error };

struct Action {
    int ordinal = 0;  // contiguous from 1
    std::string raw_tool;
    Category category = Category::OTHER;
    ActionKind kind = ActionKind::native;
    double timestamp = 0.0;
    std::optional<std::string> observation_digest;
};

struct TokenUsage {
    std::uint64_t call_count = 0;
    std::uint64_t input_tokens = 0;
    std::uint64_t output_tokens = 0;
    std::uint64_t cache_creation_tokens = 0;
    std::uint64_t cache_read_tokens = 0;
};

struct Trajectory {
    std::string bug_id;
    std::string agent;
    std::vector<Action> actions;
    TokenUsage tokens;
    double start_ts = 0.0;
    double end_ts = 0.0;
    Terminal terminal = Terminal::completed;
};

// Mapping from raw tool names (and two-token shell command heads) to the
// seven functional categories. Kept as data so it can be audited and
// overridden from a file.
class CategoryTable {
public:
    static CategoryTable defaults();
    static CategoryTable load(const std::string& path);

    /// Shell commands classify by their first token after environment
    /// assignments; two-token heads (e.g. "mvn test") take precedence.
    /// Unknown tools map to OTHER; `known` reports whether a rule matched.
    Category classify(const std::string& raw_tool, ActionKind kind,
                      bool* known = nullptr) const;

    const std::map<std::string, Category>& entries() const { return entries_; }

private:
    std::map<std::string, Category> entries_;
};

struct IngestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses one line-delimited trajectory document (header record followed by
/// event records), categorizing each action. Unknown tools become OTHER and
/// a warning on `warnings` when provided.
Trajectory ingest_trajectory(std::istream& in, const CategoryTable& table,
                             std::ostream* warnings = nullptr);
Trajectory ingest_trajectory_file(const std::string& path, const CategoryTable& table,
                                  std::ostream* warnings = nullptr);

}  // namespace maple::traj
