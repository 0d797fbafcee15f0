#pragma once
// MCP stdio server exposing the nine maple_* tools.
//
// Transport: newline-delimited UTF-8 JSON-RPC 2.0 over stdin/stdout.
// Only protocol messages go to stdout; diagnostics use the provided
// diagnostic stream. Requests are processed synchronously in order.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "maple/code_index.hpp"
#include "maple/query.hpp"

namespace maple::mcp {

struct ToolDescriptor {
    std::string name;
    std::string description;
    nlohmann::json input_schema;
};

/// The nine tools, in table order. Names are stable protocol surface.
const std::vector<ToolDescriptor>& tool_descriptors();

struct Session {
    std::filesystem::path codebase_root;
    query::FormatConfig format;
    std::optional<index::CodeIndex> index;  // built lazily, at most once
    int build_count = 0;
    std::ostream* diagnostics = nullptr;

    const index::CodeIndex& ready_index();
};

struct InvalidParams : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Routes one tool call to the query engine and formats the outcome.
/// Empty query results yield the "no matches" payload as a success.
/// Unknown tools or missing arguments throw InvalidParams.
std::string dispatch(Session& session, const std::string& tool,
                     const nlohmann::json& args);

/// Blocking request loop; terminates when `in` closes. Returns exit status.
int serve(Session& session, std::istream& in, std::ostream& out);

}  // namespace maple::mcp
