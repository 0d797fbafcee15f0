#include "maple/mcp_server.hpp"

#include <chrono>
#include <iostream>

namespace maple::mcp {

using nlohmann::json;

namespace {

constexpr const char* kServerName = "maple";
constexpr const char* kServerVersion = "0.1.0";
constexpr const char* kDefaultProtocolVersion = "2025-06-18";

json schema(std::initializer_list<std::pair<const char*, const char*>> props) {
    json properties = json::object();
    json required = json::array();
    for (const auto& [name, desc] : props) {
        properties[name] = {{"type", "string"}, {"description", desc}};
        required.push_back(name);
    }
    return {{"type", "object"}, {"properties", properties}, {"required", required}};
}

std::vector<ToolDescriptor> make_descriptors() {
    return {
        {"maple_find_method_in_class",
         "Locate a method within a given class and return its source code.",
         schema({{"method", "Method name"}, {"class", "Enclosing class name"}})},
        {"maple_find_class_in_file",
         "Locate a class declaration within a specific file.",
         schema({{"class", "Class name"}, {"file", "File path or suffix"}})},
        {"maple_find_method_in_file",
         "Locate a method within a specific file and return its source code.",
         schema({{"method", "Method name"}, {"file", "File path or suffix"}})},
        {"maple_find_code_in_file",
         "Search for a code snippet in a specific file and return matches with context.",
         schema({{"snippet", "Exact code snippet"}, {"file", "File path or suffix"}})},
        {"maple_extract_class_skeleton",
         "Extract package, imports and declaration signatures of a file without bodies.",
         schema({{"file", "File path or suffix"}})},
        {"maple_find_class",
         "Locate a class declaration anywhere in the codebase.",
         schema({{"class", "Class name"}})},
        {"maple_find_method",
         "Locate a method anywhere in the codebase and return its source code.",
         schema({{"method", "Method name"}})},
        {"maple_find_code",
         "Search for a code snippet across the codebase and return matches with context.",
         schema({{"snippet", "Exact code snippet"}})},
        {"maple_repo_structure",
         "View the repository directory structure.",
         json{{"type", "object"}, {"properties", json::object()}, {"required", json::array()}}},
    };
}

std::string require_arg(const json& args, const char* name) {
    if (!args.is_object() || !args.contains(name) || !args[name].is_string())
        throw InvalidParams(std::string("missing required argument: ") + name);
    return args[name].get<std::string>();
}

json error_response(const json& id, int code, const std::string& message) {
    return {{"jsonrpc", "2.0"}, {"id", id}, {"error", {{"code", code}, {"message", message}}}};
}

json result_response(const json& id, json result) {
    return {{"jsonrpc", "2.0"}, {"id", id}, {"result", std::move(result)}};
}

json tool_result(const std::string& text) {
    return {{"content", json::array({{{"type", "text"}, {"text", text}}})},
            {"isError", false}};
}

}  // namespace

const std::vector<ToolDescriptor>& tool_descriptors() {
    static const std::vector<ToolDescriptor> tools = make_descriptors();
    return tools;
}

const index::CodeIndex& Session::ready_index() {
    if (!index) {
        auto start = std::chrono::steady_clock::now();
        index = index::build_index(codebase_root, diagnostics);
        ++build_count;
        if (diagnostics) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
            *diagnostics << "index built: " << index->files.size() << " files, "
                         << index->failures.size() << " failures, " << ms << " ms\n";
        }
    }
    return *index;
}

std::string dispatch(Session& session, const std::string& tool, const json& args) {
    if (tool == "maple_repo_structure")
        return query::repo_structure(session.codebase_root);

    const index::CodeIndex& ix = session.ready_index();
    const query::FormatConfig& fmt = session.format;

    if (tool == "maple_find_method_in_class")
        return query::format_results(
            query::find_method_in_class(ix, require_arg(args, "method"),
                                        require_arg(args, "class")),
            fmt);
    if (tool == "maple_find_class_in_file")
        return query::format_results(
            query::find_class_in_file(ix, require_arg(args, "class"),
                                      require_arg(args, "file")),
            fmt);
    if (tool == "maple_find_method_in_file")
        return query::format_results(
            query::find_method_in_file(ix, require_arg(args, "method"),
                                       require_arg(args, "file")),
            fmt);
    if (tool == "maple_find_code_in_file")
        return query::format_results(
            query::find_code_in_file(ix, require_arg(args, "snippet"),
                                     require_arg(args, "file"), fmt.context_lines),
            fmt);
    if (tool == "maple_extract_class_skeleton")
        return query::extract_class_skeleton(ix, require_arg(args, "file"));
    if (tool == "maple_find_class")
        return query::format_results(query::find_class(ix, require_arg(args, "class")),
                                     fmt);
    if (tool == "maple_find_method")
        return query::format_results(query::find_method(ix, require_arg(args, "method")),
                                     fmt);
    if (tool == "maple_find_code")
        return query::format_results(
            query::find_code(ix, require_arg(args, "snippet"), fmt.context_lines), fmt);

    throw InvalidParams("unknown tool: " + tool);
}

int serve(Session& session, std::istream& in, std::ostream& out) {
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;

        json msg = json::parse(line, nullptr, false);
        if (msg.is_discarded()) {
            out << error_response(nullptr, -32700, "parse error").dump() << "\n"
                << std::flush;
            continue;
        }

        const bool is_notification = !msg.contains("id") || msg["id"].is_null();
        json id = is_notification ? json(nullptr) : msg["id"];
        std::string method = msg.value("method", "");

        if (method == "initialize") {
            std::string proto = kDefaultProtocolVersion;
            if (msg.contains("params") && msg["params"].contains("protocolVersion") &&
                msg["params"]["protocolVersion"].is_string())
                proto = msg["params"]["protocolVersion"].get<std::string>();
            json result = {{"protocolVersion", proto},
                           {"capabilities", {{"tools", json::object()}}},
                           {"serverInfo",
                            {{"name", kServerName}, {"version", kServerVersion}}}};
            out << result_response(id, result).dump() << "\n" << std::flush;
            continue;
        }
        if (is_notification) continue;  // e.g. notifications/initialized

        if (method == "tools/list") {
            json tools = json::array();
            for (const ToolDescriptor& t : tool_descriptors())
                tools.push_back({{"name", t.name},
                                 {"description", t.description},
                                 {"inputSchema", t.input_schema}});
            out << result_response(id, {{"tools", tools}}).dump() << "\n" << std::flush;
            continue;
        }
        if (method == "tools/call") {
            if (!msg.contains("params") || !msg["params"].is_object() ||
                !msg["params"].contains("name") || !msg["params"]["name"].is_string()) {
                out << error_response(id, -32602, "invalid params").dump() << "\n"
                    << std::flush;
                continue;
            }
            std::string tool = msg["params"]["name"].get<std::string>();
            json args = msg["params"].value("arguments", json::object());
            try {
                out << result_response(id, tool_result(dispatch(session, tool, args)))
                           .dump()
                    << "\n"
                    << std::flush;
            } catch (const InvalidParams& e) {
                out << error_response(id, -32602, e.what()).dump() << "\n" << std::flush;
            } catch (const std::exception& e) {
                out << error_response(id, -32603, e.what()).dump() << "\n" << std::flush;
            }
            continue;
        }
        out << error_response(id, -32601, "method not found: " + method).dump() << "\n"
            << std::flush;
    }
    return 0;
}

}  // namespace maple::mcp
