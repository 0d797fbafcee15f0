#include "maple/trajectory.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace maple::traj {

using nlohmann::json;

const char* to_string(Category c) {
    switch (c) {
        case Category::WRITE: return "WRITE";
        case Category::READ: return "READ";
        case Category::TEST: return "TEST";
        case Category::BUILD: return "BUILD";
        case Category::SEARCH_CONTENT: return "SEARCH_CONTENT";
        case Category::SEARCH_FILES: return "SEARCH_FILES";
        case Category::NAVIGATE: return "NAVIGATE";
        case Category::OTHER: return "OTHER";
    }
    return "OTHER";
}

std::optional<Category> category_from_string(const std::string& name) {
    static const std::map<std::string, Category> names = {
        {"WRITE", Category::WRITE},
        {"READ", Category::READ},
        {"TEST", Category::TEST},
        {"BUILD", Category::BUILD},
        {"SEARCH_CONTENT", Category::SEARCH_CONTENT},
        {"SEARCH_FILES", Category::SEARCH_FILES},
        {"NAVIGATE", Category::NAVIGATE},
        {"OTHER", Category::OTHER},
    };
    auto it = names.find(name);
    if (it == names.end()) return std::nullopt;
    return it->second;
}

CategoryTable CategoryTable::defaults() {
    CategoryTable t;
    auto& e = t.entries_;
    // write
    for (const char* k : {"edit", "write_file", "replace", "sed", "apply_patch",
                          "tee", "patch"})
        e[k] = Category::WRITE;
    // read
    for (const char* k : {"read_file", "cat", "head", "tail", "less", "view"})
        e[k] = Category::READ;
    // test
    for (const char* k : {"mvn test", "defects4j test", "gradle test",
                          "./run_bug_exposing_tests.sh", "./run_all_tests_trace.sh",
                          "run_tests"})
        e[k] = Category::TEST;
    // build
    for (const char* k : {"mvn compile", "defects4j compile", "gradle build",
                          "javac", "make"})
        e[k] = Category::BUILD;
    // search content
    for (const char* k : {"grep", "rg", "search_file_content", "ack", "git grep"})
        e[k] = Category::SEARCH_CONTENT;
    // search files
    for (const char* k : {"find", "ls", "list_directory", "glob", "tree", "fd"})
        e[k] = Category::SEARCH_FILES;
    // navigate
    for (const char* k : {"cd", "pushd", "popd"})
        e[k] = Category::NAVIGATE;
    return t;
}

CategoryTable CategoryTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open category table: " + path);
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        throw IngestError("malformed category table: " + path);
    CategoryTable t;
    for (auto& [tool, cat] : doc.items()) {
        auto parsed = category_from_string(cat.get<std::string>());
        if (!parsed) throw IngestError("unknown category for tool " + tool);
        t.entries_[tool] = *parsed;
    }
    return t;
}

namespace {

// First command token after environment assignments (FOO=bar ... cmd).
std::vector<std::string> command_tokens(const std::string& cmd) {
    std::vector<std::string> toks;
    std::istringstream in(cmd);
    std::string tok;
    while (in >> tok) toks.push_back(tok);
    auto is_env_assignment = [](const std::string& t) {
        size_t eq = t.find('=');
        if (eq == std::string::npos || eq == 0) return false;
        if (!(std::isalpha(static_cast<unsigned char>(t[0])) || t[0] == '_')) return false;
        for (size_t k = 1; k < eq; ++k)
            if (!(std::isalnum(static_cast<unsigned char>(t[k])) || t[k] == '_'))
                return false;
        return true;
    };
    size_t i = 0;
    while (i < toks.size() && is_env_assignment(toks[i])) ++i;
    return {toks.begin() + static_cast<long>(i), toks.end()};
}

}  // namespace

Category CategoryTable::classify(const std::string& raw_tool, ActionKind kind,
                                 bool* known) const {
    if (known) *known = true;
    if (kind == ActionKind::native) {
        auto it = entries_.find(raw_tool);
        if (it != entries_.end()) return it->second;
        if (known) *known = false;
        return Category::OTHER;
    }
    auto toks = command_tokens(raw_tool);
    if (toks.size() >= 2) {
        auto it = entries_.find(toks[0] + " " + toks[1]);
        if (it != entries_.end()) return it->second;
    }
    if (!toks.empty()) {
        auto it = entries_.find(toks[0]);
        if (it != entries_.end()) return it->second;
    }
    if (known) *known = false;
    return Category::OTHER;
}

namespace {

double require_number(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number())
        throw IngestError(std::string("trajectory record missing field: ") + field);
    return j[field].get<double>();
}

std::string require_string(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_string())
        throw IngestError(std::string("trajectory record missing field: ") + field);
    return j[field].get<std::string>();
}

Terminal parse_terminal(const std::string& s) {
    if (s == "completed") return Terminal::completed;
    if (s == "timeout") return Terminal::timeout;
    if (s == "runtime_error") return Terminal::runtime_error;
    throw IngestError("unknown terminal state: " + s);
}

}  // namespace

Trajectory ingest_trajectory(std::istream& in, const CategoryTable& table,
                             std::ostream* warnings) {
    std::string line;
    Trajectory t;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json rec = json::parse(line, nullptr, false);
        if (rec.is_discarded())
            throw IngestError("malformed trajectory record: " + line);

        if (!have_header) {
            t.bug_id = require_string(rec, "bug_id");
            t.agent = require_string(rec, "agent");
            t.start_ts = require_number(rec, "start_ts");
            t.end_ts = require_number(rec, "end_ts");
            if (t.end_ts < t.start_ts)
                throw IngestError("invalid header: end_ts precedes start_ts");
            t.terminal = parse_terminal(require_string(rec, "terminal"));
            if (!rec.contains("tokens") || !rec["tokens"].is_object())
                throw IngestError("trajectory record missing field: tokens");
            const json& tok = rec["tokens"];
            t.tokens.input_tokens = static_cast<std::uint64_t>(require_number(tok, "input"));
            t.tokens.output_tokens = static_cast<std::uint64_t>(require_number(tok, "output"));
            t.tokens.cache_creation_tokens =
                static_cast<std::uint64_t>(require_number(tok, "cache_creation"));
            t.tokens.cache_read_tokens =
                static_cast<std::uint64_t>(require_number(tok, "cache_read"));
            t.tokens.call_count = static_cast<std::uint64_t>(require_number(tok, "call_count"));
            have_header = true;
            continue;
        }

        Action a;
        a.ordinal = static_cast<int>(t.actions.size()) + 1;
        a.timestamp = require_number(rec, "ts");
        a.raw_tool = require_string(rec, "tool");
        std::string kind = require_string(rec, "kind");
        if (kind == "native") a.kind = ActionKind::native;
        else if (kind == "shell") a.kind = ActionKind::shell;
        else throw IngestError("unknown action kind: " + kind);
        if (rec.contains("observation_digest") && rec["observation_digest"].is_string())
            a.observation_digest = rec["observation_digest"].get<std::string>();

        bool known = false;
        a.category = table.classify(a.raw_tool, a.kind, &known);
        if (!known && warnings)
            *warnings << "WARN unknown tool '" << a.raw_tool << "' mapped to OTHER\n";
        t.actions.push_back(std::move(a));
    }
    if (!have_header) throw IngestError("trajectory document has no header record");
    return t;
}

Trajectory ingest_trajectory_file(const std::string& path, const CategoryTable& table,
                                  std::ostream* warnings) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open trajectory log: " + path);
    return ingest_trajectory(in, table, warnings);
}

}  // namespace maple::traj
