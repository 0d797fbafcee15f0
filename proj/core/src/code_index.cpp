#include "maple/code_index.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace maple::index {
namespace fs = std::filesystem;
namespace {

std::string relative_slash_path(const fs::path& file, const fs::path& root) {
    return fs::relative(file, root).generic_string();
}

std::vector<std::string> split_lines(const std::string& content) {
    std::vector<std::string> lines;
    size_t pos = 0;
    while (pos <= content.size()) {
        size_t eol = content.find('\n', pos);
        if (eol == std::string::npos) {
            if (pos < content.size()) lines.push_back(content.substr(pos));
            break;
        }
        lines.push_back(content.substr(pos, eol - pos));
        pos = eol + 1;
    }
    return lines;
}

void sort_occurrences(std::vector<Occurrence>& v) {
    std::sort(v.begin(), v.end());
}

}  // namespace

std::vector<fs::path> discover_sources(const fs::path& root) {
    std::vector<fs::path> found;
    auto opts = fs::directory_options::skip_permission_denied;
    for (fs::recursive_directory_iterator it(root, opts), end; it != end; ++it) {
        const fs::path& p = it->path();
        std::string name = p.filename().string();
        if (it->is_directory()) {
            if (!name.empty() && name.front() == '.') it.disable_recursion_pending();
            continue;
        }
        if (it->is_symlink()) continue;
        if (!it->is_regular_file()) continue;
        if (!name.empty() && name.front() == '.') continue;
        if (p.extension() == ".java") found.push_back(p);
    }
    std::sort(found.begin(), found.end(),
              [&](const fs::path& a, const fs::path& b) {
                  return relative_slash_path(a, root) < relative_slash_path(b, root);
              });
    return found;
}

CodeIndex build_index(const fs::path& root, std::ostream* diagnostics) {
    if (!fs::exists(root) || !fs::is_directory(root))
        throw ConfigError("codebase root does not exist: " + root.string());

    CodeIndex ix;
    ix.root = root;

    for (const fs::path& file : discover_sources(root)) {
        std::string rel = relative_slash_path(file, root);
        std::ifstream in(file, std::ios::binary);
        if (!in) {
            ix.failures.emplace_back(rel, "unreadable");
            if (diagnostics) *diagnostics << "PARSE-FAIL " << rel << " unreadable\n";
            continue;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        std::string content = buf.str();

        ParsedFile parsed = parse_file(content);
        if (parsed.status == ParseStatus::failed) {
            ix.failures.emplace_back(rel, "syntax error");
            if (diagnostics) *diagnostics << "PARSE-FAIL " << rel << " syntax error\n";
            continue;
        }

        FileRecord rec;
        rec.lines = split_lines(content);
        rec.status = parsed.status;
        rec.package_import_lines = parsed.package_import_lines;

        for (const TypeDecl& t : parsed.types) {
            ix.type_index[t.name].push_back({rel, t.range});
            rec.type_signature_end[t.range.start] = t.signature_end;
            rec.declaration_lines.push_back(t.range.start);
        }
        for (const MethodDecl& m : parsed.methods) {
            if (m.enclosing_type.empty()) {
                ix.top_level_method_index[m.name].push_back({rel, m.range});
            } else {
                ix.method_index[m.enclosing_type][m.name].push_back({rel, m.range});
            }
            rec.declaration_lines.push_back(m.range.start);
        }
        std::sort(rec.declaration_lines.begin(), rec.declaration_lines.end());
        rec.declaration_lines.erase(
            std::unique(rec.declaration_lines.begin(), rec.declaration_lines.end()),
            rec.declaration_lines.end());
        ix.files.emplace(std::move(rel), std::move(rec));
    }

    for (auto& [_, occs] : ix.type_index) sort_occurrences(occs);
    for (auto& [_, methods] : ix.method_index)
        for (auto& [__, occs] : methods) sort_occurrences(occs);
    for (auto& [_, occs] : ix.top_level_method_index) sort_occurrences(occs);
    return ix;
}

}  // namespace maple::index
