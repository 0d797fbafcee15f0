#include "maple/query.hpp"

#include <algorithm>
#include <sstream>

namespace maple::query {
namespace fs = std::filesystem;
namespace {

std::string join_lines(const std::vector<std::string>& lines, LineRange r) {
    std::string out;
    for (int ln = r.start; ln <= r.end && ln <= static_cast<int>(lines.size()); ++ln) {
        if (!out.empty()) out.push_back('\n');
        out += lines[ln - 1];
    }
    return out;
}

bool suffix_matches(const std::string& path, const std::string& suffix) {
    if (suffix.empty()) return false;
    if (path == suffix) return true;
    if (path.size() <= suffix.size()) return false;
    return path.ends_with(suffix) && path[path.size() - suffix.size() - 1] == '/';
}

QueryResult make_result(const CodeIndex& ix, const index::Occurrence& occ,
                        LineRange extract) {
    QueryResult r;
    r.file = occ.file;
    r.range = extract;
    auto it = ix.files.find(occ.file);
    if (it != ix.files.end()) r.code = join_lines(it->second.lines, extract);
    auto [t, m] = resolve_scope(ix, occ.file, occ.range.start);
    r.enclosing_type = t;
    r.enclosing_method = m;
    return r;
}

void sort_results(std::vector<QueryResult>& v) {
    std::sort(v.begin(), v.end(), [](const QueryResult& a, const QueryResult& b) {
        return std::tie(a.file, a.range.start) < std::tie(b.file, b.range.start);
    });
}

std::vector<QueryResult> class_results(const CodeIndex& ix,
                                       const std::vector<index::Occurrence>& occs,
                                       const std::string& name) {
    std::vector<QueryResult> out;
    for (const auto& occ : occs) {
        // class signature: declaration through the opening brace
        int sig_end = occ.range.start;
        auto fit = ix.files.find(occ.file);
        if (fit != ix.files.end()) {
            auto sit = fit->second.type_signature_end.find(occ.range.start);
            if (sit != fit->second.type_signature_end.end()) sig_end = sit->second;
        }
        QueryResult r = make_result(ix, occ, {occ.range.start, sig_end});
        r.enclosing_type = name;
        r.enclosing_method = std::nullopt;
        out.push_back(std::move(r));
    }
    sort_results(out);
    return out;
}

std::vector<QueryResult> method_results(const CodeIndex& ix,
                                        const std::vector<index::Occurrence>& occs) {
    std::vector<QueryResult> out;
    for (const auto& occ : occs) out.push_back(make_result(ix, occ, occ.range));
    sort_results(out);
    return out;
}

template <typename Pred>
std::vector<QueryResult> filtered(std::vector<QueryResult> v, Pred pred) {
    std::erase_if(v, [&](const QueryResult& r) { return !pred(r); });
    return v;
}

}  // namespace

std::vector<QueryResult> find_class(const CodeIndex& ix, const std::string& name) {
    auto it = ix.type_index.find(name);
    if (it == ix.type_index.end()) return {};
    return class_results(ix, it->second, name);
}

std::vector<QueryResult> find_method(const CodeIndex& ix, const std::string& name) {
    std::vector<index::Occurrence> occs;
    for (const auto& [_, methods] : ix.method_index) {
        auto it = methods.find(name);
        if (it != methods.end())
            occs.insert(occs.end(), it->second.begin(), it->second.end());
    }
    auto top = ix.top_level_method_index.find(name);
    if (top != ix.top_level_method_index.end())
        occs.insert(occs.end(), top->second.begin(), top->second.end());
    return method_results(ix, occs);
}

std::vector<QueryResult> find_method_in_class(const CodeIndex& ix,
                                              const std::string& method,
                                              const std::string& type_name) {
    auto tit = ix.method_index.find(type_name);
    if (tit == ix.method_index.end()) return {};
    auto mit = tit->second.find(method);
    if (mit == tit->second.end()) return {};
    return method_results(ix, mit->second);
}

std::vector<QueryResult> find_code(const CodeIndex& ix, const std::string& snippet,
                                   int context_lines) {
    std::vector<QueryResult> out;
    if (snippet.empty()) return out;
    for (const auto& [path, rec] : ix.files) {
        int line_count = static_cast<int>(rec.lines.size());
        for (int ln = 1; ln <= line_count; ++ln) {
            if (rec.lines[ln - 1].find(snippet) == std::string::npos) continue;
            LineRange window{std::max(1, ln - context_lines),
                             std::min(line_count, ln + context_lines)};
            QueryResult r;
            r.file = path;
            r.range = window;
            r.code = join_lines(rec.lines, window);
            auto [t, m] = resolve_scope(ix, path, ln);
            r.enclosing_type = t;
            r.enclosing_method = m;
            out.push_back(std::move(r));
        }
    }
    sort_results(out);
    return out;
}

std::vector<QueryResult> find_class_in_file(const CodeIndex& ix, const std::string& name,
                                            const std::string& file_suffix) {
    return filtered(find_class(ix, name), [&](const QueryResult& r) {
        return suffix_matches(r.file, file_suffix);
    });
}

std::vector<QueryResult> find_method_in_file(const CodeIndex& ix, const std::string& name,
                                             const std::string& file_suffix) {
    return filtered(find_method(ix, name), [&](const QueryResult& r) {
        return suffix_matches(r.file, file_suffix);
    });
}

std::vector<QueryResult> find_code_in_file(const CodeIndex& ix, const std::string& snippet,
                                           const std::string& file_suffix,
                                           int context_lines) {
    return filtered(find_code(ix, snippet, context_lines), [&](const QueryResult& r) {
        return suffix_matches(r.file, file_suffix);
    });
}

std::string extract_class_skeleton(const CodeIndex& ix, const std::string& file_suffix) {
    const index::FileRecord* rec = nullptr;
    std::string path;
    for (const auto& [p, r] : ix.files) {
        if (suffix_matches(p, file_suffix)) {
            rec = &r;
            path = p;
            break;
        }
    }
    if (!rec) {
        for (const auto& [p, reason] : ix.failures) {
            if (suffix_matches(p, file_suffix))
                return "file could not be parsed: " + p + " (" + reason + ")";
        }
        return "file not found: " + file_suffix;
    }

    std::vector<int> lines = rec->package_import_lines;
    lines.insert(lines.end(), rec->declaration_lines.begin(),
                 rec->declaration_lines.end());
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());

    std::string out;
    for (int ln : lines) {
        if (ln < 1 || ln > static_cast<int>(rec->lines.size())) continue;
        if (!out.empty()) out.push_back('\n');
        out += rec->lines[ln - 1];
    }
    return out;
}

std::string repo_structure(const fs::path& root) {
    if (!fs::exists(root) || !fs::is_directory(root))
        throw index::ConfigError("repository root does not exist: " + root.string());

    std::string out = root.filename().empty() ? root.string()
                                              : root.filename().string();
    out += "/";

    struct Walker {
        std::string& out;
        void walk(const fs::path& dir, int depth) {
            std::vector<fs::path> dirs, files;
            for (const auto& entry : fs::directory_iterator(dir)) {
                std::string name = entry.path().filename().string();
                if (!name.empty() && name.front() == '.') continue;
                if (entry.is_directory() && !entry.is_symlink())
                    dirs.push_back(entry.path());
                else if (entry.is_regular_file())
                    files.push_back(entry.path());
            }
            auto by_name = [](const fs::path& a, const fs::path& b) {
                return a.filename().string() < b.filename().string();
            };
            std::sort(dirs.begin(), dirs.end(), by_name);
            std::sort(files.begin(), files.end(), by_name);
            std::string indent(static_cast<size_t>(depth) * 2, ' ');
            for (const auto& d : dirs) {
                out += "\n" + indent + d.filename().string() + "/";
                walk(d, depth + 1);
            }
            for (const auto& f : files) out += "\n" + indent + f.filename().string();
        }
    };
    Walker{out}.walk(root, 1);
    return out;
}

std::pair<std::optional<std::string>, std::optional<std::string>> resolve_scope(
    const CodeIndex& ix, const std::string& file, int line) {
    // innermost = containing range with the greatest start (nested ranges
    // share ends under the sibling rule), ties broken by the smaller end
    const index::Occurrence* best_m = nullptr;
    const std::string* best_m_type = nullptr;
    const std::string* best_m_name = nullptr;
    auto better = [&](const index::Occurrence& occ, const index::Occurrence* cur) {
        if (!cur) return true;
        if (occ.range.start != cur->range.start)
            return occ.range.start > cur->range.start;
        return occ.range.end < cur->range.end;
    };

    for (const auto& [type_name, methods] : ix.method_index) {
        for (const auto& [method_name, occs] : methods) {
            for (const auto& occ : occs) {
                if (occ.file != file) continue;
                if (line < occ.range.start || line > occ.range.end) continue;
                if (better(occ, best_m)) {
                    best_m = &occ;
                    best_m_type = &type_name;
                    best_m_name = &method_name;
                }
            }
        }
    }
    if (best_m) return {*best_m_type, *best_m_name};

    for (const auto& [method_name, occs] : ix.top_level_method_index) {
        for (const auto& occ : occs) {
            if (occ.file != file) continue;
            if (line < occ.range.start || line > occ.range.end) continue;
            if (better(occ, best_m)) {
                best_m = &occ;
                best_m_name = &method_name;
            }
        }
    }
    if (best_m) return {std::nullopt, *best_m_name};

    const index::Occurrence* best_t = nullptr;
    const std::string* best_t_name = nullptr;
    for (const auto& [type_name, occs] : ix.type_index) {
        for (const auto& occ : occs) {
            if (occ.file != file) continue;
            if (line < occ.range.start || line > occ.range.end) continue;
            if (better(occ, best_t)) {
                best_t = &occ;
                best_t_name = &type_name;
            }
        }
    }
    if (best_t) return {*best_t_name, std::nullopt};
    return {std::nullopt, std::nullopt};
}

}  // namespace maple::query
