#include "maple/patch.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "maple/query.hpp"

namespace maple::patch {
namespace {

std::string strip_diff_prefix(std::string path) {
    if (path.starts_with("a/") || path.starts_with("b/")) path = path.substr(2);
    // strip trailing timestamp after a tab, as emitted by some diff tools
    if (size_t tab = path.find('\t'); tab != std::string::npos) path = path.substr(0, tab);
    return path;
}

// Parses "@@ -a[,b] +c[,d] @@"; returns false on malformed headers.
bool parse_hunk_header(const std::string& line, long& pre_start, long& pre_len,
                       long& post_start, long& post_len) {
    if (!line.starts_with("@@ -")) return false;
    const char* p = line.c_str() + 4;
    const char* end = line.c_str() + line.size();
    auto read_pair = [&](long& start, long& len) {
        auto res = std::from_chars(p, end, start);
        if (res.ec != std::errc{}) return false;
        p = res.ptr;
        len = 1;
        if (p < end && *p == ',') {
            res = std::from_chars(p + 1, end, len);
            if (res.ec != std::errc{}) return false;
            p = res.ptr;
        }
        return true;
    };
    if (!read_pair(pre_start, pre_len)) return false;
    if (p >= end || *p != ' ') return false;
    ++p;
    if (p >= end || *p != '+') return false;
    ++p;
    if (!read_pair(post_start, post_len)) return false;
    return p + 3 <= end && std::string_view(p, 3) == " @@";
}

bool is_blank(const std::string& text) {
    return text.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

Patch parse_patch(const std::string& diff_text) {
    Patch patch;
    if (is_blank(diff_text)) return patch;

    std::istringstream in(diff_text);
    std::string line;
    std::string current_old, current_new;
    int line_no = 0;
    bool in_hunk = false;
    long remaining_pre = 0, remaining_post = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        if (line.starts_with("--- ")) {
            current_old = strip_diff_prefix(line.substr(4));
            in_hunk = false;
            continue;
        }
        if (line.starts_with("+++ ")) {
            current_new = strip_diff_prefix(line.substr(4));
            in_hunk = false;
            continue;
        }
        if (line.starts_with("@@")) {
            long pre_start, pre_len, post_start, post_len;
            if (!parse_hunk_header(line, pre_start, pre_len, post_start, post_len))
                throw PatchParseError("malformed hunk header", line_no);
            if (current_new.empty())
                throw PatchParseError("hunk without file header", line_no);

            Hunk h;
            h.file = current_new == "/dev/null" ? current_old : current_new;
            if (post_len == 0) {
                // pure deletion: anchor on the pre-image start, one line
                h.range = {static_cast<int>(std::max(pre_start, 1L)),
                           static_cast<int>(std::max(pre_start, 1L))};
            } else {
                h.range = {static_cast<int>(post_start),
                           static_cast<int>(post_start + post_len - 1)};
            }
            patch.hunks.push_back(std::move(h));
            in_hunk = true;
            remaining_pre = pre_len;
            remaining_post = post_len;
            continue;
        }
        if (in_hunk) {
            if (line.starts_with("\\")) continue;  // "\ No newline at end of file"
            if (remaining_pre <= 0 && remaining_post <= 0) {
                in_hunk = false;
            } else if (line.starts_with("+")) {
                patch.hunks.back().added_lines.push_back(line.substr(1));
                --remaining_post;
                continue;
            } else if (line.starts_with("-")) {
                patch.hunks.back().removed_lines.push_back(line.substr(1));
                --remaining_pre;
                continue;
            } else if (line.empty() || line.starts_with(" ")) {
                --remaining_pre;
                --remaining_post;
                continue;
            } else {
                throw PatchParseError("unexpected line inside hunk", line_no);
            }
        }
        // anything else (diff --git, index, mode lines) is ignored
    }

    std::erase_if(patch.hunks, [](const Hunk& h) {
        return h.removed_lines.empty() && h.added_lines.empty();
    });
    patch.empty = patch.hunks.empty();
    return patch;
}

std::set<std::string> derive_modified_files(const Patch& patch) {
    std::set<std::string> files;
    for (const Hunk& h : patch.hunks) files.insert(h.file);
    return files;
}

GroundTruth make_ground_truth(const std::string& bug_id, const std::string& diff_text) {
    GroundTruth gt;
    gt.bug_id = bug_id;
    Patch p = parse_patch(diff_text);
    gt.hunks = std::move(p.hunks);
    for (const Hunk& h : gt.hunks) gt.files.insert(h.file);
    return gt;
}

void fill_hunk_scopes(std::vector<Hunk>& hunks, const index::CodeIndex& ix) {
    for (Hunk& h : hunks) {
        auto [t, m] = query::resolve_scope(ix, h.file, h.range.start);
        h.enclosing_type = t;
        h.enclosing_method = m;
    }
}

}  // namespace maple::patch
