#include "maple/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <stdexcept>

namespace maple::metrics {

const char* to_string(ProximityClass p) {
    switch (p) {
        case ProximityClass::Nucleus: return "Nucleus";
        case ProximityClass::Cluster: return "Cluster";
        case ProximityClass::Orbit: return "Orbit";
        case ProximityClass::Sprawl: return "Sprawl";
        case ProximityClass::Fragment: return "Fragment";
    }
    return "Nucleus";
}

std::optional<ProximityClass> proximity_from_string(const std::string& name) {
    if (name == "Nucleus") return ProximityClass::Nucleus;
    if (name == "Cluster") return ProximityClass::Cluster;
    if (name == "Orbit") return ProximityClass::Orbit;
    if (name == "Sprawl") return ProximityClass::Sprawl;
    if (name == "Fragment") return ProximityClass::Fragment;
    return std::nullopt;
}

int localization_success(const patch::GroundTruth& gt, const patch::Patch& p) {
    if (p.empty) return 0;
    auto modified = patch::derive_modified_files(p);
    return std::includes(modified.begin(), modified.end(), gt.files.begin(),
                         gt.files.end())
               ? 1
               : 0;
}

int repair_accuracy(const outcomes::TestOutcomes& o, const patch::Patch& p) {
    return (!p.empty && o.compiled && o.failed_after && *o.failed_after == 0) ? 1 : 0;
}

std::optional<int> regression_reduction(const outcomes::TestOutcomes& o) {
    if (!o.compiled || !o.failed_after) return std::nullopt;
    return o.failed_before - *o.failed_after;
}

namespace {

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

void tokenize_into(const std::string& line, std::vector<std::string>& out) {
    size_t i = 0;
    while (i < line.size()) {
        if (!ident_char(line[i])) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j < line.size() && ident_char(line[j])) ++j;
        out.push_back(line.substr(i, j - i));
        i = j;
    }
}

double set_jaccard_distance(const std::vector<std::string>& a,
                            const std::vector<std::string>& b) {
    std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    if (sa.empty() && sb.empty()) return 0.0;
    size_t inter = 0;
    for (const auto& t : sa) inter += sb.count(t);
    size_t uni = sa.size() + sb.size() - inter;
    return 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
}

double multiset_jaccard_distance(const std::map<std::string, int>& a,
                                 const std::map<std::string, int>& b) {
    if (a.empty() && b.empty()) return 0.0;
    long min_sum = 0, max_sum = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            max_sum += ia->second;
            ++ia;
        } else if (ia == a.end() || ib->first < ia->first) {
            max_sum += ib->second;
            ++ib;
        } else {
            min_sum += std::min(ia->second, ib->second);
            max_sum += std::max(ia->second, ib->second);
            ++ia;
            ++ib;
        }
    }
    if (max_sum == 0) return 0.0;
    return 1.0 - static_cast<double>(min_sum) / static_cast<double>(max_sum);
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool starts_with_word(const std::string& s, const std::string& word) {
    if (!s.starts_with(word)) return false;
    return s.size() == word.size() || !ident_char(s[word.size()]);
}

// Classifies one changed line as a coarse statement kind. This stands in
// for a full statement grammar: hunks are rarely self-contained compilation
// units, so kinds are derived from lexical shape.
std::optional<std::string> classify_statement(const std::string& raw) {
    std::string s = trim(raw);
    if (s.empty()) return std::nullopt;
    if (s.starts_with("//") || s.starts_with("/*") || s.starts_with("*"))
        return std::nullopt;
    if (s == "}" || s == "};") return std::string("block_close");
    if (s.starts_with("@")) return std::string("annotation");
    if (starts_with_word(s, "package")) return std::string("package_declaration");
    if (starts_with_word(s, "import")) return std::string("import_declaration");

    // strip leading modifiers
    static const char* mods[] = {"public", "private", "protected", "static",
                                 "final", "abstract", "synchronized", "native",
                                 "transient", "volatile", "default"};
    bool stripped = true;
    while (stripped) {
        stripped = false;
        for (const char* m : mods) {
            if (starts_with_word(s, m)) {
                s = trim(s.substr(std::string(m).size()));
                stripped = true;
            }
        }
    }
    if (s.empty()) return std::string("modifier");

    for (const char* kw : {"if", "else", "for", "while", "do", "switch", "case",
                           "try", "catch", "finally", "return", "throw", "break",
                           "continue"}) {
        if (starts_with_word(s, kw)) return std::string(kw) + "_statement";
    }
    for (const char* kw : {"class", "interface", "enum"})
        if (starts_with_word(s, kw)) return std::string("type_declaration");

    size_t eq = s.find('=');
    bool has_assign = eq != std::string::npos && (eq + 1 >= s.size() || s[eq + 1] != '=') &&
                      (eq == 0 || (s[eq - 1] != '!' && s[eq - 1] != '<' && s[eq - 1] != '>'));
    if (has_assign) return std::string("assignment");

    size_t paren = s.find('(');
    if (paren != std::string::npos) {
        if (s.ends_with("{")) return std::string("callable_declaration");
        return std::string("call_statement");
    }
    return std::string("other_statement");
}

std::string package_of(const std::string& file) {
    size_t slash = file.find_last_of('/');
    return slash == std::string::npos ? std::string(".") : file.substr(0, slash);
}

}  // namespace

std::vector<std::string> changed_line_tokens(const patch::Hunk& h) {
    std::vector<std::string> toks;
    for (const auto& l : h.removed_lines) tokenize_into(l, toks);
    for (const auto& l : h.added_lines) tokenize_into(l, toks);
    return toks;
}

std::map<std::string, int> fragment_node_kinds(const patch::Hunk& h) {
    std::map<std::string, int> kinds;
    for (const auto& l : h.removed_lines)
        if (auto k = classify_statement(l)) ++kinds[*k];
    for (const auto& l : h.added_lines)
        if (auto k = classify_statement(l)) ++kinds[*k];
    return kinds;
}

double pairwise_divergence(const patch::Hunk& a, const patch::Hunk& b,
                           const DivergenceConfig& cfg) {
    const bool cross_file = a.file != b.file;

    double lexical = set_jaccard_distance(changed_line_tokens(a), changed_line_tokens(b));

    auto kinds_a = fragment_node_kinds(a);
    auto kinds_b = fragment_node_kinds(b);
    double structural = (kinds_a.empty() || kinds_b.empty())
                            ? lexical  // unparseable fragment fallback
                            : multiset_jaccard_distance(kinds_a, kinds_b);

    double file_term = cross_file ? 1.0 : 0.0;
    double wl = cross_file ? cfg.lexical_weight_cross : cfg.lexical_weight;
    double ws = cross_file ? cfg.structural_weight_cross : cfg.structural_weight;
    double wf = cross_file ? cfg.file_weight_cross : cfg.file_weight_same;
    return wl * lexical + ws * structural + wf * file_term;
}

double hunk_divergence(const std::vector<patch::Hunk>& hunks,
                       const DivergenceConfig& cfg) {
    const size_t n = hunks.size();
    if (n < 2) throw std::domain_error("hunk divergence requires at least two hunks");
    double sum = 0.0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            sum += pairwise_divergence(hunks[i], hunks[j], cfg);
    double mean = sum / (static_cast<double>(n) * (static_cast<double>(n) - 1) / 2.0);
    return std::log(static_cast<double>(n)) * mean;
}

ProximityClass classify_proximity(const std::vector<patch::Hunk>& hunks,
                                  int package_fragment_threshold) {
    if (hunks.empty()) throw std::domain_error("proximity of an empty hunk list");

    std::set<std::string> files, packages;
    for (const auto& h : hunks) {
        files.insert(h.file);
        packages.insert(package_of(h.file));
    }

    if (files.size() == 1) {
        bool same_type = hunks.front().enclosing_type.has_value();
        bool same_method = hunks.front().enclosing_method.has_value();
        for (const auto& h : hunks) {
            same_type = same_type && h.enclosing_type == hunks.front().enclosing_type &&
                        h.enclosing_type.has_value();
            same_method = same_method && h.enclosing_method &&
                          h.enclosing_method == hunks.front().enclosing_method &&
                          h.enclosing_type == hunks.front().enclosing_type;
        }
        if (same_method || same_type) return ProximityClass::Nucleus;
        return ProximityClass::Cluster;
    }
    if (packages.size() == 1) return ProximityClass::Orbit;
    if (static_cast<int>(packages.size()) < package_fragment_threshold)
        return ProximityClass::Sprawl;
    return ProximityClass::Fragment;
}

TokenTotals token_totals(const traj::TokenUsage& usage) {
    TokenTotals t;
    t.input = usage.input_tokens;
    t.output = usage.output_tokens;
    t.total = t.input + t.output;
    return t;
}

double runtime_seconds(const traj::Trajectory& t) { return t.end_ts - t.start_ts; }

std::map<traj::Category, std::uint64_t> tool_counts(const traj::Trajectory& t) {
    std::map<traj::Category, std::uint64_t> counts;
    for (const auto& a : t.actions) ++counts[a.category];
    return counts;
}

std::map<traj::Category, double> tool_utilization(const traj::Trajectory& t) {
    std::map<traj::Category, double> u;
    if (t.actions.empty()) return u;
    auto counts = tool_counts(t);
    double total = static_cast<double>(t.actions.size());
    for (const auto& [cat, count] : counts) u[cat] = static_cast<double>(count) / total;
    return u;
}

}  // namespace maple::metrics
