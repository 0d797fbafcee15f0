#include "maple/java_parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace maple::index {
namespace {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Token {
    std::string text;
    int line = 0;
    bool ident = false;
};

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

// Tokenizes Java source, discarding comments, string/char literals and
// text blocks. Throws ParseError on unterminated literals or comments.
std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    int line = 1;
    size_t i = 0;
    const size_t n = src.size();
    while (i < n) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '/') {
            while (i < n && src[i] != '\n') ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '*') {
            i += 2;
            bool closed = false;
            while (i + 1 < n) {
                if (src[i] == '\n') ++line;
                if (src[i] == '*' && src[i + 1] == '/') {
                    i += 2;
                    closed = true;
                    break;
                }
                ++i;
            }
            if (!closed) throw ParseError("unterminated block comment");
            continue;
        }
        if (c == '"') {
            if (i + 2 < n && src[i + 1] == '"' && src[i + 2] == '"') {
                // text block
                i += 3;
                bool closed = false;
                while (i + 2 <= n) {
                    if (i + 2 < n && src[i] == '"' && src[i + 1] == '"' && src[i + 2] == '"') {
                        i += 3;
                        closed = true;
                        break;
                    }
                    if (i < n && src[i] == '\n') ++line;
                    if (src[i] == '\\') ++i;
                    ++i;
                }
                if (!closed) throw ParseError("unterminated text block");
                continue;
            }
            ++i;
            bool closed = false;
            while (i < n) {
                if (src[i] == '\\') {
                    i += 2;
                    continue;
                }
                if (src[i] == '\n') throw ParseError("unterminated string literal");
                if (src[i] == '"') {
                    ++i;
                    closed = true;
                    break;
                }
                ++i;
            }
            if (!closed) throw ParseError("unterminated string literal");
            continue;
        }
        if (c == '\'') {
            ++i;
            bool closed = false;
            while (i < n) {
                if (src[i] == '\\') {
                    i += 2;
                    continue;
                }
                if (src[i] == '\n') throw ParseError("unterminated char literal");
                if (src[i] == '\'') {
                    ++i;
                    closed = true;
                    break;
                }
                ++i;
            }
            if (!closed) throw ParseError("unterminated char literal");
            continue;
        }
        if (is_ident_start(c)) {
            size_t j = i;
            while (j < n && is_ident_char(src[j])) ++j;
            out.push_back({std::string(src.substr(i, j - i)), line, true});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < n && (is_ident_char(src[j]) || src[j] == '.')) ++j;
            out.push_back({"#num", line, false});
            i = j;
            continue;
        }
        out.push_back({std::string(1, c), line, false});
        ++i;
    }
    return out;
}

struct Node {
    enum Kind { type, method } kind = type;
    std::string name;
    TypeKind type_kind = TypeKind::class_decl;
    int start = 0;
    int sig_end = 0;  // types: line of body '{'
    int end = 0;
    int parent = -1;
    std::vector<int> children;
};

bool is_type_keyword(const Token& t, TypeKind& kind_out) {
    if (!t.ident) return false;
    if (t.text == "class") kind_out = TypeKind::class_decl;
    else if (t.text == "interface") kind_out = TypeKind::interface_decl;
    else if (t.text == "enum") kind_out = TypeKind::enum_decl;
    else return false;
    return true;
}

const char* kExprKeywords[] = {"new", "return", "throw", "else", "case",
                               "assert", "while", "if", "for", "switch",
                               "catch", "synchronized", "super", "this"};

bool is_expr_keyword(const std::string& s) {
    return std::find(std::begin(kExprKeywords), std::end(kExprKeywords), s) !=
           std::end(kExprKeywords);
}

struct Parser {
    const std::vector<Token>& toks;
    int line_count;
    std::vector<Node> nodes;
    std::vector<int> package_import_lines;

    struct Frame {
        enum Ctx { file, type_body, block } ctx = file;
        int node = -1;  // owning type/method node, -1 for plain blocks
    };
    std::vector<Frame> stack{{Frame::file, -1}};
    int pending_type = -1;
    int pending_method = -1;
    bool in_initializer = false;

    explicit Parser(const std::vector<Token>& t, int lines)
        : toks(t), line_count(lines) {}

    int enclosing_node() const {
        for (auto it = stack.rbegin(); it != stack.rend(); ++it)
            if (it->node >= 0) return it->node;
        return -1;
    }

    std::string enclosing_type_name() const {
        for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
            if (it->node >= 0 && nodes[it->node].kind == Node::type)
                return nodes[it->node].name;
        }
        return {};
    }

    int add_node(Node n) {
        n.parent = enclosing_node();
        nodes.push_back(std::move(n));
        int idx = static_cast<int>(nodes.size()) - 1;
        if (nodes[idx].parent >= 0)
            nodes[nodes[idx].parent].children.push_back(idx);
        return idx;
    }

    // Skips a balanced paren group starting at toks[i] == "(".
    size_t skip_parens(size_t i) {
        int depth = 0;
        for (; i < toks.size(); ++i) {
            if (toks[i].text == "(") ++depth;
            else if (toks[i].text == ")") {
                if (--depth == 0) return i + 1;
            }
        }
        throw ParseError("unbalanced parentheses");
    }

    void expect_package(size_t& i) {
        // package ident (. ident)* ;
        ++i;
        if (i >= toks.size() || !toks[i].ident)
            throw ParseError("malformed package declaration");
        ++i;
        while (i < toks.size() && toks[i].text == ".") {
            ++i;
            if (i >= toks.size() || !toks[i].ident)
                throw ParseError("malformed package declaration");
            ++i;
        }
        if (i >= toks.size() || toks[i].text != ";")
            throw ParseError("malformed package declaration");
        ++i;
    }

    void expect_import(size_t& i) {
        ++i;
        if (i < toks.size() && toks[i].ident && toks[i].text == "static") ++i;
        if (i >= toks.size() || !toks[i].ident)
            throw ParseError("malformed import declaration");
        ++i;
        while (i < toks.size() && toks[i].text == ".") {
            ++i;
            if (i >= toks.size() || (!toks[i].ident && toks[i].text != "*"))
                throw ParseError("malformed import declaration");
            ++i;
        }
        if (i >= toks.size() || toks[i].text != ";")
            throw ParseError("malformed import declaration");
        ++i;
    }

    void run() {
        size_t i = 0;
        while (i < toks.size()) {
            const Token& t = toks[i];

            if (t.text == "@") {
                // annotation or annotation type declaration
                if (i + 1 < toks.size() && toks[i + 1].ident) {
                    if (toks[i + 1].text == "interface") {
                        i += 1;  // handled by the type-keyword branch below
                        continue;
                    }
                    i += 2;
                    while (i + 1 < toks.size() && toks[i].text == "." &&
                           toks[i + 1].ident)
                        i += 2;
                    if (i < toks.size() && toks[i].text == "(") i = skip_parens(i);
                    continue;
                }
                ++i;
                continue;
            }

            if (stack.back().ctx == Frame::file && t.ident && t.text == "package") {
                package_import_lines.push_back(t.line);
                expect_package(i);
                continue;
            }
            if (stack.back().ctx == Frame::file && t.ident && t.text == "import") {
                package_import_lines.push_back(t.line);
                expect_import(i);
                continue;
            }

            TypeKind tk;
            bool prev_is_dot = i > 0 && toks[i - 1].text == ".";
            if (!prev_is_dot && is_type_keyword(t, tk) && i + 1 < toks.size() &&
                toks[i + 1].ident && !in_initializer) {
                Node node;
                node.kind = Node::type;
                node.type_kind = tk;
                node.name = toks[i + 1].text;
                node.start = t.line;
                pending_type = add_node(std::move(node));
                i += 2;
                continue;
            }

            if (t.text == "{") {
                if (pending_type >= 0) {
                    nodes[pending_type].sig_end = t.line;
                    stack.push_back({Frame::type_body, pending_type});
                    pending_type = -1;
                } else if (pending_method >= 0) {
                    stack.push_back({Frame::block, pending_method});
                    pending_method = -1;
                } else {
                    stack.push_back({Frame::block, -1});
                }
                in_initializer = false;
                ++i;
                continue;
            }
            if (t.text == "}") {
                if (stack.size() <= 1) throw ParseError("unbalanced braces");
                stack.pop_back();
                ++i;
                continue;
            }
            if (t.text == ";") {
                pending_method = -1;
                in_initializer = false;
                ++i;
                continue;
            }
            if (t.text == "=" && stack.back().ctx == Frame::type_body) {
                // field initializer expression; suppress method detection
                in_initializer = true;
                ++i;
                continue;
            }

            if (stack.back().ctx == Frame::type_body && !in_initializer &&
                t.ident && !is_expr_keyword(t.text) && i + 1 < toks.size() &&
                toks[i + 1].text == "(") {
                const Token* prev = i > 0 ? &toks[i - 1] : nullptr;
                bool typed_prev = prev && (prev->text == "]" || prev->text == ">" ||
                                           (prev->ident && !is_expr_keyword(prev->text)));
                bool ctor_position =
                    t.text == enclosing_type_name() &&
                    (!prev || prev->text == "{" || prev->text == "}" ||
                     prev->text == ";" || (prev->ident && !is_expr_keyword(prev->text)));
                if (typed_prev || ctor_position) {
                    Node node;
                    node.kind = Node::method;
                    node.name = t.text;
                    node.start = t.line;
                    pending_method = add_node(std::move(node));
                    i = skip_parens(i + 1);
                    continue;
                }
            }

            ++i;
        }
        if (stack.size() != 1) throw ParseError("unbalanced braces");
        if (pending_type >= 0) throw ParseError("incomplete type declaration");
    }

    // Sibling rule: end at the next sibling's start minus one; last children
    // stop one line short of the parent's end (excluding its closing brace);
    // top-level declarations run to the next top-level start or file end.
    void assign_ends() {
        std::vector<int> roots;
        for (size_t k = 0; k < nodes.size(); ++k)
            if (nodes[k].parent < 0) roots.push_back(static_cast<int>(k));
        for (size_t k = 0; k < roots.size(); ++k) {
            std::optional<int> next;
            if (k + 1 < roots.size()) next = nodes[roots[k + 1]].start;
            nodes[roots[k]].end =
                estimate_end_line(nodes[roots[k]].start, next, line_count);
            assign_children(roots[k]);
        }
    }

    void assign_children(int parent) {
        const auto& kids = nodes[parent].children;
        for (size_t k = 0; k < kids.size(); ++k) {
            Node& child = nodes[kids[k]];
            if (k + 1 < kids.size()) {
                child.end = estimate_end_line(child.start, nodes[kids[k + 1]].start,
                                              line_count);
            } else {
                child.end = std::max(child.start, nodes[parent].end - 1);
            }
            child.end = std::min(child.end, nodes[parent].end);
            assign_children(kids[k]);
        }
    }
};

int count_lines(std::string_view content) {
    if (content.empty()) return 0;
    int lines = 1;
    for (char c : content)
        if (c == '\n') ++lines;
    if (content.back() == '\n') --lines;
    return std::max(lines, 1);
}

ParsedFile run_phase(std::string_view content) {
    auto toks = lex(content);
    Parser p(toks, count_lines(content));
    p.run();
    p.assign_ends();

    ParsedFile out;
    out.package_import_lines = p.package_import_lines;
    for (const Node& n : p.nodes) {
        if (n.kind == Node::type) {
            out.types.push_back({n.name, n.type_kind, {n.start, n.end},
                                 n.sig_end > 0 ? n.sig_end : n.start});
        } else {
            std::string enclosing;
            for (int a = n.parent; a >= 0; a = p.nodes[a].parent) {
                if (p.nodes[a].kind == Node::type) {
                    enclosing = p.nodes[a].name;
                    break;
                }
            }
            out.methods.push_back({n.name, enclosing, {n.start, n.end}});
        }
    }
    return out;
}

// Blanks package/import lines while preserving line numbering.
std::string strip_package_imports(std::string_view content) {
    std::string out;
    out.reserve(content.size());
    size_t pos = 0;
    while (pos <= content.size()) {
        size_t eol = content.find('\n', pos);
        std::string_view line = content.substr(
            pos, eol == std::string_view::npos ? content.size() - pos : eol - pos);
        size_t ws = line.find_first_not_of(" \t");
        std::string_view body = ws == std::string_view::npos ? "" : line.substr(ws);
        if (body.starts_with("package ") || body.starts_with("import ") ||
            body == "package;" || body == "import;") {
            // blank
        } else {
            out.append(line);
        }
        if (eol == std::string_view::npos) break;
        out.push_back('\n');
        pos = eol + 1;
    }
    return out;
}

}  // namespace

int estimate_end_line(int decl_start, std::optional<int> next_sibling_start,
                      int file_line_count) {
    if (decl_start > file_line_count)
        throw std::invalid_argument("estimate_end_line: decl_start beyond file end");
    if (next_sibling_start && *next_sibling_start <= decl_start)
        throw std::invalid_argument("estimate_end_line: sibling precedes declaration");
    int end = next_sibling_start ? *next_sibling_start - 1 : file_line_count;
    return std::max(end, decl_start);
}

ParsedFile parse_file(std::string_view content) {
    try {
        ParsedFile out = run_phase(content);
        out.status = ParseStatus::parsed;
        return out;
    } catch (const ParseError&) {
    }
    try {
        ParsedFile out = run_phase(strip_package_imports(content));
        out.status = ParseStatus::recovered;
        return out;
    } catch (const ParseError&) {
    }
    ParsedFile failed;
    failed.status = ParseStatus::failed;
    return failed;
}

}  // namespace maple::index
