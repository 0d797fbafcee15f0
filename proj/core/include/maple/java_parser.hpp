#pragma once
// Lightweight Java declaration scanner.
//
// Extracts type declarations (class, interface, enum) and method
// declarations with their start lines. Comments, string literals, char
// literals and text blocks are skipped by the lexer, so identifiers that
// only appear inside them never produce declarations. End lines are
// estimated from subsequent declaration positions and the file length.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace maple::index {

struct LineRange {
    int start = 1;  // 1-based, inclusive
    int end = 1;    // inclusive

    friend bool operator==(const LineRange&, const LineRange&) = default;
    friend auto operator<=>(const LineRange&, const LineRange&) = default;
};

enum class ParseStatus { parsed, recovered, failed };

enum class TypeKind { class_decl, interface_decl, enum_decl };

struct TypeDecl {
    std::string name;
    TypeKind kind = TypeKind::class_decl;
    LineRange range;
    int signature_end = 0;  // line of the opening brace of the type body
};

struct MethodDecl {
    std::string name;
    std::string enclosing_type;  // simple name of the innermost enclosing type
    LineRange range;
};

struct ParsedFile {
    std::vector<TypeDecl> types;     // document order
    std::vector<MethodDecl> methods; // document order
    ParseStatus status = ParseStatus::failed;
    // Lines carrying package/import declarations plus declaration headers,
    // used for class skeleton extraction.
    std::vector<int> package_import_lines;
};

/// Sibling rule for declaration end boundaries: one line before the next
/// sibling declaration when it exists, otherwise the end of the file.
/// Violated preconditions are caller bugs.
int estimate_end_line(int decl_start, std::optional<int> next_sibling_start,
                      int file_line_count);

/// Two-phase parse: full content first; on failure, package and import
/// lines are blanked (line numbering preserved) and the parse is retried.
/// Never throws; both-phase failure yields status `failed` and empty lists.
ParsedFile parse_file(std::string_view content);

}  // namespace maple::index
