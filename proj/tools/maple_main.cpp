// maple: repository-context MCP server and ad-hoc query CLI.
//
//   maple serve --root <codebase>
//   maple query --root <codebase> --kind {class|method|code} --pattern <text>
//               [--in-class <type>] [--in-file <suffix>] [--tau N] [--delta N]

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "maple/mcp_server.hpp"
#include "maple/query.hpp"

int main(int argc, char** argv) {
    CLI::App app{"maple - Java repository context server"};
    app.require_subcommand(1);

    std::string root;
    std::string kind, pattern, in_class, in_file;
    int tau = 3, delta = 3;

    CLI::App* serve = app.add_subcommand("serve", "Run the MCP stdio server");
    serve->add_option("--root", root, "Codebase root directory")->required();

    CLI::App* query = app.add_subcommand("query", "Run one query and print the result");
    query->add_option("--root", root, "Codebase root directory")->required();
    query->add_option("--kind", kind, "One of class|method|code")->required();
    query->add_option("--pattern", pattern, "Name or code snippet to search for")->required();
    query->add_option("--in-class", in_class, "Restrict a method query to one type");
    query->add_option("--in-file", in_file, "Restrict results to a file path suffix");
    query->add_option("--tau", tau, "Full result blocks before summarizing");
    query->add_option("--delta", delta, "Context lines around code matches");

    CLI11_PARSE(app, argc, argv);

    try {
        if (serve->parsed()) {
            maple::mcp::Session session;
            session.codebase_root = root;
            session.diagnostics = &std::cerr;
            return maple::mcp::serve(session, std::cin, std::cout);
        }

        maple::index::CodeIndex ix = maple::index::build_index(root, &std::cerr);
        maple::query::FormatConfig fmt;
        fmt.display_threshold = tau;
        fmt.context_lines = delta;

        std::vector<maple::query::QueryResult> results;
        if (kind == "class") {
            results = in_file.empty() ? maple::query::find_class(ix, pattern)
                                      : maple::query::find_class_in_file(ix, pattern, in_file);
        } else if (kind == "method") {
            if (!in_class.empty())
                results = maple::query::find_method_in_class(ix, pattern, in_class);
            else if (!in_file.empty())
                results = maple::query::find_method_in_file(ix, pattern, in_file);
            else
                results = maple::query::find_method(ix, pattern);
        } else if (kind == "code") {
            results = in_file.empty()
                          ? maple::query::find_code(ix, pattern, fmt.context_lines)
                          : maple::query::find_code_in_file(ix, pattern, in_file,
                                                            fmt.context_lines);
        } else {
            std::cerr << "unknown query kind: " << kind << "\n";
            return 2;
        }
        std::cout << maple::query::format_results(results, fmt) << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
