#include "maple/query.hpp"

#include <map>
#include <sstream>

namespace maple::query {

std::string format_results(const std::vector<QueryResult>& results,
                           const FormatConfig& config) {
    if (results.empty()) return "no matches";

    const size_t tau = static_cast<size_t>(std::max(config.display_threshold, 1));
    const size_t full = std::min(results.size(), tau);

    std::ostringstream out;
    for (size_t i = 0; i < full; ++i) {
        const QueryResult& r = results[i];
        if (i > 0) out << "\n\n";
        out << "<file>" << r.file << "</file>\n";
        if (r.enclosing_type) out << "<class>" << *r.enclosing_type << "</class>\n";
        if (r.enclosing_method)
            out << "<method>" << *r.enclosing_method << "</method>\n";
        out << "<code lines=\"" << r.range.start << "-" << r.range.end << "\">\n"
            << r.code << "\n</code>";
    }

    if (results.size() > tau) {
        std::map<std::string, int> counts;
        for (size_t i = tau; i < results.size(); ++i) ++counts[results[i].file];
        out << "\n\n<summary total=\"" << results.size() - tau << "\">";
        for (const auto& [path, count] : counts)
            out << "\n<match file=\"" << path << "\" count=\"" << count << "\"/>";
        out << "\n</summary>";
    }
    return out.str();
}

}  // namespace maple::query
