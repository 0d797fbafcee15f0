#include "maple/test_outcomes.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace maple::outcomes {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

}  // namespace

int count_failures(std::istream& in, const std::string& phase) {
    std::string line;
    if (!std::getline(in, line)) throw CsvError("empty test CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "bug_id,phase,test_name,status")
        throw CsvError("unexpected test CSV header: " + line);

    int fails = 0;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 4)
            throw CsvError("malformed test CSV row at line " + std::to_string(line_no));
        const std::string& row_phase = fields[1];
        const std::string& status = fields[3];
        if (row_phase != "before" && row_phase != "after")
            throw CsvError("bad phase token at line " + std::to_string(line_no));
        if (status != "pass" && status != "fail")
            throw CsvError("bad status token at line " + std::to_string(line_no));
        if (row_phase == phase && status == "fail") ++fails;
    }
    return fails;
}

TestOutcomes load_test_outcomes(const std::string& before_csv_path,
                                const std::string& after_csv_path) {
    TestOutcomes out;
    {
        std::ifstream in(before_csv_path);
        if (!in) throw CsvError("cannot open test CSV: " + before_csv_path);
        out.failed_before = count_failures(in, "before");
    }
    if (std::filesystem::exists(after_csv_path)) {
        std::ifstream in(after_csv_path);
        if (!in) throw CsvError("cannot open test CSV: " + after_csv_path);
        out.failed_after = count_failures(in, "after");
        out.compiled = true;
    }
    return out;
}

}  // namespace maple::outcomes
