#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "maple/config.hpp"
#include "maple/report.hpp"

using namespace maple;
using namespace maple::report;
namespace fs = std::filesystem;

namespace {

const fs::path kRun10 = fs::path(MAPLE_FIXTURE_DIR) / "run10";

metrics::MetricReport mk(const std::string& agent, const std::string& bug, int acc,
                         double divergence = 0.0, double runtime = 0.0) {
    metrics::MetricReport r;
    r.agent = agent;
    r.bug_id = bug;
    r.accuracy = acc;
    r.compilation = acc;
    r.localization = acc;
    r.divergence = divergence;
    r.runtime_s = runtime;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("percent fields recompute exactly from counts") {
    CHECK(format_percent(347, 372) == "93.28");
    CHECK(format_percent(0, 372) == "0.00");
    CHECK(format_percent(372, 372) == "100.00");
    CHECK(format_percent(0, 0) == "0.00");
}

TEST_CASE("a 372-record fixture with 347 passes renders 93.28") {
    std::vector<metrics::MetricReport> reports;
    for (int i = 0; i < 372; ++i)
        reports.push_back(mk("agent", "bug" + std::to_string(i), i < 347 ? 1 : 0));
    auto rows = aggregate(reports);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].total_bugs == 372);
    CHECK(rows[0].accuracy_count == 347);
    CHECK(format_percent(rows[0].accuracy_count, rows[0].total_bugs) == "93.28");
}

TEST_CASE("all-zero reports aggregate to 0 (0.00%)") {
    std::vector<metrics::MetricReport> reports = {mk("a", "b1", 0), mk("a", "b2", 0)};
    auto rows = aggregate(reports);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].accuracy_count == 0);
    CHECK(format_percent(rows[0].accuracy_count, rows[0].total_bugs) == "0.00");
    CHECK(rows[0].regression_defined == 0);
}

TEST_CASE("two agents over a shared universe match a hand tally") {
    std::vector<metrics::MetricReport> reports;
    for (int i = 0; i < 50; ++i) {
        reports.push_back(mk("x", "b" + std::to_string(i), i % 2));        // 25
        reports.push_back(mk("y", "b" + std::to_string(i), i % 5 ? 1 : 0)); // 40
    }
    auto rows = aggregate(reports);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].agent == "x");  // ascending accuracy
    CHECK(rows[0].accuracy_count == 25);
    CHECK(rows[1].agent == "y");
    CHECK(rows[1].accuracy_count == 40);
}

TEST_CASE("mixed bug universes are an aggregation error") {
    std::vector<metrics::MetricReport> reports = {mk("x", "b1", 1), mk("y", "b2", 1)};
    CHECK_THROWS_AS(aggregate(reports), AggregationError);
    std::vector<metrics::MetricReport> dup = {mk("x", "b1", 1), mk("x", "b1", 0)};
    CHECK_THROWS_AS(aggregate(dup), AggregationError);
}

TEST_CASE("overlap sets use exact membership semantics") {
    std::map<std::string, std::set<std::string>> fixed = {{"A", {"1", "2"}},
                                                          {"B", {"2", "3"}}};
    std::map<std::string, metrics::ProximityClass> prox = {
        {"1", metrics::ProximityClass::Nucleus},
        {"2", metrics::ProximityClass::Cluster},
        {"3", metrics::ProximityClass::Orbit}};
    auto sets = overlap_sets(fixed, prox);
    REQUIRE(sets.size() == 3);
    CHECK(sets[0].membership == std::set<std::string>{"A"});
    CHECK(sets[0].bug_ids == std::set<std::string>{"1"});
    CHECK(sets[1].membership == std::set<std::string>{"A", "B"});
    CHECK(sets[1].bug_ids == std::set<std::string>{"2"});
    CHECK(sets[2].membership == std::set<std::string>{"B"});
    CHECK(sets[2].bug_ids == std::set<std::string>{"3"});
    CHECK(sets[1].per_proximity.at(metrics::ProximityClass::Cluster) == 1);
}

TEST_CASE("disjoint fixed sets produce no multi-agent memberships") {
    auto sets = overlap_sets({{"A", {"1"}}, {"B", {"2"}}}, {});
    REQUIRE(sets.size() == 2);
    for (const auto& s : sets) CHECK(s.membership.size() == 1);
}

TEST_CASE("four-agent overlaps match a brute-force enumeration") {
    std::map<std::string, std::set<std::string>> fixed;
    std::vector<std::string> agents = {"a", "b", "c", "d"};
    // bug i is fixed by agent j iff bit j of i is set; i in 1..15
    for (int i = 1; i < 16; ++i)
        for (int j = 0; j < 4; ++j)
            if (i & (1 << j)) fixed[agents[j]].insert("bug" + std::to_string(i));
    auto sets = overlap_sets(fixed, {});
    CHECK(sets.size() == 15);  // every nonempty membership occurs exactly once
    std::set<std::string> seen;
    size_t total = 0;
    for (const auto& s : sets) {
        CHECK(s.bug_ids.size() == 1);  // each membership pattern has one bug
        for (const auto& b : s.bug_ids) {
            CHECK(seen.insert(b).second);  // partition: pairwise disjoint
            ++total;
        }
    }
    CHECK(total == 15);
}

TEST_CASE("outcome split statistics with hand-computed values") {
    std::vector<metrics::MetricReport> reports = {
        mk("a", "b1", 1, 0.5, 100.0), mk("a", "b2", 1, 1.5, 300.0),
        mk("a", "b3", 1, 2.5, 200.0), mk("a", "b4", 0, 4.0, 400.0)};
    auto split = outcome_split(reports);
    CHECK(split.pass.count == 3);
    CHECK(split.fail.count == 1);
    CHECK(split.pass.divergence_median == doctest::Approx(1.5));
    CHECK(split.pass.divergence_mean == doctest::Approx(1.5));
    CHECK(split.pass.divergence_max == doctest::Approx(2.5));
    CHECK(split.pass.runtime_mean == doctest::Approx(200.0));
    // single-record class: mean = median = max = value
    CHECK(split.fail.divergence_median == doctest::Approx(4.0));
    CHECK(split.fail.divergence_mean == doctest::Approx(4.0));
    CHECK(split.fail.divergence_max == doctest::Approx(4.0));
    CHECK(split.pass.count + split.fail.count == reports.size());
}

TEST_CASE("even-count medians use lower interpolation; empty classes are absent") {
    std::vector<metrics::MetricReport> reports = {mk("a", "b1", 1, 1.0),
                                                  mk("a", "b2", 1, 2.0)};
    auto split = outcome_split(reports);
    CHECK(split.pass.divergence_median == doctest::Approx(1.0));  // lower of {1, 2}
    CHECK(split.fail.count == 0);
    CHECK_FALSE(split.fail.divergence_median.has_value());
    CHECK_FALSE(split.fail.runtime_mean.has_value());
}

TEST_CASE("runtime means reproduce the pass/fail gap") {
    std::vector<metrics::MetricReport> reports = {mk("q", "b1", 1, 0.0, 341.71),
                                                  mk("q", "b2", 0, 0.0, 490.20)};
    auto split = outcome_split(reports);
    REQUIRE(split.pass.runtime_mean.has_value());
    REQUIRE(split.fail.runtime_mean.has_value());
    CHECK(*split.fail.runtime_mean - *split.pass.runtime_mean == doctest::Approx(148.49));
}

TEST_CASE("correlation reproduces the published coefficient") {
    std::vector<double> x = {25.81, 41.67, 87.10, 93.28};
    std::vector<double> y = {-1.34, -1.92, 2.25, 2.47};
    auto r = correlation(x, y);
    REQUIRE(r.has_value());
    CHECK(*r == doctest::Approx(0.96).epsilon(0.011));
}

TEST_CASE("correlation basics and degeneracies") {
    std::vector<double> x = {1, 2, 3, 4};
    CHECK(*correlation(x, x) == doctest::Approx(1.0));
    std::vector<double> neg = {-1, -2, -3, -4};
    CHECK(*correlation(x, neg) == doctest::Approx(-1.0));
    std::vector<double> flat = {5, 5, 5, 5};
    CHECK_FALSE(correlation(x, flat).has_value());
    CHECK_FALSE(correlation({1}, {2}).has_value());
    // symmetry and positive-affine invariance
    std::vector<double> y = {2, 1, 4, 3};
    CHECK(*correlation(x, y) == doctest::Approx(*correlation(y, x)));
    std::vector<double> scaled;
    for (double v : y) scaled.push_back(3.0 * v + 7.0);
    CHECK(*correlation(x, scaled) == doctest::Approx(*correlation(x, y)));
}

// ---------------------------------------------------------------------------
// run10 fixture: spreadsheet-style oracle
// ---------------------------------------------------------------------------

namespace {

struct Expected {
    int ls, comp, acc;
    std::optional<int> rr;
};

const std::map<std::pair<std::string, std::string>, Expected> kExpected = {
    {{"agentA", "bug01"}, {1, 1, 1, 3}},  {{"agentA", "bug02"}, {0, 1, 1, 2}},
    {{"agentA", "bug03"}, {0, 0, 0, {}}}, {{"agentA", "bug04"}, {1, 1, 0, 3}},
    {{"agentA", "bug05"}, {1, 1, 1, 1}},  {{"agentA", "bug06"}, {1, 1, 1, 2}},
    {{"agentA", "bug07"}, {0, 1, 1, 1}},  {{"agentA", "bug08"}, {1, 1, 1, 5}},
    {{"agentA", "bug09"}, {1, 1, 0, 1}},  {{"agentA", "bug10"}, {1, 1, 1, 2}},
    {{"agentB", "bug01"}, {1, 1, 1, 1}},  {{"agentB", "bug02"}, {0, 0, 0, {}}},
    {{"agentB", "bug03"}, {1, 1, 0, -1}}, {{"agentB", "bug04"}, {0, 0, 0, {}}},
    {{"agentB", "bug05"}, {1, 1, 1, 2}},  {{"agentB", "bug06"}, {0, 1, 1, 1}},
    {{"agentB", "bug07"}, {1, 1, 0, 0}},  {{"agentB", "bug08"}, {1, 1, 1, 4}},
    {{"agentB", "bug09"}, {1, 1, 1, 3}},  {{"agentB", "bug10"}, {0, 0, 0, {}}},
};

RunData load_run10() {
    return load_run(kRun10, traj::CategoryTable::defaults());
}

}  // namespace

TEST_CASE("run10: per-bug metrics match the hand table") {
    RunData run = load_run10();
    REQUIRE(run.records.size() == 20);
    REQUIRE(run.ground_truth.size() == 10);
    auto reports = compute_reports(run, config::ToolkitConfig{});
    REQUIRE(reports.size() == 20);
    for (const auto& r : reports) {
        auto it = kExpected.find({r.agent, r.bug_id});
        REQUIRE(it != kExpected.end());
        INFO(r.agent << "/" << r.bug_id);
        CHECK(r.localization == it->second.ls);
        CHECK(r.compilation == it->second.comp);
        CHECK(r.accuracy == it->second.acc);
        CHECK(r.regression_reduction == it->second.rr);
        CHECK(r.divergence >= 0.0);
        if (r.accuracy) CHECK(r.compilation == 1);  // invariant
    }

    // spot-check operational numbers against the fixture header
    for (const auto& r : reports) {
        if (r.agent == "agentA" && r.bug_id == "bug01") {
            CHECK(r.total_tokens == 10100 + 2010);
            CHECK(r.runtime_s == doctest::Approx(310.0));
            CHECK(r.tool_counts.at(traj::Category::READ) == 1);
            CHECK(r.tool_counts.at(traj::Category::TEST) == 1);
        }
    }
}

TEST_CASE("run10: aggregate rows match hand counts, ordered by accuracy") {
    RunData run = load_run10();
    auto art = build_artifacts(run, config::ToolkitConfig{});
    REQUIRE(art.aggregate_rows.size() == 2);

    const AggregateRow& b = art.aggregate_rows[0];
    CHECK(b.agent == "agentB");
    CHECK(b.total_bugs == 10);
    CHECK(b.localization_count == 6);
    CHECK(b.compilation_count == 7);
    CHECK(b.accuracy_count == 5);
    CHECK(b.regression_defined == 7);
    CHECK(b.regression_mean == doctest::Approx(10.0 / 7.0));

    const AggregateRow& a = art.aggregate_rows[1];
    CHECK(a.agent == "agentA");
    CHECK(a.localization_count == 7);
    CHECK(a.compilation_count == 9);
    CHECK(a.accuracy_count == 7);
    CHECK(a.regression_defined == 9);
    CHECK(a.regression_mean == doctest::Approx(20.0 / 9.0));
    CHECK(format_percent(a.accuracy_count, a.total_bugs) == "70.00");
}

TEST_CASE("run10: overlap sets and proximity decomposition") {
    RunData run = load_run10();
    auto art = build_artifacts(run, config::ToolkitConfig{});
    REQUIRE(art.overlaps.size() == 3);

    CHECK(art.overlaps[0].membership == std::set<std::string>{"agentA"});
    CHECK(art.overlaps[0].bug_ids == std::set<std::string>{"bug02", "bug07", "bug10"});
    CHECK(art.overlaps[0].per_proximity.at(metrics::ProximityClass::Cluster) == 3);

    CHECK(art.overlaps[1].membership == std::set<std::string>{"agentA", "agentB"});
    CHECK(art.overlaps[1].bug_ids ==
          std::set<std::string>{"bug01", "bug05", "bug06", "bug08"});
    CHECK(art.overlaps[1].per_proximity.at(metrics::ProximityClass::Nucleus) == 2);
    CHECK(art.overlaps[1].per_proximity.at(metrics::ProximityClass::Fragment) == 1);
    CHECK(art.overlaps[1].per_proximity.at(metrics::ProximityClass::Orbit) == 1);

    CHECK(art.overlaps[2].membership == std::set<std::string>{"agentB"});
    CHECK(art.overlaps[2].bug_ids == std::set<std::string>{"bug09"});

    // partition property over the union of fixed sets
    size_t covered = 0;
    for (const auto& s : art.overlaps) {
        covered += s.bug_ids.size();
        size_t prox_total = 0;
        for (const auto& [_, n] : s.per_proximity) prox_total += n;
        CHECK(prox_total == s.bug_ids.size());
    }
    CHECK(covered == 8);  // bugs fixed by at least one agent
}

TEST_CASE("run10: emission is byte-deterministic and complete") {
    RunData run = load_run10();
    auto art = build_artifacts(run, config::ToolkitConfig{});

    fs::path out1 = fs::temp_directory_path() / "maple_emit_1";
    fs::path out2 = fs::temp_directory_path() / "maple_emit_2";
    REQUIRE(emit(art, "json", out1) == 0);
    REQUIRE(emit(art, "json", out2) == 0);

    for (const char* name :
         {"aggregate.csv", "per_bug.json", "overlaps.json", "splits.json",
          "sequences.json"}) {
        INFO(name);
        REQUIRE(fs::exists(out1 / name));
        CHECK(slurp(out1 / name) == slurp(out2 / name));
    }

    std::string agg = slurp(out1 / "aggregate.csv");
    CHECK(agg.find("agentB,10,6,60.00,7,70.00,") != std::string::npos);
    CHECK(agg.find(",9,7,70.00\n") != std::string::npos);  // agentA tail

    // csv format additionally round-trips per-bug rows
    REQUIRE(emit(art, "csv", out1) == 0);
    std::string per_bug = slurp(out1 / "per_bug.csv");
    CHECK(per_bug.find("agentA,bug01,1,1,1,3,") != std::string::npos);
    CHECK(per_bug.find("agentB,bug02,0,0,0,,") != std::string::npos);

    CHECK(emit(art, "yaml", out1) != 0);  // unknown format
}

TEST_CASE("toolkit config file round-trips the defaults") {
    auto cfg = config::load_config(
        (fs::path(MAPLE_FIXTURE_DIR) / "toolkit_config.json").string());
    config::ToolkitConfig def;
    CHECK(cfg.weights.lexical_weight == def.weights.lexical_weight);
    CHECK(cfg.weights.file_weight_cross == def.weights.file_weight_cross);
    CHECK(cfg.package_fragment_threshold == def.package_fragment_threshold);
    CHECK(cfg.window == def.window);
    CHECK(cfg.top_n == def.top_n);
    CHECK(cfg.format.display_threshold == def.format.display_threshold);
    CHECK(cfg.format.context_lines == def.format.context_lines);
}
