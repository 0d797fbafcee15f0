#include <doctest.h>

#include <cmath>
#include <sstream>

#include "maple/metrics.hpp"

using namespace maple;
using namespace maple::metrics;

namespace {

patch::Hunk hunk(const std::string& file, std::vector<std::string> added,
                 std::vector<std::string> removed = {}) {
    patch::Hunk h;
    h.file = file;
    h.added_lines = std::move(added);
    h.removed_lines = std::move(removed);
    h.range = {1, 1};
    return h;
}

patch::GroundTruth gt_of(std::set<std::string> files) {
    patch::GroundTruth gt;
    gt.files = std::move(files);
    return gt;
}

patch::Patch patch_of(std::vector<std::string> files) {
    patch::Patch p;
    for (const auto& f : files) p.hunks.push_back(hunk(f, {"x = 1;"}));
    p.empty = p.hunks.empty();
    return p;
}

outcomes::TestOutcomes outcome(int before, std::optional<int> after) {
    outcomes::TestOutcomes o;
    o.failed_before = before;
    o.failed_after = after;
    o.compiled = after.has_value();
    return o;
}

}  // namespace

// --- effectiveness ----------------------------------------------------------

TEST_CASE("localization success is file-superset coverage") {
    CHECK(localization_success(gt_of({"A", "B"}), patch_of({"A", "B", "C"})) == 1);
    CHECK(localization_success(gt_of({"A", "B"}), patch_of({"A"})) == 0);
    CHECK(localization_success(gt_of({"A", "B"}), patch_of({})) == 0);  // empty patch
}

TEST_CASE("repair accuracy needs a nonempty compiled patch passing all tests") {
    CHECK(repair_accuracy(outcome(3, 0), patch_of({"A"})) == 1);
    CHECK(repair_accuracy(outcome(3, 3), patch_of({"A"})) == 0);
    CHECK(repair_accuracy(outcome(3, 0), patch_of({})) == 0);
    CHECK(repair_accuracy(outcome(3, std::nullopt), patch_of({"A"})) == 0);
}

TEST_CASE("regression reduction is before minus after, undefined when uncompiled") {
    CHECK(regression_reduction(outcome(5, 2)) == 3);
    CHECK(regression_reduction(outcome(2, 5)) == -3);
    CHECK_FALSE(regression_reduction(outcome(5, std::nullopt)).has_value());
}

TEST_CASE("accuracy implies compilation and full regression reduction") {
    auto o = outcome(4, 0);
    auto p = patch_of({"A"});
    REQUIRE(repair_accuracy(o, p) == 1);
    CHECK(o.compiled);
    CHECK(regression_reduction(o) == o.failed_before);
}

// --- divergence -------------------------------------------------------------

TEST_CASE("identical hunks in the same file diverge by zero") {
    auto a = hunk("F.java", {"return alpha;"});
    CHECK(pairwise_divergence(a, a) == doctest::Approx(0.0));
    CHECK(hunk_divergence({a, a}) == doctest::Approx(0.0));
}

TEST_CASE("token-disjoint cross-file hunks diverge maximally") {
    auto a = hunk("F.java", {"return alpha;"});
    auto b = hunk("G.java", {"beta = gamma;"});
    CHECK(pairwise_divergence(a, b) == doctest::Approx(1.0));
}

TEST_CASE("pairwise divergence matches a straight-line oracle") {
    // lexical: token sets {alpha, beta} vs {beta, gamma}: Jaccard 1/3
    // structural: both classify as other_statement: distance 0
    // same file: weights 0.4 / 0.4 / 0.2
    auto a = hunk("F.java", {"alpha beta;"});
    auto b = hunk("F.java", {"beta gamma;"});
    double oracle = 0.4 * (1.0 - 1.0 / 3.0) + 0.4 * 0.0 + 0.2 * 0.0;
    CHECK(pairwise_divergence(a, b) == doctest::Approx(oracle));
    CHECK(pairwise_divergence(b, a) == doctest::Approx(pairwise_divergence(a, b)));
}

TEST_CASE("cross-file regime amplifies the file contribution") {
    auto a = hunk("F.java", {"alpha beta;"});
    auto b = hunk("G.java", {"beta gamma;"});
    double oracle = 0.3 * (1.0 - 1.0 / 3.0) + 0.3 * 0.0 + 0.4 * 1.0;
    CHECK(pairwise_divergence(a, b) == doctest::Approx(oracle));
}

TEST_CASE("hunk divergence attains the ln(n) upper bound") {
    // seven mutually token-disjoint hunks with distinct statement kinds in
    // seven distinct files: every pairwise score is exactly 1
    std::vector<patch::Hunk> hunks = {
        hunk("a/1.java", {"return alpha;"}),
        hunk("b/2.java", {"beta = gamma;"}),
        hunk("c/3.java", {"delta();"}),
        hunk("d/4.java", {"if (eps) zeta(eta);"}),
        hunk("e/5.java", {"import theta.iota;"}),
        hunk("f/6.java", {"package kappa.mu;"}),
        hunk("g/7.java", {"@Lambda"}),
    };
    for (size_t i = 0; i < hunks.size(); ++i)
        for (size_t j = i + 1; j < hunks.size(); ++j) {
            INFO(i << " vs " << j);
            CHECK(pairwise_divergence(hunks[i], hunks[j]) == doctest::Approx(1.0));
        }
    CHECK(hunk_divergence(hunks) == doctest::Approx(std::log(7.0)));
}

TEST_CASE("single-hunk divergence is a domain error") {
    CHECK_THROWS_AS(hunk_divergence({hunk("F.java", {"x = 1;"})}), std::domain_error);
    CHECK_THROWS_AS(hunk_divergence({}), std::domain_error);
}

TEST_CASE("reported divergence values respect the ln(n) bound") {
    CHECK(1.158 <= std::log(7.0));
    CHECK(1.599 <= std::log(26.0));
}

TEST_CASE("structural component falls back to lexical on unclassifiable fragments") {
    auto a = hunk("F.java", {"// only a comment"});
    auto b = hunk("F.java", {"// another comment"});
    // both kind multisets empty: structural = lexical; token sets {only, a,
    // comment} vs {another, comment} give Jaccard 1/4
    double lex = 1.0 - 1.0 / 4.0;
    CHECK(pairwise_divergence(a, b) == doctest::Approx(0.4 * lex + 0.4 * lex));
}

// --- proximity --------------------------------------------------------------

TEST_CASE("proximity classes cover the dispersion ladder") {
    auto in_method = [](const char* type, const char* method) {
        auto h = hunk("p/F.java", {"x = 1;"});
        h.enclosing_type = type;
        h.enclosing_method = method;
        return h;
    };
    // all hunks in one method: Nucleus
    CHECK(classify_proximity({in_method("Foo", "bar"), in_method("Foo", "bar")}) ==
          ProximityClass::Nucleus);
    // same class, different methods: still Nucleus ("same method or class")
    CHECK(classify_proximity({in_method("Foo", "bar"), in_method("Foo", "baz")}) ==
          ProximityClass::Nucleus);
    // one file, two classes: Cluster
    CHECK(classify_proximity({in_method("Foo", "bar"), in_method("Qux", "baz")}) ==
          ProximityClass::Cluster);
    // multiple files, one package directory: Orbit
    CHECK(classify_proximity({hunk("p/F.java", {"x = 1;"}), hunk("p/G.java", {"y = 2;"})}) ==
          ProximityClass::Orbit);
    // 2..P_frag-1 packages: Sprawl
    CHECK(classify_proximity({hunk("p/F.java", {"x = 1;"}), hunk("q/G.java", {"y = 2;"})}) ==
          ProximityClass::Sprawl);
    // >= P_frag = 4 packages: Fragment
    CHECK(classify_proximity({hunk("p1/a.java", {"x = 1;"}), hunk("p2/b.java", {"x = 1;"}),
                              hunk("p3/c.java", {"x = 1;"}), hunk("p4/d.java", {"x = 1;"}),
                              hunk("p5/e.java", {"x = 1;"})},
                             4) == ProximityClass::Fragment);
    CHECK_THROWS_AS(classify_proximity({}), std::domain_error);
}

TEST_CASE("adding a hunk in a new package never lowers the proximity class") {
    std::vector<patch::Hunk> hunks = {hunk("p0/f.java", {"x = 1;"})};
    hunks[0].enclosing_type = "T";
    ProximityClass prev = classify_proximity(hunks);
    for (int i = 1; i <= 6; ++i) {
        hunks.push_back(hunk("pkg" + std::to_string(i) + "/f.java", {"x = 1;"}));
        ProximityClass cur = classify_proximity(hunks);
        CHECK(static_cast<int>(cur) >= static_cast<int>(prev));
        prev = cur;
    }
    CHECK(prev == ProximityClass::Fragment);
}

// --- operational dynamics ---------------------------------------------------

TEST_CASE("token totals exclude cache counters") {
    traj::TokenUsage u;
    u.input_tokens = 300;
    u.output_tokens = 30;
    u.call_count = 2;
    auto t = token_totals(u);
    CHECK(t.input == 300);
    CHECK(t.output == 30);
    CHECK(t.total == 330);

    u.cache_read_tokens = 1000000;
    u.cache_creation_tokens = 4242;
    CHECK(token_totals(u).total == 330);  // unchanged by cache traffic

    CHECK(token_totals(traj::TokenUsage{}).total == 0);
}

TEST_CASE("runtime is the wall-clock difference") {
    traj::Trajectory t;
    t.start_ts = 0;
    t.end_ts = 341.71;
    CHECK(runtime_seconds(t) == doctest::Approx(341.71));
    t.start_ts = t.end_ts;
    CHECK(runtime_seconds(t) == doctest::Approx(0.0));
}

TEST_CASE("tool utilization is a relative frequency summing to one") {
    traj::Trajectory t;
    auto push = [&](traj::Category c) {
        traj::Action a;
        a.category = c;
        a.ordinal = static_cast<int>(t.actions.size()) + 1;
        t.actions.push_back(a);
    };
    push(traj::Category::WRITE);
    push(traj::Category::WRITE);
    push(traj::Category::WRITE);
    push(traj::Category::TEST);
    auto u = tool_utilization(t);
    CHECK(u[traj::Category::WRITE] == doctest::Approx(0.75));
    CHECK(u[traj::Category::TEST] == doctest::Approx(0.25));
    double sum = 0;
    for (auto& [_, v] : u) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

    traj::Trajectory single;
    {
        traj::Action a;
        a.category = traj::Category::READ;
        single.actions.push_back(a);
    }
    CHECK(tool_utilization(single)[traj::Category::READ] == doctest::Approx(1.0));

    CHECK(tool_utilization(traj::Trajectory{}).empty());
}

// --- test outcome CSVs ------------------------------------------------------

TEST_CASE("count_failures counts fail rows of one phase") {
    std::istringstream in(
        "bug_id,phase,test_name,status\n"
        "b,before,t1,fail\n"
        "b,before,t2,fail\n"
        "b,before,t3,pass\n"
        "b,after,t1,fail\n");
    CHECK(outcomes::count_failures(in, "before") == 2);
    std::istringstream again(
        "bug_id,phase,test_name,status\n"
        "b,after,t1,fail\n");
    CHECK(outcomes::count_failures(again, "after") == 1);
}

TEST_CASE("bad CSV headers and tokens are ingestion errors") {
    std::istringstream bad_header("id,phase,name,status\n");
    CHECK_THROWS_AS(outcomes::count_failures(bad_header, "before"), outcomes::CsvError);
    std::istringstream bad_status("bug_id,phase,test_name,status\nb,before,t,maybe\n");
    CHECK_THROWS_AS(outcomes::count_failures(bad_status, "before"), outcomes::CsvError);
    std::istringstream bad_phase("bug_id,phase,test_name,status\nb,during,t,pass\n");
    CHECK_THROWS_AS(outcomes::count_failures(bad_phase, "before"), outcomes::CsvError);
}
