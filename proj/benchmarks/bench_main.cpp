#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>
#include <vector>

#include "maple/code_index.hpp"
#include "maple/metrics.hpp"
#include "maple/query.hpp"

namespace fs = std::filesystem;
using namespace maple;

namespace {

const fs::path kCorpus = fs::path(MAPLE_FIXTURE_DIR) / "corpus" / "src";

const index::CodeIndex& corpus_index() {
    static index::CodeIndex ix = index::build_index(kCorpus);
    return ix;
}

std::vector<patch::Hunk> synthetic_hunks(int n) {
    static const std::vector<std::string> lines = {
        "return value;", "count = count + 1;", "helper(x, y);",
        "if (ready) { emit(); }", "int total = 0;"};
    std::mt19937 rng(n);
    std::uniform_int_distribution<size_t> pick(0, lines.size() - 1);
    std::vector<patch::Hunk> hunks;
    for (int i = 0; i < n; ++i) {
        patch::Hunk h;
        h.file = "pkg" + std::to_string(i % 5) + "/F.java";
        h.range = {1, 1};
        h.added_lines = {lines[pick(rng)], lines[pick(rng)]};
        hunks.push_back(std::move(h));
    }
    return hunks;
}

void BM_BuildIndex(benchmark::State& state) {
    for (auto _ : state) {
        index::CodeIndex ix = index::build_index(kCorpus);
        benchmark::DoNotOptimize(ix.type_index.size());
    }
}
BENCHMARK(BM_BuildIndex)->Unit(benchmark::kMillisecond);

void BM_FindClass(benchmark::State& state) {
    const index::CodeIndex& ix = corpus_index();
    for (auto _ : state) {
        auto r = query::find_class(ix, "Parser");
        benchmark::DoNotOptimize(r.size());
    }
}
BENCHMARK(BM_FindClass);

void BM_FindMethod(benchmark::State& state) {
    const index::CodeIndex& ix = corpus_index();
    for (auto _ : state) {
        auto r = query::find_method(ix, "run");
        benchmark::DoNotOptimize(r.size());
    }
}
BENCHMARK(BM_FindMethod);

void BM_FindCode(benchmark::State& state) {
    const index::CodeIndex& ix = corpus_index();
    for (auto _ : state) {
        auto r = query::find_code(ix, "return", 3);
        benchmark::DoNotOptimize(r.size());
    }
}
BENCHMARK(BM_FindCode)->Unit(benchmark::kMicrosecond);

void BM_ResolveScope(benchmark::State& state) {
    const index::CodeIndex& ix = corpus_index();
    for (auto _ : state) {
        auto r = query::resolve_scope(ix, "com/alpha/Parser.java", 10);
        benchmark::DoNotOptimize(r.first.has_value());
    }
}
BENCHMARK(BM_ResolveScope);

void BM_HunkDivergence(benchmark::State& state) {
    auto hunks = synthetic_hunks(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        double d = metrics::hunk_divergence(hunks);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_HunkDivergence)->Arg(2)->Arg(7)->Arg(26)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
