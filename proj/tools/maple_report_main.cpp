// maple-report: batch metrics pipeline over normalized run directories.
//
//   maple-report ingest    --in <run-dir> [--config <json>]
//   maple-report metrics   --in <run-dir> [--config] [--format csv|json] --out <dir>
//   maple-report aggregate --in <run-dir> [--config] [--format] --out <dir>
//   maple-report overlap   --in <run-dir> [--config] --out <dir>
//   maple-report sequences --in <run-dir> [--config] --out <dir>
//
// Every stage recomputes from the run directory so each is usable on its
// own; `aggregate` emits the full artifact set.

#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "maple/report.hpp"

namespace {

struct Options {
    std::string in_dir;
    std::string config_path;
    std::string format = "json";
    std::string out_dir = ".";
};

void add_common(CLI::App* cmd, Options& opt, bool needs_out) {
    cmd->add_option("--in", opt.in_dir, "Run directory")->required();
    cmd->add_option("--config", opt.config_path, "Toolkit configuration JSON");
    cmd->add_option("--format", opt.format, "Output format: csv or json");
    auto* out = cmd->add_option("--out", opt.out_dir, "Output directory");
    if (needs_out) out->required();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maple-report - repair-run metrics pipeline"};
    app.require_subcommand(1);

    Options opt;
    CLI::App* ingest = app.add_subcommand("ingest", "Validate and summarize a run directory");
    CLI::App* metrics = app.add_subcommand("metrics", "Per-bug metric reports");
    CLI::App* aggregate = app.add_subcommand("aggregate", "Full artifact emission");
    CLI::App* overlap = app.add_subcommand("overlap", "Agent overlap sets");
    CLI::App* sequences = app.add_subcommand("sequences", "Tool-sequence mining");
    add_common(ingest, opt, /*needs_out=*/false);
    for (CLI::App* cmd : {metrics, aggregate, overlap, sequences})
        add_common(cmd, opt, /*needs_out=*/true);

    CLI11_PARSE(app, argc, argv);

    try {
        maple::config::ToolkitConfig cfg;
        if (!opt.config_path.empty()) cfg = maple::config::load_config(opt.config_path);
        if (opt.format != "csv" && opt.format != "json") {
            std::cerr << "error: unknown format '" << opt.format << "'\n";
            return 2;
        }

        maple::traj::CategoryTable table = maple::traj::CategoryTable::defaults();
        maple::report::RunData run = maple::report::load_run(opt.in_dir, table, &std::cerr);

        if (ingest->parsed()) {
            std::cout << "agents=";
            std::set<std::string> agents;
            for (const auto& rec : run.records) agents.insert(rec.agent);
            bool first = true;
            for (const auto& a : agents) {
                if (!first) std::cout << ",";
                std::cout << a;
                first = false;
            }
            std::cout << " records=" << run.records.size()
                      << " ground_truth=" << run.ground_truth.size() << "\n";
            return 0;
        }

        maple::report::RunArtifacts art = maple::report::build_artifacts(run, cfg);
        int status = maple::report::emit(art, opt.format, opt.out_dir);
        if (status != 0) std::cerr << "error: emission failed\n";
        return status;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
