#include "maple/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace maple::report {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

std::string format_percent(int count, int total) {
    double pct = total > 0 ? 100.0 * static_cast<double>(count) / static_cast<double>(total)
                           : 0.0;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", pct);
    return buf;
}

double AggregateRow::localization_pct() const {
    return total_bugs ? 100.0 * localization_count / total_bugs : 0.0;
}
double AggregateRow::compilation_pct() const {
    return total_bugs ? 100.0 * compilation_count / total_bugs : 0.0;
}
double AggregateRow::accuracy_pct() const {
    return total_bugs ? 100.0 * accuracy_count / total_bugs : 0.0;
}

std::vector<AggregateRow> aggregate(const std::vector<metrics::MetricReport>& reports) {
    std::map<std::string, std::set<std::string>> universes;
    std::map<std::string, AggregateRow> rows;
    std::map<std::string, double> regression_sum;
    for (const auto& r : reports) {
        if (!universes[r.agent].insert(r.bug_id).second)
            throw AggregationError("duplicate bug id for agent " + r.agent + ": " + r.bug_id);
        AggregateRow& row = rows[r.agent];
        row.agent = r.agent;
        ++row.total_bugs;
        row.localization_count += r.localization;
        row.compilation_count += r.compilation;
        row.accuracy_count += r.accuracy;
        if (r.regression_reduction) {
            ++row.regression_defined;
            regression_sum[r.agent] += *r.regression_reduction;
        }
    }
    const std::set<std::string>* universe = nullptr;
    for (const auto& [agent, bugs] : universes) {
        if (!universe) {
            universe = &bugs;
        } else if (bugs != *universe) {
            throw AggregationError("agents do not share one bug universe");
        }
    }

    std::vector<AggregateRow> out;
    out.reserve(rows.size());
    for (auto& [agent, row] : rows) {
        row.regression_mean =
            row.regression_defined ? regression_sum[agent] / row.regression_defined : 0.0;
        out.push_back(row);
    }
    // ascending accuracy; agent name breaks ties so the order is total
    std::sort(out.begin(), out.end(), [](const AggregateRow& a, const AggregateRow& b) {
        if (a.accuracy_count != b.accuracy_count) return a.accuracy_count < b.accuracy_count;
        return a.agent < b.agent;
    });
    return out;
}

std::vector<OverlapSet> overlap_sets(
    const std::map<std::string, std::set<std::string>>& fixed,
    const std::map<std::string, metrics::ProximityClass>& proximity) {
    // exact membership: each bug maps to the set of exactly the agents
    // that fixed it
    std::map<std::set<std::string>, OverlapSet> by_membership;
    std::map<std::string, std::set<std::string>> agents_of;
    for (const auto& [agent, bugs] : fixed)
        for (const auto& bug : bugs) agents_of[bug].insert(agent);
    for (const auto& [bug, agents] : agents_of) {
        OverlapSet& s = by_membership[agents];
        s.membership = agents;
        s.bug_ids.insert(bug);
        if (auto it = proximity.find(bug); it != proximity.end()) ++s.per_proximity[it->second];
    }
    std::vector<OverlapSet> out;
    out.reserve(by_membership.size());
    for (auto& [membership, s] : by_membership) out.push_back(std::move(s));
    return out;
}

namespace {

std::optional<double> median_lower(std::vector<double> values) {
    if (values.empty()) return std::nullopt;
    std::sort(values.begin(), values.end());
    return values[(values.size() - 1) / 2];  // lower interpolation for even counts
}

ClassStats class_stats(const std::vector<const metrics::MetricReport*>& reports) {
    ClassStats s;
    s.count = reports.size();
    if (reports.empty()) return s;

    std::vector<double> div;
    double runtime_sum = 0.0, token_sum = 0.0, div_sum = 0.0, div_max = 0.0;
    std::map<traj::Category, std::uint64_t> counts;
    std::uint64_t total_calls = 0;
    for (const auto* r : reports) {
        div.push_back(r->divergence);
        div_sum += r->divergence;
        div_max = std::max(div_max, r->divergence);
        runtime_sum += r->runtime_s;
        token_sum += static_cast<double>(r->total_tokens);
        for (const auto& [cat, n] : r->tool_counts) {
            counts[cat] += n;
            total_calls += n;
        }
    }
    s.divergence_median = median_lower(div);
    s.divergence_mean = div_sum / static_cast<double>(reports.size());
    s.divergence_max = div_max;
    s.runtime_mean = runtime_sum / static_cast<double>(reports.size());
    s.tokens_mean = token_sum / static_cast<double>(reports.size());
    if (total_calls)
        for (const auto& [cat, n] : counts)
            s.tool_shares[cat] = static_cast<double>(n) / static_cast<double>(total_calls);
    return s;
}

}  // namespace

OutcomeSplit outcome_split(const std::vector<metrics::MetricReport>& reports) {
    std::vector<const metrics::MetricReport*> pass, fail;
    for (const auto& r : reports) (r.accuracy ? pass : fail).push_back(&r);
    OutcomeSplit split;
    split.pass = class_stats(pass);
    split.fail = class_stats(fail);
    return split;
}

std::optional<double> correlation(const std::vector<double>& x,
                                  const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) return std::nullopt;
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

// ---------------------------------------------------------------------------
// Run-directory pipeline
// ---------------------------------------------------------------------------

namespace {

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw AggregationError("cannot open " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void load_proximity_csv(const fs::path& path,
                        std::map<std::string, metrics::ProximityClass>& out) {
    std::ifstream in(path);
    if (!in) throw AggregationError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "bug_id,proximity")
        throw AggregationError("invalid proximity.csv header in " + path.string());
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw AggregationError("malformed proximity.csv row at line " +
                                   std::to_string(lineno));
        std::string bug = line.substr(0, comma);
        std::string name = line.substr(comma + 1);
        auto cls = metrics::proximity_from_string(name);
        if (!cls)
            throw AggregationError("unknown proximity class '" + name + "' at line " +
                                   std::to_string(lineno));
        out[bug] = *cls;
    }
}

}  // namespace

RunData load_run(const fs::path& run_dir, const traj::CategoryTable& table,
                 std::ostream* warnings) {
    if (!fs::is_directory(run_dir))
        throw AggregationError("run directory not found: " + run_dir.string());
    RunData run;

    fs::path gt_dir = run_dir / "ground_truth";
    if (fs::is_directory(gt_dir)) {
        std::vector<fs::path> diffs;
        for (const auto& e : fs::directory_iterator(gt_dir))
            if (e.is_regular_file() && e.path().extension() == ".diff")
                diffs.push_back(e.path());
        std::sort(diffs.begin(), diffs.end());
        for (const auto& p : diffs) {
            std::string bug = p.stem().string();
            run.ground_truth.emplace(bug, patch::make_ground_truth(bug, read_text(p)));
        }
    }

    if (fs::path prox = run_dir / "proximity.csv"; fs::is_regular_file(prox))
        load_proximity_csv(prox, run.proximity);

    std::vector<std::string> agents;
    for (const auto& e : fs::directory_iterator(run_dir)) {
        if (!e.is_directory()) continue;
        std::string name = e.path().filename().string();
        if (name == "ground_truth" || name.starts_with(".")) continue;
        agents.push_back(name);
    }
    std::sort(agents.begin(), agents.end());

    for (const auto& agent : agents) {
        std::vector<std::string> bugs;
        for (const auto& e : fs::directory_iterator(run_dir / agent))
            if (e.is_directory()) bugs.push_back(e.path().filename().string());
        std::sort(bugs.begin(), bugs.end());
        for (const auto& bug : bugs) {
            fs::path dir = run_dir / agent / bug;
            BugRecord rec;
            rec.agent = agent;
            rec.bug_id = bug;
            rec.trajectory =
                traj::ingest_trajectory_file((dir / "trajectory.log").string(), table, warnings);
            rec.patch = patch::parse_patch(read_text(dir / "patch.diff"));
            rec.patch.bug_id = bug;
            rec.patch.agent = agent;
            rec.outcomes = outcomes::load_test_outcomes((dir / "tests_before.csv").string(),
                                                        (dir / "tests_after.csv").string());
            rec.outcomes.bug_id = bug;
            rec.outcomes.agent = agent;
            run.records.push_back(std::move(rec));
        }
    }
    return run;
}

std::vector<metrics::MetricReport> compute_reports(const RunData& run,
                                                   const config::ToolkitConfig& cfg) {
    std::vector<metrics::MetricReport> out;
    out.reserve(run.records.size());
    for (const auto& rec : run.records) {
        auto gt_it = run.ground_truth.find(rec.bug_id);
        if (gt_it == run.ground_truth.end())
            throw AggregationError("missing ground truth for bug " + rec.bug_id);
        const patch::GroundTruth& gt = gt_it->second;

        metrics::MetricReport r;
        r.bug_id = rec.bug_id;
        r.agent = rec.agent;
        r.localization = metrics::localization_success(gt, rec.patch);
        r.compilation = rec.outcomes.compiled ? 1 : 0;
        r.accuracy = metrics::repair_accuracy(rec.outcomes, rec.patch);
        r.regression_reduction = metrics::regression_reduction(rec.outcomes);
        r.divergence = rec.patch.hunks.size() >= 2
                           ? metrics::hunk_divergence(rec.patch.hunks, cfg.weights)
                           : 0.0;
        if (auto it = run.proximity.find(rec.bug_id); it != run.proximity.end())
            r.proximity = it->second;
        else
            r.proximity =
                metrics::classify_proximity(gt.hunks, cfg.package_fragment_threshold);
        r.total_tokens = metrics::token_totals(rec.trajectory.tokens).total;
        r.runtime_s = metrics::runtime_seconds(rec.trajectory);
        r.tool_utilization = metrics::tool_utilization(rec.trajectory);
        r.tool_counts = metrics::tool_counts(rec.trajectory);
        out.push_back(std::move(r));
    }
    return out;
}

RunArtifacts build_artifacts(const RunData& run, const config::ToolkitConfig& cfg) {
    RunArtifacts art;
    art.reports = compute_reports(run, cfg);
    art.aggregate_rows = aggregate(art.reports);

    std::map<std::string, std::set<std::string>> fixed;
    std::map<std::string, metrics::ProximityClass> proximity = run.proximity;
    for (const auto& r : art.reports) {
        fixed[r.agent];  // agents with no fixes still appear as keys
        if (r.accuracy) fixed[r.agent].insert(r.bug_id);
        proximity.emplace(r.bug_id, r.proximity);
    }
    art.overlaps = overlap_sets(fixed, proximity);

    std::map<std::string, std::vector<metrics::MetricReport>> by_agent;
    for (const auto& r : art.reports) by_agent[r.agent].push_back(r);
    art.splits_by_agent["all"] = outcome_split(art.reports);
    for (const auto& [agent, reports] : by_agent)
        art.splits_by_agent[agent] = outcome_split(reports);

    std::map<std::string, std::vector<sequences::LabeledSequence>> seq_by_agent;
    for (const auto& rec : run.records) {
        sequences::LabeledSequence s;
        s.categories = sequences::categories_of(rec.trajectory);
        for (const auto& r : art.reports)
            if (r.agent == rec.agent && r.bug_id == rec.bug_id) s.pass = r.accuracy != 0;
        seq_by_agent[rec.agent].push_back(std::move(s));
    }
    for (const auto& [agent, seqs] : seq_by_agent)
        art.sequences_by_agent[agent] =
            sequences::mine_sequences(seqs, cfg.window, cfg.top_n, /*split_by_outcome=*/true);

    return art;
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

namespace {

json shares_to_json(const std::map<traj::Category, double>& shares) {
    json obj = json::object();
    for (const auto& [cat, share] : shares) obj[traj::to_string(cat)] = share;
    return obj;
}

json counts_to_json(const std::map<traj::Category, std::uint64_t>& counts) {
    json obj = json::object();
    for (const auto& [cat, n] : counts) obj[traj::to_string(cat)] = n;
    return obj;
}

json stats_to_json(const ClassStats& s) {
    auto opt = [](const std::optional<double>& v) {
        return v ? json(*v) : json(nullptr);
    };
    return json{{"count", s.count},
                {"divergence_median", opt(s.divergence_median)},
                {"divergence_mean", opt(s.divergence_mean)},
                {"divergence_max", opt(s.divergence_max)},
                {"runtime_mean", opt(s.runtime_mean)},
                {"tokens_mean", opt(s.tokens_mean)},
                {"tool_shares", shares_to_json(s.tool_shares)}};
}

json report_to_json(const metrics::MetricReport& r) {
    return json{{"bug_id", r.bug_id},
                {"agent", r.agent},
                {"localization", r.localization},
                {"compilation", r.compilation},
                {"accuracy", r.accuracy},
                {"regression_reduction",
                 r.regression_reduction ? json(*r.regression_reduction) : json(nullptr)},
                {"divergence", r.divergence},
                {"proximity", metrics::to_string(r.proximity)},
                {"total_tokens", r.total_tokens},
                {"runtime_s", r.runtime_s},
                {"tool_utilization", shares_to_json(r.tool_utilization)},
                {"tool_counts", counts_to_json(r.tool_counts)}};
}

bool write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << content;
    return static_cast<bool>(out);
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

int emit(const RunArtifacts& artifacts, const std::string& format,
         const fs::path& out_dir) {
    if (format != "csv" && format != "json") return 2;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) return 1;

    std::ostringstream agg;
    agg << "agent,total_bugs,localization_count,localization_pct,compilation_count,"
           "compilation_pct,regression_mean,regression_defined,accuracy_count,accuracy_pct\n";
    for (const auto& row : artifacts.aggregate_rows) {
        char mean_buf[32];
        std::snprintf(mean_buf, sizeof(mean_buf), "%.4f", row.regression_mean);
        agg << row.agent << ',' << row.total_bugs << ',' << row.localization_count << ','
            << format_percent(row.localization_count, row.total_bugs) << ','
            << row.compilation_count << ','
            << format_percent(row.compilation_count, row.total_bugs) << ',' << mean_buf << ','
            << row.regression_defined << ',' << row.accuracy_count << ','
            << format_percent(row.accuracy_count, row.total_bugs) << '\n';
    }
    if (!write_file(out_dir / "aggregate.csv", agg.str())) return 1;

    std::vector<metrics::MetricReport> sorted = artifacts.reports;
    std::sort(sorted.begin(), sorted.end(),
              [](const metrics::MetricReport& a, const metrics::MetricReport& b) {
                  return std::tie(a.agent, a.bug_id) < std::tie(b.agent, b.bug_id);
              });
    json per_bug = json::array();
    for (const auto& r : sorted) per_bug.push_back(report_to_json(r));
    if (!write_file(out_dir / "per_bug.json", dump(per_bug))) return 1;

    if (format == "csv") {
        std::ostringstream csv;
        csv << "agent,bug_id,localization,compilation,accuracy,regression_reduction,"
               "divergence,proximity,total_tokens,runtime_s\n";
        for (const auto& r : sorted) {
            csv << r.agent << ',' << r.bug_id << ',' << r.localization << ',' << r.compilation
                << ',' << r.accuracy << ','
                << (r.regression_reduction ? std::to_string(*r.regression_reduction) : "")
                << ',' << json(r.divergence).dump() << ',' << metrics::to_string(r.proximity)
                << ',' << r.total_tokens << ',' << json(r.runtime_s).dump() << '\n';
        }
        if (!write_file(out_dir / "per_bug.csv", csv.str())) return 1;
    }

    json overlaps = json::array();
    for (const auto& s : artifacts.overlaps) {
        json prox = json::object();
        for (const auto& [cls, n] : s.per_proximity) prox[metrics::to_string(cls)] = n;
        overlaps.push_back(json{{"membership", s.membership},
                                {"bug_ids", s.bug_ids},
                                {"per_proximity", prox}});
    }
    if (!write_file(out_dir / "overlaps.json", dump(overlaps))) return 1;

    json splits = json::object();
    splits["median_convention"] = "lower interpolation for even counts";
    for (const auto& [key, split] : artifacts.splits_by_agent)
        splits[key] = json{{"pass", stats_to_json(split.pass)},
                           {"fail", stats_to_json(split.fail)}};
    if (!write_file(out_dir / "splits.json", dump(splits))) return 1;

    json seqs = json::object();
    for (const auto& [agent, classes] : artifacts.sequences_by_agent) {
        json per_class = json::array();
        for (const auto& oc : classes) {
            json top = json::array();
            for (const auto& p : oc.top)
                top.push_back(json{{"window", sequences::window_label(p.window)},
                                   {"count", p.count},
                                   {"share", p.share}});
            per_class.push_back(json{{"outcome", oc.outcome},
                                     {"total_windows", oc.total_windows},
                                     {"top", top}});
        }
        seqs[agent] = per_class;
    }
    if (!write_file(out_dir / "sequences.json", dump(seqs))) return 1;

    return 0;
}

}  // namespace maple::report
