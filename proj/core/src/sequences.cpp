#include "maple/sequences.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace maple::sequences {

std::vector<traj::Category> categories_of(const traj::Trajectory& t) {
    std::vector<traj::Category> cats;
    cats.reserve(t.actions.size());
    for (const auto& a : t.actions) cats.push_back(a.category);
    return cats;
}

std::string window_label(const std::vector<traj::Category>& window) {
    std::string out;
    for (size_t i = 0; i < window.size(); ++i) {
        if (i > 0) out += ">";
        out += traj::to_string(window[i]);
    }
    return out;
}

namespace {

OutcomeSequences mine_class(const std::string& outcome,
                            const std::vector<const std::vector<traj::Category>*>& seqs,
                            int w, int top_n) {
    std::map<std::vector<traj::Category>, std::uint64_t> counts;
    std::uint64_t total = 0;
    for (const auto* cats : seqs) {
        if (static_cast<int>(cats->size()) < w) continue;
        for (size_t i = 0; i + static_cast<size_t>(w) <= cats->size(); ++i) {
            std::vector<traj::Category> window(cats->begin() + static_cast<long>(i),
                                               cats->begin() + static_cast<long>(i) + w);
            ++counts[std::move(window)];
            ++total;
        }
    }

    std::vector<SequencePattern> all;
    all.reserve(counts.size());
    for (const auto& [window, count] : counts) {
        SequencePattern p;
        p.window = window;
        p.count = count;
        p.share = total ? static_cast<double>(count) / static_cast<double>(total) : 0.0;
        all.push_back(std::move(p));
    }
    // count descending, lexicographic window ascending on ties; the map
    // iteration order already yields lexicographic windows
    std::stable_sort(all.begin(), all.end(),
                     [](const SequencePattern& a, const SequencePattern& b) {
                         return a.count > b.count;
                     });
    if (static_cast<int>(all.size()) > top_n) all.resize(static_cast<size_t>(top_n));

    OutcomeSequences out;
    out.outcome = outcome;
    out.total_windows = total;
    out.top = std::move(all);
    return out;
}

}  // namespace

std::vector<OutcomeSequences> mine_sequences(const std::vector<LabeledSequence>& input,
                                             int w, int top_n, bool split_by_outcome) {
    if (w < 2) throw std::invalid_argument("window size must be at least 2");
    std::vector<OutcomeSequences> out;
    if (!split_by_outcome) {
        std::vector<const std::vector<traj::Category>*> all;
        for (const auto& s : input) all.push_back(&s.categories);
        out.push_back(mine_class("all", all, w, top_n));
        return out;
    }
    std::vector<const std::vector<traj::Category>*> pass, fail;
    for (const auto& s : input) (s.pass ? pass : fail).push_back(&s.categories);
    out.push_back(mine_class("pass", pass, w, top_n));
    out.push_back(mine_class("fail", fail, w, top_n));
    return out;
}

}  // namespace maple::sequences
