#pragma once

#include <string>
#include <vector>

#include "interrater/pair_permutation.hpp"

namespace interrater {

// Everything one analysis produced, plus provenance. Renderers only format
// these fields; they never recompute statistics.
struct AnalysisReport {
    GroupSummary group;
    std::vector<UserSummary> users;  // length rater_count
    PairKappaTable table;

    std::string data_file;
    std::string categories_file;
    CategorySet categories;
    std::size_t subject_count = 0;  // all parsed rows, incomplete included
    std::size_t rater_count = 0;
};

// Runs the pair table, user summaries and group summary over one matrix.
// Throws EmptyOverlap when the group has no complete rows.
AnalysisReport analyze(const RatingMatrix& m, const CategorySet& cats,
                       std::string data_file, std::string categories_file,
                       double ci_level = kDefaultCiLevel);

// Screen report: group block first, then one block per user. All numbers
// fixed to 4 decimal places; byte-identical for identical inputs.
std::string render_text(const AnalysisReport& r);

// JSON document carrying every field of the report. Undefined kappas are
// encoded as {"kappa": null, "reason": "<reason>"}. Schema is versioned by
// the top-level "format" field ("interrater-report/1").
std::string render_machine(const AnalysisReport& r);

}  // namespace interrater
