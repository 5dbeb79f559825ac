#pragma once

#include <optional>
#include <string>
#include <vector>

#include "interrater/kappa.hpp"

namespace interrater {

enum class PairUndefinedReason {
    None,
    Diagonal,
    EmptyOverlap,
    DegenerateMarginals,
};

// Stable reason strings: "diagonal", "empty-overlap", "degenerate-marginals".
const char* to_string(PairUndefinedReason reason);

// One cell of the pair table: an estimate, or the reason there is none.
struct PairCell {
    std::optional<KappaEstimate> estimate;
    PairUndefinedReason reason = PairUndefinedReason::None;

    bool defined() const { return estimate.has_value(); }
};

// n x n matrix of pairwise kappa results. Symmetric by construction; the
// diagonal is always undefined.
struct PairKappaTable {
    std::size_t rater_count = 0;
    std::vector<PairCell> cells;  // row-major rater_count * rater_count

    PairCell& at(std::size_t x, std::size_t y) {
        return cells[x * rater_count + y];
    }
    const PairCell& at(std::size_t x, std::size_t y) const {
        return cells[x * rater_count + y];
    }
};

// Mean of a user's defined pair kappas with error-propagated SE:
// se = sqrt(sum of pair se^2) / pair_count.
struct AveragedKappa {
    double kappa = 0.0;
    double se = 0.0;
    double ci_level = kDefaultCiLevel;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t pair_count = 0;  // defined pairs entering the mean
};

struct UserPairResult {
    std::size_t partner = 0;
    PairCell cell;
};

struct UserSummary {
    std::size_t user = 0;
    std::size_t rated_count = 0;              // subjects this user rated
    std::vector<double> category_probs;       // over rated subjects; zeros if none
    std::vector<UserPairResult> pairs;        // n-1 entries, partner ascending
    std::optional<AveragedKappa> average;     // absent when no pair is defined
};

struct GroupSummary {
    std::vector<double> category_probs;            // pooled marginals
    double mean_agreement = 0.0;                   // mean per-subject agreement
    std::optional<KappaEstimate> fleiss;           // absent when degenerate
    PairUndefinedReason fleiss_reason = PairUndefinedReason::None;
    std::size_t rows_used = 0;                     // complete rows
    std::size_t dropped_rows = 0;                  // rows_used + dropped = N
    std::optional<double> mean_permuted_kappa;     // mean over defined pairs
};

// Computes every unordered pair's kappa and mirrors it into both cells.
// Per-pair failures become undefined cells, never exceptions.
PairKappaTable build_pair_table(const RatingMatrix& m,
                                double ci_level = kDefaultCiLevel);

// Per-user view: category probabilities over the user's rated subjects, the
// user's row of pair results, and the average of the defined kappas.
UserSummary summarize_user(const PairKappaTable& table, const RatingMatrix& m,
                           std::size_t user, double ci_level = kDefaultCiLevel);

// Group view: complete-case group pipeline plus the mean of all defined pair
// kappas for side-by-side comparison with the group kappa.
// Throws EmptyOverlap when no complete rows exist.
GroupSummary summarize_group(const RatingMatrix& m, const PairKappaTable& table,
                             double ci_level = kDefaultCiLevel);
GroupSummary summarize_group(const RatingMatrix& m,
                             double ci_level = kDefaultCiLevel);

}  // namespace interrater
