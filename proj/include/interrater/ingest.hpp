#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "interrater/error.hpp"

namespace interrater {

using CategoryIndex = std::int32_t;

// A rating cell: a category index, or empty for an abstention.
using Rating = std::optional<CategoryIndex>;

// Ordered list of category labels; file order defines the category index.
struct CategorySet {
    std::vector<std::string> labels;

    std::size_t size() const { return labels.size(); }

    // Index of the category named by `token`, or empty if it names none.
    std::optional<CategoryIndex> index_of(std::string_view token) const;
};

// N subjects x n raters grid of optional category assignments.
struct RatingMatrix {
    std::size_t subject_count = 0;  // N
    std::size_t rater_count = 0;    // n
    std::size_t category_count = 0; // k, from the category set the cells index
    std::vector<Rating> cells;      // row-major, subject_count * rater_count

    Rating& at(std::size_t subject, std::size_t rater) {
        return cells[subject * rater_count + rater];
    }
    const Rating& at(std::size_t subject, std::size_t rater) const {
        return cells[subject * rater_count + rater];
    }
};

// Complete-case view of one rater pair: only subjects both raters rated.
struct PairProjection {
    std::size_t rater_x = 0;
    std::size_t rater_y = 0;
    std::vector<std::array<CategoryIndex, 2>> rows;  // length N2

    // Per-category rating counts and probabilities for each rater,
    // taken over the N2 shared rows.
    std::vector<std::int64_t> counts_x;
    std::vector<std::int64_t> counts_y;
    std::vector<double> probs_x;
    std::vector<double> probs_y;

    double observed_agreement = 0.0;  // fraction of rows where both agree
    double chance_agreement = 0.0;    // sum over categories of probs_x*probs_y

    std::size_t overlap() const { return rows.size(); }  // N2
};

// One trimmed label per non-blank line, file order preserved.
// Throws ConfigError on duplicates or fewer than two labels.
CategorySet parse_categories(std::string_view text);

// One subject per non-blank line, tokens split on runs of whitespace. The
// first data row fixes the rater count; rows with a different token count
// are a ParseError. Tokens that match no category become abstentions.
RatingMatrix parse_ratings(std::string_view text, const CategorySet& cats);

// Restrict the matrix to the rows where both raters assigned a category,
// and derive the pair's marginals and agreement rates.
// Throws EmptyOverlap when the raters share no rated subject.
PairProjection project_pair(const RatingMatrix& m, std::size_t rater_x,
                            std::size_t rater_y);

// Rows where every rater assigned a category, order preserved.
// Throws EmptyOverlap when no such row exists.
RatingMatrix complete_case_rows(const RatingMatrix& m);

}  // namespace interrater
