#pragma once

#include <cstdint>
#include <vector>

#include "interrater/ingest.hpp"

namespace interrater {

enum class RaterModelKind {
    IndependentWithMarginals,  // every cell i.i.d. from the marginals
    PerfectCopy,               // rater 0 drawn from the marginals, others copy
    NoisyCopy,                 // copies re-drawn uniformly with flip_prob
};

struct RaterModel {
    RaterModelKind kind = RaterModelKind::IndependentWithMarginals;
    std::vector<double> marginals;  // length k, entries >= 0 summing to 1
    double flip_prob = 0.0;         // noisy-copy only, in [0, 1]
    std::uint64_t seed = 0;
};

// Deterministic synthetic rating matrix, identical across platforms for a
// fixed (model, N, n, k).
//
// Pinned generation scheme: a std::mt19937_64 engine seeded with model.seed;
// each uniform draw consumes exactly one engine output x, mapped to [0, 1)
// as (x >> 11) * 2^-53. Independent: cells visited row-major (subject-major,
// rater ascending), one categorical draw per cell by inverse-CDF walk over
// the cumulative marginals. Perfect-copy: one draw per subject for rater 0;
// the copies consume none. Noisy-copy: first the full rater-0 column (same
// draws as perfect-copy), then the copy cells row-major, each consuming one
// flip draw (flip iff u < flip_prob) and, only when flipping, one uniform
// category draw (floor(u*k), which may re-draw the copied value).
//
// Throws ConfigError on invalid model parameters or dimensions.
RatingMatrix generate(const RaterModel& model, std::size_t subject_count,
                      std::size_t rater_count, std::size_t category_count);

}  // namespace interrater
