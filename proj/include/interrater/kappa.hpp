#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "interrater/ingest.hpp"

namespace interrater {

inline constexpr double kDefaultCiLevel = 0.95;

// Chance agreement within this distance of 1 is treated as degenerate
// (single-category data) rather than divided through.
inline constexpr double kDegenerateChanceTolerance = 1e-12;

// Pooled agreement statistics for an n-rater group over complete-case rows.
struct GroupAgreement {
    std::vector<std::vector<std::int64_t>> counts;       // N x k rating counts
    std::vector<std::vector<double>> per_subject_probs;  // N x k count fractions
    std::vector<double> per_subject;                     // per-subject agreement
    std::vector<double> category_probs;                  // pooled marginals
    std::vector<double> category_complements;            // 1 - marginal
    double mean_agreement = 0.0;                         // P_o
    double chance_agreement = 0.0;                       // P_e
    std::size_t subject_count = 0;                       // N
    std::size_t rater_count = 0;                         // n
    std::size_t category_count = 0;                      // k
};

// A kappa statistic with its large-sample variance and normal CI.
struct KappaEstimate {
    double kappa = 0.0;
    double variance = 0.0;
    double se = 0.0;
    double ci_level = kDefaultCiLevel;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t sample_size = 0;
};

// (observed - chance) / (1 - chance). Throws DegenerateMarginals when the
// chance agreement is within kDegenerateChanceTolerance of 1.
double kappa_from_rates(double observed, double chance);

// Inverse standard normal CDF (Wichura's PPND16 rational approximation).
double normal_quantile(double p);

// Symmetric normal-approximation interval kappa +/- z(level)*sqrt(variance).
std::pair<double, double> confidence_interval(double kappa, double variance,
                                              double level);

// Number of raters assigning each subject to each category. The matrix must
// be complete-case; every row of the result sums to the rater count.
std::vector<std::vector<std::int64_t>> counts_matrix(const RatingMatrix& m,
                                                     std::size_t category_count);

// Per-subject agreement: the fraction of ordered rater pairs that coincide,
// sum_j c_j*(c_j-1) / (n*(n-1)).
double subject_agreement(const std::vector<std::int64_t>& counts_row,
                         std::size_t rater_count);

// Full group pipeline over a complete-case matrix: counts, per-subject
// agreement, pooled marginals, mean and chance agreement.
GroupAgreement fleiss_pipeline(const RatingMatrix& m, std::size_t category_count);

// Group kappa with variance and CI attached. Throws DegenerateMarginals.
KappaEstimate fleiss_kappa(const GroupAgreement& ga,
                           double ci_level = kDefaultCiLevel);

// Large-sample variance of the group kappa, simplified closed form:
//   2*((1-P_e)^2 + 3*P_e - 2*sum_j p_j^3 - 1) / (N*n*(n-1)*(1-P_e)^2)
double fleiss_variance(const GroupAgreement& ga);

// Same variance computed from the marginal products p_j*q_j:
//   2*((sum_j p_j*q_j)^2 - sum_j p_j*q_j*(q_j-p_j))
//     / (N*n*(n-1)*(sum_j p_j*q_j)^2)
// Kept as an independent algebraic route; agrees with fleiss_variance to
// floating-point accuracy.
double fleiss_variance_product_form(const GroupAgreement& ga);

// Two-rater kappa for a pair projection, with variance from
// cohen_variance_fleiss and a CI attached. Throws DegenerateMarginals.
KappaEstimate cohen_kappa(const PairProjection& pp,
                          double ci_level = kDefaultCiLevel);

// Two-rater variance: pools both raters' marginals and evaluates the group
// variance with n = 2 and N = the pair overlap.
double cohen_variance_fleiss(const PairProjection& pp);

// The commonly quoted rough estimate p_o*(1-p_o) / (N*(1-p_e)^2). Not used
// by the reporting path; provided as an explicitly labeled alternative.
double cohen_variance_simplistic(const PairProjection& pp);

}  // namespace interrater
