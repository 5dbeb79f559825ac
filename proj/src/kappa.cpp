#include "interrater/kappa.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>
#include <string>

namespace interrater {

namespace {

// Shared core of the group-kappa variance, simplified closed form over the
// pooled marginals. Callers have already rejected degenerate marginals.
double variance_simplified(const std::vector<double>& probs,
                           double chance_agreement, std::size_t subject_count,
                           std::size_t rater_count) {
    double cubes = 0.0;
    for (const double p : probs) cubes += p * p * p;
    const double one_minus_pe = 1.0 - chance_agreement;
    const double inner =
        one_minus_pe * one_minus_pe + 3.0 * chance_agreement - 2.0 * cubes - 1.0;
    const double denom = static_cast<double>(subject_count) *
                         static_cast<double>(rater_count) *
                         static_cast<double>(rater_count - 1) * one_minus_pe *
                         one_minus_pe;
    return 2.0 * inner / denom;
}

void require_nondegenerate(double chance_agreement) {
    if (chance_agreement >= 1.0 - kDegenerateChanceTolerance) {
        throw DegenerateMarginals(
            "chance agreement is 1: single-category data, kappa undefined");
    }
}

// Rational-approximation segments of Wichura's PPND16 (Applied Statistics
// algorithm AS 241), accurate to ~1e-16 over (0, 1).
double ppnd16(double p) {
    static constexpr double a[8] = {
        3.3871328727963666080e+0, 1.3314166789178437745e+2,
        1.9715909503065514427e+3, 1.3731693765509461125e+4,
        4.5921953931549871457e+4, 6.7265770927008700853e+4,
        3.3430575583588128105e+4, 2.5090809287301226727e+3};
    static constexpr double b[8] = {
        1.0,                      4.2313330701600911252e+1,
        6.8718700749205790830e+2, 5.3941960214247511077e+3,
        2.1213794301586595867e+4, 3.9307895800092710610e+4,
        2.8729085735721942674e+4, 5.2264952788528545610e+3};
    static constexpr double c[8] = {
        1.42343711074968357734e+0, 4.63033784615654529590e+0,
        5.76949722146069140550e+0, 3.64784832476320460504e+0,
        1.27045825245236838258e+0, 2.41780725177450611770e-1,
        2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static constexpr double d[8] = {
        1.0,                       2.05319162663775882187e+0,
        1.67638483018380384940e+0, 6.89767334985100004550e-1,
        1.48103976427480074590e-1, 1.51986665636164571966e-2,
        5.47593808499534494600e-4, 1.05075007164441684324e-9};
    static constexpr double e[8] = {
        6.65790464350110377720e+0, 5.46378491116411436990e+0,
        1.78482653991729133580e+0, 2.96560571828504891230e-1,
        2.65321895265761230930e-2, 1.24266094738807843860e-3,
        2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static constexpr double f[8] = {
        1.0,                       5.99832206555887937690e-1,
        1.36929880922735805310e-1, 1.48753612908506148525e-2,
        7.86869131145613259100e-4, 1.84631831751005468180e-5,
        1.42151175831644588870e-7, 2.04426310338993978564e-15};

    const auto poly = [](const double (&coef)[8], double x) {
        double r = coef[7];
        for (int i = 6; i >= 0; --i) r = r * x + coef[i];
        return r;
    };

    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * poly(a, r) / poly(b, r);
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = poly(c, r) / poly(d, r);
    } else {
        r -= 5.0;
        value = poly(e, r) / poly(f, r);
    }
    return (q < 0.0) ? -value : value;
}

}  // namespace

double kappa_from_rates(double observed, double chance) {
    require_nondegenerate(chance);
    return (observed - chance) / (1.0 - chance);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");
    }
    return ppnd16(p);
}

std::pair<double, double> confidence_interval(double kappa, double variance,
                                              double level) {
    if (variance < 0.0) {
        throw std::invalid_argument("confidence_interval: negative variance");
    }
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("confidence_interval: level must lie in (0, 1)");
    }
    const double z = normal_quantile(0.5 + level / 2.0);
    const double half_width = z * std::sqrt(variance);
    return {kappa - half_width, kappa + half_width};
}

std::vector<std::vector<std::int64_t>> counts_matrix(const RatingMatrix& m,
                                                     std::size_t category_count) {
    std::vector<std::vector<std::int64_t>> counts(
        m.subject_count, std::vector<std::int64_t>(category_count, 0));
    for (std::size_t i = 0; i < m.subject_count; ++i) {
        for (std::size_t u = 0; u < m.rater_count; ++u) {
            const Rating& r = m.at(i, u);
            if (!r) {
                throw std::invalid_argument(
                    "counts_matrix: matrix must be complete-case");
            }
            const auto j = static_cast<std::size_t>(*r);
            if (j >= category_count) {
                throw std::invalid_argument(
                    "counts_matrix: category index out of range");
            }
            ++counts[i][j];
        }
    }
    return counts;
}

double subject_agreement(const std::vector<std::int64_t>& counts_row,
                         std::size_t rater_count) {
    if (rater_count < 2) {
        throw std::invalid_argument("subject_agreement: needs at least 2 raters");
    }
    std::int64_t pairs = 0;
    for (const std::int64_t c : counts_row) pairs += c * (c - 1);
    return static_cast<double>(pairs) /
           static_cast<double>(rater_count * (rater_count - 1));
}

GroupAgreement fleiss_pipeline(const RatingMatrix& m, std::size_t category_count) {
    if (m.subject_count < 1 || m.rater_count < 2) {
        throw std::invalid_argument(
            "fleiss_pipeline: needs at least 1 subject and 2 raters");
    }

    GroupAgreement ga;
    ga.subject_count = m.subject_count;
    ga.rater_count = m.rater_count;
    ga.category_count = category_count;
    ga.counts = counts_matrix(m, category_count);

    const auto N = static_cast<std::int64_t>(m.subject_count);
    const auto n = static_cast<std::int64_t>(m.rater_count);

    // Counts stay integral until the final divisions so the small published
    // worked examples come out exact.
    std::int64_t agreeing_pairs_total = 0;
    std::vector<std::int64_t> column_totals(category_count, 0);
    ga.per_subject.resize(m.subject_count);
    ga.per_subject_probs.assign(m.subject_count,
                                std::vector<double>(category_count, 0.0));
    for (std::size_t i = 0; i < m.subject_count; ++i) {
        std::int64_t agreeing_pairs = 0;
        for (std::size_t j = 0; j < category_count; ++j) {
            const std::int64_t c = ga.counts[i][j];
            agreeing_pairs += c * (c - 1);
            column_totals[j] += c;
            ga.per_subject_probs[i][j] =
                static_cast<double>(c) / static_cast<double>(n);
        }
        ga.per_subject[i] = static_cast<double>(agreeing_pairs) /
                            static_cast<double>(n * (n - 1));
        agreeing_pairs_total += agreeing_pairs;
    }

    ga.mean_agreement = static_cast<double>(agreeing_pairs_total) /
                        static_cast<double>(N * n * (n - 1));

    ga.category_probs.resize(category_count);
    ga.category_complements.resize(category_count);
    double chance = 0.0;
    for (std::size_t j = 0; j < category_count; ++j) {
        ga.category_probs[j] =
            static_cast<double>(column_totals[j]) / static_cast<double>(N * n);
        ga.category_complements[j] = 1.0 - ga.category_probs[j];
        chance += ga.category_probs[j] * ga.category_probs[j];
    }
    ga.chance_agreement = chance;
    return ga;
}

KappaEstimate fleiss_kappa(const GroupAgreement& ga, double ci_level) {
    KappaEstimate est;
    est.kappa = kappa_from_rates(ga.mean_agreement, ga.chance_agreement);
    est.variance = fleiss_variance(ga);
    est.se = std::sqrt(est.variance);
    est.ci_level = ci_level;
    std::tie(est.ci_low, est.ci_high) =
        confidence_interval(est.kappa, est.variance, ci_level);
    est.sample_size = ga.subject_count;
    return est;
}

double fleiss_variance(const GroupAgreement& ga) {
    require_nondegenerate(ga.chance_agreement);
    return variance_simplified(ga.category_probs, ga.chance_agreement,
                               ga.subject_count, ga.rater_count);
}

double fleiss_variance_product_form(const GroupAgreement& ga) {
    double sum_pq = 0.0;
    double sum_pq_qp = 0.0;
    for (std::size_t j = 0; j < ga.category_probs.size(); ++j) {
        const double p = ga.category_probs[j];
        const double q = ga.category_complements[j];
        sum_pq += p * q;
        sum_pq_qp += p * q * (q - p);
    }
    if (sum_pq <= kDegenerateChanceTolerance) {
        throw DegenerateMarginals(
            "chance agreement is 1: single-category data, kappa undefined");
    }
    const double denom = static_cast<double>(ga.subject_count) *
                         static_cast<double>(ga.rater_count) *
                         static_cast<double>(ga.rater_count - 1) * sum_pq * sum_pq;
    return 2.0 * (sum_pq * sum_pq - sum_pq_qp) / denom;
}

KappaEstimate cohen_kappa(const PairProjection& pp, double ci_level) {
    if (pp.overlap() < 1) {
        throw EmptyOverlap("cohen_kappa: pair projection has no rows");
    }
    KappaEstimate est;
    est.kappa = kappa_from_rates(pp.observed_agreement, pp.chance_agreement);
    est.variance = cohen_variance_fleiss(pp);
    est.se = std::sqrt(est.variance);
    est.ci_level = ci_level;
    std::tie(est.ci_low, est.ci_high) =
        confidence_interval(est.kappa, est.variance, ci_level);
    est.sample_size = pp.overlap();
    return est;
}

double cohen_variance_fleiss(const PairProjection& pp) {
    const std::size_t n2 = pp.overlap();
    if (n2 < 1) {
        throw EmptyOverlap("cohen_variance_fleiss: pair projection has no rows");
    }
    const std::size_t k = pp.counts_x.size();
    std::vector<double> pooled(k);
    double chance = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        pooled[j] = static_cast<double>(pp.counts_x[j] + pp.counts_y[j]) /
                    static_cast<double>(2 * n2);
        chance += pooled[j] * pooled[j];
    }
    require_nondegenerate(chance);
    return variance_simplified(pooled, chance, n2, 2);
}

double cohen_variance_simplistic(const PairProjection& pp) {
    require_nondegenerate(pp.chance_agreement);
    const double p_o = pp.observed_agreement;
    const double one_minus_pe = 1.0 - pp.chance_agreement;
    return p_o * (1.0 - p_o) /
           (static_cast<double>(pp.overlap()) * one_minus_pe * one_minus_pe);
}

}  // namespace interrater
