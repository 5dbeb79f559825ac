#include "interrater/pair_permutation.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

namespace interrater {

const char* to_string(PairUndefinedReason reason) {
    switch (reason) {
        case PairUndefinedReason::None: return "none";
        case PairUndefinedReason::Diagonal: return "diagonal";
        case PairUndefinedReason::EmptyOverlap: return "empty-overlap";
        case PairUndefinedReason::DegenerateMarginals: return "degenerate-marginals";
    }
    return "unknown";
}

PairKappaTable build_pair_table(const RatingMatrix& m, double ci_level) {
    if (m.rater_count < 2) {
        throw std::invalid_argument("build_pair_table: needs at least 2 raters");
    }
    PairKappaTable table;
    table.rater_count = m.rater_count;
    table.cells.resize(m.rater_count * m.rater_count);
    for (std::size_t x = 0; x < m.rater_count; ++x) {
        table.at(x, x).reason = PairUndefinedReason::Diagonal;
    }
    for (std::size_t x = 0; x < m.rater_count; ++x) {
        for (std::size_t y = x + 1; y < m.rater_count; ++y) {
            PairCell cell;
            try {
                const PairProjection pp = project_pair(m, x, y);
                cell.estimate = cohen_kappa(pp, ci_level);
            } catch (const EmptyOverlap&) {
                cell.reason = PairUndefinedReason::EmptyOverlap;
            } catch (const DegenerateMarginals&) {
                cell.reason = PairUndefinedReason::DegenerateMarginals;
            }
            table.at(x, y) = cell;
            table.at(y, x) = cell;
        }
    }
    return table;
}

UserSummary summarize_user(const PairKappaTable& table, const RatingMatrix& m,
                           std::size_t user, double ci_level) {
    if (user >= m.rater_count || table.rater_count != m.rater_count) {
        throw std::invalid_argument("summarize_user: bad user index or table");
    }

    UserSummary s;
    s.user = user;

    std::vector<std::int64_t> counts(m.category_count, 0);
    for (std::size_t i = 0; i < m.subject_count; ++i) {
        const Rating& r = m.at(i, user);
        if (!r) continue;
        ++counts[static_cast<std::size_t>(*r)];
        ++s.rated_count;
    }
    s.category_probs.assign(m.category_count, 0.0);
    if (s.rated_count > 0) {
        for (std::size_t j = 0; j < m.category_count; ++j) {
            s.category_probs[j] = static_cast<double>(counts[j]) /
                                  static_cast<double>(s.rated_count);
        }
    }

    double kappa_sum = 0.0;
    double se_squared_sum = 0.0;
    std::size_t defined = 0;
    for (std::size_t partner = 0; partner < m.rater_count; ++partner) {
        if (partner == user) continue;
        const PairCell& cell = table.at(user, partner);
        s.pairs.push_back({partner, cell});
        if (cell.defined()) {
            kappa_sum += cell.estimate->kappa;
            se_squared_sum += cell.estimate->se * cell.estimate->se;
            ++defined;
        }
    }

    if (defined > 0) {
        AveragedKappa avg;
        avg.pair_count = defined;
        avg.kappa = kappa_sum / static_cast<double>(defined);
        // Pair estimates treated as independent: the SE of their mean.
        avg.se = std::sqrt(se_squared_sum) / static_cast<double>(defined);
        avg.ci_level = ci_level;
        std::tie(avg.ci_low, avg.ci_high) =
            confidence_interval(avg.kappa, avg.se * avg.se, ci_level);
        s.average = avg;
    }
    return s;
}

GroupSummary summarize_group(const RatingMatrix& m, const PairKappaTable& table,
                             double ci_level) {
    GroupSummary g;

    const RatingMatrix complete = complete_case_rows(m);  // throws EmptyOverlap
    const GroupAgreement ga = fleiss_pipeline(complete, m.category_count);
    g.category_probs = ga.category_probs;
    g.mean_agreement = ga.mean_agreement;
    g.rows_used = complete.subject_count;
    g.dropped_rows = m.subject_count - complete.subject_count;
    try {
        g.fleiss = fleiss_kappa(ga, ci_level);
    } catch (const DegenerateMarginals&) {
        g.fleiss_reason = PairUndefinedReason::DegenerateMarginals;
    }

    double kappa_sum = 0.0;
    std::size_t defined = 0;
    for (std::size_t x = 0; x < table.rater_count; ++x) {
        for (std::size_t y = x + 1; y < table.rater_count; ++y) {
            const PairCell& cell = table.at(x, y);
            if (!cell.defined()) continue;
            kappa_sum += cell.estimate->kappa;
            ++defined;
        }
    }
    if (defined > 0) {
        g.mean_permuted_kappa = kappa_sum / static_cast<double>(defined);
    }
    return g;
}

GroupSummary summarize_group(const RatingMatrix& m, double ci_level) {
    return summarize_group(m, build_pair_table(m, ci_level), ci_level);
}

}  // namespace interrater
