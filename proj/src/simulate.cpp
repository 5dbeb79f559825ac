#include "interrater/simulate.hpp"

#include <cmath>
#include <random>
#include <string>

namespace interrater {

namespace {

constexpr double kMarginalSumTolerance = 1e-12;

// One engine output mapped to [0, 1); the only uniform source used here, so
// generated matrices are identical wherever mt19937_64 is (by the standard,
// everywhere).
double next_uniform(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

CategoryIndex draw_categorical(std::mt19937_64& engine,
                               const std::vector<double>& marginals) {
    const double u = next_uniform(engine);
    double cumulative = 0.0;
    for (std::size_t j = 0; j + 1 < marginals.size(); ++j) {
        cumulative += marginals[j];
        if (u < cumulative) return static_cast<CategoryIndex>(j);
    }
    return static_cast<CategoryIndex>(marginals.size() - 1);
}

CategoryIndex draw_uniform_category(std::mt19937_64& engine, std::size_t k) {
    const double u = next_uniform(engine);
    const auto j = static_cast<std::size_t>(u * static_cast<double>(k));
    return static_cast<CategoryIndex>(std::min(j, k - 1));
}

void validate(const RaterModel& model, std::size_t subject_count,
              std::size_t rater_count, std::size_t category_count) {
    if (subject_count < 1 || rater_count < 2 || category_count < 2) {
        throw ConfigError("generate: need at least 1 subject, 2 raters, 2 categories");
    }
    if (model.marginals.size() != category_count) {
        throw ConfigError("generate: marginals length " +
                          std::to_string(model.marginals.size()) +
                          " does not match category count " +
                          std::to_string(category_count));
    }
    double sum = 0.0;
    for (const double p : model.marginals) {
        if (p < 0.0) throw ConfigError("generate: negative marginal probability");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > kMarginalSumTolerance) {
        throw ConfigError("generate: marginals must sum to 1");
    }
    if (model.flip_prob < 0.0 || model.flip_prob > 1.0) {
        throw ConfigError("generate: flip probability must lie in [0, 1]");
    }
}

}  // namespace

RatingMatrix generate(const RaterModel& model, std::size_t subject_count,
                      std::size_t rater_count, std::size_t category_count) {
    validate(model, subject_count, rater_count, category_count);

    RatingMatrix m;
    m.subject_count = subject_count;
    m.rater_count = rater_count;
    m.category_count = category_count;
    m.cells.resize(subject_count * rater_count);

    std::mt19937_64 engine(model.seed);

    switch (model.kind) {
        case RaterModelKind::IndependentWithMarginals:
            for (std::size_t i = 0; i < subject_count; ++i) {
                for (std::size_t u = 0; u < rater_count; ++u) {
                    m.at(i, u) = draw_categorical(engine, model.marginals);
                }
            }
            break;

        case RaterModelKind::PerfectCopy:
            for (std::size_t i = 0; i < subject_count; ++i) {
                const CategoryIndex base = draw_categorical(engine, model.marginals);
                for (std::size_t u = 0; u < rater_count; ++u) m.at(i, u) = base;
            }
            break;

        case RaterModelKind::NoisyCopy:
            // Rater 0 first, consuming the same draws perfect-copy would, so
            // flip_prob = 0 reproduces perfect-copy output for a given seed.
            for (std::size_t i = 0; i < subject_count; ++i) {
                m.at(i, 0) = draw_categorical(engine, model.marginals);
            }
            for (std::size_t i = 0; i < subject_count; ++i) {
                for (std::size_t u = 1; u < rater_count; ++u) {
                    const bool flip = next_uniform(engine) < model.flip_prob;
                    m.at(i, u) = flip ? draw_uniform_category(engine, category_count)
                                      : m.at(i, 0);
                }
            }
            break;
    }
    return m;
}

}  // namespace interrater
