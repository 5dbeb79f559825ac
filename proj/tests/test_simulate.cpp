#include <doctest.h>

#include <cmath>

#include "interrater/kappa.hpp"
#include "interrater/simulate.hpp"
#include "testutil.hpp"

using namespace interrater;

TEST_CASE("generate is deterministic for a fixed seed") {
    RaterModel model;
    model.marginals = {0.5, 0.3, 0.2};
    model.seed = 1234;
    const RatingMatrix a = generate(model, 50, 4, 3);
    const RatingMatrix b = generate(model, 50, 4, 3);
    CHECK(a.cells == b.cells);

    model.seed = 1235;
    const RatingMatrix c = generate(model, 50, 4, 3);
    CHECK(a.cells != c.cells);
}

TEST_CASE("generate validates its model") {
    RaterModel model;
    model.marginals = {0.6, 0.6};
    CHECK_THROWS_AS(generate(model, 10, 2, 2), ConfigError);
    model.marginals = {0.5, 0.5};
    CHECK_THROWS_AS(generate(model, 10, 2, 3), ConfigError);  // k mismatch
    CHECK_THROWS_AS(generate(model, 0, 2, 2), ConfigError);
    CHECK_THROWS_AS(generate(model, 10, 1, 2), ConfigError);
    model.flip_prob = 1.5;
    CHECK_THROWS_AS(generate(model, 10, 2, 2), ConfigError);
    model.flip_prob = 0.0;
    model.marginals = {0.5, -0.5, 1.0};
    CHECK_THROWS_AS(generate(model, 10, 2, 3), ConfigError);
}

TEST_CASE("perfect-copy yields identical columns and unit kappas") {
    RaterModel model;
    model.kind = RaterModelKind::PerfectCopy;
    model.marginals = {0.4, 0.3, 0.3};
    model.seed = 77;
    const RatingMatrix m = generate(model, 60, 4, 3);
    for (std::size_t i = 0; i < m.subject_count; ++i) {
        for (std::size_t u = 1; u < m.rater_count; ++u) {
            CHECK(m.at(i, u) == m.at(i, 0));
        }
    }
    for (std::size_t x = 0; x < 4; ++x) {
        for (std::size_t y = x + 1; y < 4; ++y) {
            CHECK(cohen_kappa(project_pair(m, x, y)).kappa == 1.0);
        }
    }
}

TEST_CASE("noisy-copy with zero flip probability equals perfect-copy") {
    RaterModel noisy;
    noisy.kind = RaterModelKind::NoisyCopy;
    noisy.marginals = {0.7, 0.3};
    noisy.flip_prob = 0.0;
    noisy.seed = 99;
    RaterModel copy = noisy;
    copy.kind = RaterModelKind::PerfectCopy;
    CHECK(generate(noisy, 40, 3, 2).cells == generate(copy, 40, 3, 2).cells);
}

TEST_CASE("noisy-copy disagreement grows with the flip probability") {
    RaterModel model;
    model.kind = RaterModelKind::NoisyCopy;
    model.marginals = {0.5, 0.5};
    model.seed = 4;

    const auto disagreement = [](const RatingMatrix& m) {
        std::size_t diff = 0;
        for (std::size_t i = 0; i < m.subject_count; ++i) {
            if (m.at(i, 1) != m.at(i, 0)) ++diff;
        }
        return static_cast<double>(diff) / static_cast<double>(m.subject_count);
    };

    model.flip_prob = 0.1;
    const double low = disagreement(generate(model, 2000, 2, 2));
    model.flip_prob = 0.8;
    const double high = disagreement(generate(model, 2000, 2, 2));
    CHECK(low < high);
    // Flips re-draw uniformly over both categories, so the observable
    // disagreement rate is flip_prob/2.
    CHECK(std::fabs(low - 0.05) < 0.02);
    CHECK(std::fabs(high - 0.40) < 0.04);
}

TEST_CASE("independent marginals converge to the model") {
    // 3-sigma binomial bound per category; expected to hold for nearly
    // every seed at N*n = 10000.
    const std::vector<double> marginals = {0.6, 0.3, 0.1};
    int seeds_ok = 0;
    const int trials = 40;
    for (int seed = 0; seed < trials; ++seed) {
        RaterModel model;
        model.marginals = marginals;
        model.seed = static_cast<std::uint64_t>(seed) + 500;
        const RatingMatrix m = generate(model, 2500, 4, 3);
        std::vector<double> freq(3, 0.0);
        for (const Rating& cell : m.cells) {
            freq[static_cast<std::size_t>(*cell)] += 1.0;
        }
        bool all_inside = true;
        const double draws = 10000.0;
        for (std::size_t j = 0; j < 3; ++j) {
            freq[j] /= draws;
            const double bound =
                3.0 * std::sqrt(marginals[j] * (1.0 - marginals[j]) / draws);
            if (std::fabs(freq[j] - marginals[j]) > bound) all_inside = false;
        }
        if (all_inside) ++seeds_ok;
    }
    CHECK(seeds_ok >= 38);  // 95% of 40
}

TEST_CASE("two independent raters passing 90% agree about 82% of the time") {
    double total = 0.0;
    const int trials = 200;
    for (int seed = 0; seed < trials; ++seed) {
        RaterModel model;
        model.marginals = {0.9, 0.1};
        model.seed = static_cast<std::uint64_t>(seed) + 9000;
        const RatingMatrix m = generate(model, 1000, 2, 2);
        total += project_pair(m, 0, 1).observed_agreement;
    }
    CHECK(std::fabs(total / trials - 0.82) <= 0.01);
}
