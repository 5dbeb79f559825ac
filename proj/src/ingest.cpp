#include "interrater/ingest.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace interrater {

namespace {

constexpr std::string_view kWhitespace = " \t\r\n\f\v";

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(kWhitespace);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(kWhitespace);
    return s.substr(first, last - first + 1);
}

// Calls fn(line, line_number) for each line, line numbers 1-based.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t line_number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto end = (nl == std::string_view::npos) ? text.size() : nl;
        ++line_number;
        fn(text.substr(pos, end - pos), line_number);
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
}

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
        const auto start = line.find_first_not_of(kWhitespace, pos);
        if (start == std::string_view::npos) break;
        auto end = line.find_first_of(kWhitespace, start);
        if (end == std::string_view::npos) end = line.size();
        tokens.push_back(line.substr(start, end - start));
        pos = end;
    }
    return tokens;
}

}  // namespace

std::optional<CategoryIndex> CategorySet::index_of(std::string_view token) const {
    for (std::size_t j = 0; j < labels.size(); ++j) {
        if (labels[j] == token) return static_cast<CategoryIndex>(j);
    }
    return std::nullopt;
}

CategorySet parse_categories(std::string_view text) {
    CategorySet cats;
    for_each_line(text, [&](std::string_view line, std::size_t line_number) {
        const auto label = trim(line);
        if (label.empty()) return;
        if (std::find(cats.labels.begin(), cats.labels.end(), label) !=
            cats.labels.end()) {
            throw ConfigError("duplicate category label '" + std::string(label) +
                              "' on line " + std::to_string(line_number));
        }
        cats.labels.emplace_back(label);
    });
    if (cats.labels.size() < 2) {
        throw ConfigError("categories file must list at least 2 distinct labels, got " +
                          std::to_string(cats.labels.size()));
    }
    return cats;
}

RatingMatrix parse_ratings(std::string_view text, const CategorySet& cats) {
    // Token -> index map; linear CategorySet::index_of would be quadratic on
    // wide category sets.
    std::unordered_map<std::string_view, CategoryIndex> index;
    for (std::size_t j = 0; j < cats.labels.size(); ++j) {
        index.emplace(cats.labels[j], static_cast<CategoryIndex>(j));
    }

    RatingMatrix m;
    m.category_count = cats.size();
    for_each_line(text, [&](std::string_view line, std::size_t line_number) {
        const auto tokens = split_tokens(line);
        if (tokens.empty()) return;  // blank lines are not subjects
        if (m.subject_count == 0) {
            m.rater_count = tokens.size();
        } else if (tokens.size() != m.rater_count) {
            throw ParseError("ragged row on line " + std::to_string(line_number) +
                             ": expected " + std::to_string(m.rater_count) +
                             " ratings, got " + std::to_string(tokens.size()));
        }
        for (const auto token : tokens) {
            const auto it = index.find(token);
            m.cells.push_back(it == index.end() ? Rating{}
                                                : Rating{it->second});
        }
        ++m.subject_count;
    });

    if (m.subject_count == 0) {
        throw ParseError("data file contains no rating rows");
    }
    if (m.rater_count < 2) {
        throw ParseError("data file must have at least 2 rater columns, got " +
                         std::to_string(m.rater_count));
    }
    return m;
}

PairProjection project_pair(const RatingMatrix& m, std::size_t rater_x,
                            std::size_t rater_y) {
    if (rater_x == rater_y || rater_x >= m.rater_count || rater_y >= m.rater_count) {
        throw std::invalid_argument("project_pair: rater indices must be distinct and in range");
    }

    PairProjection pp;
    pp.rater_x = rater_x;
    pp.rater_y = rater_y;
    const std::size_t k = m.category_count;
    pp.counts_x.assign(k, 0);
    pp.counts_y.assign(k, 0);

    std::int64_t agreeing = 0;
    for (std::size_t i = 0; i < m.subject_count; ++i) {
        const Rating& a = m.at(i, rater_x);
        const Rating& b = m.at(i, rater_y);
        if (!a || !b) continue;
        pp.rows.push_back({*a, *b});
        ++pp.counts_x[static_cast<std::size_t>(*a)];
        ++pp.counts_y[static_cast<std::size_t>(*b)];
        if (*a == *b) ++agreeing;
    }

    const std::size_t n2 = pp.rows.size();
    if (n2 == 0) {
        throw EmptyOverlap("raters " + std::to_string(rater_x) + " and " +
                           std::to_string(rater_y) + " share no rated subject");
    }

    pp.probs_x.resize(k);
    pp.probs_y.resize(k);
    double chance = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        pp.probs_x[j] = static_cast<double>(pp.counts_x[j]) / static_cast<double>(n2);
        pp.probs_y[j] = static_cast<double>(pp.counts_y[j]) / static_cast<double>(n2);
        chance += pp.probs_x[j] * pp.probs_y[j];
    }
    pp.observed_agreement = static_cast<double>(agreeing) / static_cast<double>(n2);
    pp.chance_agreement = chance;
    return pp;
}

RatingMatrix complete_case_rows(const RatingMatrix& m) {
    RatingMatrix out;
    out.rater_count = m.rater_count;
    out.category_count = m.category_count;
    for (std::size_t i = 0; i < m.subject_count; ++i) {
        bool complete = true;
        for (std::size_t u = 0; u < m.rater_count; ++u) {
            if (!m.at(i, u)) {
                complete = false;
                break;
            }
        }
        if (!complete) continue;
        for (std::size_t u = 0; u < m.rater_count; ++u) {
            out.cells.push_back(m.at(i, u));
        }
        ++out.subject_count;
    }
    if (out.subject_count == 0) {
        throw EmptyOverlap("no subject was rated by every rater");
    }
    return out;
}

}  // namespace interrater
