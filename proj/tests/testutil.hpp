#pragma once

// Shared helpers for the test suites: fixture paths, independent oracles,
// random-input generators, a minimal XML well-formedness scanner, and a
// helper to spawn the CLI binary.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "interrater/ingest.hpp"

namespace testutil {

namespace fs = std::filesystem;

inline std::string data_path(const std::string& name) {
    return std::string(TEST_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline std::string five_studies_data() {
    return read_file(data_path("five_studies_data.txt"));
}

inline std::string five_studies_categories() {
    return read_file(data_path("five_studies_categories.txt"));
}

inline std::size_t count_substr(const std::string& haystack,
                                const std::string& needle) {
    std::size_t count = 0;
    std::size_t pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

// ---------------------------------------------------------------------------
// Independent oracles. These recompute expected values straight from the
// definitions, without touching the library's computation paths.
// ---------------------------------------------------------------------------
namespace oracle {

struct PairStats {
    std::size_t overlap = 0;
    double p_o = 0.0;
    double p_e = 0.0;
    std::vector<double> probs_x;
    std::vector<double> probs_y;
};

// Complete-case pair statistics by direct enumeration of two columns.
inline PairStats pair_stats(const interrater::RatingMatrix& m, std::size_t x,
                            std::size_t y) {
    PairStats st;
    st.probs_x.assign(m.category_count, 0.0);
    st.probs_y.assign(m.category_count, 0.0);
    double agree = 0.0;
    for (std::size_t i = 0; i < m.subject_count; ++i) {
        const auto& a = m.at(i, x);
        const auto& b = m.at(i, y);
        if (!a || !b) continue;
        ++st.overlap;
        st.probs_x[static_cast<std::size_t>(*a)] += 1.0;
        st.probs_y[static_cast<std::size_t>(*b)] += 1.0;
        if (*a == *b) agree += 1.0;
    }
    if (st.overlap == 0) return st;
    for (auto& v : st.probs_x) v /= static_cast<double>(st.overlap);
    for (auto& v : st.probs_y) v /= static_cast<double>(st.overlap);
    st.p_o = agree / static_cast<double>(st.overlap);
    for (std::size_t j = 0; j < m.category_count; ++j) {
        st.p_e += st.probs_x[j] * st.probs_y[j];
    }
    return st;
}

// Group-kappa variance evaluated from the marginal products, the route the
// library does not take by default.
inline double variance_product_form(const std::vector<double>& marginals,
                                    std::size_t subject_count,
                                    std::size_t rater_count) {
    double sum_pq = 0.0;
    double sum_pq_qp = 0.0;
    for (const double p : marginals) {
        const double q = 1.0 - p;
        sum_pq += p * q;
        sum_pq_qp += p * q * (q - p);
    }
    return 2.0 * (sum_pq * sum_pq - sum_pq_qp) /
           (static_cast<double>(subject_count) * static_cast<double>(rater_count) *
            static_cast<double>(rater_count - 1) * sum_pq * sum_pq);
}

// Mean per-subject agreement by direct per-row pair counting.
inline double group_mean_agreement(const interrater::RatingMatrix& m) {
    double total = 0.0;
    const double n = static_cast<double>(m.rater_count);
    for (std::size_t i = 0; i < m.subject_count; ++i) {
        std::vector<double> counts(m.category_count, 0.0);
        for (std::size_t u = 0; u < m.rater_count; ++u) {
            counts[static_cast<std::size_t>(*m.at(i, u))] += 1.0;
        }
        double row = 0.0;
        for (const double c : counts) row += c * (c - 1.0);
        total += row / (n * (n - 1.0));
    }
    return total / static_cast<double>(m.subject_count);
}

}  // namespace oracle

// ---------------------------------------------------------------------------
// Random inputs for property tests.
// ---------------------------------------------------------------------------

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Random matrix with i.i.d. cells; abstain_prob of 0 gives complete data.
inline interrater::RatingMatrix random_matrix(std::mt19937_64& rng,
                                              std::size_t subjects,
                                              std::size_t raters,
                                              std::size_t categories,
                                              double abstain_prob = 0.0) {
    interrater::RatingMatrix m;
    m.subject_count = subjects;
    m.rater_count = raters;
    m.category_count = categories;
    m.cells.resize(subjects * raters);
    for (auto& cell : m.cells) {
        if (abstain_prob > 0.0 && uniform01(rng) < abstain_prob) {
            cell = std::nullopt;
        } else {
            const auto j = static_cast<std::size_t>(uniform01(rng) *
                                                    static_cast<double>(categories));
            cell = static_cast<interrater::CategoryIndex>(
                std::min(j, categories - 1));
        }
    }
    return m;
}

// Skewed-marginal complete matrix: per-matrix random marginals mixed with a
// uniform floor so realized data stays clear of single-category degeneracy.
inline interrater::RatingMatrix random_skewed_matrix(std::mt19937_64& rng,
                                                     std::size_t subjects,
                                                     std::size_t raters,
                                                     std::size_t categories) {
    std::vector<double> marginals(categories);
    double total = 0.0;
    for (auto& w : marginals) {
        w = -std::log(1.0 - uniform01(rng));  // Exp(1)
        total += w;
    }
    const double uniform = 1.0 / static_cast<double>(categories);
    for (auto& w : marginals) w = 0.7 * (w / total) + 0.3 * uniform;

    interrater::RatingMatrix m;
    m.subject_count = subjects;
    m.rater_count = raters;
    m.category_count = categories;
    m.cells.resize(subjects * raters);
    for (auto& cell : m.cells) {
        const double u = uniform01(rng);
        double cumulative = 0.0;
        interrater::CategoryIndex drawn =
            static_cast<interrater::CategoryIndex>(categories - 1);
        for (std::size_t j = 0; j < categories; ++j) {
            cumulative += marginals[j];
            if (u < cumulative) {
                drawn = static_cast<interrater::CategoryIndex>(j);
                break;
            }
        }
        cell = drawn;
    }
    return m;
}

// ---------------------------------------------------------------------------
// Minimal XML well-formedness scanner: balanced tags, quoted attributes,
// no stray '<'/'&'. Enough to validate the emitted SVG structurally.
// ---------------------------------------------------------------------------
inline bool xml_well_formed(const std::string& doc) {
    std::size_t pos = 0;
    std::vector<std::string> stack;
    std::size_t root_elements = 0;

    const auto is_name_char = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
               c == '_' || c == '.' || c == ':';
    };
    const auto valid_entity = [&](std::size_t amp) {
        const auto semi = doc.find(';', amp);
        if (semi == std::string::npos || semi - amp < 2 || semi - amp > 8) return false;
        for (std::size_t i = amp + 1; i < semi; ++i) {
            if (!std::isalnum(static_cast<unsigned char>(doc[i])) && doc[i] != '#') {
                return false;
            }
        }
        return true;
    };
    const auto scan_text = [&](std::size_t from, std::size_t to) {
        for (std::size_t i = from; i < to; ++i) {
            if (doc[i] == '<' || doc[i] == '>') return false;
            if (doc[i] == '&' && !valid_entity(i)) return false;
        }
        return true;
    };

    while (pos < doc.size()) {
        const auto lt = doc.find('<', pos);
        if (lt == std::string::npos) {
            if (!scan_text(pos, doc.size())) return false;
            break;
        }
        if (!scan_text(pos, lt)) return false;

        if (doc.compare(lt, 5, "<?xml") == 0) {
            const auto end = doc.find("?>", lt);
            if (end == std::string::npos) return false;
            pos = end + 2;
            continue;
        }
        if (doc.compare(lt, 4, "<!--") == 0) {
            const auto end = doc.find("-->", lt);
            if (end == std::string::npos) return false;
            pos = end + 3;
            continue;
        }
        if (doc.compare(lt, 2, "</") == 0) {
            std::size_t p = lt + 2;
            std::string name;
            while (p < doc.size() && is_name_char(doc[p])) name += doc[p++];
            while (p < doc.size() && std::isspace(static_cast<unsigned char>(doc[p]))) ++p;
            if (p >= doc.size() || doc[p] != '>' || name.empty()) return false;
            if (stack.empty() || stack.back() != name) return false;
            stack.pop_back();
            pos = p + 1;
            continue;
        }

        // Opening or self-closing tag.
        std::size_t p = lt + 1;
        std::string name;
        while (p < doc.size() && is_name_char(doc[p])) name += doc[p++];
        if (name.empty()) return false;
        bool self_closing = false;
        while (true) {
            while (p < doc.size() && std::isspace(static_cast<unsigned char>(doc[p]))) ++p;
            if (p >= doc.size()) return false;
            if (doc[p] == '>') {
                ++p;
                break;
            }
            if (doc.compare(p, 2, "/>") == 0) {
                self_closing = true;
                p += 2;
                break;
            }
            // attribute: name="value"
            std::string attr;
            while (p < doc.size() && is_name_char(doc[p])) attr += doc[p++];
            if (attr.empty() || p >= doc.size() || doc[p] != '=') return false;
            ++p;
            if (p >= doc.size() || (doc[p] != '"' && doc[p] != '\'')) return false;
            const char quote = doc[p++];
            const auto close = doc.find(quote, p);
            if (close == std::string::npos) return false;
            if (!scan_text(p, close)) return false;
            p = close + 1;
        }
        if (stack.empty()) {
            ++root_elements;
            if (root_elements > 1) return false;
        }
        if (!self_closing) stack.push_back(name);
        pos = p;
    }
    return stack.empty() && root_elements == 1;
}

// ---------------------------------------------------------------------------
// CLI spawning.
// ---------------------------------------------------------------------------

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Scratch directory under the system temp root, removed on destruction.
struct TempDir {
    fs::path path;

    explicit TempDir(const std::string& name) {
        path = fs::temp_directory_path() /
               (name + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const {
        return (path / name).string();
    }
};

inline CliResult run_cli(const std::string& args, const TempDir& dir,
                         const std::string& tag) {
    const std::string out_path = dir.file(tag + ".stdout");
    const std::string err_path = dir.file(tag + ".stderr");
    const std::string cmd = std::string(INTERRATER_CLI_PATH) + " " + args + " >" +
                            out_path + " 2>" + err_path;
    const int status = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = read_file(out_path);
    result.err = read_file(err_path);
    return result;
}

}  // namespace testutil
