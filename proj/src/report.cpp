#include "interrater/report.hpp"

#include <cstdio>
#include <string>

#include <json.hpp>

namespace interrater {

namespace {

std::string fixed4(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", value);
    return buf;
}

std::string ci_percent_label(double level) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g%%", level * 100.0);
    return buf;
}

void append_estimate(std::string& out, const KappaEstimate& est) {
    out += fixed4(est.kappa);
    out += "  (";
    out += ci_percent_label(est.ci_level);
    out += " CI ";
    out += fixed4(est.ci_low);
    out += " .. ";
    out += fixed4(est.ci_high);
    out += ", SE ";
    out += fixed4(est.se);
    out += ")";
}

const char* undefined_text(PairUndefinedReason reason) {
    switch (reason) {
        case PairUndefinedReason::EmptyOverlap:
            return "undefined (no jointly rated subjects)";
        case PairUndefinedReason::DegenerateMarginals:
            return "undefined (single-category data)";
        default:
            return "undefined";
    }
}

void append_category_probs(std::string& out, const CategorySet& cats,
                           const std::vector<double>& probs) {
    out += "category probabilities:\n";
    for (std::size_t j = 0; j < cats.labels.size(); ++j) {
        out += "  ";
        out += cats.labels[j];
        out += ": ";
        out += fixed4(j < probs.size() ? probs[j] : 0.0);
        out += "\n";
    }
}

nlohmann::ordered_json estimate_json(const KappaEstimate& est) {
    return {
        {"kappa", est.kappa},       {"variance", est.variance},
        {"se", est.se},             {"ci_level", est.ci_level},
        {"ci_low", est.ci_low},     {"ci_high", est.ci_high},
        {"sample_size", est.sample_size},
    };
}

nlohmann::ordered_json cell_json(const PairCell& cell) {
    if (cell.defined()) return estimate_json(*cell.estimate);
    return {{"kappa", nullptr}, {"reason", to_string(cell.reason)}};
}

}  // namespace

AnalysisReport analyze(const RatingMatrix& m, const CategorySet& cats,
                       std::string data_file, std::string categories_file,
                       double ci_level) {
    AnalysisReport r;
    r.table = build_pair_table(m, ci_level);
    r.users.reserve(m.rater_count);
    for (std::size_t u = 0; u < m.rater_count; ++u) {
        r.users.push_back(summarize_user(r.table, m, u, ci_level));
    }
    r.group = summarize_group(m, r.table, ci_level);
    r.data_file = std::move(data_file);
    r.categories_file = std::move(categories_file);
    r.categories = cats;
    r.subject_count = m.subject_count;
    r.rater_count = m.rater_count;
    return r;
}

std::string render_text(const AnalysisReport& r) {
    std::string out;
    out += "inter-rater reliability report\n";
    out += "==============================\n";
    out += "data file:       " + r.data_file + "\n";
    out += "categories file: " + r.categories_file + "\n";
    out += "subjects: " + std::to_string(r.subject_count) +
           "   raters: " + std::to_string(r.rater_count) +
           "   categories: " + std::to_string(r.categories.size()) + "\n";
    out += "\n";

    out += "group\n";
    out += "-----\n";
    append_category_probs(out, r.categories, r.group.category_probs);
    out += "mean observed agreement: " + fixed4(r.group.mean_agreement) + "\n";
    out += "Fleiss kappa: ";
    if (r.group.fleiss) {
        append_estimate(out, *r.group.fleiss);
    } else {
        out += undefined_text(r.group.fleiss_reason);
    }
    out += "\n";
    out += "mean permuted pair kappa: ";
    out += r.group.mean_permuted_kappa ? fixed4(*r.group.mean_permuted_kappa)
                                       : std::string("undefined (no defined pairs)");
    out += "\n";
    out += "complete rows used: " + std::to_string(r.group.rows_used) + " of " +
           std::to_string(r.group.rows_used + r.group.dropped_rows) + " (" +
           std::to_string(r.group.dropped_rows) +
           " dropped; group statistics use complete cases only)\n";

    for (const UserSummary& user : r.users) {
        out += "\n";
        const std::string title = "user #" + std::to_string(user.user);
        out += title + "\n";
        out += std::string(title.size(), '-') + "\n";
        out += "rated subjects: " + std::to_string(user.rated_count) + "\n";
        append_category_probs(out, r.categories, user.category_probs);
        out += "pair kappas:\n";
        for (const UserPairResult& pr : user.pairs) {
            out += "  (" + std::to_string(user.user) + "," +
                   std::to_string(pr.partner) + "): ";
            if (pr.cell.defined()) {
                append_estimate(out, *pr.cell.estimate);
            } else {
                out += undefined_text(pr.cell.reason);
            }
            out += "\n";
        }
        out += "average pair kappa: ";
        if (user.average) {
            const AveragedKappa& avg = *user.average;
            out += fixed4(avg.kappa) + "  (" + ci_percent_label(avg.ci_level) +
                   " CI " + fixed4(avg.ci_low) + " .. " + fixed4(avg.ci_high) +
                   ", SE " + fixed4(avg.se) + ", over " +
                   std::to_string(avg.pair_count) + " pairs)";
        } else {
            out += "undefined (no defined pairs)";
        }
        out += "\n";
    }
    return out;
}

std::string render_machine(const AnalysisReport& r) {
    nlohmann::ordered_json doc;
    doc["format"] = "interrater-report/1";
    doc["inputs"] = {
        {"data_file", r.data_file},
        {"categories_file", r.categories_file},
        {"categories", r.categories.labels},
        {"subjects", r.subject_count},
        {"raters", r.rater_count},
    };

    nlohmann::ordered_json group;
    group["category_probs"] = r.group.category_probs;
    group["mean_agreement"] = r.group.mean_agreement;
    if (r.group.fleiss) {
        group["fleiss"] = estimate_json(*r.group.fleiss);
    } else {
        group["fleiss"] = {{"kappa", nullptr},
                           {"reason", to_string(r.group.fleiss_reason)}};
    }
    if (r.group.mean_permuted_kappa) {
        group["mean_permuted_kappa"] = *r.group.mean_permuted_kappa;
    } else {
        group["mean_permuted_kappa"] = nullptr;
    }
    group["rows_used"] = r.group.rows_used;
    group["dropped_rows"] = r.group.dropped_rows;
    doc["group"] = group;

    doc["users"] = nlohmann::ordered_json::array();
    for (const UserSummary& user : r.users) {
        nlohmann::ordered_json u;
        u["user"] = user.user;
        u["rated_subjects"] = user.rated_count;
        u["category_probs"] = user.category_probs;
        u["pairs"] = nlohmann::ordered_json::array();
        for (const UserPairResult& pr : user.pairs) {
            nlohmann::ordered_json cell = cell_json(pr.cell);
            cell["partner"] = pr.partner;
            u["pairs"].push_back(cell);
        }
        if (user.average) {
            u["average"] = {
                {"kappa", user.average->kappa},
                {"se", user.average->se},
                {"ci_level", user.average->ci_level},
                {"ci_low", user.average->ci_low},
                {"ci_high", user.average->ci_high},
                {"pair_count", user.average->pair_count},
            };
        } else {
            u["average"] = nullptr;
        }
        doc["users"].push_back(u);
    }

    // Full n x n tensor of (kappa, se) results, diagonal included.
    doc["pair_table"] = nlohmann::ordered_json::array();
    for (std::size_t x = 0; x < r.table.rater_count; ++x) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t y = 0; y < r.table.rater_count; ++y) {
            row.push_back(cell_json(r.table.at(x, y)));
        }
        doc["pair_table"].push_back(row);
    }

    return doc.dump(2) + "\n";
}

}  // namespace interrater
