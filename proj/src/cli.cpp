#include "interrater/cli.hpp"

#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "interrater/chart.hpp"
#include "interrater/report.hpp"
#include "interrater/simulate.hpp"

namespace interrater {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot read file '" + path + "': " + std::strerror(errno));
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Writes to a temporary sibling and renames into place, so a failed run
// never leaves a partial output behind.
void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ParseError("cannot write file '" + tmp + "': " + std::strerror(errno));
        }
        out << content;
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw ParseError("failed while writing '" + tmp + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw ParseError("cannot move '" + tmp + "' to '" + path + "'");
    }
}

double parse_double_flag(const std::string& flag, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw UsageError("flag " + flag + " expects a number, got '" + value + "'");
    }
}

std::size_t parse_size_flag(const std::string& flag, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size() || v < 0) throw std::invalid_argument(value);
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw UsageError("flag " + flag + " expects a non-negative integer, got '" +
                         value + "'");
    }
}

std::pair<std::size_t, std::size_t> parse_highlight(const std::string& value) {
    const auto comma = value.find(',');
    if (comma == std::string::npos) {
        throw UsageError("flag -highlight expects two indices 'x,y', got '" +
                         value + "'");
    }
    const std::size_t a = parse_size_flag("-highlight", value.substr(0, comma));
    const std::size_t b = parse_size_flag("-highlight", value.substr(comma + 1));
    if (a == b) {
        throw UsageError("flag -highlight expects two distinct rater indices");
    }
    return {a, b};
}

std::vector<double> parse_marginals(const std::string& value) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= value.size()) {
        auto comma = value.find(',', pos);
        if (comma == std::string::npos) comma = value.size();
        out.push_back(parse_double_flag("-marginals", value.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

std::vector<std::string> user_labels(std::size_t rater_count) {
    std::vector<std::string> labels;
    labels.reserve(rater_count);
    for (std::size_t u = 0; u < rater_count; ++u) {
        labels.push_back("#" + std::to_string(u));
    }
    return labels;
}

int run_simulate(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err);

}  // namespace

std::string usage_text() {
    return
        "usage: interrater -dfile DATA [-cfile CATEGORIES] [-ofile GRAPH]\n"
        "                  [-mfile REPORT.json] [-ymin Y] [-ymax Y]\n"
        "                  [-highlight X,Y] [-indbars yes|no]\n"
        "       interrater simulate -subjects N -raters N -marginals P0,P1,...\n"
        "                  [-kind independent|perfect-copy|noisy-copy]\n"
        "                  [-flip P] [-seed S] [-cfile CATEGORIES] [-out FILE]\n"
        "\n"
        "flags:\n"
        "  -dfile      data file, one subject per line, whitespace-separated\n"
        "              ratings (mandatory)\n"
        "  -cfile      categories file, one label per line (default categories.txt)\n"
        "  -ofile      chart output path (default output_graph.jpg; raster\n"
        "              extensions are written as .svg instead)\n"
        "  -mfile      also write the report as JSON to this path\n"
        "  -ymin       chart y-axis minimum (default 0)\n"
        "  -ymax       chart y-axis maximum (default 1)\n"
        "  -highlight  rater pair to plot black, e.g. 2,3 (default none)\n"
        "  -indbars    yes|no, error bars for every pair kappa (default no)\n";
}

CliConfig parse_flags(const std::vector<std::string>& args) {
    CliConfig cfg;
    bool have_dfile = false;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& flag = args[i];
        const auto next = [&]() -> const std::string& {
            if (i + 1 >= args.size()) {
                throw UsageError("flag " + flag + " expects a value");
            }
            return args[++i];
        };
        if (flag == "-dfile") {
            cfg.dfile = next();
            have_dfile = true;
        } else if (flag == "-cfile") {
            cfg.cfile = next();
        } else if (flag == "-ofile") {
            cfg.ofile = next();
        } else if (flag == "-mfile") {
            cfg.mfile = next();
        } else if (flag == "-ymin") {
            cfg.ymin = parse_double_flag(flag, next());
        } else if (flag == "-ymax") {
            cfg.ymax = parse_double_flag(flag, next());
        } else if (flag == "-highlight") {
            const std::string& value = next();
            if (value == "none") {
                cfg.highlight.reset();
            } else {
                cfg.highlight = parse_highlight(value);
            }
        } else if (flag == "-indbars") {
            const std::string& value = next();
            if (value == "yes") {
                cfg.indbars = true;
            } else if (value == "no") {
                cfg.indbars = false;
            } else {
                throw UsageError("flag -indbars expects 'yes' or 'no', got '" +
                                 value + "'");
            }
        } else {
            throw UsageError("unknown flag '" + flag + "'");
        }
    }
    if (!have_dfile) {
        throw UsageError("missing mandatory flag -dfile");
    }
    if (!(cfg.ymin < cfg.ymax)) {
        throw UsageError("-ymin must be below -ymax");
    }
    return cfg;
}

std::string chart_output_path(const std::string& ofile) {
    const fs::path path(ofile);
    std::string ext = path.extension().string();
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == ".jpg" || ext == ".jpeg" || ext == ".png") {
        fs::path swapped = path;
        swapped.replace_extension(".svg");
        return swapped.string();
    }
    return ofile;
}

int run(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const CategorySet cats = parse_categories(read_file(cfg.cfile));
        const RatingMatrix m = parse_ratings(read_file(cfg.dfile), cats);

        if (cfg.highlight) {
            const auto [a, b] = *cfg.highlight;
            if (a >= m.rater_count || b >= m.rater_count) {
                throw UsageError("-highlight pair (" + std::to_string(a) + "," +
                                 std::to_string(b) + ") is out of range for " +
                                 std::to_string(m.rater_count) + " raters");
            }
        }

        const AnalysisReport report = analyze(m, cats, cfg.dfile, cfg.cfile);
        out << render_text(report);

        const PlotSpec spec =
            build_plot_spec(report, cfg.ymin, cfg.ymax, cfg.highlight, cfg.indbars);
        const std::string svg = emit_svg(spec, user_labels(report.rater_count));
        const std::string chart_path = chart_output_path(cfg.ofile);
        if (chart_path != cfg.ofile) {
            err << "note: raster output is not supported; writing vector chart to '"
                << chart_path << "'\n";
        }
        atomic_write(chart_path, svg);

        if (!cfg.mfile.empty()) {
            atomic_write(cfg.mfile, render_machine(report));
        }
        return kExitOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n" << usage_text();
        return kExitUsage;
    } catch (const EmptyOverlap& e) {
        err << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const DegenerateMarginals& e) {
        err << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const Error& e) {
        // ParseError and ConfigError: bad input files.
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }
}

namespace {

int run_simulate(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
    RaterModel model;
    std::size_t subjects = 0;
    std::size_t raters = 0;
    std::string out_path;
    std::string cfile;
    bool have_subjects = false;
    bool have_raters = false;
    bool have_marginals = false;

    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& flag = args[i];
        const auto next = [&]() -> const std::string& {
            if (i + 1 >= args.size()) {
                throw UsageError("flag " + flag + " expects a value");
            }
            return args[++i];
        };
        if (flag == "-subjects") {
            subjects = parse_size_flag(flag, next());
            have_subjects = true;
        } else if (flag == "-raters") {
            raters = parse_size_flag(flag, next());
            have_raters = true;
        } else if (flag == "-marginals") {
            model.marginals = parse_marginals(next());
            have_marginals = true;
        } else if (flag == "-kind") {
            const std::string& value = next();
            if (value == "independent") {
                model.kind = RaterModelKind::IndependentWithMarginals;
            } else if (value == "perfect-copy") {
                model.kind = RaterModelKind::PerfectCopy;
            } else if (value == "noisy-copy") {
                model.kind = RaterModelKind::NoisyCopy;
            } else {
                throw UsageError("unknown simulation kind '" + value + "'");
            }
        } else if (flag == "-flip") {
            model.flip_prob = parse_double_flag(flag, next());
        } else if (flag == "-seed") {
            model.seed = parse_size_flag(flag, next());
        } else if (flag == "-out") {
            out_path = next();
        } else if (flag == "-cfile") {
            cfile = next();
        } else {
            throw UsageError("unknown flag '" + flag + "' for simulate");
        }
    }
    if (!have_subjects || !have_raters || !have_marginals) {
        throw UsageError("simulate requires -subjects, -raters and -marginals");
    }

    std::vector<std::string> labels;
    if (!cfile.empty()) {
        const CategorySet cats = parse_categories(read_file(cfile));
        if (cats.size() != model.marginals.size()) {
            throw UsageError("categories file lists " + std::to_string(cats.size()) +
                             " labels but -marginals has " +
                             std::to_string(model.marginals.size()));
        }
        labels = cats.labels;
    } else {
        for (std::size_t j = 0; j < model.marginals.size(); ++j) {
            labels.push_back("c" + std::to_string(j));
        }
    }

    const RatingMatrix m =
        generate(model, subjects, raters, model.marginals.size());

    std::string text;
    for (std::size_t i = 0; i < m.subject_count; ++i) {
        for (std::size_t u = 0; u < m.rater_count; ++u) {
            if (u > 0) text += ' ';
            text += labels[static_cast<std::size_t>(*m.at(i, u))];
        }
        text += '\n';
    }

    if (out_path.empty()) {
        out << text;
    } else {
        atomic_write(out_path, text);
        err << "wrote " << subjects << "x" << raters << " matrix to '" << out_path
            << "'\n";
    }
    return kExitOk;
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        if (!args.empty() && (args[0] == "-h" || args[0] == "--help")) {
            out << usage_text();
            return kExitOk;
        }
        if (!args.empty() && args[0] == "simulate") {
            return run_simulate({args.begin() + 1, args.end()}, out, err);
        }
        return run(parse_flags(args), out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n" << usage_text();
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }
}

}  // namespace interrater
