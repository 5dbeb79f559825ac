#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "interrater/error.hpp"

namespace interrater {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitDegenerate = 4;

struct CliConfig {
    std::string dfile;                     // mandatory
    std::string cfile = "categories.txt";
    std::string ofile = "output_graph.jpg";
    std::string mfile;                     // machine-readable report; "" = none
    double ymin = 0.0;
    double ymax = 1.0;
    std::optional<std::pair<std::size_t, std::size_t>> highlight;
    bool indbars = false;
};

std::string usage_text();

// Parses "-name value" flag pairs, any order. Throws UsageError on unknown
// flags, missing -dfile, malformed values, or ymin >= ymax.
CliConfig parse_flags(const std::vector<std::string>& args);

// Runs ingest -> pair permutation -> report -> chart. Text report to `out`,
// diagnostics to `err`. Returns one of the kExit* codes.
int run(const CliConfig& cfg, std::ostream& out, std::ostream& err);

// Full entry point, including the "simulate" subcommand dispatch.
int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err);

// Where the chart actually lands: raster extensions (.jpg/.jpeg/.png) are
// replaced with .svg, anything else is kept verbatim.
std::string chart_output_path(const std::string& ofile);

}  // namespace interrater
