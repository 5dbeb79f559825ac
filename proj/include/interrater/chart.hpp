#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "interrater/report.hpp"

namespace interrater {

struct PlotPoint {
    std::size_t user = 0;
    std::size_t partner = 0;
    double kappa = 0.0;
    double se = 0.0;
};

struct PlotAverage {
    std::size_t user = 0;
    double value = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct PlotBand {
    double low = 0.0;
    double high = 0.0;
};

// What the chart draws. One point per ordered (user, partner) pair with a
// defined kappa; undefined entries are omitted, never drawn at zero.
struct PlotSpec {
    double y_min = 0.0;
    double y_max = 1.0;
    std::size_t rater_count = 0;
    std::vector<PlotPoint> points;
    std::vector<PlotAverage> averages;             // users with a defined average
    std::optional<PlotBand> group_band;            // group kappa CI, if defined
    std::optional<std::pair<std::size_t, std::size_t>> highlight;  // unordered
    bool show_pair_bars = false;
};

// Throws ConfigError on y_min >= y_max or a highlight pair whose indices are
// out of range or equal.
PlotSpec build_plot_spec(const AnalysisReport& r, double y_min, double y_max,
                         std::optional<std::pair<std::size_t, std::size_t>> highlight,
                         bool show_pair_bars);

// Screen y coordinate of a kappa value; affine and monotone decreasing in
// the value, with out-of-range values clipped to the axis box.
double plot_y_pixel(const PlotSpec& spec, double value);

// Well-formed SVG 1.1 document. Marker classes: "pair-point" (with
// "highlighted" added for the highlighted pair), "avg-marker" plus one
// "avg-ci-bar" per average, "pair-ci-bar" per point iff show_pair_bars, and
// two dashed "band-line" elements when the group band is present.
// `user_labels` must have one entry per rater.
std::string emit_svg(const PlotSpec& spec,
                     const std::vector<std::string>& user_labels);

}  // namespace interrater
