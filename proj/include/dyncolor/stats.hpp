#pragma once

#include "dyncolor/harness.hpp"

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace dyncolor {

struct ScalingFit {
    std::vector<std::pair<double, double>> points;
    double exponent = 0;
    double intercept = 0;
    double r2 = 0;
};

/// Least squares on (log x, log y). Throws Error{degenerate_input} for fewer
/// than 3 points, non-positive values or a single distinct x.
ScalingFit fit_exponent(const std::vector<std::pair<double, double>>& points);

/// Median over all runs with censored runs ranked above every success; the
/// median is infinite when it falls on a censored run.
struct Summary {
    std::size_t runs = 0;
    std::size_t censored = 0;
    double median = 0;
    /// Mean over uncensored runs; 0 if there are none.
    double mean = 0;

    bool median_censored() const noexcept { return median == std::numeric_limits<double>::infinity(); }
};

Summary summarize(const std::vector<RunRecord>& runs);

enum class Axis { n, T };

struct GroupSummary {
    std::string scenario;
    std::string algorithm;
    double x = 0;
    Summary summary;
};

/// Groups by (scenario, algorithm, x), keeping first-appearance order of the
/// (scenario, algorithm) pairs and ascending x within each.
std::vector<GroupSummary> group_by(const std::vector<RunRecord>& runs, Axis axis);

struct SeriesFit {
    std::string scenario;
    std::string algorithm;
    std::vector<GroupSummary> points;
    /// Absent when fewer than 3 uncensored medians exist or input is degenerate.
    std::optional<ScalingFit> fit;
};

std::vector<SeriesFit> fit_series(const std::vector<RunRecord>& runs, Axis axis);

} // namespace dyncolor
