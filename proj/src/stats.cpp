#include "dyncolor/stats.hpp"

#include "dyncolor/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace dyncolor {

ScalingFit fit_exponent(const std::vector<std::pair<double, double>>& points)
{
    if (points.size() < 3)
        throw Error(Errc::degenerate_input, "a scaling fit needs at least 3 points");
    for (const auto& [x, y] : points)
        if (!(x > 0) || !(y > 0) || !std::isfinite(x) || !std::isfinite(y))
            throw Error(Errc::degenerate_input, "scaling fit values must be positive and finite");

    const double k = static_cast<double>(points.size());
    double sx = 0, sy = 0;
    for (const auto& [x, y] : points) {
        sx += std::log(x);
        sy += std::log(y);
    }
    const double mx = sx / k, my = sy / k;
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& [x, y] : points) {
        const double dx = std::log(x) - mx, dy = std::log(y) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0)
        throw Error(Errc::degenerate_input, "scaling fit needs at least two distinct x values");

    ScalingFit fit;
    fit.points = points;
    fit.exponent = sxy / sxx;
    fit.intercept = my - fit.exponent * mx;
    // A constant series is explained perfectly by exponent 0.
    fit.r2 = syy <= 1e-24 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

Summary summarize(const std::vector<RunRecord>& runs)
{
    Summary s;
    s.runs = runs.size();
    std::vector<double> done;
    for (const auto& r : runs) {
        if (r.censored)
            ++s.censored;
        else
            done.push_back(static_cast<double>(r.iterations));
    }
    std::sort(done.begin(), done.end());
    if (!done.empty()) {
        double sum = 0;
        for (double d : done)
            sum += d;
        s.mean = sum / static_cast<double>(done.size());
    }
    if (runs.empty())
        return s;
    // Censored runs sit above every success in the ranking.
    const auto at = [&](std::size_t i) {
        return i < done.size() ? done[i] : std::numeric_limits<double>::infinity();
    };
    const std::size_t N = runs.size();
    s.median = N % 2 == 1 ? at(N / 2) : (at(N / 2 - 1) + at(N / 2)) / 2;
    return s;
}

std::vector<GroupSummary> group_by(const std::vector<RunRecord>& runs, Axis axis)
{
    std::vector<std::pair<std::string, std::string>> order;
    std::map<std::pair<std::string, std::string>, std::map<double, std::vector<RunRecord>>> groups;
    for (const auto& r : runs) {
        const auto key = std::pair{r.scenario, r.algorithm};
        if (!groups.count(key))
            order.push_back(key);
        const double x = static_cast<double>(axis == Axis::n ? r.n : r.T);
        groups[key][x].push_back(r);
    }
    std::vector<GroupSummary> out;
    for (const auto& key : order)
        for (const auto& [x, members] : groups[key])
            out.push_back({key.first, key.second, x, summarize(members)});
    return out;
}

std::vector<SeriesFit> fit_series(const std::vector<RunRecord>& runs, Axis axis)
{
    std::vector<SeriesFit> out;
    for (auto& g : group_by(runs, axis)) {
        if (out.empty() || out.back().scenario != g.scenario || out.back().algorithm != g.algorithm)
            out.push_back({g.scenario, g.algorithm, {}, std::nullopt});
        out.back().points.push_back(std::move(g));
    }
    for (auto& s : out) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : s.points)
            if (!p.summary.median_censored())
                pts.emplace_back(p.x, p.summary.median);
        try {
            s.fit = fit_exponent(pts);
        } catch (const Error& e) {
            if (e.code() != Errc::degenerate_input)
                throw;
        }
    }
    return out;
}

} // namespace dyncolor
