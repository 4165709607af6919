#include "tterel/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tterel/error.hpp"

namespace tterel {

void validate_grid(const Grid& g) {
    if (g.points.size() < kMinGridPoints)
        fail(Errc::InvalidGrid,
             "need at least " + std::to_string(kMinGridPoints) + " points, got " +
                 std::to_string(g.points.size()));
    for (std::size_t i = 0; i + 1 < g.points.size(); ++i)
        if (!(g.points[i] < g.points[i + 1]))
            fail(Errc::InvalidGrid, "points not strictly increasing near index " + std::to_string(i));
    if (!(g.slack >= 0.0)) fail(Errc::InvalidGrid, "slack must be >= 0");
    if (!std::isfinite(g.points.front()) || !std::isfinite(g.points.back()))
        fail(Errc::InvalidGrid, "non-finite grid endpoints");
}

Grid make_linear_grid(double t_max, std::size_t n, double slack, double clip) {
    if (!(t_max > 0.0)) fail(Errc::InvalidGrid, "t_max must be positive");
    Grid g;
    g.slack = slack;
    g.domain_clip = clip;
    g.points.reserve(n);
    for (std::size_t i = 1; i <= n; ++i)
        g.points.push_back(t_max * static_cast<double>(i) / static_cast<double>(n));
    validate_grid(g);
    return g;
}

Grid make_log_grid(double t_min, double t_max, std::size_t n, double slack, double clip) {
    if (!(0.0 < t_min && t_min < t_max)) fail(Errc::InvalidGrid, "need 0 < t_min < t_max");
    Grid g;
    g.slack = slack;
    g.domain_clip = clip;
    g.points.reserve(n);
    const double l0 = std::log(t_min);
    const double l1 = std::log(t_max);
    for (std::size_t i = 0; i < n; ++i) {
        const double f = (n == 1) ? 1.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        g.points.push_back(std::exp(l0 + f * (l1 - l0)));
    }
    g.points.back() = t_max;
    validate_grid(g);
    return g;
}

Grid make_log_linear_grid(double t_max, std::size_t n, double slack, double clip) {
    if (!(t_max > 0.0)) fail(Errc::InvalidGrid, "t_max must be positive");
    const std::size_t half = std::max<std::size_t>(n / 2, kMinGridPoints);
    Grid lin = make_linear_grid(t_max, half, slack, clip);
    Grid lg = make_log_grid(t_max * 1e-6, t_max, half, slack, clip);
    std::vector<double> merged;
    merged.reserve(lin.points.size() + lg.points.size());
    std::merge(lin.points.begin(), lin.points.end(), lg.points.begin(), lg.points.end(),
               std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    Grid g;
    g.slack = slack;
    g.domain_clip = clip;
    g.points = std::move(merged);
    validate_grid(g);
    return g;
}

Grid make_level_anchored_grid(const std::function<double(double)>& inverse_of_level,
                              std::size_t n, double min_level, double slack, double clip) {
    if (!(min_level > 0.0 && min_level < 0.5)) fail(Errc::InvalidGrid, "need 0 < min_level < 0.5");
    const std::size_t half = std::max<std::size_t>(n / 2, kMinGridPoints);
    std::vector<double> pts;
    pts.reserve(2 * half);
    for (std::size_t i = 0; i < half; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(half - 1);
        pts.push_back(inverse_of_level((1.0 - 1e-6) + f * (0.5 - (1.0 - 1e-6))));
    }
    const double l0 = std::log(0.5);
    const double l1 = std::log(min_level);
    for (std::size_t i = 1; i < half; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(half - 1);
        pts.push_back(inverse_of_level(std::exp(l0 + f * (l1 - l0))));
    }
    std::sort(pts.begin(), pts.end());
    std::vector<double> unique_pts;
    for (double x : pts)
        if (x > 0.0 && (unique_pts.empty() || x > unique_pts.back())) unique_pts.push_back(x);
    Grid g;
    g.slack = slack;
    g.domain_clip = clip;
    g.points = std::move(unique_pts);
    validate_grid(g);
    return g;
}

double solve_decreasing_level(const std::function<double(double)>& log_f, double log_target,
                              double t_hint) {
    double hi = t_hint > 0.0 ? t_hint : 1.0;
    double lo = 0.0;
    int expansions = 0;
    while (log_f(hi) > log_target) {
        lo = hi;
        hi *= 4.0;
        if (++expansions > 400 || !std::isfinite(hi))
            fail(Errc::RootFindFailure, "level not reached while expanding bracket");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (log_f(mid) > log_target)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

MonotoneReport monotone_on_grid(std::span<const double> points, std::span<const double> values,
                                Direction direction, double slack) {
    if (points.size() != values.size())
        fail(Errc::DimensionMismatch, "points/values size mismatch");
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i]))
            fail(Errc::NonFiniteValue, "non-finite value at t=" + std::to_string(points[i]));
    MonotoneReport rep;
    rep.holds = true;
    const double sgn = direction == Direction::Increasing ? 1.0 : -1.0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        const double tol = slack * std::max(1.0, std::abs(values[i]));
        if (sgn * (values[i + 1] - values[i]) < -tol) {
            rep.holds = false;
            rep.witnesses.push_back({points[i], points[i + 1], values[i], values[i + 1]});
        }
    }
    return rep;
}

}  // namespace tterel
