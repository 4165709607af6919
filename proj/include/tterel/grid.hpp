#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tterel {

// A violating point (or adjacent pair) found by a grid check.
// Pointwise checks set t1 == t0 and store both compared values.
struct Witness {
    double t0 = 0.0;
    double t1 = 0.0;
    double v0 = 0.0;
    double v1 = 0.0;
};

// Evaluation abscissae shared by all grid-based certificates.
//
// `slack` is the relative tolerance used by monotonicity and pointwise
// comparisons; `domain_clip` is the survival floor below which ratio
// checks stop evaluating a curve.
struct Grid {
    std::vector<double> points;
    double slack = 1e-9;
    double domain_clip = 1e-12;
};

inline constexpr std::size_t kMinGridPoints = 16;

// Validates invariants (>= 16 strictly increasing points, slack >= 0);
// throws Error(InvalidGrid) otherwise.
void validate_grid(const Grid& g);

// n points t_max*i/n, i = 1..n (excludes 0, includes t_max).
Grid make_linear_grid(double t_max, std::size_t n, double slack = 1e-9, double clip = 1e-12);

// n log-spaced points on [t_min, t_max].
Grid make_log_grid(double t_min, double t_max, std::size_t n, double slack = 1e-9,
                   double clip = 1e-12);

// Merge of n/2 log-spaced points on [t_max*1e-6, t_max] with n/2 linear
// points on (0, t_max]; sorted, deduplicated.
Grid make_log_linear_grid(double t_max, std::size_t n = 1024, double slack = 1e-9,
                          double clip = 1e-12);

// Abscissae anchored at function levels: x_j = inverse(u_j) for levels u_j
// running linearly from 1-1e-6 to 0.5 and log-spaced from 0.5 down to
// min_level. For a decreasing function this probes exactly where it varies,
// regardless of how heavy its tail is.
Grid make_level_anchored_grid(const std::function<double(double)>& inverse_of_level,
                              std::size_t n = 1024, double min_level = 1e-9, double slack = 1e-9,
                              double clip = 1e-12);

// Smallest t with log_f(t) <= log_target for a decreasing function given in
// log space. Expands an upper bracket geometrically, then bisects.
// Throws Error(RootFindFailure) if no bracket is found.
double solve_decreasing_level(const std::function<double(double)>& log_f, double log_target,
                              double t_hint = 1.0);

enum class Direction { Increasing, Decreasing };

struct MonotoneReport {
    bool holds = false;
    std::vector<Witness> witnesses;
};

// Grid certificate of monotonicity with relative slack:
// increasing iff v[j+1] >= v[j] - slack*max(1,|v[j]|) for all adjacent pairs.
// Throws Error(NonFiniteValue) when a value is not finite.
MonotoneReport monotone_on_grid(std::span<const double> points, std::span<const double> values,
                                Direction direction, double slack);

}  // namespace tterel
