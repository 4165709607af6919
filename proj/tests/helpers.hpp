#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "tterel/model.hpp"
#include "tterel/structure.hpp"

namespace testutil {

// Central finite difference; one-sided at the left domain edge.
inline double fdiff(const std::function<double(double)>& f, double x, double h) {
    if (x < h) return (f(x + h) - f(x)) / h;
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-7, int depth = 40) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Exhaustive boolean check of a structure: monotone, 0 at the all-down
// state, 1 at the all-up state, and every component pivotal somewhere.
inline bool structure_is_coherent(const tterel::Structure& s) {
    const int n = s.n();
    const unsigned full = 1u << n;
    auto eval = [&](unsigned mask) {
        std::vector<char> states(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) states[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
        return s.evaluate(states);
    };
    if (eval(0) || !eval(full - 1)) return false;
    std::vector<char> pivotal(static_cast<std::size_t>(n), 0);
    for (unsigned mask = 0; mask < full; ++mask) {
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) continue;
            const bool off = eval(mask);
            const bool on = eval(mask | (1u << i));
            if (off && !on) return false;  // not monotone
            if (on != off) pivotal[static_cast<std::size_t>(i)] = 1;
        }
    }
    for (char p : pivotal)
        if (!p) return false;
    return true;
}

// Independent route to the system reliability: sum over the alive-set
// lattice. Pr(alive set == exactly A) is recovered from the joint survival
// by Moebius inversion, then summed over working states of the structure.
inline double naive_system_survival(const tterel::TTEModel& m, double t) {
    const int n = m.n();
    const unsigned full = 1u << n;
    auto joint_alive = [&](unsigned mask) {
        double arg = 0.0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) arg += m.aging()[static_cast<std::size_t>(i)].value(t);
        return m.generator().value(arg);
    };
    double total = 0.0;
    for (unsigned a = 0; a < full; ++a) {
        std::vector<char> states(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i) states[static_cast<std::size_t>(i)] = (a >> i) & 1u;
        if (!m.structure().evaluate(states)) continue;
        double p_exact = 0.0;
        for (unsigned b = 0; b < full; ++b) {
            if ((b & a) != a) continue;  // need B superset of A
            const int extra = __builtin_popcount(b) - __builtin_popcount(a);
            p_exact += (extra % 2 == 0 ? 1.0 : -1.0) * joint_alive(b);
        }
        total += p_exact;
    }
    return total;
}

}  // namespace testutil
