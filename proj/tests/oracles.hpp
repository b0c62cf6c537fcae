#pragma once

// Brute force reference oracles for the test suite. Everything here works
// straight from the definitions: dense grid scans of t -> ||x + t y|| and
// one sided difference quotients. No ternary search, no subdifferential
// formulas, no convexity shortcuts, so agreement with the library is
// evidence rather than tautology.

#include <cmath>
#include <utility>

#include <bjlab/norms.hpp>

namespace oracle {

using bjlab::Space;
using bjlab::vec;

inline double norm_at(const Space& S, const vec& x, const vec& y, double t) {
    vec w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) w[i] = x[i] + t * y[i];
    return bjlab::norm(S, w);
}

struct ScanMin {
    double t = 0;
    double value = 0;
};

// Nested grid scan of ||x + t y|| over [-span, span]: three refinement
// passes of 4001 points give the minimizer to about 1e-9 span units.
inline ScanMin min_scan(const Space& S, const vec& x, const vec& y, double span = 4.0) {
    double lo = -span, hi = span;
    ScanMin best{0.0, norm_at(S, x, y, 0.0)};
    for (int pass = 0; pass < 3; ++pass) {
        const int n = 4000;
        const double step = (hi - lo) / n;
        double bt = lo, bv = norm_at(S, x, y, lo);
        for (int i = 1; i <= n; ++i) {
            const double t = lo + step * i;
            const double v = norm_at(S, x, y, t);
            if (v < bv) {
                bv = v;
                bt = t;
            }
        }
        if (bv < best.value) best = ScanMin{bt, bv};
        lo = bt - 2.0 * step;
        hi = bt + 2.0 * step;
    }
    return best;
}

// One sided difference quotients of t -> ||x + t y|| at t = 0. For the
// norms here the quotient error is O(h), so h = 1e-7 pins the one sided
// derivatives to roughly 1e-6.
inline double dplus(const Space& S, const vec& x, const vec& y, double h = 1e-7) {
    return (norm_at(S, x, y, h) - bjlab::norm(S, x)) / h;
}

inline double dminus(const Space& S, const vec& x, const vec& y, double h = 1e-7) {
    return (bjlab::norm(S, x) - norm_at(S, x, y, -h)) / h;
}

// Orthogonality by definition on the grid: the scanned minimum must come
// back up to ||x|| within slack.
inline bool ortho_scan(const Space& S, const vec& x, const vec& y, double slack = 1e-7) {
    return min_scan(S, x, y).value >= bjlab::norm(S, x) * (1.0 - slack);
}

} // namespace oracle
