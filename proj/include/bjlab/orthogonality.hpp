#pragma once

// Birkhoff-James orthogonality oracles.
//
// x is BJ-orthogonal to y when ||x + t y|| >= ||x|| for every real t. Three
// decision procedures are provided and kept deliberately independent:
//
//   is_bj_min         minimizes t -> ||x + t y|| (convex) by ternary search
//   is_bj_functional  exact: 0 in [min, max] of f(y) over f in J(x)
//   supsum_orthogonal sup-sum criterion over norm attaining blocks
//
// The min oracle reports Inconclusive inside the relative band
// [1 - 10 tol_rel, 1 - tol_rel] of ||x||; the functional oracle is exact and
// never inconclusive.

#include <cmath>
#include <optional>

#include "norms.hpp"

namespace bjlab {

// Default relative tolerance for min-oracle decisions.
constexpr double kTolRel = 1e-9;

enum class Decision { orthogonal, not_orthogonal, inconclusive };

inline const char* to_string(Decision d) {
    switch (d) {
        case Decision::orthogonal: return "orthogonal";
        case Decision::not_orthogonal: return "not_orthogonal";
        case Decision::inconclusive: return "inconclusive";
    }
    return "?";
}

struct MinResult {
    double lambda_star = 0;
    double value = 0;
};

enum class LineDomain { all, nonneg, nonpos };

// Minimize ||x + t y|| over the requested t-domain. The objective is convex,
// and any minimizer lies in [-R, R] with R = 2||x||/||y|| + 1: beyond R the
// value exceeds |t| ||y|| - ||x|| > ||x||, which t = 0 already beats.
// `iters` ternary steps shrink the bracket by (2/3) each; the loop stops
// early once the bracket is at floating point resolution.
inline MinResult min_norm_along(const Space& S, const vec& x, const vec& y,
                                LineDomain dom = LineDomain::all, int iters = 220) {
    check_dim(S, x, "min_norm_along");
    check_dim(S, y, "min_norm_along");
    const double ny = norm(S, y);
    if (!(ny > 0)) throw std::invalid_argument("min_norm_along: y must be nonzero");
    const double nx = norm(S, x);
    const double R = 2.0 * nx / ny + 1.0;
    double lo = dom == LineDomain::nonneg ? 0.0 : -R;
    double hi = dom == LineDomain::nonpos ? 0.0 : R;

    vec tmp(x.size());
    auto eval = [&](double t) {
        for (std::size_t i = 0; i < x.size(); ++i) tmp[i] = x[i] + t * y[i];
        return norm(S, tmp);
    };

    const double width_eps = 1e-14 * (1.0 + R);
    for (int it = 0; it < iters && hi - lo > width_eps; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (eval(m1) <= eval(m2))
            hi = m2;
        else
            lo = m1;
    }
    MinResult r;
    r.lambda_star = 0.5 * (lo + hi);
    r.value = eval(r.lambda_star);
    // t = 0 is always admissible; never report a value above ||x||
    if (nx < r.value) {
        r.lambda_star = 0.0;
        r.value = nx;
    }
    return r;
}

// Minimizer of the convex map t -> ||z + t y|| located by bisection on its
// subderivative interval {f(y) : f in J(z + t y)}, which is monotone in t.
// Value-based ternary stalls at sqrt(eps) accuracy in t; the sign test runs
// down to machine resolution, which downstream functional-range checks at
// kTolNorm need (a sqrt(eps) foot leaves residuals near 1e-8 on curved norms).
inline double foot_lambda(const Space& S, const vec& z, const vec& y) {
    check_dim(S, z, "foot_lambda");
    check_dim(S, y, "foot_lambda");
    const double ny = norm(S, y);
    if (!(ny > 0)) throw std::invalid_argument("foot_lambda: y must be nonzero");
    const double nz = norm(S, z);
    const double R = 2.0 * nz / ny + 1.0;
    double lo = -R, hi = R;
    vec w(z.size());
    for (int it = 0; it < 160 && hi - lo > 1e-16 * (1.0 + std::fabs(lo) + std::fabs(hi)); ++it) {
        const double m = 0.5 * (lo + hi);
        for (std::size_t i = 0; i < z.size(); ++i) w[i] = z[i] + m * y[i];
        if (norm(S, w) <= 1e-15 * std::max(1.0, nz)) return m; // z + m y = 0: global minimum
        const Range d = jset_range(support_set(S, w), y);
        if (d.hi < 0.0)
            lo = m; // still descending
        else if (d.lo > 0.0)
            hi = m; // already ascending
        else
            return m; // subderivative straddles zero: m minimizes
    }
    return 0.5 * (lo + hi);
}

struct OrthoVerdict {
    Decision decision = Decision::inconclusive;
    const char* oracle = "";
    std::optional<MinResult> min;   // min oracle certificate
    std::optional<Range> range;     // functional / supsum oracle certificate
    // supsum criterion: blocks witnessing sup f(y) >= 0 and inf f(y) <= 0
    std::optional<std::size_t> witness_plus, witness_minus;
};

// Minimization oracle. Orthogonal when the line minimum stays within
// tol_rel of ||x||, NotOrthogonal when it drops below 1 - 10 tol_rel,
// Inconclusive in between.
inline OrthoVerdict is_bj_min(const Space& S, const vec& x, const vec& y, double tol_rel = kTolRel,
                              int iters = 220) {
    OrthoVerdict v;
    v.oracle = "min";
    const double nx = norm(S, x);
    if (!(nx > 0)) {
        // 0 is orthogonal to everything
        v.decision = Decision::orthogonal;
        v.min = MinResult{0.0, 0.0};
        return v;
    }
    if (!(norm(S, y) > 0)) {
        // everything is orthogonal to 0: the line degenerates to x
        v.decision = Decision::orthogonal;
        v.min = MinResult{0.0, nx};
        return v;
    }
    const MinResult r = min_norm_along(S, x, y, LineDomain::all, iters);
    v.min = r;
    if (r.value >= nx * (1.0 - tol_rel))
        v.decision = Decision::orthogonal;
    else if (r.value <= nx * (1.0 - 10.0 * tol_rel))
        v.decision = Decision::not_orthogonal;
    else
        v.decision = Decision::inconclusive;
    return v;
}

// James criterion: x is orthogonal to y iff some f in J(x) kills y, i.e. iff
// 0 lies in the exact range of f(y) over J(x). Inputs are normalized first so
// the absolute tol_norm acts on unit scale.
inline OrthoVerdict is_bj_functional(const Space& S, const vec& x, const vec& y,
                                     double tol_norm = kTolNorm) {
    OrthoVerdict v;
    v.oracle = "functional";
    const double nx = norm(S, x), ny = norm(S, y);
    if (!(nx > 0)) {
        v.decision = Decision::orthogonal;
        v.range = Range{0.0, 0.0};
        return v;
    }
    vec xh(x), yh(y);
    for (auto& c : xh) c /= nx;
    if (ny > 0)
        for (auto& c : yh) c /= ny;
    const Range r = jset_range(support_set(S, xh), yh);
    v.range = r;
    v.decision = r.contains_zero(tol_norm) ? Decision::orthogonal : Decision::not_orthogonal;
    return v;
}

// Cone memberships. y in x+ means ||x + t y|| >= ||x|| for all t >= 0, which
// by convexity is equivalent to max_{f in J(x)} f(y) >= 0; mirrored for x-.
// Every pair lands in at least one cone since the range is nonempty.
inline bool in_plus(const Space& S, const vec& x, const vec& y, double tol_norm = kTolNorm) {
    const double nx = norm(S, x);
    if (!(nx > 0)) throw std::invalid_argument("in_plus: x must be nonzero");
    vec xh(x);
    for (auto& c : xh) c /= nx;
    const double ny = norm(S, y);
    vec yh(y);
    if (ny > 0)
        for (auto& c : yh) c /= ny;
    return jset_range(support_set(S, xh), yh).hi >= -tol_norm;
}

inline bool in_minus(const Space& S, const vec& x, const vec& y, double tol_norm = kTolNorm) {
    const double nx = norm(S, x);
    if (!(nx > 0)) throw std::invalid_argument("in_minus: x must be nonzero");
    vec xh(x);
    for (auto& c : xh) c /= nx;
    const double ny = norm(S, y);
    vec yh(y);
    if (ny > 0)
        for (auto& c : yh) c /= ny;
    return jset_range(support_set(S, xh), yh).lo <= tol_norm;
}

// Approximate cones: y in x+(eps) when the minimum of ||x + t y|| over t >= 0
// stays above sqrt(1 - eps^2) ||x||.
inline bool in_plus_eps(const Space& S, const vec& x, const vec& y, double eps,
                        double tol_rel = kTolRel) {
    if (!(eps >= 0.0 && eps < 1.0)) throw std::invalid_argument("in_plus_eps: eps must lie in [0,1)");
    const double nx = norm(S, x);
    if (!(nx > 0)) throw std::invalid_argument("in_plus_eps: x must be nonzero");
    const double thresh = std::sqrt(1.0 - eps * eps) * nx;
    const MinResult r = min_norm_along(S, x, y, LineDomain::nonneg);
    return r.value >= thresh * (1.0 - tol_rel);
}

inline bool in_minus_eps(const Space& S, const vec& x, const vec& y, double eps,
                         double tol_rel = kTolRel) {
    if (!(eps >= 0.0 && eps < 1.0)) throw std::invalid_argument("in_minus_eps: eps must lie in [0,1)");
    const double nx = norm(S, x);
    if (!(nx > 0)) throw std::invalid_argument("in_minus_eps: x must be nonzero");
    const double thresh = std::sqrt(1.0 - eps * eps) * nx;
    const MinResult r = min_norm_along(S, x, y, LineDomain::nonpos);
    return r.value >= thresh * (1.0 - tol_rel);
}

// Sup-sum criterion: f is orthogonal to g iff 0 lies in the convex hull of
// the block ranges over norm attaining blocks, i.e. some attaining block has
// sup J(f(k))(g(k)) >= 0 and some attaining block has inf <= 0.
inline OrthoVerdict supsum_orthogonal(const Space& S, const vec& f, const vec& g,
                                      double tol_norm = kTolNorm, double tie_rel = kTolTie) {
    if (S.kind() != Space::Kind::sup_sum)
        throw std::invalid_argument("supsum_orthogonal: sup_sum space required");
    check_dim(S, f, "supsum_orthogonal");
    check_dim(S, g, "supsum_orthogonal");
    OrthoVerdict v;
    v.oracle = "supsum";
    const double nf = norm(S, f);
    if (!(nf > 0)) {
        v.decision = Decision::orthogonal;
        v.range = Range{0.0, 0.0};
        return v;
    }
    const double ng = norm(S, g);
    const auto& bs = S.blocks();
    const auto M = attainment(S, f, tie_rel);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    std::size_t kplus = 0, kminus = 0;
    for (const std::size_t k : M) {
        vec fk = block_slice(S, f, k), gk = block_slice(S, g, k);
        for (auto& c : fk) c /= nf;
        if (ng > 0)
            for (auto& c : gk) c /= ng;
        const Range r = jset_range(support_set(bs[k], fk), gk);
        if (r.hi > hi) {
            hi = r.hi;
            kplus = k;
        }
        if (r.lo < lo) {
            lo = r.lo;
            kminus = k;
        }
    }
    v.range = Range{lo, hi};
    if (lo <= tol_norm && hi >= -tol_norm) {
        v.decision = Decision::orthogonal;
        v.witness_plus = kplus;
        v.witness_minus = kminus;
    } else {
        v.decision = Decision::not_orthogonal;
    }
    return v;
}

// Theorem-shaped variant: reports the two cone witnesses explicitly, with a
// fast path for an attaining block on which g vanishes (0 lies in both
// cones). Decision-equivalent to supsum_orthogonal by construction; the
// value is in the certificates.
inline OrthoVerdict supsum_orthogonal_general(const Space& S, const vec& f, const vec& g,
                                              double tol_norm = kTolNorm, double tie_rel = kTolTie) {
    if (S.kind() != Space::Kind::sup_sum)
        throw std::invalid_argument("supsum_orthogonal_general: sup_sum space required");
    check_dim(S, f, "supsum_orthogonal_general");
    check_dim(S, g, "supsum_orthogonal_general");
    OrthoVerdict v;
    v.oracle = "supsum_general";
    const double nf = norm(S, f);
    if (!(nf > 0)) {
        v.decision = Decision::orthogonal;
        v.range = Range{0.0, 0.0};
        return v;
    }
    const double ng = norm(S, g);
    const auto& bs = S.blocks();
    const auto M = attainment(S, f, tie_rel);
    // fast path: g vanishes on an attaining block
    for (const std::size_t k : M) {
        const vec gk = block_slice(S, g, k);
        if (norm(bs[k], gk) <= (ng > 0 ? ng : 1.0) * tol_norm) {
            v.decision = Decision::orthogonal;
            v.witness_plus = k;
            v.witness_minus = k;
            v.range = Range{0.0, 0.0};
            return v;
        }
    }
    std::optional<std::size_t> kplus, kminus;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const std::size_t k : M) {
        vec fk = block_slice(S, f, k), gk = block_slice(S, g, k);
        for (auto& c : fk) c /= nf;
        if (ng > 0)
            for (auto& c : gk) c /= ng;
        const Range r = jset_range(support_set(bs[k], fk), gk);
        lo = std::min(lo, r.lo);
        hi = std::max(hi, r.hi);
        if (!kplus && r.hi >= -tol_norm) kplus = k;   // g(k) in f(k)+
        if (!kminus && r.lo <= tol_norm) kminus = k;  // g(k) in f(k)-
    }
    v.range = Range{lo, hi};
    if (kplus && kminus) {
        v.decision = Decision::orthogonal;
        v.witness_plus = kplus;
        v.witness_minus = kminus;
    } else {
        v.decision = Decision::not_orthogonal;
    }
    return v;
}

} // namespace bjlab
