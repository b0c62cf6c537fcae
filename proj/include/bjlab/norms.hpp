#pragma once

// Norm and duality primitives: norm evaluation, dual norms, support
// functional sets J(x) with exact range queries, extreme points of primal and
// dual unit balls, and attainment sets for sup sums.
//
// J(x) = { f in S_X* : f(x) = ||x|| } is kept in one of three exact forms:
//   point       smooth l_p, the unique support functional
//   signed_box  l_1, coordinates sign(x_i) fixed on the support, free in
//               [-1,1] off the support
//   hull        convex hull of finitely many extreme functionals (l_inf,
//               polyhedral, sup sums)
// Range queries min/max of f(y) over J(x) are closed form in all three cases,
// which is what makes the functional orthogonality oracle exact.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "space.hpp"

namespace bjlab {

// Absolute tolerance on unit-scale quantities (norm equalities, feasibility).
constexpr double kTolNorm = 1e-10;
// Relative tolerance for block-norm ties in attainment sets.
constexpr double kTolTie = 1e-9;

namespace detail {

inline double pow_abs(double u, double p) {
    u = std::fabs(u);
    if (p == 2.0) return u * u;
    if (p == 1.0) return u;
    if (p == 3.0) return u * u * u;
    if (p == 1.5) return u * std::sqrt(u);
    if (p == 0.5) return std::sqrt(u);
    return std::pow(u, p);
}

inline double dot(const vec& a, const vec& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline int sgn(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

} // namespace detail

inline double conjugate_exponent(double p) {
    if (p == 1.0) return kInf;
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

inline double lp_norm(double p, const vec& x) {
    if (std::isinf(p)) {
        double m = 0;
        for (double c : x) m = std::max(m, std::fabs(c));
        return m;
    }
    double m = 0;
    for (double c : x) m = std::max(m, std::fabs(c));
    if (m == 0.0) return 0.0;
    // scale by the max coordinate so |x_i|^p cannot overflow for large p
    double s = 0;
    for (double c : x) s += detail::pow_abs(c / m, p);
    if (p == 1.0) return m * s;
    if (p == 2.0) return m * std::sqrt(s);
    return m * std::pow(s, 1.0 / p);
}

inline double norm(const Space& S, const vec& x) {
    check_dim(S, x, "norm");
    switch (S.kind()) {
        case Space::Kind::lp:
            return lp_norm(S.p(), x);
        case Space::Kind::polyhedral: {
            double m = 0;
            for (const auto& g : S.generators()) m = std::max(m, std::fabs(detail::dot(g, x)));
            return m;
        }
        case Space::Kind::sup_sum: {
            double m = 0;
            const auto& bs = S.blocks();
            for (std::size_t k = 0; k < bs.size(); ++k) m = std::max(m, norm(bs[k], block_slice(S, x, k)));
            return m;
        }
    }
    return 0;
}

// Extreme points of the primal unit ball; finite only for l_1, l_inf,
// one dimensional l_p, polyhedral and sup sums of such. Returned with both
// signs included.
inline std::vector<vec> primal_extremes(const Space& S);

// Vertices of { x : |<g_j, x>| <= 1 } by enumerating sign-assigned generator
// subsets of size n and filtering for feasibility.
inline std::vector<vec> polyhedral_vertices(const Space& S) {
    const auto& gens = S.generators();
    const std::size_t n = S.dim(), m = gens.size();
    if (m > 16) throw unsupported_space("polyhedral vertex enumeration limited to 16 generators");
    std::vector<vec> verts;
    auto push_unique = [&](const vec& v) {
        for (const auto& w : verts) {
            double d = 0;
            for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::fabs(v[i] - w[i]));
            if (d <= 1e-8) return;
        }
        verts.push_back(v);
    };
    std::vector<std::size_t> idx(n);
    std::vector<char> choose(m, 0);
    std::fill(choose.begin(), choose.begin() + static_cast<std::ptrdiff_t>(n), 1);
    std::sort(choose.begin(), choose.end());
    // iterate all n-subsets via std::next_permutation over the indicator
    do {
        std::size_t t = 0;
        for (std::size_t j = 0; j < m; ++j)
            if (choose[j]) idx[t++] = j;
        Eigen::MatrixXd A(n, n);
        Eigen::VectorXd b(n);
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            for (std::size_t r = 0; r < n; ++r) {
                const double s = (mask >> r) & 1u ? -1.0 : 1.0;
                for (std::size_t c = 0; c < n; ++c) A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s * gens[idx[r]][c];
                b(static_cast<Eigen::Index>(r)) = 1.0;
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
            if (!lu.isInvertible()) continue;
            Eigen::VectorXd x = lu.solve(b);
            bool feasible = true;
            for (const auto& g : gens) {
                double v = 0;
                for (std::size_t c = 0; c < n; ++c) v += g[c] * x(static_cast<Eigen::Index>(c));
                if (std::fabs(v) > 1.0 + 1e-9) {
                    feasible = false;
                    break;
                }
            }
            if (!feasible) continue;
            vec v(n);
            for (std::size_t c = 0; c < n; ++c) v[c] = x(static_cast<Eigen::Index>(c));
            push_unique(v);
        }
    } while (std::next_permutation(choose.begin(), choose.end()));
    return verts;
}

inline std::vector<vec> primal_extremes(const Space& S) {
    switch (S.kind()) {
        case Space::Kind::lp: {
            const std::size_t n = S.dim();
            if (n == 1) return {{1.0}, {-1.0}};
            if (S.p() == 1.0) {
                std::vector<vec> out;
                for (std::size_t i = 0; i < n; ++i) {
                    vec e(n, 0.0);
                    e[i] = 1.0;
                    out.push_back(e);
                    e[i] = -1.0;
                    out.push_back(e);
                }
                return out;
            }
            if (std::isinf(S.p())) {
                if (n > 20) throw unsupported_space("l_inf extreme enumeration limited to 20 dimensions");
                std::vector<vec> out;
                for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
                    vec v(n);
                    for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1ull ? -1.0 : 1.0;
                    out.push_back(v);
                }
                return out;
            }
            throw unsupported_space("smooth l_p unit ball has a continuum of extreme points");
        }
        case Space::Kind::polyhedral:
            return polyhedral_vertices(S);
        case Space::Kind::sup_sum: {
            // the ball is the product of block balls, so extremes are
            // products of block extremes
            const auto& bs = S.blocks();
            std::vector<vec> acc{vec{}};
            for (const auto& b : bs) {
                auto ext = primal_extremes(b);
                std::vector<vec> next;
                next.reserve(acc.size() * ext.size());
                if (acc.size() * ext.size() > 200000)
                    throw unsupported_space("sup_sum extreme enumeration too large");
                for (const auto& head : acc)
                    for (const auto& e : ext) {
                        vec v = head;
                        v.insert(v.end(), e.begin(), e.end());
                        next.push_back(std::move(v));
                    }
                acc = std::move(next);
            }
            return acc;
        }
    }
    return {};
}

// Extreme points of the dual unit ball, both signs included.
inline std::vector<vec> ext_dual(const Space& S) {
    switch (S.kind()) {
        case Space::Kind::lp: {
            const std::size_t n = S.dim();
            if (n == 1) return {{1.0}, {-1.0}};
            if (std::isinf(S.p())) {
                // dual of l_inf is l_1: extremes +-e_i
                std::vector<vec> out;
                for (std::size_t i = 0; i < n; ++i) {
                    vec e(n, 0.0);
                    e[i] = 1.0;
                    out.push_back(e);
                    e[i] = -1.0;
                    out.push_back(e);
                }
                return out;
            }
            if (S.p() == 1.0) {
                // dual of l_1 is l_inf: extremes are sign vectors
                if (n > 20) throw unsupported_space("l_1 dual extreme enumeration limited to 20 dimensions");
                std::vector<vec> out;
                for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
                    vec v(n);
                    for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1ull ? -1.0 : 1.0;
                    out.push_back(v);
                }
                return out;
            }
            throw unsupported_space("smooth l_p dual ball has a continuum of extreme points");
        }
        case Space::Kind::polyhedral: {
            std::vector<vec> out;
            for (const auto& g : S.generators()) {
                out.push_back(g);
                vec m(g.size());
                for (std::size_t i = 0; i < g.size(); ++i) m[i] = -g[i];
                out.push_back(std::move(m));
            }
            return out;
        }
        case Space::Kind::sup_sum: {
            // dual of an l_inf sum is the l_1 sum; its extremes are single
            // block embeddings of component dual extremes
            std::vector<vec> out;
            const auto& bs = S.blocks();
            for (std::size_t k = 0; k < bs.size(); ++k) {
                const std::size_t off = S.block_offset(k);
                for (const auto& e : ext_dual(bs[k])) {
                    vec v(S.dim(), 0.0);
                    for (std::size_t i = 0; i < e.size(); ++i) v[off + i] = e[i];
                    out.push_back(std::move(v));
                }
            }
            return out;
        }
    }
    return {};
}

inline double dual_norm(const Space& S, const vec& f) {
    check_dim(S, f, "dual_norm");
    switch (S.kind()) {
        case Space::Kind::lp:
            return lp_norm(conjugate_exponent(S.p()), f);
        case Space::Kind::polyhedral: {
            // support function of the primal ball, evaluated over its vertices
            double m = 0;
            for (const auto& v : polyhedral_vertices(S)) m = std::max(m, std::fabs(detail::dot(f, v)));
            return m;
        }
        case Space::Kind::sup_sum: {
            // dual of the l_inf sum carries the l_1 sum norm
            double s = 0;
            const auto& bs = S.blocks();
            for (std::size_t k = 0; k < bs.size(); ++k) s += dual_norm(bs[k], block_slice(S, f, k));
            return s;
        }
    }
    return 0;
}

// Dual space descriptor; defined for lp (conjugate exponent) and polyhedral
// (generators = primal ball vertices, one per sign pair). The dual of a sup
// sum is an l_1 sum, which is outside the descriptor grammar.
inline Space dual_space(const Space& S) {
    switch (S.kind()) {
        case Space::Kind::lp:
            return Space::lp(conjugate_exponent(S.p()), S.dim());
        case Space::Kind::polyhedral: {
            auto verts = polyhedral_vertices(S);
            // keep one representative per +- pair, canonical sign: first
            // nonzero coordinate positive
            std::vector<vec> reps;
            for (auto& v : verts) {
                int s = 0;
                for (double c : v)
                    if (std::fabs(c) > 1e-12) {
                        s = detail::sgn(c);
                        break;
                    }
                if (s < 0) continue;
                reps.push_back(std::move(v));
            }
            return Space::polyhedral(std::move(reps));
        }
        case Space::Kind::sup_sum:
            throw unsupported_space("dual of a sup_sum is an l_1 sum, not representable");
    }
    throw unsupported_space("dual_space: unknown kind");
}

// ---------------------------------------------------------------------------
// support functional sets

struct Range {
    double lo = 0, hi = 0;
    bool contains_zero(double tol = kTolNorm) const { return lo <= tol && hi >= -tol; }
};

struct JSet {
    enum class Kind { point, signed_box, hull };
    Kind kind = Kind::point;
    vec f;                  // point: the functional
    std::vector<int> signs; // signed_box: +-1 fixed coordinates, 0 free
    std::vector<vec> gens;  // hull: extreme functionals
};

// J(x) for nonzero x. Active coordinate / generator selection uses a relative
// kTolNorm band so verdicts are invariant under positive scaling of x.
inline JSet support_set(const Space& S, const vec& x) {
    check_dim(S, x, "support_set");
    const double nx = norm(S, x);
    if (!(nx > 0)) throw std::invalid_argument("support_set: x must be nonzero");
    JSet J;
    switch (S.kind()) {
        case Space::Kind::lp: {
            const double p = S.p();
            const std::size_t n = S.dim();
            if (p == 1.0) {
                J.kind = JSet::Kind::signed_box;
                J.signs.resize(n);
                for (std::size_t i = 0; i < n; ++i)
                    J.signs[i] = std::fabs(x[i]) > nx * kTolNorm ? detail::sgn(x[i]) : 0;
                return J;
            }
            if (std::isinf(p)) {
                J.kind = JSet::Kind::hull;
                for (std::size_t i = 0; i < n; ++i)
                    if (std::fabs(x[i]) >= nx * (1.0 - kTolNorm)) {
                        vec e(n, 0.0);
                        e[i] = static_cast<double>(detail::sgn(x[i]));
                        J.gens.push_back(std::move(e));
                    }
                return J;
            }
            // smooth case: f_i = sign(x_i) (|x_i|/||x||)^{p-1}, dual norm 1
            J.kind = JSet::Kind::point;
            J.f.resize(n);
            for (std::size_t i = 0; i < n; ++i)
                J.f[i] = detail::sgn(x[i]) * detail::pow_abs(x[i] / nx, p - 1.0);
            return J;
        }
        case Space::Kind::polyhedral: {
            J.kind = JSet::Kind::hull;
            for (const auto& g : S.generators()) {
                const double v = detail::dot(g, x);
                if (std::fabs(v) >= nx * (1.0 - kTolNorm)) {
                    vec h(g.size());
                    const double s = static_cast<double>(detail::sgn(v));
                    for (std::size_t i = 0; i < g.size(); ++i) h[i] = s * g[i];
                    J.gens.push_back(std::move(h));
                }
            }
            return J;
        }
        case Space::Kind::sup_sum: {
            // hull of block embeddings of component support extremes over
            // norm attaining blocks
            J.kind = JSet::Kind::hull;
            const auto& bs = S.blocks();
            for (std::size_t k = 0; k < bs.size(); ++k) {
                const vec xk = block_slice(S, x, k);
                if (norm(bs[k], xk) < nx * (1.0 - kTolTie)) continue;
                const JSet Jk = support_set(bs[k], xk);
                const std::size_t off = S.block_offset(k);
                auto embed = [&](const vec& h) {
                    vec v(S.dim(), 0.0);
                    for (std::size_t i = 0; i < h.size(); ++i) v[off + i] = h[i];
                    J.gens.push_back(std::move(v));
                };
                switch (Jk.kind) {
                    case JSet::Kind::point:
                        embed(Jk.f);
                        break;
                    case JSet::Kind::hull:
                        for (const auto& h : Jk.gens) embed(h);
                        break;
                    case JSet::Kind::signed_box: {
                        std::vector<std::size_t> free;
                        for (std::size_t i = 0; i < Jk.signs.size(); ++i)
                            if (Jk.signs[i] == 0) free.push_back(i);
                        if (free.size() > 20) throw unsupported_space("signed box has too many free coordinates");
                        for (std::uint64_t mask = 0; mask < (1ull << free.size()); ++mask) {
                            vec h(Jk.signs.size());
                            for (std::size_t i = 0; i < Jk.signs.size(); ++i) h[i] = Jk.signs[i];
                            for (std::size_t t = 0; t < free.size(); ++t)
                                h[free[t]] = (mask >> t) & 1ull ? -1.0 : 1.0;
                            embed(h);
                        }
                        break;
                    }
                }
            }
            return J;
        }
    }
    return J;
}

// min and max of f(y) over f in J; closed form in all three representations.
inline Range jset_range(const JSet& J, const vec& y) {
    switch (J.kind) {
        case JSet::Kind::point: {
            if (J.f.size() != y.size()) throw dimension_error("jset_range: dimension mismatch");
            const double v = detail::dot(J.f, y);
            return {v, v};
        }
        case JSet::Kind::signed_box: {
            if (J.signs.size() != y.size()) throw dimension_error("jset_range: dimension mismatch");
            double base = 0, slack = 0;
            for (std::size_t i = 0; i < y.size(); ++i) {
                if (J.signs[i] != 0)
                    base += J.signs[i] * y[i];
                else
                    slack += std::fabs(y[i]);
            }
            return {base - slack, base + slack};
        }
        case JSet::Kind::hull: {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (const auto& g : J.gens) {
                if (g.size() != y.size()) throw dimension_error("jset_range: dimension mismatch");
                const double v = detail::dot(g, y);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            return {lo, hi};
        }
    }
    return {};
}

// Deterministic representative of J: the point itself, zeros on free box
// coordinates, or the average of hull generators. Averaging stays inside J
// because f(x) = ||x|| is an affine constraint.
inline vec jset_centroid(const JSet& J) {
    switch (J.kind) {
        case JSet::Kind::point:
            return J.f;
        case JSet::Kind::signed_box: {
            vec f(J.signs.size());
            for (std::size_t i = 0; i < f.size(); ++i) f[i] = J.signs[i];
            return f;
        }
        case JSet::Kind::hull: {
            vec f(J.gens.front().size(), 0.0);
            for (const auto& g : J.gens)
                for (std::size_t i = 0; i < f.size(); ++i) f[i] += g[i];
            for (auto& c : f) c /= static_cast<double>(J.gens.size());
            return f;
        }
    }
    return {};
}

// Finite extreme description of J; the smooth point counts as its own
// extreme. Used by searches to sample the whole face.
inline std::vector<vec> jset_extremes(const JSet& J) {
    switch (J.kind) {
        case JSet::Kind::point:
            return {J.f};
        case JSet::Kind::signed_box: {
            std::vector<std::size_t> free;
            for (std::size_t i = 0; i < J.signs.size(); ++i)
                if (J.signs[i] == 0) free.push_back(i);
            if (free.size() > 20) throw unsupported_space("signed box has too many free coordinates");
            std::vector<vec> out;
            for (std::uint64_t mask = 0; mask < (1ull << free.size()); ++mask) {
                vec h(J.signs.size());
                for (std::size_t i = 0; i < J.signs.size(); ++i) h[i] = J.signs[i];
                for (std::size_t t = 0; t < free.size(); ++t) h[free[t]] = (mask >> t) & 1ull ? -1.0 : 1.0;
                out.push_back(std::move(h));
            }
            return out;
        }
        case JSet::Kind::hull:
            return J.gens;
    }
    return {};
}

// Norm attaining block indices of a sup sum tuple, relative tie tolerance.
inline std::vector<std::size_t> attainment(const Space& S, const vec& f, double tie_rel = kTolTie) {
    if (S.kind() != Space::Kind::sup_sum) throw std::invalid_argument("attainment: sup_sum space required");
    check_dim(S, f, "attainment");
    const auto& bs = S.blocks();
    std::vector<double> bn(bs.size());
    double m = 0;
    for (std::size_t k = 0; k < bs.size(); ++k) {
        bn[k] = norm(bs[k], block_slice(S, f, k));
        m = std::max(m, bn[k]);
    }
    std::vector<std::size_t> out;
    if (m == 0.0) return out;
    for (std::size_t k = 0; k < bs.size(); ++k)
        if (bn[k] >= m * (1.0 - tie_rel)) out.push_back(k);
    return out;
}

} // namespace bjlab
