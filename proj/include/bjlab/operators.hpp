#pragma once

// Operators between descriptor spaces, stored as dense row-major matrices.
//
// The reductions that drive everything here:
//   L(l_1^m, Y)      is isometric to the m-fold sup sum of Y via columns
//   L(X, l_inf^n)    is isometric to the n-fold sup sum of X* via rows
// so operator norm, left and right symmetry classification and witnesses all
// transport to the sup sum machinery. Rank one operators x -> f(x) w carry
// their own attainment structure: the norm is attained exactly on one +- pair
// of vertices / one face, which powers the finite orthogonality criterion and
// the Hilbert space probe.

#include <Eigen/Dense>

#include "symmetry.hpp"

namespace bjlab {

struct Operator {
    Space domain;
    Space codomain;
    vec entries; // row-major, codomain.dim() x domain.dim()

    double at(std::size_t i, std::size_t j) const { return entries[i * domain.dim() + j]; }
    std::size_t rows() const { return codomain.dim(); }
    std::size_t cols() const { return domain.dim(); }
};

inline Operator make_operator(Space domain, Space codomain, vec entries) {
    if (entries.size() != domain.dim() * codomain.dim())
        throw dimension_error("make_operator: entry count does not match dimensions");
    return Operator{std::move(domain), std::move(codomain), std::move(entries)};
}

// x -> f(x) w
inline Operator rank1(const Space& domain, const Space& codomain, const vec& f, const vec& w) {
    check_dim(domain, f, "rank1 functional");
    check_dim(codomain, w, "rank1 value");
    vec e(domain.dim() * codomain.dim());
    for (std::size_t i = 0; i < codomain.dim(); ++i)
        for (std::size_t j = 0; j < domain.dim(); ++j) e[i * domain.dim() + j] = w[i] * f[j];
    return Operator{domain, codomain, std::move(e)};
}

inline vec image(const Operator& T, const vec& x) {
    check_dim(T.domain, x, "image");
    vec y(T.rows(), 0.0);
    for (std::size_t i = 0; i < T.rows(); ++i) {
        double s = 0;
        for (std::size_t j = 0; j < T.cols(); ++j) s += T.at(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

inline vec row(const Operator& T, std::size_t i) {
    vec r(T.cols());
    for (std::size_t j = 0; j < T.cols(); ++j) r[j] = T.at(i, j);
    return r;
}

inline vec col(const Operator& T, std::size_t j) {
    vec c(T.rows());
    for (std::size_t i = 0; i < T.rows(); ++i) c[i] = T.at(i, j);
    return c;
}

// T* applied to a codomain functional: y* composed with T, coordinates on the
// domain side.
inline vec adjoint_apply(const Operator& T, const vec& ystar) {
    if (ystar.size() != T.rows()) throw dimension_error("adjoint_apply: functional dimension mismatch");
    vec r(T.cols(), 0.0);
    for (std::size_t j = 0; j < T.cols(); ++j) {
        double s = 0;
        for (std::size_t i = 0; i < T.rows(); ++i) s += ystar[i] * T.at(i, j);
        r[j] = s;
    }
    return r;
}

// ---------------------------------------------------------------------------
// operator norm, three routes

// ||T|| = max_j ||T e_j|| for an l_1 domain (any one dimensional lp domain
// is the same space).
inline double operator_norm_via_columns(const Operator& T) {
    const bool ok = T.domain.kind() == Space::Kind::lp && (T.domain.p() == 1.0 || T.domain.dim() == 1);
    if (!ok) throw std::invalid_argument("column route needs an l_1 domain");
    double m = 0;
    for (std::size_t j = 0; j < T.cols(); ++j) m = std::max(m, norm(T.codomain, col(T, j)));
    return m;
}

// ||T|| = max_i ||row_i||_{X*} for an l_inf codomain.
inline double operator_norm_via_rows(const Operator& T) {
    const bool ok = T.codomain.kind() == Space::Kind::lp && (std::isinf(T.codomain.p()) || T.codomain.dim() == 1);
    if (!ok) throw std::invalid_argument("row route needs an l_inf codomain");
    double m = 0;
    for (std::size_t i = 0; i < T.rows(); ++i) m = std::max(m, dual_norm(T.domain, row(T, i)));
    return m;
}

// ||T|| = max ||Tv|| over extreme points v of the domain ball; needs a domain
// with finitely many extreme points.
inline double operator_norm_via_extremes(const Operator& T) {
    double m = 0;
    for (const auto& v : primal_extremes(T.domain)) m = std::max(m, norm(T.codomain, image(T, v)));
    return m;
}

inline double operator_norm(const Operator& T) {
    if (T.domain.is_lp(1.0)) return operator_norm_via_columns(T);
    if (T.codomain.is_lp(kInf)) return operator_norm_via_rows(T);
    try {
        return operator_norm_via_extremes(T);
    } catch (const unsupported_space&) {
        throw unsupported_space(
            "operator norm needs an l_1 domain, an l_inf codomain, or a domain with finitely many extreme points");
    }
}

// ---------------------------------------------------------------------------
// isometric embeddings into sup sums

// L(l_1^m, Y) = sup sum of m copies of Y, tuple of columns.
inline std::pair<Space, vec> embed_l1_domain(const Operator& T) {
    if (!T.domain.is_lp(1.0)) throw std::invalid_argument("embed_l1_domain: domain must be lp(1,m)");
    std::vector<Space> blocks(T.cols(), T.codomain);
    vec tuple;
    tuple.reserve(T.cols() * T.rows());
    for (std::size_t j = 0; j < T.cols(); ++j) {
        const vec c = col(T, j);
        tuple.insert(tuple.end(), c.begin(), c.end());
    }
    return {Space::sup_sum(std::move(blocks)), std::move(tuple)};
}

// L(X, l_inf^n) = sup sum of n copies of X*, tuple of rows.
inline std::pair<Space, vec> embed_linf_codomain(const Operator& T) {
    if (!T.codomain.is_lp(kInf)) throw std::invalid_argument("embed_linf_codomain: codomain must be lp(inf,n)");
    const Space dual = dual_space(T.domain);
    std::vector<Space> blocks(T.rows(), dual);
    vec tuple;
    tuple.reserve(T.cols() * T.rows());
    for (std::size_t i = 0; i < T.rows(); ++i) {
        const vec r = row(T, i);
        tuple.insert(tuple.end(), r.begin(), r.end());
    }
    return {Space::sup_sum(std::move(blocks)), std::move(tuple)};
}

// ---------------------------------------------------------------------------
// attainment structure

struct FaceSet {
    std::vector<vec> vertices; // attaining vertex representatives (one per +- pair)
    bool single_face = false;  // all attaining vertices sign-align into one face
    vec functional;            // shared supporting functional when single_face
};

// Attaining extreme points of the domain ball, deduplicated up to sign, plus
// the single-face check: after aligning signs by the direction of the image,
// the vertices lie in one face iff their mean is on the unit sphere; any
// support functional of the mean then touches every vertex.
inline FaceSet attainment_faces(const Operator& T, double tie_rel = kTolTie) {
    FaceSet F;
    std::vector<vec> reps;
    for (auto& v : primal_extremes(T.domain)) {
        int s = 0;
        for (double c : v)
            if (std::fabs(c) > 1e-12) {
                s = c > 0 ? 1 : -1;
                break;
            }
        if (s < 0) continue;
        reps.push_back(std::move(v));
    }
    double best = 0;
    std::vector<double> vals(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
        vals[i] = norm(T.codomain, image(T, reps[i]));
        best = std::max(best, vals[i]);
    }
    if (!(best > 0)) {
        F.single_face = false;
        return F; // zero operator: no attaining direction to report
    }
    for (std::size_t i = 0; i < reps.size(); ++i)
        if (vals[i] >= best * (1.0 - tie_rel)) F.vertices.push_back(reps[i]);

    // sign alignment by the euclidean inner product of images
    const vec img0 = image(T, F.vertices.front());
    std::vector<vec> aligned;
    bool alignable = true;
    for (const auto& v : F.vertices) {
        const vec img = image(T, v);
        const double d = detail::dot(img, img0);
        if (std::fabs(d) <= 1e-12 * best * best && F.vertices.size() > 1) {
            alignable = false;
            break;
        }
        vec u = v;
        if (d < 0)
            for (auto& c : u) c = -c;
        aligned.push_back(std::move(u));
    }
    if (!alignable) {
        F.single_face = false;
        return F;
    }
    vec c(T.domain.dim(), 0.0);
    for (const auto& u : aligned)
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += u[i];
    for (auto& x : c) x /= static_cast<double>(aligned.size());
    const double cn = norm(T.domain, c);
    if (std::fabs(cn - 1.0) > 1e-9) {
        F.single_face = false;
        return F;
    }
    const vec phi = jset_centroid(support_set(T.domain, c));
    for (const auto& u : aligned)
        if (std::fabs(detail::dot(phi, u) - 1.0) > 1e-8) {
            F.single_face = false;
            return F;
        }
    F.single_face = true;
    F.functional = phi;
    F.vertices = std::move(aligned);
    return F;
}

// ---------------------------------------------------------------------------
// symmetry classification via the embeddings

namespace detail {

inline void require_unit_operator(const Operator& T, const char* what) {
    if (std::fabs(operator_norm(T) - 1.0) > kTolForm)
        throw std::invalid_argument(std::string(what) + ": unit norm operator required");
}

} // namespace detail

inline bool classify_left_operator(const Operator& T, double tol_form = kTolForm) {
    detail::require_unit_operator(T, "classify_left_operator");
    if (T.domain.is_lp(1.0)) {
        const auto [S, t] = embed_l1_domain(T);
        return classify_left_supsum(S, t, tol_form);
    }
    if (T.codomain.is_lp(kInf)) {
        const auto [S, t] = embed_linf_codomain(T);
        return classify_left_supsum(S, t, tol_form);
    }
    throw unsupported_space("classify_left_operator needs an l_1 domain or an l_inf codomain");
}

inline bool classify_right_operator(const Operator& T, double tol_form = kTolForm) {
    detail::require_unit_operator(T, "classify_right_operator");
    if (T.domain.is_lp(1.0)) {
        const auto [S, t] = embed_l1_domain(T);
        return classify_right_supsum(S, t, tol_form);
    }
    if (T.codomain.is_lp(kInf)) {
        const auto [S, t] = embed_linf_codomain(T);
        return classify_right_supsum(S, t, tol_form);
    }
    throw unsupported_space("classify_right_operator needs an l_1 domain or an l_inf codomain");
}

// Sufficient condition for left symmetry of a unit T: among the extreme
// functionals of the codomain ball exactly one +- pair has T* y* nonzero,
// that image has unit dual norm, and it is a left symmetric point of the
// domain dual.
inline bool check_nice_left_sufficient(const Operator& T, double tol_form = kTolForm) {
    detail::require_unit_operator(T, "check_nice_left_sufficient");
    std::vector<vec> reps;
    for (auto& y : ext_dual(T.codomain)) {
        int s = 0;
        for (double c : y)
            if (std::fabs(c) > 1e-12) {
                s = c > 0 ? 1 : -1;
                break;
            }
        if (s < 0) continue;
        reps.push_back(std::move(y));
    }
    const Space dual = dual_space(T.domain);
    std::optional<vec> image;
    for (const auto& y : reps) {
        vec u = adjoint_apply(T, y);
        if (dual_norm(T.domain, u) <= tol_form) continue;
        if (image) return false; // second nonzero pair
        image = std::move(u);
    }
    if (!image) return false;
    const double un = dual_norm(T.domain, *image);
    if (std::fabs(un - 1.0) > tol_form) return false;
    vec u = *image;
    for (auto& c : u) c /= un;
    return classify_left_value(dual, u, tol_form);
}

// ---------------------------------------------------------------------------
// orthogonality of operators through attainment

namespace detail {

// For a numerically rank one T on a smooth l_p domain, the unique (up to
// sign) norm attaining unit vector: x_i = sign(f_i) |f_i|^{q-1} normalized,
// where f spans the row space and q is the conjugate exponent.
inline std::optional<vec> rank1_norming_vector(const Operator& T) {
    const double p = T.domain.p();
    std::size_t imax = 0;
    double best = -1;
    for (std::size_t i = 0; i < T.rows(); ++i) {
        const vec r = row(T, i);
        const double n2 = dot(r, r);
        if (n2 > best) {
            best = n2;
            imax = i;
        }
    }
    if (!(best > 0)) return std::nullopt; // zero operator
    const vec f = row(T, imax);
    // all rows must be multiples of f
    for (std::size_t i = 0; i < T.rows(); ++i) {
        const vec r = row(T, i);
        const double c = dot(r, f) / best;
        for (std::size_t j = 0; j < T.cols(); ++j)
            if (std::fabs(r[j] - c * f[j]) > 1e-9 * std::sqrt(best)) return std::nullopt;
    }
    const double q = conjugate_exponent(p);
    vec x(T.cols());
    for (std::size_t j = 0; j < T.cols(); ++j) x[j] = sgn(f[j]) * pow_abs(f[j], q - 1.0);
    const double nx = lp_norm(p, x);
    if (!(nx > 0)) return std::nullopt;
    for (auto& c : x) c /= nx;
    return x;
}

} // namespace detail

// Decide T B-orthogonal to S through the attainment criterion: T is
// orthogonal to S iff over the attaining vertices v (one per sign pair, sign
// irrelevant by linearity) the J(Tv)-ranges of Sv reach both signs, i.e.
// max hi >= 0 and min lo <= 0. Domains: finitely many extreme points, or a
// smooth l_p domain with T of rank one. A convex cross check over
// ||T + t S|| is attached whenever the operator norm is computable.
inline OrthoVerdict ortho_operators_rank1(const Operator& T, const Operator& S,
                                          double tol_norm = kTolNorm, double tie_rel = kTolTie) {
    if (T.domain != S.domain || T.codomain != S.codomain)
        throw dimension_error("ortho_operators_rank1: operator shapes differ");
    OrthoVerdict v;
    v.oracle = "operator_attainment";

    std::vector<vec> verts;
    bool smooth_domain = T.domain.kind() == Space::Kind::lp && T.domain.p() > 1.0 &&
                         !std::isinf(T.domain.p()) && T.domain.dim() > 1;
    if (smooth_domain) {
        const auto x = detail::rank1_norming_vector(T);
        if (!x) throw unsupported_space("smooth domain needs T of rank one");
        verts.push_back(*x);
    } else {
        const FaceSet F = attainment_faces(T, tie_rel);
        verts = F.vertices;
        if (verts.empty()) {
            // T = 0 is orthogonal to everything
            v.decision = Decision::orthogonal;
            v.range = Range{0.0, 0.0};
            return v;
        }
    }

    // scale S's images to unit order so tol_norm applies
    double sscale = 0;
    for (const auto& w : verts) sscale = std::max(sscale, norm(T.codomain, image(S, w)));
    if (!(sscale > 0)) sscale = 1.0;

    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const vec img = image(T, verts[i]);
        vec simg = image(S, verts[i]);
        for (auto& c : simg) c /= sscale;
        const Range r = jset_range(support_set(T.codomain, img), simg);
        if (r.hi > hi) {
            hi = r.hi;
            v.witness_plus = i;
        }
        if (r.lo < lo) {
            lo = r.lo;
            v.witness_minus = i;
        }
    }
    v.range = Range{lo, hi};
    v.decision = (hi >= -tol_norm && lo <= tol_norm) ? Decision::orthogonal : Decision::not_orthogonal;

    // independent convex cross check when both operator norms are computable
    try {
        const double tnorm = operator_norm(T);
        const double snorm = operator_norm(S);
        if (!(snorm > 1e-15)) {
            v.min = MinResult{0.0, tnorm};
            return v;
        }
        double lam_lo = -2.0 * tnorm / snorm - 1.0;
        double lam_hi = -lam_lo;
        auto eval = [&](double t) {
            Operator M = T;
            for (std::size_t i = 0; i < M.entries.size(); ++i) M.entries[i] += t * S.entries[i];
            return operator_norm(M);
        };
        for (int it = 0; it < 160 && lam_hi - lam_lo > 1e-13 * (1.0 + lam_hi); ++it) {
            const double m1 = lam_lo + (lam_hi - lam_lo) / 3.0;
            const double m2 = lam_hi - (lam_hi - lam_lo) / 3.0;
            if (eval(m1) <= eval(m2))
                lam_hi = m2;
            else
                lam_lo = m1;
        }
        MinResult mr;
        mr.lambda_star = 0.5 * (lam_lo + lam_hi);
        mr.value = std::min(eval(mr.lambda_star), tnorm);
        v.min = mr;
    } catch (const unsupported_space&) {
        // smooth domain without a finite-extreme norm route; criterion stands alone
    }
    return v;
}

// ---------------------------------------------------------------------------
// Hilbert space probe

struct ProbeReport {
    long trials = 0;
    long refuted = 0;       // trials where a witness S was found
    long max_rounds = 0;    // worst number of S resamples needed
    double refutation_rate = 0;
};

// Tries to exhibit, for random unit rank one T on l_2^n, an S with
// T B-orthogonal to S but S not B-orthogonal to T. T = w f^T with unit f, w;
// S is a Gaussian matrix made Frobenius-orthogonal to T, which pins
// <S x_f, T x_f> = <S, T>_F = 0, the exact orthogonality condition at the
// single attaining direction x_f = f. The reverse direction is decided by
// the top singular subspace of S: S is B-orthogonal to T iff the symmetric
// form (S^T T + T^T S)/2 restricted to that subspace has 0 in its eigenvalue
// range. A refutation rate of 1 reflects that the space supports no nonzero
// left symmetric operator.
inline ProbeReport hilbert_no_left_probe(std::size_t n, long trials, std::uint64_t seed = kDefaultSeed) {
    if (n < 2) throw std::invalid_argument("hilbert_no_left_probe: n >= 2 required");
    ProbeReport rep;
    rep.trials = trials;
    const Space H = Space::lp(2.0, n);
    const auto N = static_cast<Eigen::Index>(n);

    for (long trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
        vec f = rng.gaussian_vec(n), w = rng.gaussian_vec(n);
        const double nf = lp_norm(2.0, f), nw = lp_norm(2.0, w);
        if (!(nf > 0) || !(nw > 0)) continue;
        for (auto& c : f) c /= nf;
        for (auto& c : w) c /= nw;
        const Operator T = rank1(H, H, f, w);
        Eigen::MatrixXd Tm(N, N);
        for (Eigen::Index i = 0; i < N; ++i)
            for (Eigen::Index j = 0; j < N; ++j) Tm(i, j) = T.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));

        bool refuted = false;
        for (long round = 0; round < 64 && !refuted; ++round) {
            Eigen::MatrixXd Sm(N, N);
            for (Eigen::Index i = 0; i < N; ++i)
                for (Eigen::Index j = 0; j < N; ++j) Sm(i, j) = rng.gaussian();
            // ||T||_F = ||f||_2 ||w||_2 = 1, so one projection step suffices
            Sm -= (Sm.cwiseProduct(Tm)).sum() * Tm;
            Sm -= (Sm.cwiseProduct(Tm)).sum() * Tm;
            const double sf = Sm.norm();
            if (!(sf > 1e-12)) continue;
            Sm /= sf;

            // forward: T orthogonal to S at the attaining direction x_f = f
            Eigen::VectorXd xf(N);
            for (Eigen::Index i = 0; i < N; ++i) xf(i) = f[static_cast<std::size_t>(i)];
            const double fwd = (Sm * xf).dot(Tm * xf);
            if (std::fabs(fwd) > 1e-10) continue; // projection failed numerically

            // reverse: 0 in the eigenvalue range of the symmetric form on the
            // top singular subspace of S?
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(Sm, Eigen::ComputeFullV);
            const auto& sig = svd.singularValues();
            Eigen::Index k = 1;
            while (k < N && sig(k) >= sig(0) * (1.0 - kTolTie)) ++k;
            const Eigen::MatrixXd V1 = svd.matrixV().leftCols(k);
            const Eigen::MatrixXd M = 0.5 * (Sm.transpose() * Tm + Tm.transpose() * Sm);
            const Eigen::MatrixXd B = V1.transpose() * M * V1;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
            const double lmin = es.eigenvalues().minCoeff();
            const double lmax = es.eigenvalues().maxCoeff();
            const bool s_orth_t = lmin <= kTolNorm && lmax >= -kTolNorm;
            if (!s_orth_t) {
                refuted = true;
                rep.max_rounds = std::max(rep.max_rounds, round + 1);
            }
        }
        if (refuted) ++rep.refuted;
    }
    rep.refutation_rate = trials > 0 ? static_cast<double>(rep.refuted) / static_cast<double>(trials) : 0.0;
    return rep;
}

} // namespace bjlab
