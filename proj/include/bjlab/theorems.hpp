#pragma once

// Randomized and exhaustive replay suites for the structural results the
// library implements. Every suite draws its instances from a seeded stream,
// checks the closed form classifiers against searches and witnesses, and
// reports failures with enough context to replay them by hand.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "io.hpp"

namespace bjlab {

struct RunConfig {
    std::uint64_t seed = kDefaultSeed;
    long trials = 200;
    long budget = kDefaultBudget;
    double tol_rel = kTolRel;
    double tol_norm = kTolNorm;
};

// One property check = one trial; passes + failed = trials always holds, and
// failures keeps the first kMaxStoredFailures counterexample bundles so a
// broken build cannot balloon the report.
struct TheoremReport {
    std::string theorem_id;
    std::string statement;
    long trials = 0;
    long passes = 0;
    long failed = 0;
    long inconclusive = 0; // convex oracle fell in its undecided band
    json failures = json::array();
    double wall_time = 0.0; // seconds
    bool ok() const { return failed == 0; }
};

constexpr std::size_t kMaxStoredFailures = 500;

inline json to_json(const TheoremReport& r, bool with_timing) {
    json j{{"theorem_id", r.theorem_id}, {"statement", r.statement},
           {"trials", r.trials},         {"passes", r.passes},
           {"inconclusive", r.inconclusive},
           {"failures", r.failures},     {"ok", r.ok()}};
    const long omitted = r.failed - static_cast<long>(r.failures.size());
    if (omitted > 0) j["failures_omitted"] = omitted;
    if (with_timing) j["wall_time"] = r.wall_time;
    return j;
}

namespace detail {

inline void record(TheoremReport& rep, bool ok, const char* what, json ctx) {
    ++rep.trials;
    if (ok) {
        ++rep.passes;
        return;
    }
    ++rep.failed;
    if (rep.failures.size() < kMaxStoredFailures) {
        ctx["check"] = what;
        rep.failures.push_back(std::move(ctx));
    }
}

inline std::uint64_t sub_seed(const RunConfig& cfg, std::uint64_t salt, long trial) {
    return splitmix64(cfg.seed + 0x9e3779b97f4a7c15ull * salt + static_cast<std::uint64_t>(trial));
}

} // namespace detail

// ---------------------------------------------------------------------------
// instance generators

namespace gen {

inline double random_exponent(Rng& rng) {
    constexpr double choices[] = {1.0, 1.5, 2.0, 3.0, kInf};
    return choices[rng.index(5)];
}

inline double smooth_odd_exponent(Rng& rng) { return rng.index(2) == 0 ? 1.5 : 3.0; }

inline Space random_lp(Rng& rng, std::size_t min_dim = 1, std::size_t max_dim = 4) {
    return Space::lp(random_exponent(rng), min_dim + rng.index(max_dim - min_dim + 1));
}

// two dimensional polyhedral spaces from pairwise non-parallel generators
inline Space random_polyhedral(Rng& rng) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        const std::size_t want = 2 + rng.index(3);
        std::vector<vec> gens;
        bool stuck = false;
        while (gens.size() < want && !stuck) {
            const double th = rng.uniform(0.0, 3.14159265358979323846);
            const double s = rng.uniform(0.7, 1.4);
            vec cand{s * std::cos(th), s * std::sin(th)};
            for (const auto& e : gens) {
                const double c = (cand[0] * e[0] + cand[1] * e[1]) /
                                 (std::hypot(cand[0], cand[1]) * std::hypot(e[0], e[1]));
                if (std::fabs(c) > 0.99) {
                    stuck = true;
                    break;
                }
            }
            if (!stuck) gens.push_back(std::move(cand));
        }
        if (gens.size() < want) continue;
        try {
            return Space::polyhedral(gens);
        } catch (const invalid_descriptor&) {
        }
    }
    return Space::polyhedral({{1.0, 0.0}, {0.0, 1.0}, {0.8, 0.9}});
}

inline Space random_supsum(Rng& rng, bool lp_only, std::size_t min_blocks = 2,
                           std::size_t max_blocks = 4, std::size_t max_comp_dim = 3,
                           bool allow_nested = true) {
    const std::size_t b = min_blocks + rng.index(max_blocks - min_blocks + 1);
    std::vector<Space> blocks;
    blocks.reserve(b);
    for (std::size_t i = 0; i < b; ++i) {
        const double roll = rng.uniform();
        if (allow_nested && roll < 0.15)
            blocks.push_back(random_supsum(rng, lp_only, 2, 2, 2, false));
        else if (!lp_only && roll < 0.30)
            blocks.push_back(random_polyhedral(rng));
        else
            blocks.push_back(Space::lp(random_exponent(rng), 1 + rng.index(max_comp_dim)));
    }
    return Space::sup_sum(std::move(blocks));
}

inline Space random_space(Rng& rng) {
    switch (rng.index(4)) {
        case 0: return Space::lp(random_exponent(rng), 1 + rng.index(5));
        case 1: return Space::lp(smooth_odd_exponent(rng), 2 + rng.index(3));
        case 2: return random_polyhedral(rng);
        default: return random_supsum(rng, false);
    }
}

inline vec random_unit(Rng& rng, const Space& S) {
    for (;;) {
        vec v = rng.gaussian_vec(S.dim());
        const double n = norm(S, v);
        if (n > 1e-6) {
            for (auto& c : v) c /= n;
            return v;
        }
    }
}

inline vec random_vector(Rng& rng, const Space& S) {
    vec v = rng.gaussian_vec(S.dim());
    const double s = rng.uniform(0.2, 3.0);
    for (auto& c : v) c *= s;
    return v;
}

// does the space contain any left symmetric unit vector with a closed form
inline bool has_left_forms(const Space& S) {
    switch (S.kind()) {
        case Space::Kind::lp: return !(S.p() == 1.0 && S.dim() >= 3);
        case Space::Kind::sup_sum:
            for (const auto& b : S.blocks())
                if (has_left_forms(b)) return true;
            return false;
        case Space::Kind::polyhedral: return false;
    }
    return false;
}

// can a random unit vector of the component be rejected by the classifier
inline bool rejects_left(const Space& S) {
    switch (S.kind()) {
        case Space::Kind::lp: return S.p() != 2.0 && S.dim() >= 2;
        case Space::Kind::sup_sum:
            return S.blocks().size() >= 2 || rejects_left(S.blocks().front());
        case Space::Kind::polyhedral: return false;
    }
    return false;
}

inline bool rejects_right(const Space& S) {
    switch (S.kind()) {
        case Space::Kind::lp: return S.p() != 2.0 && S.dim() >= 2;
        case Space::Kind::sup_sum:
            return S.blocks().size() >= 2 || rejects_right(S.blocks().front());
        case Space::Kind::polyhedral: return false;
    }
    return false;
}

inline Space random_supsum_with_left(Rng& rng, bool lp_only = true) {
    for (int i = 0; i < 50; ++i) {
        Space S = random_supsum(rng, lp_only);
        if (has_left_forms(S)) return S;
    }
    return Space::sup_sum({Space::lp(3.0, 2), Space::lp(1.5, 2)});
}

inline vec canonical_left_value(Rng& rng, const Space& S);
inline vec canonical_right_value(Rng& rng, const Space& S);

inline vec canonical_left_lp_value(Rng& rng, const Space& S) {
    const double p = S.p();
    const std::size_t n = S.dim();
    const double s0 = rng.index(2) == 0 ? 1.0 : -1.0;
    const double s1 = rng.index(2) == 0 ? 1.0 : -1.0;
    vec x(n, 0.0);
    if (p == 2.0) return random_unit(rng, S);
    if (std::isinf(p)) {
        x[rng.index(n)] = s0;
        return x;
    }
    if (p == 1.0) {
        if (n == 1) {
            x[0] = s0;
            return x;
        }
        if (n != 2) throw unsupported_space("canonical_left_lp_value: no forms in l1 with n >= 3");
        x[0] = 0.5 * s0;
        x[1] = 0.5 * s1;
        return x;
    }
    if (n == 1 || rng.index(2) == 0) {
        x[rng.index(n)] = s0;
        return x;
    }
    std::size_t i = rng.index(n), j = rng.index(n);
    while (j == i) j = rng.index(n);
    const double c = std::pow(2.0, -1.0 / p);
    x[i] = c * s0;
    x[j] = c * s1;
    return x;
}

inline vec canonical_right_lp_value(Rng& rng, const Space& S) {
    const double p = S.p();
    const std::size_t n = S.dim();
    vec x(n, 0.0);
    if (p == 2.0) return random_unit(rng, S);
    if (std::isinf(p)) {
        for (auto& c : x) c = rng.index(2) == 0 ? 1.0 : -1.0;
        return x;
    }
    if (p == 1.0) {
        x[rng.index(n)] = rng.index(2) == 0 ? 1.0 : -1.0;
        return x;
    }
    return canonical_left_lp_value(rng, S); // identical forms for smooth p != 2
}

inline vec canonical_left_value(Rng& rng, const Space& S) {
    if (S.kind() == Space::Kind::lp) return canonical_left_lp_value(rng, S);
    if (S.kind() == Space::Kind::sup_sum) {
        std::vector<std::size_t> ks;
        for (std::size_t k = 0; k < S.blocks().size(); ++k)
            if (has_left_forms(S.blocks()[k])) ks.push_back(k);
        if (ks.empty()) throw unsupported_space("canonical_left_value: no component admits left forms");
        const std::size_t k = ks[rng.index(ks.size())];
        vec f(S.dim(), 0.0);
        block_assign(S, f, k, canonical_left_value(rng, S.blocks()[k]));
        return f;
    }
    throw unsupported_space("canonical_left_value: polyhedral components have no closed form");
}

inline vec canonical_right_value(Rng& rng, const Space& S) {
    if (S.kind() == Space::Kind::lp) return canonical_right_lp_value(rng, S);
    if (S.kind() == Space::Kind::sup_sum) {
        vec f(S.dim(), 0.0);
        for (std::size_t k = 0; k < S.blocks().size(); ++k)
            block_assign(S, f, k, canonical_right_value(rng, S.blocks()[k]));
        return f;
    }
    throw unsupported_space("canonical_right_value: polyhedral components have no closed form");
}

// every closed form left symmetric unit vector of an lp space, p != 2
inline std::vector<vec> all_left_forms_lp(const Space& S) {
    const double p = S.p();
    const std::size_t n = S.dim();
    if (p == 2.0) throw std::invalid_argument("all_left_forms_lp: p == 2 has a continuum of forms");
    std::vector<vec> out;
    auto spike = [&](std::size_t k, double s) {
        vec x(n, 0.0);
        x[k] = s;
        out.push_back(std::move(x));
    };
    if (std::isinf(p)) {
        for (std::size_t k = 0; k < n; ++k) {
            spike(k, 1.0);
            spike(k, -1.0);
        }
        return out;
    }
    if (p == 1.0) {
        if (n == 1) {
            spike(0, 1.0);
            spike(0, -1.0);
        } else if (n == 2) {
            for (double a : {1.0, -1.0})
                for (double b : {1.0, -1.0}) out.push_back({0.5 * a, 0.5 * b});
        }
        return out;
    }
    for (std::size_t k = 0; k < n; ++k) {
        spike(k, 1.0);
        spike(k, -1.0);
    }
    const double c = std::pow(2.0, -1.0 / p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (double a : {1.0, -1.0})
                for (double b : {1.0, -1.0}) {
                    vec x(n, 0.0);
                    x[i] = c * a;
                    x[j] = c * b;
                    out.push_back(std::move(x));
                }
    return out;
}

inline std::vector<vec> all_right_forms_lp(const Space& S) {
    const double p = S.p();
    const std::size_t n = S.dim();
    if (p == 2.0) throw std::invalid_argument("all_right_forms_lp: p == 2 has a continuum of forms");
    std::vector<vec> out;
    if (std::isinf(p)) {
        if (n > 16) throw unsupported_space("all_right_forms_lp: too many sign vectors");
        for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
            vec x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1ull ? -1.0 : 1.0;
            out.push_back(std::move(x));
        }
        return out;
    }
    if (p == 1.0) {
        for (std::size_t k = 0; k < n; ++k)
            for (double s : {1.0, -1.0}) {
                vec x(n, 0.0);
                x[k] = s;
                out.push_back(std::move(x));
            }
        return out;
    }
    return all_left_forms_lp(S);
}

// entrywise distance from the nearest closed-form right symmetric value;
// +inf when the component has no finite form list
inline double right_form_distance(const Space& S, const vec& x) {
    std::vector<vec> forms;
    try {
        forms = all_right_forms_lp(S);
    } catch (...) {
        return std::numeric_limits<double>::infinity();
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& fm : forms) {
        double d = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::fabs(x[i] - fm[i]));
        best = std::min(best, d);
    }
    return best;
}

inline Operator random_unit_operator(Rng& rng, const Space& dom, const Space& cod) {
    for (;;) {
        Operator T = make_operator(dom, cod, rng.gaussian_vec(dom.dim() * cod.dim()));
        const double n = operator_norm(T);
        if (n > 1e-9) {
            for (auto& c : T.entries) c /= n;
            return T;
        }
    }
}

} // namespace gen

// ---------------------------------------------------------------------------
// oracle concordance (not a registry suite; the acceptance gate drives it)

inline TheoremReport run_oracle_concordance(const RunConfig& cfg) {
    TheoremReport rep;
    rep.theorem_id = "ORACLE-CONCORDANCE";
    rep.statement = "the convex line minimum and the support functional range decide the same relation";
    for (long t = 0; t < cfg.trials; ++t) {
        Rng rng = Rng::stream(cfg.seed + 11, t);
        const Space S = gen::random_space(rng);
        const vec x = gen::random_vector(rng, S);
        vec y = gen::random_vector(rng, S);
        if (rng.uniform() < 0.05) y.assign(S.dim(), 0.0);
        if (norm(S, x) <= 1e-9) continue;

        const OrthoVerdict fn = is_bj_functional(S, x, y);
        const OrthoVerdict mn = is_bj_min(S, x, y, cfg.tol_rel);
        if (mn.decision == Decision::inconclusive) {
            ++rep.inconclusive;
        } else {
            detail::record(rep, mn.decision == fn.decision, "oracles agree",
                           json{{"space", S.to_string()},
                                {"x", to_json(x)},
                                {"y", to_json(y)},
                                {"functional", to_json(fn)},
                                {"min", to_json(mn)}});
        }
        // scale invariance of the exact oracle
        if (norm(S, y) > 1e-9) {
            vec xs(x), ys(y);
            const double cx = rng.uniform(0.3, 2.5);
            const double cy = (rng.index(2) == 0 ? 1.0 : -1.0) * rng.uniform(0.3, 2.5);
            for (auto& c : xs) c *= cx;
            for (auto& c : ys) c *= cy;
            const OrthoVerdict fs = is_bj_functional(S, xs, ys);
            detail::record(rep, fs.decision == fn.decision, "scale invariance",
                           json{{"space", S.to_string()}, {"x", to_json(x)}, {"y", to_json(y)},
                                {"cx", cx}, {"cy", cy}});
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// registry suites

inline TheoremReport run_thm_left_supsum(const RunConfig& cfg) {
    TheoremReport rep;
    for (long t = 0; t < cfg.trials; ++t) {
        Rng rng = Rng::stream(cfg.seed + 21, t);
        const Space S = gen::random_supsum_with_left(rng);
        const std::uint64_t sub = detail::sub_seed(cfg, 21, t);

        // canonical single block lifts are accepted and survive the search
        const vec f = gen::canonical_left_value(rng, S);
        detail::record(rep, classify_left_supsum(S, f), "canonical form accepted",
                       json{{"space", S.to_string()}, {"f", to_json(f)}});
        const SearchOutcome s = search_left_counterexample(S, f, cfg.budget, sub);
        detail::record(rep, !s.found, "canonical form survives search",
                       json{{"space", S.to_string()}, {"f", to_json(f)}, {"search", to_json(s)}});

        // random unit vectors are rejected with a verified witness
        const vec g = gen::random_unit(rng, S);
        if (!classify_left_supsum(S, g)) {
            const auto w = witness_left_supsum(S, g, sub + 1, cfg.budget);
            detail::record(rep, w.has_value() && w->margin > 1e-8, "rejected form refuted",
                           json{{"space", S.to_string()},
                                {"f", to_json(g)},
                                {"witness", w ? witness_to_json(S, g, *w, "left") : json()}});
        }

        // a single nonzero block whose value the component rejects
        std::optional<std::size_t> kbad;
        for (std::size_t k = 0; k < S.blocks().size(); ++k)
            if (gen::rejects_left(S.blocks()[k])) kbad = k;
        if (kbad) {
            const Space& comp = S.blocks()[*kbad];
            vec val;
            for (int tries = 0; tries < 5; ++tries) {
                val = gen::random_unit(rng, comp);
                try {
                    if (!classify_left_value(comp, val)) break;
                } catch (const unsupported_space&) {
                    break;
                }
                val.clear();
            }
            if (!val.empty()) {
                vec g2(S.dim(), 0.0);
                block_assign(S, g2, *kbad, val);
                detail::record(rep, !classify_left_supsum(S, g2), "bad single block rejected",
                               json{{"space", S.to_string()}, {"f", to_json(g2)}});
                const auto w2 = witness_left_supsum(S, g2, sub + 2, cfg.budget);
                detail::record(rep, w2.has_value() && w2->margin > 1e-8, "bad single block refuted",
                               json{{"space", S.to_string()},
                                    {"f", to_json(g2)},
                                    {"witness", w2 ? witness_to_json(S, g2, *w2, "left") : json()}});
            }
        }
    }
    return rep;
}

inline TheoremReport run_thm_right_nec(const RunConfig& cfg) {
    TheoremReport rep;
    for (long t = 0; t < cfg.trials; ++t) {
        Rng rng = Rng::stream(cfg.seed + 22, t);
        const Space S = gen::random_supsum(rng, true, 2, 3, 3, true);
        const std::uint64_t sub = detail::sub_seed(cfg, 22, t);
        const std::size_t K = S.blocks().size();

        vec f = gen::canonical_right_value(rng, S);
        std::vector<std::size_t> rejecting;
        for (std::size_t k = 0; k < K; ++k)
            if (gen::rejects_right(S.blocks()[k])) rejecting.push_back(k);

        const bool scale_mode = rejecting.empty() || rng.index(2) == 0;
        if (scale_mode) {
            // violate the unit block condition
            const std::size_t k = rng.index(K);
            const double b = rng.uniform(0.15, 0.85);
            vec fk = block_slice(S, f, k);
            for (auto& c : fk) c *= b;
            block_assign(S, f, k, fk);
            if (K == 1) continue; // a single scaled block is just a non unit vector
        } else {
            // violate the componentwise right symmetry condition
            const std::size_t k = rejecting[rng.index(rejecting.size())];
            const Space& comp = S.blocks()[k];
            vec val;
            for (int tries = 0; tries < 16 && val.empty(); ++tries) {
                vec cand = gen::random_unit(rng, comp);
                if (classify_right_value(comp, cand)) continue;
                // the constructed dip scales with the square of the distance
                // to the nearest symmetric value, so stay clear of the forms
                if (gen::right_form_distance(comp, cand) < 5e-3) continue;
                val = std::move(cand);
            }
            if (val.empty()) continue;
            block_assign(S, f, k, val);
        }

        detail::record(rep, !classify_right_supsum(S, f), "violating form rejected",
                       json{{"space", S.to_string()}, {"f", to_json(f)}});

        std::optional<SymWitness> w;
        double at_mu = 1.0;
        for (int attempt = 0; attempt < 4 && !w; ++attempt) {
            auto cand = witness_right_supsum(S, f, cfg.budget, sub + 31 * attempt);
            if (!cand) continue;
            vec fm(f);
            for (std::size_t i = 0; i < fm.size(); ++i) fm[i] += cand->mu * cand->g[i];
            const double v = norm(S, fm);
            if (v <= 1.0 - 1e-6) {
                w = std::move(cand);
                at_mu = v;
            }
        }
        detail::record(rep, w.has_value() && at_mu <= 1.0 - 1e-6, "violation refuted with margin",
                       json{{"space", S.to_string()},
                            {"f", to_json(f)},
                            {"at_mu", at_mu},
                            {"witness", w ? witness_to_json(S, f, *w, "right") : json()}});
    }
    return rep;
}

inline TheoremReport run_thm_right_suff(const RunConfig& cfg) {
    TheoremReport rep;
    for (long t = 0; t < cfg.trials; ++t) {
        Rng rng = Rng::stream(cfg.seed + 23, t);
        const Space S = gen::random_supsum(rng, true, 2, 3, 3, true);
        const std::uint64_t sub = detail::sub_seed(cfg, 23, t);
        const vec f = gen::canonical_right_value(rng, S);
        detail::record(rep, classify_right_supsum(S, f), "canonical form accepted",
                       json{{"space", S.to_string()}, {"f", to_json(f)}});
        const SearchOutcome s = search_right_counterexample(S, f, cfg.budget, sub);
        detail::record(rep, !s.found, "canonical form survives search",
                       json{{"space", S.to_string()}, {"f", to_json(f)}, {"search", to_json(s)}});
    }
    return rep;
}

inline TheoremReport run_cor_directsum(const RunConfig& cfg) {
    TheoremReport rep;
    for (long t = 0; t < cfg.trials; ++t) {
        Rng rng = Rng::stream(cfg.seed + 24, t);
        const Space S = gen::random_supsum_with_left(rng);
        const std::uint64_t sub = detail::sub_seed(cfg, 24, t);

        detail::record(rep, is_symmetric_supsum(S, vec(S.dim(), 0.0)), "zero is symmetric",
                       json{{"space", S.to_string()}});

        const vec f = gen::random_unit(rng, S);
        detail::record(rep, !is_symmetric_supsum(S, f), "nonzero vectors are not symmetric",
                       json{{"space", S.to_string()}, {"f", to_json(f)}});
        if (t % 2 == 0 && !classify_left_supsum(S, f)) {
            const auto w = witness_left_supsum(S, f, sub, cfg.budget);
            detail::record(rep, w.has_value() && w->margin > 1e-8, "left refutation verified",
                           json{{"space", S.to_string()},
                                {"f", to_json(f)},
                                {"witness", w ? witness_to_json(S, f, *w, "left") : json()}});
        } else if (t % 2 == 1 && !classify_right_supsum(S, f)) {
            const auto w = witness_right_supsum(S, f, cfg.budget, sub);
            detail::record(rep, w.has_value() && w->margin > 1e-8, "right refutation verified",
                           json{{"space", S.to_string()},
                                {"f", to_json(f)},
                                {"witness", w ? witness_to_json(S, f, *w, "right") : json()}});
        }

        // canonical one sided points are exactly one sided once K >= 2
        const vec fl = gen::canonical_left_value(rng, S);
        detail::record(rep, classify_left_supsum(S, fl) && !classify_right_supsum(S, fl),
                       "left lift is left only",
                       json{{"space", S.to_string()}, {"f", to_json(fl)}});
        const auto wr = witness_right_supsum(S, fl, cfg.budget, sub + 1);
        detail::record(rep, wr.has_value() && wr->margin > 1e-8, "left lift right-refuted",
                       json{{"space", S.to_string()},
                            {"f", to_json(fl)},
                            {"witness", wr ? witness_to_json(S, fl, *wr, "right") : json()}});

        const vec fr = gen::canonical_right_value(rng, S);
        detail::record(rep, classify_right_supsum(S, fr) && !classify_left_supsum(S, fr),
                       "right lift is right only",
                       json{{"space", S.to_string()}, {"f", to_json(fr)}});
        const auto wl = witness_left_supsum(S, fr, sub + 2, cfg.budget);
        detail::record(rep, wl.has_value() && wl->margin > 1e-8, "right lift left-refuted",
                       json{{"space", S.to_string()},
                            {"f", to_json(fr)},
                            {"witness", wl ? witness_to_json(S, fr, *wl, "left") : json()}});
    }
    return rep;
}

inline TheoremReport run_thm_orth_general(const RunConfig& cfg) {
    TheoremReport rep;
    for (long t = 0; t < cfg.trials; ++t) {
        Rng rng = Rng::stream(cfg.seed + 25, t);
        const Space S = gen::random_supsum(rng, false, 2, 4, 3, true);

        std::vector<std::pair<vec, vec>> pairs;
        const vec f = gen::random_unit(rng, S);
        pairs.emplace_back(f, gen::random_vector(rng, S));
        pairs.emplace_back(f, f);
        try {
            pairs.emplace_back(f, orthogonalize_left(S, f, rng.gaussian_vec(S.dim())));
        } catch (const std::exception&) {
        }
        {
            // g vanishing on the attaining blocks is always orthogonal to f
            vec g = gen::random_vector(rng, S);
            for (const std::size_t k : attainment(S, f))
                block_assign(S, g, k, vec(S.blocks()[k].dim(), 0.0));
            pairs.emplace_back(f, std::move(g));
        }

        for (const auto& [a, b] : pairs) {
            const Decision d1 = supsum_orthogonal(S, a, b).decision;
            const Decision d2 = supsum_orthogonal_general(S, a, b).decision;
            const Decision d3 = is_bj_functional(S, a, b).decision;
            detail::record(rep, d1 == d2 && d1 == d3, "block criterion matches flattened oracle",
                           json{{"space", S.to_string()},
                                {"f", to_json(a)},
                                {"g", to_json(b)},
                                {"block", to_string(d1)},
                                {"block_general", to_string(d2)},
                                {"functional", to_string(d3)}});
            const OrthoVerdict mn = is_bj_min(S, a, b, cfg.tol_rel);
            if (mn.decision == Decision::inconclusive)
                ++rep.inconclusive;
            else
                detail::record(rep, mn.decision == d1, "convex oracle matches block criterion",
                               json{{"space", S.to_string()},
                                    {"f", to_json(a)},
                                    {"g", to_json(b)},
                                    {"block", to_string(d1)},
                                    {"min", to_json(mn)}});
        }
    }
    return rep;
}

inline TheoremReport run_prop_isometric(const RunConfig& cfg) {
    TheoremReport rep;
    auto finite_extremes = [](const Space& X) {
        switch (X.kind()) {
            case Space::Kind::lp: return X.p() == 1.0 || std::isinf(X.p()) || X.dim() == 1;
            case Space::Kind::polyhedral: return true;
            case Space::Kind::sup_sum: return false; // not needed here
        }
        return false;
    };
    for (long t = 0; t < cfg.trials; ++t) {
        Rng rng = Rng::stream(cfg.seed + 26, t);
        if (t % 2 == 0) {
            // columns: L(l_1^m, Y) into the sup sum of m copies of Y
            const std::size_t m = 2 + rng.index(3);
            const Space dom = Space::lp(1.0, m);
            Space cod = Space::lp(gen::random_exponent(rng), 1 + rng.index(3));
            if (rng.index(4) == 0) cod = gen::random_polyhedral(rng);
            const Operator T = make_operator(dom, cod, rng.gaussian_vec(m * cod.dim()));

            const double nc = operator_norm_via_columns(T);
            const auto [Semb, tuple] = embed_l1_domain(T);
            const double ne = norm(Semb, tuple);
            const double nx = operator_norm_via_extremes(T);
            const double scale = std::max(1.0, nc);
            detail::record(rep, std::fabs(nc - ne) <= 1e-12 * scale, "embedding is isometric",
                           json{{"op", operator_to_json(T)}, {"columns", nc}, {"embedded", ne}});
            detail::record(rep, std::fabs(nc - nx) <= 1e-12 * scale, "norm routes agree",
                           json{{"op", operator_to_json(T)}, {"columns", nc}, {"extremes", nx}});
            bool dominated = true;
            for (int i = 0; i < 5; ++i) {
                const vec x = gen::random_unit(rng, dom);
                if (norm(cod, image(T, x)) > nc * (1.0 + 1e-10)) dominated = false;
            }
            detail::record(rep, dominated, "norm dominates the ball", json{{"op", operator_to_json(T)}});
        } else {
            // rows: L(X, l_inf^n) into the sup sum of n copies of the dual of X
            const std::size_t n = 1 + rng.index(3);
            const Space cod = Space::lp(kInf, n);
            Space dom = Space::lp(gen::random_exponent(rng), 1 + rng.index(3));
            if (rng.index(4) == 0) dom = gen::random_polyhedral(rng);
            const Operator T = make_operator(dom, cod, rng.gaussian_vec(n * dom.dim()));

            const double nr = operator_norm_via_rows(T);
            const auto [Semb, tuple] = embed_linf_codomain(T);
            const double ne = norm(Semb, tuple);
            const double scale = std::max(1.0, nr);
            detail::record(rep, std::fabs(nr - ne) <= 1e-12 * scale, "embedding is isometric",
                           json{{"op", operator_to_json(T)}, {"rows", nr}, {"embedded", ne}});
            if (finite_extremes(dom)) {
                const double nx = operator_norm_via_extremes(T);
                detail::record(rep, std::fabs(nr - nx) <= 1e-12 * scale, "norm routes agree",
                               json{{"op", operator_to_json(T)}, {"rows", nr}, {"extremes", nx}});
            } else {
                // smooth domain: norm the dominant row by its duality map
                std::size_t imax = 0;
                double best = -1;
                for (std::size_t i = 0; i < n; ++i) {
                    const double dn = dual_norm(dom, row(T, i));
                    if (dn > best) {
                        best = dn;
                        imax = i;
                    }
                }
                const vec r = row(T, imax);
                const double q = conjugate_exponent(dom.p());
                vec x(r.size());
                for (std::size_t j = 0; j < r.size(); ++j)
                    x[j] = detail::sgn(r[j]) * detail::pow_abs(r[j], q - 1.0);
                const double xn = norm(dom, x);
                if (xn > 1e-12) {
                    for (auto& c : x) c /= xn;
                    const double attained = norm(cod, image(T, x));
                    detail::record(rep, attained >= nr - 1e-9 * scale && attained <= nr + 1e-9 * scale,
                                   "norm attained on the duality map",
                                   json{{"op", operator_to_json(T)}, {"rows", nr}, {"attained", attained}});
                }
            }
            bool dominated = true;
            for (int i = 0; i < 5; ++i) {
                const vec x = gen::random_unit(rng, dom);
                if (norm(cod, image(T, x)) > nr * (1.0 + 1e-10)) dominated = false;
            }
            detail::record(rep, dominated, "norm dominates the ball", json{{"op", operator_to_json(T)}});
        }
    }
    return rep;
}

inline TheoremReport run_thm_left_infty(const RunConfig& cfg) {
    TheoremReport rep;
    for (long t = 0; t < cfg.trials; ++t) {
        Rng rng = Rng::stream(cfg.seed + 27, t);
        const std::uint64_t sub = detail::sub_seed(cfg, 27, t);
        Space dom = gen::random_lp(rng, 1, 3);
        for (int tries = 0; tries < 20 && !gen::has_left_forms(dual_space(dom)); ++tries)
            dom = gen::random_lp(rng, 1, 3);
        if (!gen::has_left_forms(dual_space(dom))) continue;
        const std::size_t n = 1 + rng.index(3);
        const Space cod = Space::lp(kInf, n);
        const Space dual = dual_space(dom);

        // accepted: one nonzero row carrying a left symmetric dual form
        const vec u0 = gen::canonical_left_value(rng, dual);
        vec entries(n * dom.dim(), 0.0);
        const std::size_t i0 = rng.index(n);
        for (std::size_t j = 0; j < dom.dim(); ++j) entries[i0 * dom.dim() + j] = u0[j];
        const Operator T = make_operator(dom, cod, std::move(entries));
        detail::record(rep, classify_left_operator(T), "single row form accepted",
                       json{{"op", operator_to_json(T)}});
        detail::record(rep, check_nice_left_sufficient(T), "single row form passes the adjoint test",
                       json{{"op", operator_to_json(T)}});
        const auto [Semb, tup] = embed_linf_codomain(T);
        const SearchOutcome s =
            search_left_counterexample(Semb, tup, std::min(cfg.budget, 2000l), sub);
        detail::record(rep, !s.found, "single row form survives search",
                       json{{"op", operator_to_json(T)}, {"search", to_json(s)}});

        // rejected: generic operators and two-row forms, with witnesses
        const Operator T2 = gen::random_unit_operator(rng, dom, cod);
        if (!classify_left_operator(T2)) {
            detail::record(rep, !check_nice_left_sufficient(T2), "adjoint test rejects non left form",
                           json{{"op", operator_to_json(T2)}});
            const auto [Semb2, tup2] = embed_linf_codomain(T2);
            const auto w = witness_left_supsum(Semb2, tup2, sub + 1, cfg.budget);
            detail::record(rep, w.has_value() && w->margin > 1e-8, "rejected operator refuted",
                           json{{"op", operator_to_json(T2)},
                                {"witness", w ? witness_to_json(Semb2, tup2, *w, "left") : json()}});
        }
        if (n >= 2) {
            vec e2(n * dom.dim(), 0.0);
            const std::size_t i1 = (i0 + 1) % n;
            for (std::size_t j = 0; j < dom.dim(); ++j) {
                e2[i0 * dom.dim() + j] = u0[j];
                e2[i1 * dom.dim() + j] = 0.8 * u0[j];
            }
            const Operator T3 = make_operator(dom, cod, std::move(e2));
            detail::record(rep, !classify_left_operator(T3), "second nonzero row rejected",
                           json{{"op", operator_to_json(T3)}});
        }
    }
    return rep;
}

inline TheoremReport run_cor_left_lp(const RunConfig& cfg) {
    TheoremReport rep;
    // exhaustive canonical placements
    for (const double p : {1.5, 3.0}) {
        for (std::size_t m = 2; m <= 4; ++m) {
            const Space dom = Space::lp(p, m);
            const Space dual = Space::lp(conjugate_exponent(p), m);
            const auto forms = gen::all_left_forms_lp(dual);
            for (std::size_t n = 1; n <= 3; ++n) {
                const Space cod = Space::lp(kInf, n);
                for (std::size_t i0 = 0; i0 < n; ++i0)
                    for (const auto& u : forms) {
                        vec entries(n * m, 0.0);
                        for (std::size_t j = 0; j < m; ++j) entries[i0 * m + j] = u[j];
                        const Operator T = make_operator(dom, cod, std::move(entries));
                        detail::record(rep, classify_left_operator(T) && check_nice_left_sufficient(T),
                                       "canonical placement accepted", json{{"op", operator_to_json(T)}});
                    }
            }
        }
    }
    // random rejections and perturbed canonicals, each with a witness
    for (long t = 0; t < cfg.trials; ++t) {
        Rng rng = Rng::stream(cfg.seed + 28, t);
        const std::uint64_t sub = detail::sub_seed(cfg, 28, t);
        const double p = gen::smooth_odd_exponent(rng);
        const std::size_t m = 2 + rng.index(3), n = 1 + rng.index(3);
        const Space dom = Space::lp(p, m);
        const Space cod = Space::lp(kInf, n);
        const Space dual = Space::lp(conjugate_exponent(p), m);

        const Operator T = gen::random_unit_operator(rng, dom, cod);
        if (!classify_left_operator(T)) {
            const auto [Semb, tup] = embed_linf_codomain(T);
            const auto w = witness_left_supsum(Semb, tup, sub, cfg.budget);
            detail::record(rep, w.has_value() && w->margin > 1e-8, "random operator refuted",
                           json{{"op", operator_to_json(T)},
                                {"witness", w ? witness_to_json(Semb, tup, *w, "left") : json()}});
        }

        vec entries(n * m, 0.0);
        const std::size_t i0 = rng.index(n);
        const vec u0 = gen::canonical_left_value(rng, dual);
        for (std::size_t j = 0; j < m; ++j) entries[i0 * m + j] = u0[j];
        const double eps = rng.uniform(0.01, 0.05);
        for (auto& c : entries) c += eps * rng.gaussian();
        Operator T2 = make_operator(dom, cod, std::move(entries));
        const double n2 = operator_norm(T2);
        for (auto& c : T2.entries) c /= n2;
        if (!classify_left_operator(T2)) {
            const auto [Semb, tup] = embed_linf_codomain(T2);
            const auto w = witness_left_supsum(Semb, tup, sub + 1, cfg.budget);
            detail::record(rep, w.has_value() && w->margin > 1e-8, "perturbed canonical refuted",
                           json{{"op", operator_to_json(T2)}, {"eps", eps},
                                {"witness", w ? witness_to_json(Semb, tup, *w, "left") : json()}});
        }
    }
    return rep;
}

inline TheoremReport run_cor_right_lp(const RunConfig& cfg) {
    TheoremReport rep;
    // exhaustive canonical row tuples
    for (const double p : {1.5, 3.0}) {
        for (std::size_t m = 2; m <= 4; ++m) {
            const Space dom = Space::lp(p, m);
            const Space dual = Space::lp(conjugate_exponent(p), m);
            const auto forms = gen::all_right_forms_lp(dual);
            for (std::size_t n = 1; n <= 3; ++n) {
                const Space cod = Space::lp(kInf, n);
                std::vector<std::size_t> pick(n, 0);
                for (;;) {
                    vec entries(n * m, 0.0);
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = 0; j < m; ++j) entries[i * m + j] = forms[pick[i]][j];
                    const Operator T = make_operator(dom, cod, std::move(entries));
                    detail::record(rep, classify_right_operator(T), "canonical rows accepted",
                                   json{{"op", operator_to_json(T)}});
                    std::size_t c = 0;
                    while (c < n && ++pick[c] == forms.size()) pick[c++] = 0;
                    if (c == n) break;
                }
            }
        }
    }
    // semantic spot check: canonical rows survive a right search on the embedding
    for (long t = 0; t < std::min(cfg.trials, 20l); ++t) {
        Rng rng = Rng::stream(cfg.seed + 29, t);
        const double p = gen::smooth_odd_exponent(rng);
        const std::size_t m = 2 + rng.index(3), n = 1 + rng.index(3);
        const Space dual = Space::lp(conjugate_exponent(p), m);
        vec entries(n * m, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const vec u = gen::canonical_right_value(rng, dual);
            for (std::size_t j = 0; j < m; ++j) entries[i * m + j] = u[j];
        }
        const Operator T = make_operator(Space::lp(p, m), Space::lp(kInf, n), std::move(entries));
        const auto [Semb, tup] = embed_linf_codomain(T);
        const SearchOutcome s = search_right_counterexample(Semb, tup, std::min(cfg.budget, 1500l),
                                                            detail::sub_seed(cfg, 29, t));
        detail::record(rep, !s.found, "canonical rows survive search",
                       json{{"op", operator_to_json(T)}, {"search", to_json(s)}});
    }
    // random rejections and perturbed canonicals with witnesses
    for (long t = 0; t < cfg.trials; ++t) {
        Rng rng = Rng::stream(cfg.seed + 30, t);
        const std::uint64_t sub = detail::sub_seed(cfg, 30, t);
        const double p = gen::smooth_odd_exponent(rng);
        const std::size_t m = 2 + rng.index(3), n = 1 + rng.index(3);
        const Space dom = Space::lp(p, m);
        const Space cod = Space::lp(kInf, n);
        const Space dual = Space::lp(conjugate_exponent(p), m);

        const Operator T = gen::random_unit_operator(rng, dom, cod);
        if (!classify_right_operator(T)) {
            const auto [Semb, tup] = embed_linf_codomain(T);
            const auto w = witness_right_supsum(Semb, tup, cfg.budget, sub);
            detail::record(rep, w.has_value() && w->margin > 1e-8, "random operator refuted",
                           json{{"op", operator_to_json(T)},
                                {"witness", w ? witness_to_json(Semb, tup, *w, "right") : json()}});
        }

        vec entries(n * m, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const vec u = gen::canonical_right_value(rng, dual);
            for (std::size_t j = 0; j < m; ++j) entries[i * m + j] = u[j];
        }
        const double eps = rng.uniform(0.02, 0.08);
        for (auto& c : entries) c += eps * rng.gaussian();
        Operator T2 = make_operator(dom, cod, std::move(entries));
        const double n2 = operator_norm(T2);
        for (auto& c : T2.entries) c /= n2;
        if (!classify_right_operator(T2)) {
            const auto [Semb, tup] = embed_linf_codomain(T2);
            const auto w = witness_right_supsum(Semb, tup, cfg.budget, sub + 1);
            detail::record(rep, w.has_value() && w->margin > 1e-8, "perturbed canonical refuted",
                           json{{"op", operator_to_json(T2)}, {"eps", eps},
                                {"witness", w ? witness_to_json(Semb, tup, *w, "right") : json()}});
        }
    }
    // vector level closed form against pure search
    for (long t = 0; t < cfg.trials; ++t) {
        Rng rng = Rng::stream(cfg.seed + 31, t);
        const double p = gen::smooth_odd_exponent(rng);
        const std::size_t m = 2 + rng.index(2);
        const Space Sp = Space::lp(p, m);
        vec x;
        if (t % 3 == 0) {
            x = gen::canonical_right_value(rng, Sp);
        } else if (t % 3 == 1) {
            x = gen::random_unit(rng, Sp);
        } else {
            x = gen::canonical_right_value(rng, Sp);
            const double eps = rng.uniform(0.05, 0.15);
            for (auto& c : x) c += eps * rng.gaussian();
            const double nx = norm(Sp, x);
            for (auto& c : x) c /= nx;
        }
        const bool cls = classify_right_lp(Sp, x);
        const SearchOutcome s =
            search_right_counterexample(Sp, x, cfg.budget, detail::sub_seed(cfg, 31, t));
        detail::record(rep, cls == !s.found, "closed form matches search",
                       json{{"space", Sp.to_string()},
                            {"x", to_json(x)},
                            {"classified_right", cls},
                            {"search", to_json(s)}});
    }
    return rep;
}

inline TheoremReport run_thm_nice_left(const RunConfig& cfg) {
    TheoremReport rep;
    for (long t = 0; t < cfg.trials; ++t) {
        Rng rng = Rng::stream(cfg.seed + 32, t);
        const bool poly_cod = rng.index(2) == 0;

        if (!poly_cod) {
            // l_inf codomain: the adjoint test coincides with the classifier
            Space dom = gen::random_lp(rng, 1, 3);
            for (int tries = 0; tries < 20 && !gen::has_left_forms(dual_space(dom)); ++tries)
                dom = gen::random_lp(rng, 1, 3);
            if (!gen::has_left_forms(dual_space(dom))) continue;
            const std::size_t n = 1 + rng.index(3);
            const Space cod = Space::lp(kInf, n);
            const vec u0 = gen::canonical_left_value(rng, dual_space(dom));
            vec entries(n * dom.dim(), 0.0);
            const std::size_t i0 = rng.index(n);
            for (std::size_t j = 0; j < dom.dim(); ++j) entries[i0 * dom.dim() + j] = u0[j];
            const Operator T = make_operator(dom, cod, std::move(entries));
            detail::record(rep, check_nice_left_sufficient(T) && classify_left_operator(T),
                           "adjoint test and classifier agree on the single pair form",
                           json{{"op", operator_to_json(T)}});

            const Operator T2 = gen::random_unit_operator(rng, dom, cod);
            detail::record(rep, check_nice_left_sufficient(T2) == classify_left_operator(T2),
                           "adjoint test and classifier agree on random operators",
                           json{{"op", operator_to_json(T2)}});
            continue;
        }

        // parallelogram codomain: build T with T* g0 = u0 and T* g1 = 0
        const Space cod = [&] {
            for (;;) {
                const double t0 = rng.uniform(0.1, 1.4), t1 = rng.uniform(1.8, 3.0);
                vec g0{std::cos(t0), std::sin(t0)}, g1{std::cos(t1), std::sin(t1)};
                try {
                    return Space::polyhedral({g0, g1});
                } catch (const invalid_descriptor&) {
                }
            }
        }();
        const std::size_t m = 1 + rng.index(2);
        const Space dom = rng.index(2) == 0 ? Space::lp(1.0, m + 1) : Space::lp(kInf, m);
        if (!gen::has_left_forms(dual_space(dom))) continue;
        const vec u0 = gen::canonical_left_value(rng, dual_space(dom));

        const auto& gens = cod.generators();
        Eigen::Matrix2d G;
        G << gens[0][0], gens[1][0], gens[0][1], gens[1][1];
        Eigen::MatrixXd U(static_cast<Eigen::Index>(dom.dim()), 2);
        for (std::size_t j = 0; j < dom.dim(); ++j) {
            U(static_cast<Eigen::Index>(j), 0) = u0[j];
            U(static_cast<Eigen::Index>(j), 1) = 0.0;
        }
        const Eigen::MatrixXd Tt = U * G.inverse(); // dom.dim() x 2, columns index the codomain
        vec entries(2 * dom.dim());
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < dom.dim(); ++j)
                entries[i * dom.dim() + j] = Tt(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
        const Operator T = make_operator(dom, cod, std::move(entries));

        detail::record(rep, std::fabs(operator_norm(T) - 1.0) <= 1e-9,
                       "unit norm is automatic for the single pair form",
                       json{{"op", operator_to_json(T)}, {"norm", operator_norm(T)}});
        detail::record(rep, check_nice_left_sufficient(T), "single pair form passes the adjoint test",
                       json{{"op", operator_to_json(T)}});

        // semantic probe: directions orthogonal to T stay orthogonal back
        const FaceSet F = attainment_faces(T);
        if (!F.vertices.empty()) {
            const vec v0 = F.vertices.front();
            const vec img = image(T, v0);
            const vec psi = jset_centroid(support_set(cod, img));
            const double psiT = detail::dot(psi, img);
            bool all_ok = true;
            json bad;
            for (int k = 0; k < 3 && std::fabs(psiT) > 1e-9; ++k) {
                Operator Z = make_operator(dom, cod, rng.gaussian_vec(2 * dom.dim()));
                const double c = detail::dot(psi, image(Z, v0)) / psiT;
                for (std::size_t i = 0; i < Z.entries.size(); ++i) Z.entries[i] -= c * T.entries[i];
                const OrthoVerdict fwd = ortho_operators_rank1(T, Z);
                const OrthoVerdict bwd = ortho_operators_rank1(Z, T);
                if (fwd.decision != Decision::orthogonal || bwd.decision != Decision::orthogonal) {
                    all_ok = false;
                    bad = json{{"S", operator_to_json(Z)},
                               {"forward", to_json(fwd)},
                               {"backward", to_json(bwd)}};
                }
            }
            detail::record(rep, all_ok, "orthogonal directions reverse",
                           json{{"op", operator_to_json(T)}, {"failure", bad}});
        }

        // a second nonzero adjoint pair breaks the test
        Eigen::MatrixXd U2 = U;
        for (std::size_t j = 0; j < dom.dim(); ++j)
            U2(static_cast<Eigen::Index>(j), 1) = 0.5 * rng.gaussian();
        const Eigen::MatrixXd T2t = U2 * G.inverse();
        vec e2(2 * dom.dim());
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < dom.dim(); ++j)
                e2[i * dom.dim() + j] = T2t(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
        Operator T2 = make_operator(dom, cod, std::move(e2));
        const double n2 = operator_norm(T2);
        if (n2 > 1e-9) {
            for (auto& c : T2.entries) c /= n2;
            detail::record(rep, !check_nice_left_sufficient(T2), "second adjoint pair rejected",
                           json{{"op", operator_to_json(T2)}});
        }
    }
    return rep;
}

inline TheoremReport run_prop_rank_face(const RunConfig& cfg) {
    TheoremReport rep;
    for (long t = 0; t < cfg.trials; ++t) {
        Rng rng = Rng::stream(cfg.seed + 33, t);
        const Space dom = [&] {
            switch (rng.index(3)) {
                case 0: return Space::lp(1.0, 2 + rng.index(3));
                case 1: return Space::lp(kInf, 2 + rng.index(2));
                default: return gen::random_polyhedral(rng);
            }
        }();
        const Space cod = gen::random_lp(rng, 1, 3);
        const vec fv = rng.gaussian_vec(dom.dim());
        const vec wv = rng.gaussian_vec(cod.dim());
        if (detail::dot(fv, fv) < 1e-12 || detail::dot(wv, wv) < 1e-12) continue;
        const Operator T = rank1(dom, cod, fv, wv);
        const FaceSet F = attainment_faces(T);
        detail::record(rep, F.single_face && !F.vertices.empty(),
                       "rank one operators attain on a single face",
                       json{{"op", operator_to_json(T)}});

        // control: two orthogonal columns attain on two distinct faces
        if (t % 4 == 0) {
            const Space dom2 = Space::lp(1.0, 2);
            const Space cod2 = Space::lp(2.0, 2);
            const Operator I2 = make_operator(dom2, cod2, {1.0, 0.0, 0.0, 1.0});
            const FaceSet F2 = attainment_faces(I2);
            detail::record(rep, !F2.single_face, "orthogonal columns split the attainment set",
                           json{{"op", operator_to_json(I2)}});
        }

        // the attainment criterion agrees with the convex minimum of ||T + tS||
        const double tn = operator_norm(T);
        for (int k = 0; k < 3; ++k) {
            const Operator Sop = make_operator(dom, cod, rng.gaussian_vec(dom.dim() * cod.dim()));
            const OrthoVerdict v = ortho_operators_rank1(T, Sop);
            if (!v.min) continue;
            const double mv = v.min->value;
            if (mv >= tn * (1.0 - 1e-9)) {
                detail::record(rep, v.decision == Decision::orthogonal,
                               "flat minimum implies the criterion accepts",
                               json{{"op", operator_to_json(T)}, {"S", operator_to_json(Sop)},
                                    {"min", mv}, {"norm", tn}});
            } else if (mv < tn * (1.0 - 1e-6)) {
                detail::record(rep, v.decision == Decision::not_orthogonal,
                               "strict dip implies the criterion rejects",
                               json{{"op", operator_to_json(T)}, {"S", operator_to_json(Sop)},
                                    {"min", mv}, {"norm", tn}});
            } else {
                ++rep.inconclusive;
            }
        }
    }
    return rep;
}

inline TheoremReport run_thm_left_rank_nec(const RunConfig& cfg) {
    TheoremReport rep;
    for (long t = 0; t < cfg.trials; ++t) {
        Rng rng = Rng::stream(cfg.seed + 34, t);
        const std::uint64_t sub = detail::sub_seed(cfg, 34, t);
        const std::size_t m = 2 + rng.index(3);
        const Space dom = Space::lp(1.0, m);
        Space cod = gen::random_lp(rng, 1, 3);
        for (int tries = 0; tries < 20 && !gen::has_left_forms(cod); ++tries)
            cod = gen::random_lp(rng, 1, 3);
        if (!gen::has_left_forms(cod)) continue;

        // accepted: a single unit column that is left symmetric in the codomain
        const vec w0 = gen::canonical_left_value(rng, cod);
        vec fcol(m, 0.0);
        fcol[rng.index(m)] = rng.index(2) == 0 ? 1.0 : -1.0;
        const Operator T = rank1(dom, cod, fcol, w0);
        detail::record(rep, classify_left_operator(T), "single column form accepted",
                       json{{"op", operator_to_json(T)}});

        const FaceSet F = attainment_faces(T);
        if (F.single_face && !F.vertices.empty()) {
            const vec v0 = F.vertices.front();
            const vec img = image(T, v0);
            const vec psi = jset_centroid(support_set(cod, img));
            const double psiT = detail::dot(psi, img);
            if (std::fabs(psiT) > 1e-9) {
                bool all_ok = true;
                for (int k = 0; k < 3; ++k) {
                    Operator Z = make_operator(dom, cod, rng.gaussian_vec(m * cod.dim()));
                    const double c = detail::dot(psi, image(Z, v0)) / psiT;
                    for (std::size_t i = 0; i < Z.entries.size(); ++i) Z.entries[i] -= c * T.entries[i];
                    const OrthoVerdict fwd = ortho_operators_rank1(T, Z);
                    const OrthoVerdict bwd = ortho_operators_rank1(Z, T);
                    if (fwd.decision != Decision::orthogonal || bwd.decision != Decision::orthogonal)
                        all_ok = false;
                }
                detail::record(rep, all_ok, "orthogonal directions reverse on the accepted form",
                               json{{"op", operator_to_json(T)}});
            }
        }

        // rejected: rank one with two nonzero columns
        vec f2(m, 0.0);
        f2[0] = 1.0;
        f2[1] = rng.uniform(0.3, 0.9);
        Operator T2 = rank1(dom, cod, f2, w0);
        const double tn2 = operator_norm(T2);
        for (auto& c : T2.entries) c /= tn2;
        detail::record(rep, !classify_left_operator(T2), "two nonzero columns rejected",
                       json{{"op", operator_to_json(T2)}});
        {
            const auto [Semb, tup] = embed_l1_domain(T2);
            const auto w = witness_left_supsum(Semb, tup, sub, cfg.budget);
            detail::record(rep, w.has_value() && w->margin > 1e-8, "two column form refuted",
                           json{{"op", operator_to_json(T2)},
                                {"witness", w ? witness_to_json(Semb, tup, *w, "left") : json()}});
        }

        // rejected: a single column that is not left symmetric in the codomain
        if (gen::rejects_left(cod)) {
            vec wbad;
            for (int tries = 0; tries < 8 && wbad.empty(); ++tries) {
                vec cand = gen::random_unit(rng, cod);
                if (!classify_left_value(cod, cand)) wbad = std::move(cand);
            }
            if (!wbad.empty()) {
                const Operator T3 = rank1(dom, cod, fcol, wbad);
                detail::record(rep, !classify_left_operator(T3), "non symmetric column rejected",
                               json{{"op", operator_to_json(T3)}});
                const auto [Semb, tup] = embed_l1_domain(T3);
                const auto w = witness_left_supsum(Semb, tup, sub + 1, cfg.budget);
                detail::record(rep, w.has_value() && w->margin > 1e-8, "non symmetric column refuted",
                               json{{"op", operator_to_json(T3)},
                                    {"witness", w ? witness_to_json(Semb, tup, *w, "left") : json()}});
            }
        }

        // smooth domain: the rank one route agrees with the convex minimum
        {
            const Space sdom = Space::lp(gen::smooth_odd_exponent(rng), 2 + rng.index(2));
            const Space scod = Space::lp(kInf, 1 + rng.index(2));
            const vec sf = rng.gaussian_vec(sdom.dim());
            const vec sw = rng.gaussian_vec(scod.dim());
            if (detail::dot(sf, sf) > 1e-12 && detail::dot(sw, sw) > 1e-12) {
                Operator Ts = rank1(sdom, scod, sf, sw);
                const double tns = operator_norm(Ts);
                for (auto& c : Ts.entries) c /= tns;
                for (int k = 0; k < 3; ++k) {
                    const Operator Sop =
                        make_operator(sdom, scod, rng.gaussian_vec(sdom.dim() * scod.dim()));
                    const OrthoVerdict v = ortho_operators_rank1(Ts, Sop);
                    if (!v.min) continue;
                    const double mv = v.min->value;
                    if (mv >= 1.0 - 1e-9) {
                        detail::record(rep, v.decision == Decision::orthogonal,
                                       "smooth route: flat minimum accepted",
                                       json{{"op", operator_to_json(Ts)}, {"S", operator_to_json(Sop)},
                                            {"min", mv}});
                    } else if (mv < 1.0 - 1e-6) {
                        detail::record(rep, v.decision == Decision::not_orthogonal,
                                       "smooth route: strict dip rejected",
                                       json{{"op", operator_to_json(Ts)}, {"S", operator_to_json(Sop)},
                                            {"min", mv}});
                    } else {
                        ++rep.inconclusive;
                    }
                }
            }
        }
    }
    return rep;
}

inline TheoremReport run_hilbert_no_left(const RunConfig& cfg) {
    TheoremReport rep;
    auto spectral = [](const Eigen::MatrixXd& M) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
        return svd.singularValues()(0);
    };
    for (const std::size_t n : {std::size_t{2}, std::size_t{3}}) {
        const ProbeReport pr = hilbert_no_left_probe(n, cfg.trials, cfg.seed + n);
        detail::record(rep, pr.refutation_rate == 1.0, "every rank one candidate refuted",
                       json{{"n", n},
                            {"trials", pr.trials},
                            {"refuted", pr.refuted},
                            {"rate", pr.refutation_rate},
                            {"max_rounds", pr.max_rounds}});

        // replay a few trials and validate the algebraic shortcut against the
        // convex minimum of the spectral norm along the line
        const auto N = static_cast<Eigen::Index>(n);
        for (long trial = 0; trial < std::min(cfg.trials, 3l); ++trial) {
            Rng rng = Rng::stream(cfg.seed + n, trial);
            vec f = rng.gaussian_vec(n), w = rng.gaussian_vec(n);
            const double nf = lp_norm(2.0, f), nw = lp_norm(2.0, w);
            if (!(nf > 0) || !(nw > 0)) continue;
            for (auto& c : f) c /= nf;
            for (auto& c : w) c /= nw;
            Eigen::MatrixXd Tm(N, N);
            for (Eigen::Index i = 0; i < N; ++i)
                for (Eigen::Index j = 0; j < N; ++j)
                    Tm(i, j) = w[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(j)];

            std::optional<Eigen::MatrixXd> witness;
            for (long round = 0; round < 64 && !witness; ++round) {
                Eigen::MatrixXd Sm(N, N);
                for (Eigen::Index i = 0; i < N; ++i)
                    for (Eigen::Index j = 0; j < N; ++j) Sm(i, j) = rng.gaussian();
                Sm -= (Sm.cwiseProduct(Tm)).sum() * Tm;
                Sm -= (Sm.cwiseProduct(Tm)).sum() * Tm;
                const double sf = Sm.norm();
                if (!(sf > 1e-12)) continue;
                Sm /= sf;
                Eigen::VectorXd xf(N);
                for (Eigen::Index i = 0; i < N; ++i) xf(i) = f[static_cast<std::size_t>(i)];
                if (std::fabs((Sm * xf).dot(Tm * xf)) > 1e-10) continue;
                Eigen::JacobiSVD<Eigen::MatrixXd> svd(Sm, Eigen::ComputeFullV);
                const auto& sig = svd.singularValues();
                Eigen::Index k = 1;
                while (k < N && sig(k) >= sig(0) * (1.0 - kTolTie)) ++k;
                const Eigen::MatrixXd V1 = svd.matrixV().leftCols(k);
                const Eigen::MatrixXd M = 0.5 * (Sm.transpose() * Tm + Tm.transpose() * Sm);
                const Eigen::MatrixXd B = V1.transpose() * M * V1;
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
                if (!(es.eigenvalues().minCoeff() <= kTolNorm &&
                      es.eigenvalues().maxCoeff() >= -kTolNorm))
                    witness = Sm;
            }
            if (!witness) continue;

            auto line_min = [&](const Eigen::MatrixXd& A, const Eigen::MatrixXd& B2) {
                double lo = -3.0, hi = 3.0;
                for (int it = 0; it < 200; ++it) {
                    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
                    if (spectral(A + m1 * B2) <= spectral(A + m2 * B2))
                        hi = m2;
                    else
                        lo = m1;
                }
                return spectral(A + 0.5 * (lo + hi) * B2);
            };
            const double fwd = line_min(Tm, *witness);
            const double bwd = line_min(*witness, Tm);
            detail::record(rep, fwd >= 1.0 - 1e-9, "forward orthogonality holds on the line",
                           json{{"n", n}, {"trial", trial}, {"line_min", fwd}});
            detail::record(rep, bwd < 1.0 - 1e-9, "reverse direction genuinely dips",
                           json{{"n", n}, {"trial", trial}, {"line_min", bwd}});
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// registry

struct TheoremSuite {
    const char* id;
    const char* statement;
    TheoremReport (*fn)(const RunConfig&);
};

inline const std::vector<TheoremSuite>& theorem_suites() {
    static const std::vector<TheoremSuite> table = {
        {"THM-LEFT-SUPSUM",
         "left symmetric points of a finite sup sum are the unit single block lifts of component "
         "left symmetric points",
         &run_thm_left_supsum},
        {"THM-RIGHT-NEC",
         "a right symmetric point of a finite sup sum has every block of unit norm and every "
         "block value right symmetric in its component",
         &run_thm_right_nec},
        {"THM-RIGHT-SUFF-FINITE",
         "in finite sup sums the necessary right symmetry conditions are also sufficient",
         &run_thm_right_suff},
        {"COR-DIRECTSUM",
         "with two or more blocks the only symmetric point of a sup sum is zero",
         &run_cor_directsum},
        {"THM-ORTH-GENERAL-FINITE",
         "orthogonality in a sup sum is decided by the functional ranges of the attaining blocks "
         "and matches the flattened oracles",
         &run_thm_orth_general},
        {"PROP-ISOMETRIC",
         "the column and row embeddings into sup sums are isometric and all operator norm routes "
         "agree",
         &run_prop_isometric},
        {"THM-LEFT-INFTY",
         "left symmetric operators into l_inf^n are the single row lifts of left symmetric dual "
         "functionals",
         &run_thm_left_infty},
        {"COR-LEFT-LP",
         "left symmetric operators from l_p^m (p != 2) into l_inf^n carry exactly one nonzero "
         "row, a canonical form of the conjugate space",
         &run_cor_left_lp},
        {"COR-RIGHT-LP",
         "right symmetric operators from l_p^m (p != 2) into l_inf^n have every row canonical in "
         "the conjugate space, matching exhaustive search",
         &run_cor_right_lp},
        {"THM-NICE-LEFT",
         "a unit operator whose adjoint kills all but one extreme pair of the codomain ball, with "
         "a unit left symmetric image, is left symmetric",
         &run_thm_nice_left},
        {"PROP-RANK-FACE",
         "rank one operators attain their norm on a single face of the domain ball",
         &run_prop_rank_face},
        {"THM-LEFT-RANK-NEC",
         "rank one left symmetric operators on l_1^m reduce to a single unit column that is left "
         "symmetric in the codomain",
         &run_thm_left_rank_nec},
        {"HILBERT-NO-LEFT",
         "finite dimensional euclidean spaces admit no nonzero left symmetric operator: random "
         "probes refute every rank one candidate",
         &run_hilbert_no_left},
    };
    return table;
}

inline const TheoremSuite* find_theorem(const std::string& id) {
    for (const auto& s : theorem_suites())
        if (id == s.id) return &s;
    return nullptr;
}

inline TheoremReport run_theorem(const TheoremSuite& suite, const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    TheoremReport rep = suite.fn(cfg);
    const auto stop = std::chrono::steady_clock::now();
    rep.theorem_id = suite.id;
    rep.statement = suite.statement;
    rep.wall_time = std::chrono::duration<double>(stop - start).count();
    return rep;
}

} // namespace bjlab
