// Acceptance gate: ten go/no-go checks run as one binary, one line each.
// Every tolerance and sample size is pinned here on purpose; the suite
// fails loudly rather than degrade a threshold.

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <bjlab/theorems.hpp>

using bjlab::Decision;
using bjlab::Operator;
using bjlab::Rng;
using bjlab::Space;
using bjlab::vec;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// space zoo for criterion 1: the five exponents, planar polyhedra, and two
// level sup sums capped at total dimension 8
Space zoo_space(Rng& rng, int slot) {
    constexpr double ps[] = {1.0, 1.5, 2.0, 3.0, bjlab::kInf};
    switch (slot % 7) {
        case 0:
        case 1:
        case 2:
        case 3:
        case 4: return Space::lp(ps[slot % 7], 1 + rng.index(4));
        case 5: return bjlab::gen::random_polyhedral(rng);
        default: {
            const Space inner = Space::sup_sum(
                {Space::lp(ps[rng.index(5)], 1 + rng.index(2)),
                 Space::lp(ps[rng.index(5)], 1 + rng.index(2))});
            return Space::sup_sum(
                {Space::lp(ps[rng.index(5)], 1 + rng.index(3)), inner}); // dim <= 8
        }
    }
}

// ---------------------------------------------------------------------------

bool criterion1(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng = Rng::stream(900001, 0);
    long total = 0, inconclusive = 0, disagree = 0;
    int slot = 0;
    while (total < 10000) {
        const Space S = zoo_space(rng, slot++);
        for (int rep = 0; rep < 8 && total < 10000; ++rep) {
            const vec x = rng.gaussian_vec(S.dim());
            if (!(bjlab::norm(S, x) > 1e-6)) continue;
            const vec y = rng.gaussian_vec(S.dim());
            const auto fn = bjlab::is_bj_functional(S, x, y);
            const auto mn = bjlab::is_bj_min(S, x, y);
            ++total;
            if (mn.decision == Decision::inconclusive)
                ++inconclusive;
            else if (mn.decision != fn.decision)
                ++disagree;
        }
    }
    const double secs = seconds_since(t0);
    detail = fmt("%ld triples, %ld disagreements, %ld inconclusive (%.3f%%), %.1f s",
                 total, disagree, inconclusive, 100.0 * inconclusive / total, secs);
    return disagree == 0 && inconclusive * 200 < total && secs < 60.0;
}

bool criterion2(std::string& detail) {
    Rng rng = Rng::stream(900002, 0);
    long total = 0, band = 0, disagree = 0;
    while (total < 10000) {
        const Space S = bjlab::gen::random_supsum(rng, false);
        for (int rep = 0; rep < 8 && total < 10000; ++rep) {
            const vec f = rng.gaussian_vec(S.dim());
            if (!(bjlab::norm(S, f) > 1e-6)) continue;
            const vec g = rng.gaussian_vec(S.dim());
            const auto block = bjlab::supsum_orthogonal(S, f, g);
            const auto mn = bjlab::is_bj_min(S, f, g);
            ++total;
            if (mn.decision == Decision::inconclusive)
                ++band;
            else if (mn.decision != block.decision)
                ++disagree;
        }
    }
    detail = fmt("%ld pairs, %ld disagreements, %ld in the tolerance band", total, disagree, band);
    return disagree == 0;
}

bool criterion3(std::string& detail) {
    Rng rng = Rng::stream(900003, 0);
    int accepted = 0, rejected = 0;
    long survived = 0, witnessed = 0;
    while (accepted < 100) {
        const Space S = bjlab::gen::random_supsum(rng, true, 2, 4, 3, false);
        if (!bjlab::gen::has_left_forms(S)) continue;
        const vec f = bjlab::gen::canonical_left_value(rng, S);
        if (!bjlab::classify_left_supsum(S, f)) {
            detail = fmt("canonical left value rejected in %s", S.to_string().c_str());
            return false;
        }
        ++accepted;
        const auto s = bjlab::search_left_counterexample(S, f, 10000, 900103 + accepted);
        if (s.found) {
            detail = fmt("accepted point refuted in %s (margin %.2e)", S.to_string().c_str(),
                         s.margin);
            return false;
        }
        ++survived;
    }
    while (rejected < 200) {
        const Space S = bjlab::gen::random_supsum(rng, true, 2, 4, 3, false);
        const vec f = bjlab::gen::random_unit(rng, S);
        if (bjlab::classify_left_supsum(S, f)) continue;
        ++rejected;
        const auto w = bjlab::witness_left_supsum(S, f, 900203 + rejected, 4000);
        if (!w || !(w->margin >= 1e-8)) {
            detail = fmt("missing left witness in %s", S.to_string().c_str());
            return false;
        }
        if (bjlab::supsum_orthogonal(S, f, w->g).decision != Decision::orthogonal) {
            detail = "left witness forward direction failed re-verification";
            return false;
        }
        ++witnessed;
    }
    detail = fmt("%ld accepted survived 10^4 rounds, %ld rejected witnessed (margin >= 1e-8)",
                 survived, witnessed);
    return true;
}

bool criterion4(std::string& detail) {
    Rng rng = Rng::stream(900004, 0);
    long done = 0;
    while (done < 1000) {
        const Space S = bjlab::gen::random_supsum(rng, true, 2, 4, 3, false);
        vec f = bjlab::gen::canonical_right_value(rng, S);
        const auto& bs = S.blocks();
        bool broke = false;
        if (done % 2 == 0) {
            // scale one block below unit
            const std::size_t k = rng.index(bs.size());
            vec fk = bjlab::block_slice(S, f, k);
            const double c = rng.uniform(0.3, 0.9);
            for (auto& v : fk) v *= c;
            bjlab::block_assign(S, f, k, fk);
            broke = true;
        } else {
            // swap one block value for a non right symmetric unit vector;
            // keep it away from the symmetric forms, where the achievable
            // dip decays quadratically and the 1e-6 bar becomes unreachable
            for (std::size_t k = 0; k < bs.size() && !broke; ++k) {
                if (!bjlab::gen::rejects_right(bs[k])) continue;
                for (int tries = 0; tries < 20 && !broke; ++tries) {
                    const vec cand = bjlab::gen::random_unit(rng, bs[k]);
                    if (bjlab::classify_right_value(bs[k], cand)) continue;
                    if (bjlab::gen::right_form_distance(bs[k], cand) < 5e-3) continue;
                    bjlab::block_assign(S, f, k, cand);
                    broke = true;
                }
            }
            if (!broke) continue; // no component can reject: draw another space
        }
        if (bjlab::classify_right_supsum(S, f)) {
            detail = fmt("broken instance still classified right symmetric in %s",
                         S.to_string().c_str());
            return false;
        }
        const auto w = bjlab::witness_right_supsum(S, f, 4000, 900304 + done);
        if (!w) {
            detail = fmt("no right witness in %s", S.to_string().c_str());
            return false;
        }
        // re-verify the definition: g B-orthogonal to f, and f + mu g dips
        if (bjlab::supsum_orthogonal(S, w->g, f).decision != Decision::orthogonal) {
            detail = "right witness forward direction failed re-verification";
            return false;
        }
        vec fm(f);
        for (std::size_t i = 0; i < fm.size(); ++i) fm[i] += w->mu * w->g[i];
        if (!(bjlab::norm(S, fm) <= 1.0 - 1e-6)) {
            detail = fmt("right witness dip too shallow: %.12f", bjlab::norm(S, fm));
            return false;
        }
        ++done;
    }
    detail = fmt("%ld broken instances, every witness re-verified (dip <= 1 - 1e-6)", done);
    return true;
}

bool criterion5(std::string& detail) {
    Rng rng = Rng::stream(900005, 0);
    long refuted = 0;
    for (long t = 0; t < 1000; ++t) {
        const Space S = bjlab::gen::random_supsum(rng, true, 2, 4, 3, false);
        const vec f = bjlab::gen::random_unit(rng, S);
        bool ok = false;
        if (!bjlab::classify_left_supsum(S, f)) {
            const auto w = bjlab::witness_left_supsum(S, f, 900505 + t, 4000);
            ok = w && w->margin > 1e-8 &&
                 bjlab::supsum_orthogonal(S, f, w->g).decision == Decision::orthogonal;
        } else {
            // a left symmetric point has a zero block, so right symmetry fails
            const auto w = bjlab::witness_right_supsum(S, f, 4000, 900505 + t);
            ok = w && w->margin > 1e-8;
        }
        if (!ok) {
            detail = fmt("no violation found for a unit vector in %s", S.to_string().c_str());
            return false;
        }
        ++refuted;
    }
    detail = fmt("%ld/1000 unit vectors refuted as symmetric", refuted);
    return refuted == 1000;
}

bool criterion6(std::string& detail) {
    Rng rng = Rng::stream(900006, 0);
    double worst = 0;
    for (long t = 0; t < 10000; ++t) {
        const Space dom = Space::lp(1.0, 1 + rng.index(4));
        Space cod = bjlab::gen::random_space(rng);
        if (cod.dim() > 6) cod = Space::lp(2.0, 3);
        const Operator T = bjlab::make_operator(dom, cod,
                                                rng.gaussian_vec(dom.dim() * cod.dim()));
        const auto [S, tup] = bjlab::embed_l1_domain(T);
        worst = std::max(worst, std::fabs(bjlab::norm(S, tup) - bjlab::operator_norm(T)));
    }
    for (long t = 0; t < 10000; ++t) {
        const Space cod = Space::lp(bjlab::kInf, 1 + rng.index(4));
        const Space dom = rng.index(4) == 0 ? bjlab::gen::random_polyhedral(rng)
                                            : bjlab::gen::random_lp(rng, 1, 4);
        const Operator T = bjlab::make_operator(dom, cod,
                                                rng.gaussian_vec(dom.dim() * cod.dim()));
        const auto [S, tup] = bjlab::embed_linf_codomain(T);
        worst = std::max(worst, std::fabs(bjlab::norm(S, tup) - bjlab::operator_norm(T)));
    }
    detail = fmt("20000 operators, worst |embedded - operator| deviation %.2e", worst);
    return worst <= 1e-12;
}

bool criterion7(std::string& detail) {
    Rng rng = Rng::stream(900007, 0);
    long canon_left = 0, canon_right = 0, rejections = 0;

    for (const double p : {1.5, 3.0}) {
        for (std::size_t m = 2; m <= 4; ++m) {
            const Space dom = Space::lp(p, m);
            const Space dual = bjlab::dual_space(dom);
            const auto lefts = bjlab::gen::all_left_forms_lp(dual);
            for (std::size_t n = 1; n <= 3; ++n) {
                const Space cod = Space::lp(bjlab::kInf, n);
                // left canonicals: one closed form row, the rest zero
                for (std::size_t i = 0; i < n; ++i) {
                    for (const auto& r : lefts) {
                        vec e(m * n, 0.0);
                        for (std::size_t j = 0; j < m; ++j) e[i * m + j] = r[j];
                        const Operator T = bjlab::make_operator(dom, cod, std::move(e));
                        if (!bjlab::classify_left_operator(T) ||
                            !bjlab::check_nice_left_sufficient(T)) {
                            detail = fmt("left canonical rejected: p=%.1f m=%zu n=%zu", p, m, n);
                            return false;
                        }
                        ++canon_left;
                    }
                }
                // right canonicals: every row a closed form (smooth p: same set)
                const auto& rights = lefts;
                auto right_op = [&](const std::vector<std::size_t>& pick) {
                    vec e(m * n, 0.0);
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = 0; j < m; ++j) e[i * m + j] = rights[pick[i]][j];
                    return bjlab::make_operator(dom, cod, std::move(e));
                };
                if (n == 1) {
                    for (std::size_t a = 0; a < rights.size(); ++a) {
                        if (!bjlab::classify_right_operator(right_op({a}))) {
                            detail = fmt("right canonical rejected: p=%.1f m=%zu n=1", p, m);
                            return false;
                        }
                        ++canon_right;
                    }
                } else if (n == 2 && m <= 3) {
                    for (std::size_t a = 0; a < rights.size(); ++a)
                        for (std::size_t b = 0; b < rights.size(); ++b) {
                            if (!bjlab::classify_right_operator(right_op({a, b}))) {
                                detail = fmt("right canonical rejected: p=%.1f m=%zu n=2", p, m);
                                return false;
                            }
                            ++canon_right;
                        }
                } else {
                    for (int s = 0; s < 120; ++s) {
                        std::vector<std::size_t> pick(n);
                        for (auto& v : pick) v = rng.index(rights.size());
                        if (!bjlab::classify_right_operator(right_op(pick))) {
                            detail = fmt("right canonical rejected: p=%.1f m=%zu n=%zu", p, m, n);
                            return false;
                        }
                        ++canon_right;
                    }
                }
            }
        }
    }

    // 10^3 perturbations, each rejection backed by a verified witness; a draw
    // whose normalization lands back within 5e-3 of a canonical assembly is
    // redrawn, since that close to a symmetric point the genuine violation
    // shrinks quadratically below what an honest search can certify
    for (long t = 0; rejections < 1000 && t < 4000; ++t) {
        const double p = t % 4 < 2 ? 1.5 : 3.0;
        const std::size_t m = 2 + rng.index(3);
        const std::size_t n = 1 + rng.index(3);
        const Space dom = Space::lp(p, m);
        const Space cod = Space::lp(bjlab::kInf, n);
        const Space dual = bjlab::dual_space(dom);
        const bool left_kind = t % 2 == 0;

        Operator T = bjlab::make_operator(dom, cod, vec(m * n, 0.0));
        const auto forms = bjlab::gen::all_left_forms_lp(dual);
        if (left_kind) {
            const auto& r = forms[rng.index(forms.size())];
            const std::size_t i = rng.index(n);
            for (std::size_t j = 0; j < m; ++j) T.entries[i * m + j] = r[j];
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                const auto& r = forms[rng.index(forms.size())];
                for (std::size_t j = 0; j < m; ++j) T.entries[i * m + j] = r[j];
            }
        }
        const double eps = rng.uniform(0.02, 0.08);
        for (auto& e : T.entries) e += eps * rng.gaussian();
        const double tn = bjlab::operator_norm(T);
        if (!(tn > 0.5)) continue;
        for (auto& e : T.entries) e /= tn;

        auto row_form_dist = [&](std::size_t i) {
            double best = 1e9;
            for (const auto& r : forms) {
                double d = 0;
                for (std::size_t j = 0; j < m; ++j)
                    d = std::max(d, std::fabs(T.entries[i * m + j] - r[j]));
                best = std::min(best, d);
            }
            return best;
        };
        auto row_mag = [&](std::size_t i) {
            double d = 0;
            for (std::size_t j = 0; j < m; ++j) d = std::max(d, std::fabs(T.entries[i * m + j]));
            return d;
        };
        double dist;
        if (left_kind) {
            dist = 1e9; // nearest one-form-one-row assembly
            for (std::size_t i = 0; i < n; ++i) {
                double d = row_form_dist(i);
                for (std::size_t i2 = 0; i2 < n; ++i2)
                    if (i2 != i) d = std::max(d, row_mag(i2));
                dist = std::min(dist, d);
            }
        } else {
            dist = 0; // nearest all-rows-canonical assembly
            for (std::size_t i = 0; i < n; ++i) dist = std::max(dist, row_form_dist(i));
        }
        if (dist < 5e-3) continue;

        const bool cls = left_kind ? bjlab::classify_left_operator(T)
                                   : bjlab::classify_right_operator(T);
        if (cls) {
            detail = fmt("perturbed operator still canonical (p=%.1f m=%zu n=%zu eps=%.3f)",
                         p, m, n, eps);
            return false;
        }
        const auto [S, tup] = bjlab::embed_linf_codomain(T);
        const auto w = left_kind
                           ? bjlab::witness_left_supsum(S, tup, 900707 + t, 4000)
                           : bjlab::witness_right_supsum(S, tup, 4000, 900707 + t);
        if (!w || !(w->margin > 1e-8)) {
            detail = fmt("perturbation without witness (p=%.1f m=%zu n=%zu %s)",
                         p, m, n, left_kind ? "left" : "right");
            return false;
        }
        ++rejections;
    }
    detail = fmt("%ld left + %ld right canonicals accepted, %ld perturbations witnessed",
                 canon_left, canon_right, rejections);
    return rejections == 1000;
}

bool criterion8(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r2 = bjlab::hilbert_no_left_probe(2, 100, 900008);
    const auto r3 = bjlab::hilbert_no_left_probe(3, 100, 900009);
    const double secs = seconds_since(t0);
    detail = fmt("n=2: %ld/100 refuted, n=3: %ld/100 refuted, %.1f s", r2.refuted, r3.refuted,
                 secs);
    return r2.refuted == 100 && r3.refuted == 100 && secs < 120.0;
}

bool criterion9(std::string& detail) {
    Rng rng = Rng::stream(900010, 0);
    long points = 0, canonical = 0;
    for (const double p : {1.5, 3.0}) {
        for (std::size_t n = 1; n <= 3; ++n) {
            const Space S = Space::lp(p, n);
            std::vector<vec> sample = bjlab::gen::all_right_forms_lp(S);
            canonical += static_cast<long>(sample.size());
            if (n >= 2)
                for (int t = 0; t < 36; ++t) sample.push_back(bjlab::gen::random_unit(rng, S));
            for (const auto& x : sample) {
                const bool cls = bjlab::classify_right_value(S, x);
                const auto s = bjlab::search_right_counterexample(S, x, 100000, 900910 + points);
                if (cls == s.found) {
                    detail = fmt("disagreement at p=%.1f n=%zu (closed form %d, search %d)",
                                 p, n, int(cls), int(s.found));
                    return false;
                }
                ++points;
            }
        }
    }
    detail = fmt("%ld points (%ld canonical), classifier and 10^5-round search agree", points,
                 canonical);
    return points >= 200;
}

bool criterion10(std::string& detail) {
    const char* cli = std::getenv("BJLAB_CLI");
    if (cli) {
        auto capture = [&](const std::string& cmd) {
            std::string out;
            FILE* p = popen(cmd.c_str(), "r");
            if (!p) return out;
            char buf[4096];
            std::size_t got;
            while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
            pclose(p);
            return out;
        };
        const std::string cmd = std::string(cli) +
                                " verify-theorem all --trials 3 --budget 800 --seed 555"
                                " --no-timestamp 2>/dev/null";
        const std::string a = capture(cmd), b = capture(cmd);
        detail = fmt("two CLI runs, %zu bytes each, byte identical: %s", a.size(),
                     a == b && !a.empty() ? "yes" : "NO");
        return !a.empty() && a == b;
    }
    // in-process fallback when the binary location is not exported
    bjlab::RunConfig cfg;
    cfg.seed = 555;
    cfg.trials = 3;
    cfg.budget = 800;
    std::string a, b;
    for (std::string* out : {&a, &b}) {
        bjlab::json reports = bjlab::json::array();
        for (const auto& s : bjlab::theorem_suites())
            reports.push_back(bjlab::to_json(bjlab::run_theorem(s, cfg), false));
        *out = reports.dump();
    }
    detail = fmt("two in-process runs, %zu bytes each, identical: %s", a.size(),
                 a == b ? "yes" : "NO");
    return a == b;
}

} // namespace

int main() {
    struct Entry {
        int num;
        const char* name;
        bool (*fn)(std::string&);
    };
    const Entry entries[] = {
        {1, "oracle concordance across the space zoo", &criterion1},
        {2, "sup sum criterion vs flattened minimization", &criterion2},
        {3, "left classification = search + witness on sup sums", &criterion3},
        {4, "right necessity witnesses verify", &criterion4},
        {5, "no symmetric unit vectors in multi block sup sums", &criterion5},
        {6, "embeddings preserve the operator norm", &criterion6},
        {7, "operator classifiers accept exactly the canonical forms", &criterion7},
        {8, "euclidean spaces refute rank one left symmetry", &criterion8},
        {9, "inferred right symmetric forms match exhaustive search", &criterion9},
        {10, "verify-theorem reports are deterministic", &criterion10},
    };
    int failed = 0;
    for (const auto& e : entries) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = e.fn(detail);
        } catch (const std::exception& ex) {
            detail = std::string("exception: ") + ex.what();
        }
        std::printf("criterion %2d: %s  %s [%s] (%.1f s)\n", e.num, ok ? "PASS" : "FAIL", e.name,
                    detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
        if (!ok) ++failed;
    }
    if (failed) std::printf("%d criterion(s) failed\n", failed);
    return failed;
}
