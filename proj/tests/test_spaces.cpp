#include <catch_amalgamated.hpp>

#include <bjlab/norms.hpp>
#include <bjlab/rng.hpp>

using bjlab::Space;
using bjlab::vec;

TEST_CASE("descriptor grammar round trips") {
    for (const char* d : {"lp(2,3)", "lp(1,4)", "lp(inf,2)", "lp(1.5,2)",
                          "sup(lp(2,2),lp(inf,3))", "sup(lp(1,1))",
                          "sup(sup(lp(2,1),lp(2,1)),lp(3,2))",
                          "poly[1,0;0,1;1,1]"}) {
        const Space S = Space::parse(d);
        CHECK(Space::parse(S.to_string()).to_string() == S.to_string());
    }
}

TEST_CASE("descriptor dimensions") {
    CHECK(Space::parse("lp(2,3)").dim() == 3);
    CHECK(Space::parse("sup(lp(2,2),lp(inf,3))").dim() == 5);
    CHECK(Space::parse("sup(sup(lp(2,1),lp(2,1)),lp(3,2))").dim() == 4);
    CHECK(Space::parse("poly[1,0;0,1;1,1]").dim() == 2);
}

TEST_CASE("malformed descriptors throw") {
    CHECK_THROWS_AS(Space::parse("lq(2,3)"), bjlab::parse_error);
    CHECK_THROWS_AS(Space::parse("lp(2,3"), bjlab::parse_error);
    CHECK_THROWS_AS(Space::parse("lp(2,3)x"), bjlab::parse_error);
    CHECK_THROWS_AS(Space::parse(""), bjlab::parse_error);
    CHECK_THROWS_AS(Space::parse("sup()"), bjlab::parse_error);
    CHECK_THROWS_AS(Space::parse("poly[]"), bjlab::parse_error);
    CHECK_THROWS(Space::parse("lp(0.5,3)"));
    CHECK_THROWS(Space::parse("lp(2,0)"));
}

TEST_CASE("nesting depth is capped") {
    std::string d = "lp(2,1)";
    for (int i = 0; i < 7; ++i) d = "sup(" + d + ",lp(2,1))";
    CHECK_NOTHROW(Space::parse(d)); // depth 8
    d = "sup(" + d + ",lp(2,1))";
    CHECK_THROWS(Space::parse(d)); // depth 9
}

TEST_CASE("norm values by hand") {
    CHECK(bjlab::norm(Space::lp(1.0, 3), {1, -2, 3}) == Catch::Approx(6.0));
    CHECK(bjlab::norm(Space::lp(bjlab::kInf, 3), {1, -2, 3}) == Catch::Approx(3.0));
    CHECK(bjlab::norm(Space::lp(2.0, 2), {3, 4}) == Catch::Approx(5.0));
    CHECK(bjlab::norm(Space::lp(3.0, 2), {1, 1}) == Catch::Approx(std::pow(2.0, 1.0 / 3.0)));

    // sup sum is the max of component norms
    const Space S = Space::parse("sup(lp(2,2),lp(1,2))");
    CHECK(bjlab::norm(S, {3, 4, 1, 1}) == Catch::Approx(5.0));
    CHECK(bjlab::norm(S, {0.3, 0.4, 1, 1}) == Catch::Approx(2.0));

    // polyhedral generators act as functionals: the coordinate pair gives
    // the sup norm, and adding the diagonal tightens the ball
    const Space P = Space::polyhedral({{1, 0}, {0, 1}});
    CHECK(bjlab::norm(P, {0.5, 0.5}) == Catch::Approx(0.5));
    CHECK(bjlab::norm(P, {2, 0}) == Catch::Approx(2.0));
    const Space D = Space::polyhedral({{1, 0}, {0, 1}, {1, 1}});
    CHECK(bjlab::norm(D, {0.5, 0.5}) == Catch::Approx(1.0));
}

TEST_CASE("norm axioms on random vectors") {
    for (const char* d : {"lp(1.5,3)", "lp(1,4)", "lp(inf,3)", "poly[1,0;0,1;1,1]",
                          "sup(lp(2,2),lp(3,2))"}) {
        const Space S = Space::parse(d);
        bjlab::Rng rng = bjlab::Rng::stream(99, 0);
        for (int t = 0; t < 200; ++t) {
            const vec x = rng.gaussian_vec(S.dim());
            const vec y = rng.gaussian_vec(S.dim());
            const double a = rng.uniform(-3.0, 3.0);
            vec ax(x), xy(x);
            for (std::size_t i = 0; i < x.size(); ++i) {
                ax[i] *= a;
                xy[i] += y[i];
            }
            CHECK(bjlab::norm(S, ax) ==
                  Catch::Approx(std::fabs(a) * bjlab::norm(S, x)).margin(1e-12));
            CHECK(bjlab::norm(S, xy) <= bjlab::norm(S, x) + bjlab::norm(S, y) + 1e-12);
        }
        CHECK(bjlab::norm(S, vec(S.dim(), 0.0)) == 0.0);
    }
}

TEST_CASE("dual norm is the support function of the unit ball") {
    // |f(x)| <= ||f||_* ||x|| with equality approached on a dense sample
    for (const char* d : {"lp(1,3)", "lp(3,2)", "lp(inf,3)", "poly[1,0;0,1;1,1]"}) {
        const Space S = Space::parse(d);
        bjlab::Rng rng = bjlab::Rng::stream(7, 1);
        for (int t = 0; t < 50; ++t) {
            const vec f = rng.gaussian_vec(S.dim());
            const double nf = bjlab::dual_norm(S, f);
            double best = 0;
            for (int s = 0; s < 4000; ++s) {
                vec x = rng.gaussian_vec(S.dim());
                const double nx = bjlab::norm(S, x);
                if (!(nx > 0)) continue;
                best = std::max(best, std::fabs(bjlab::detail::dot(f, x)) / nx);
            }
            CHECK(best <= nf * (1.0 + 1e-9));
            CHECK(best >= nf * 0.8); // dense sample gets close in low dim
        }
    }
}

TEST_CASE("dual space pairs exponents and transposes sup sums") {
    CHECK(bjlab::dual_space(Space::lp(1.0, 3)).to_string() == "lp(inf,3)");
    CHECK(bjlab::dual_space(Space::lp(bjlab::kInf, 3)).to_string() == "lp(1,3)");
    CHECK(bjlab::dual_space(Space::lp(3.0, 2)).to_string() == "lp(1.5,2)");
    CHECK(bjlab::dual_space(Space::lp(2.0, 5)).to_string() == "lp(2,5)");
}

TEST_CASE("polyhedral primal extremes generate the ball") {
    const Space P = Space::parse("poly[1,1;1,-1]");
    const auto ext = bjlab::primal_extremes(P);
    REQUIRE(ext.size() >= 2);
    for (const auto& v : ext) CHECK(bjlab::norm(P, v) == Catch::Approx(1.0).margin(1e-9));
    // coordinate functionals cut the square, whose corners are the extremes
    const Space Q = Space::parse("poly[1,0;0,1]");
    const auto qext = bjlab::primal_extremes(Q);
    CHECK(qext.size() == 4);
    CHECK(bjlab::norm(Q, {1, 1}) == Catch::Approx(1.0));
    CHECK(bjlab::norm(Q, {1, 0}) == Catch::Approx(1.0));
}

TEST_CASE("support sets have the advertised shape") {
    using Kind = bjlab::JSet::Kind;
    CHECK(bjlab::support_set(Space::lp(1.0, 2), {1, 0}).kind == Kind::signed_box);
    CHECK(bjlab::support_set(Space::lp(bjlab::kInf, 2), {1, 1}).kind == Kind::hull);
    CHECK(bjlab::support_set(Space::lp(3.0, 2), {1, 1}).kind == Kind::point);
    CHECK(bjlab::support_set(Space::lp(2.0, 2), {0.6, 0.8}).kind == Kind::point);
    CHECK_THROWS(bjlab::support_set(Space::lp(2.0, 2), {0, 0}));

    // smooth point: J(x) is the normalized gradient, f(x) = ||x||
    const Space S = Space::lp(3.0, 2);
    const vec x = {1, 1};
    const auto J = bjlab::support_set(S, x);
    REQUIRE(J.kind == Kind::point);
    CHECK(bjlab::detail::dot(J.f, x) == Catch::Approx(bjlab::norm(S, x)).margin(1e-12));
    CHECK(bjlab::dual_norm(S, J.f) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("attainment picks the blocks at the top") {
    const Space S = Space::parse("sup(lp(2,2),lp(2,2),lp(2,2))");
    const auto M = bjlab::attainment(S, {0.6, 0.8, 0.5, 0, 0.6, 0.8});
    REQUIRE(M.size() == 2);
    CHECK(M[0] == 0);
    CHECK(M[1] == 2);
}
