#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "gevrey/classifier.hpp"
#include "gevrey/evolution.hpp"

using namespace gevrey;

namespace {

DiagonalOperator family(int re_sign, double a_r, double p_r, double a_i, double p_i,
                        ImSignPattern pat = ImSignPattern::Plus) {
    PowerLawSpectrum p;
    p.re_sign = re_sign;
    p.re_coef = a_r;
    p.re_exp = p_r;
    p.im_coef = a_i;
    p.im_exp = p_i;
    p.im_sign = pat;
    return DiagonalOperator(SpectrumSpec::power_law(p));
}

}  // namespace

TEST_CASE("classify_roumieu examples") {
    SECTION("negative reals at beta 1: holds with witness (1,1)") {
        auto v = classify_roumieu(family(-1, 1, 1, 0, 0), 1.0);
        REQUIRE(v.holds);
        REQUIRE(v.method == VerdictMethod::Exact);
        REQUIRE(v.witness_b_minus == 1.0);
        REQUIRE(v.witness_b_plus == 1.0);
    }
    SECTION("-k + i k^2 at beta 2: holds") {
        auto v = classify_roumieu(family(-1, 1, 1, 1, 2), 2.0);
        REQUIRE(v.holds);
        REQUIRE(v.witness_b_minus == 1.0);
    }
    SECTION("i k^2 fails for every beta") {
        for (double beta : {1.0, 2.0, 8.0}) {
            auto v = classify_roumieu(family(0, 0, 0, 1, 2), beta);
            REQUIRE_FALSE(v.holds);
            REQUIRE(v.method == VerdictMethod::Exact);
            REQUIRE_FALSE(v.refutation.empty());
        }
    }
}

TEST_CASE("classify_beurling examples") {
    SECTION("-k + i k^2 at beta 2 fails: only b_minus <= 1 works") {
        auto v = classify_beurling(family(-1, 1, 1, 1, 2), 2.0);
        REQUIRE_FALSE(v.holds);
        REQUIRE(v.method == VerdictMethod::Exact);
    }
    SECTION("-k + i k^2 at beta 2.5 holds") {
        auto v = classify_beurling(family(-1, 1, 1, 1, 2), 2.5);
        REQUIRE(v.holds);
        REQUIRE(v.witness_b_plus.has_value());
        REQUIRE_FALSE(v.witness_b_minus.has_value());  // Beurling carries b_plus only
    }
    SECTION("finite spectra hold for every beta > 1") {
        DiagonalOperator a(SpectrumSpec::finite({{3.0, 4.0}, {-1.0, 0.0}}));
        for (double beta : {1.1, 2.0, 16.0}) REQUIRE(classify_beurling(a, beta).holds);
    }
    SECTION("beta = 1 is out of range") {
        REQUIRE_THROWS_AS(classify_beurling(family(-1, 1, 1, 0, 0), 1.0), BetaOutOfRangeError);
    }
}

TEST_CASE("classify_analytic examples") {
    REQUIRE(classify_analytic(family(-1, 1, 1, 0, 0)).holds);
    REQUIRE_FALSE(classify_analytic(family(-1, 1, 1, 1, 2)).holds);
    auto diag = classify_analytic(family(-1, 1, 1, 1, 1));  // -k(1+i)
    REQUIRE(diag.holds);
    REQUIRE(diag.witness_b_minus == 1.0);  // inclusive inequality at the boundary
}

TEST_CASE("classify_analytic equals classify_roumieu at beta 1") {
    std::vector<DiagonalOperator> ops = {family(-1, 1, 1, 0, 0), family(-1, 1, 1, 1, 2),
                                         family(0, 0, 0, 1, 2), family(1, 1, 0.5, 1, 1),
                                         family(-1, 2, 1, 3, 1)};
    for (const auto& a : ops) {
        auto lhs = classify_analytic(a);
        auto rhs = classify_roumieu(a, 1.0);
        REQUIRE(lhs.holds == rhs.holds);
        REQUIRE(lhs.method == rhs.method);
        REQUIRE(lhs.witness_b_minus == rhs.witness_b_minus);
        REQUIRE(lhs.witness_b_plus == rhs.witness_b_plus);
    }
}

TEST_CASE("monotonicity in beta and quantifier relaxation") {
    std::vector<DiagonalOperator> ops = {family(-1, 1, 1, 1, 2), family(-1, 1, 1, 1, 3),
                                         family(1, 1, 0.5, 1, 1), family(0, 0, 0, 1, 2),
                                         family(-1, 3, 2, 1, 3)};
    std::vector<double> betas = {1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0};
    for (const auto& a : ops) {
        bool prev = false;
        for (double beta : betas) {
            bool cur = classify_roumieu(a, beta).holds;
            if (prev) REQUIRE(cur);  // holds at beta implies holds at beta' > beta
            prev = cur;
        }
        for (double beta : betas) {
            if (beta <= 1.0) continue;
            // Beurling at beta implies Roumieu at beta
            if (classify_beurling(a, beta).holds) REQUIRE(classify_roumieu(a, beta).holds);
        }
        // Roumieu at beta implies Beurling at every strictly larger beta
        for (std::size_t i = 0; i + 1 < betas.size(); ++i) {
            if (betas[i + 1] <= 1.0) continue;
            if (classify_roumieu(a, betas[i]).holds)
                REQUIRE(classify_beurling(a, betas[i + 1]).holds);
        }
    }
}

TEST_CASE("minimal roumieu order: closed form vs bisection") {
    struct Case {
        DiagonalOperator a;
        double expect;
    };
    std::vector<Case> cases = {
        {family(-1, 1, 1, 0, 0), 1.0},       {family(-1, 1, 1, 1, 2), 2.0},
        {family(-1, 1, 1, 1, 3), 3.0},       {family(-1, 1, 1, 1, 1), 1.0},
        {family(0, 0, 0, 1, 2), kInf},       {family(1, 1, 0.5, 1, 1), 2.0},
        {family(-1, 2, 1.5, 1, 2.25), 1.5},
    };
    for (const auto& c : cases) {
        double closed = minimal_roumieu_order(c.a);
        double bis = minimal_roumieu_order_bisection(c.a);
        if (std::isinf(c.expect)) {
            REQUIRE(std::isinf(closed));
            REQUIRE(std::isinf(bis));
        } else {
            REQUIRE(closed == Catch::Approx(c.expect));
            REQUIRE(std::abs(bis - closed) <= 1e-3);
        }
    }
}

TEST_CASE("sector values") {
    constexpr double half_pi = std::numbers::pi / 2.0;
    REQUIRE(sector(family(-1, 1, 1, 0, 0)) == Catch::Approx(half_pi).margin(1e-9));
    REQUIRE(sector(family(1, 1, 1, 0, 0)) == Catch::Approx(half_pi).margin(1e-9));

    double c = std::cos(std::numbers::pi / 4.0);
    REQUIRE(sector(family(-1, c, 1, c, 1, ImSignPattern::Alternating)) ==
            Catch::Approx(std::numbers::pi / 4.0).margin(1e-9));

    REQUIRE_THROWS_AS(sector(family(0, 0, 0, 1, 2)), HypothesisFailedError);
}

TEST_CASE("cross-validation: geometric order matches the empirical estimate") {
    struct Case {
        DiagonalOperator a;
        double beta_star;
    };
    std::vector<Case> cases = {{family(-1, 1, 1, 0, 0), 1.0},
                               {family(-1, 1, 1, 1, 2), 2.0},
                               {family(-1, 1, 1, 1, 1), 1.0}};
    auto f = StateVector::closed_form({1.0, 2.0, 0.0, 1.0});
    for (const auto& c : cases) {
        REQUIRE(classify_roumieu(c.a, c.beta_star).holds);
        auto sol = weak_solution(c.a, f);
        for (double t : {0.5, 1.0, 2.0}) {
            auto est = sol.estimate_gevrey_order(t, 8, 40);
            REQUIRE_FALSE(est.divergent);
            REQUIRE(est.beta_hat <= c.beta_star + 0.2);
            REQUIRE(est.beta_hat >= c.beta_star - 0.2);
        }
    }
}

TEST_CASE("sampled spectra classify as undecided or heuristically refuted") {
    std::vector<Complex> benign;
    for (int n = 1; n <= 40; ++n) benign.push_back({-static_cast<double>(n), 1.0});
    auto undecided = classify_roumieu(DiagonalOperator(SpectrumSpec::sampled(benign)), 2.0);
    REQUIRE_FALSE(undecided.holds);
    REQUIRE(undecided.method == VerdictMethod::Undecided);

    std::vector<Complex> hostile;  // bounded-Re pattern escaping every slope
    for (int n = 1; n <= 60; ++n)
        hostile.push_back({0.0, static_cast<double>(n) * static_cast<double>(n)});
    auto refuted = classify_roumieu(DiagonalOperator(SpectrumSpec::sampled(hostile)), 2.0);
    REQUIRE_FALSE(refuted.holds);
    REQUIRE(refuted.method == VerdictMethod::HeuristicRefuted);
}

TEST_CASE("tuning parameter identities") {
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> td(1e-3, 100.0);
    std::uniform_real_distribution<double> bd(1e-3, 50.0);
    std::uniform_real_distribution<double> betad(1.0, 8.0);
    for (int it = 0; it < 1000; ++it) {
        double t = td(rng), b = bd(rng), beta = betad(rng);
        double s = roumieu_tuning_s(t, b, beta);
        REQUIRE(s > 0.0);
        REQUIRE(s <= t);  // (1 + b^-beta)^(-1/beta) <= 1
        double r1 = roumieu_tuning_residual(t, b, beta);
        REQUIRE(std::abs(r1) <= std::ldexp(std::abs(t), -52));  // 1 ulp at t's scale

        double s2 = td(rng);
        double bm = beurling_tuning_b_minus(s2, t, beta);
        REQUIRE(bm > 0.0);
        double r2 = beurling_tuning_residual(s2, t, beta);
        REQUIRE(std::abs(r2) <= std::ldexp(std::abs(t), -52));
    }
}
