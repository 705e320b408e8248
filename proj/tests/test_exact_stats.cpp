#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "emosent/exact_stats.hpp"

using namespace emosent;
using Catch::Approx;

namespace {
IconCounts counts_of(int64_t great, int64_t good, int64_t neutral, int64_t sad) {
    IconCounts c;
    c.great = great;
    c.good = good;
    c.neutral = neutral;
    c.sad = sad;
    return c;
}
}  // namespace

TEST_CASE("s_score maps icons and uses the sample deviation") {
    // reference rows: (0,0,1,2) -> -0.83/0.29, (7,2,3,4) -> 0.09/0.88,
    // (7,0,0,0) -> 1.00/0
    auto s = s_score(counts_of(0, 0, 1, 2));
    CHECK(s.mean == Approx(-2.5 / 3.0).epsilon(1e-14));
    CHECK(s.sd == Approx(0.2886751345948129).epsilon(1e-12));

    s = s_score(counts_of(7, 2, 3, 4));
    CHECK(s.mean == Approx(0.09375).epsilon(1e-14));
    CHECK(s.sd == Approx(0.8797490172391972).epsilon(1e-12));

    s = s_score(counts_of(7, 0, 0, 0));
    CHECK(s.mean == 1.0);
    CHECK(s.sd == 0.0);

    // single observation: sd pinned to zero
    s = s_score(counts_of(0, 0, 1, 0));
    CHECK(s.mean == -0.5);
    CHECK(s.sd == 0.0);

    CHECK_THROWS_WITH(s_score(counts_of(0, 0, 0, 0)), "no observations");
}

TEST_CASE("s_score bounds and single-icon degeneracy") {
    // mean stays in [-1,1]; sd = 0 iff exactly one icon count is nonzero
    for (int64_t g = 0; g <= 3; ++g)
        for (int64_t go = 0; go <= 3; ++go)
            for (int64_t ne = 0; ne <= 3; ++ne)
                for (int64_t sa = 0; sa <= 3; ++sa) {
                    if (g + go + ne + sa == 0) continue;
                    const auto s = s_score(counts_of(g, go, ne, sa));
                    CHECK(s.mean >= -1.0);
                    CHECK(s.mean <= 1.0);
                    const int nonzero = (g > 0) + (go > 0) + (ne > 0) + (sa > 0);
                    if (nonzero == 1)
                        CHECK(s.sd == 0.0);
                    else
                        CHECK(s.sd > 0.0);
                }
}

TEST_CASE("sample and prior odds") {
    CHECK(sample_odds(18, 33) == Approx(1.2).epsilon(1e-14));
    CHECK(sample_odds(0, 5) == 0.0);
    CHECK(std::isinf(sample_odds(4, 4)));
    CHECK_THROWS(sample_odds(1, 0));

    CHECK(prior_odds(1870, 3680) == Approx(1.0331491712707181).epsilon(1e-15));
    CHECK(prior_odds(288, 3680) == Approx(0.08490566037735849).epsilon(1e-15));
    CHECK(prior_odds(5, 10) == 1.0);
    CHECK_THROWS_WITH(prior_odds(0, 10), "degenerate prior");
    CHECK_THROWS_WITH(prior_odds(10, 10), "degenerate prior");
}

TEST_CASE("prior-relative odds ratio") {
    // 2/1 over 288/3392
    auto r = odds_ratio_vs_prior({2, 3, 288, 3680});
    CHECK(r.ratio == Approx(6784.0 / 288.0).epsilon(1e-15));
    CHECK(r.sample_odds == 2.0);
    CHECK(r.prior_odds == Approx(288.0 / 3392.0).epsilon(1e-15));

    CHECK(odds_ratio_vs_prior({5, 6, 505, 3680}).ratio == Approx(15875.0 / 505.0).epsilon(1e-15));
    CHECK(odds_ratio_vs_prior({13, 79, 288, 3680}).ratio ==
          Approx(44096.0 / 19008.0).epsilon(1e-15));

    CHECK(odds_ratio_vs_prior({0, 3, 288, 3680}).ratio == 0.0);
    CHECK(std::isinf(odds_ratio_vs_prior({3, 3, 288, 3680}).ratio));
    CHECK_THROWS_WITH(odds_ratio_vs_prior({0, 3, 0, 3680}), "degenerate prior");
}

TEST_CASE("odds ratio identities") {
    // product form is bit-exact; quotient form agrees to a few ulp
    for (int64_t N : {10, 37, 3680})
        for (int64_t K : {int64_t{1}, int64_t{3}, N / 3, N - 1})
            for (int64_t n : {int64_t{2}, int64_t{5}, N / 2}) {
                if (K <= 0 || K >= N || n > N) continue;
                ContingencyTable t{0, n, K, N};
                for (int64_t a = std::max<int64_t>(1, t.support_lo());
                     a < std::min(n, t.support_hi() + 1); ++a) {
                    t.a = a;
                    if (a > t.support_hi()) continue;
                    const auto r = odds_ratio_vs_prior(t);
                    const double product = (static_cast<double>(a) * static_cast<double>(N - K)) /
                                           (static_cast<double>(n - a) * static_cast<double>(K));
                    CHECK(r.ratio == product);
                    CHECK(r.ratio == Approx(r.sample_odds / r.prior_odds).epsilon(1e-14));
                }
            }
}

TEST_CASE("log hypergeometric pmf") {
    // C(5,4) C(5,0) / C(10,4) = 5/210
    ContingencyTable t{4, 4, 5, 10};
    CHECK(log_hypergeom_pmf(t, 4) == Approx(std::log(5.0 / 210.0)).margin(1e-12));
    ContingencyTable t2{1, 1, 1, 2};
    CHECK(log_hypergeom_pmf(t2, 1) == Approx(std::log(0.5)).margin(1e-14));
    CHECK_THROWS_WITH(log_hypergeom_pmf(t, 5), "outside support");

    // normalization over the support
    for (ContingencyTable tt : {ContingencyTable{0, 4, 5, 10}, ContingencyTable{2, 14, 19, 57},
                                ContingencyTable{3, 3, 288, 3680}}) {
        double total = 0;
        for (int64_t x = tt.support_lo(); x <= tt.support_hi(); ++x)
            total += std::exp(log_hypergeom_pmf(tt, x));
        CHECK(total == Approx(1.0).margin(1e-11));
    }
}

TEST_CASE("fisher exact test") {
    CHECK(fisher_p_value({2, 3, 288, 3680}, Alternative::Greater) ==
          Approx(0.01736599888402249).margin(1e-9));
    CHECK(fisher_p_value({0, 3, 288, 3680}, Alternative::Greater) == 1.0);
    CHECK(fisher_p_value({4, 4, 5, 10}, Alternative::Greater) ==
          Approx(5.0 / 210.0).margin(1e-12));

    // complementarity: P(>=a) + P(<=a) - pmf(a) = 1
    for (ContingencyTable t : {ContingencyTable{2, 3, 288, 3680}, ContingencyTable{7, 19, 288, 3680},
                               ContingencyTable{3, 9, 4, 20}}) {
        const double g = fisher_p_value(t, Alternative::Greater);
        const double l = fisher_p_value(t, Alternative::Less);
        const double pmf = std::exp(log_hypergeom_pmf(t, t.a));
        CHECK(g + l - pmf == Approx(1.0).margin(1e-11));
    }

    // two-sided includes every x at most as likely as a
    CHECK(fisher_p_value({4, 4, 5, 10}, Alternative::TwoSided) ==
          Approx(5.0 / 210.0 + 5.0 / 210.0).margin(1e-12));
    // at the modal a the whole support is included
    CHECK(fisher_p_value({2, 4, 5, 10}, Alternative::TwoSided) == 1.0);
}

TEST_CASE("noncentral tail") {
    // direct weighted enumeration at psi=2: weights 5,100,400,400,80
    ContingencyTable t{3, 4, 5, 10};
    CHECK(noncentral_tail(t, 2.0, TailDirection::Geq) ==
          Approx(480.0 / 985.0).margin(1e-13));
    CHECK(noncentral_tail(t, 2.0, TailDirection::Leq) ==
          Approx(905.0 / 985.0).margin(1e-13));

    // psi = 1 reduces to the central tail, bit for bit
    for (ContingencyTable tt :
         {ContingencyTable{2, 3, 288, 3680}, ContingencyTable{3, 4, 5, 10},
          ContingencyTable{5, 12, 19, 57}}) {
        CHECK(noncentral_tail(tt, 1.0, TailDirection::Geq) ==
              fisher_p_value(tt, Alternative::Greater));
        CHECK(noncentral_tail(tt, 1.0, TailDirection::Leq) ==
              fisher_p_value(tt, Alternative::Less));
    }

    // geq tail is 1 at the lower support bound, for any psi
    ContingencyTable lo{0, 3, 288, 3680};
    for (double psi : {1e-6, 0.5, 1.0, 7.0, 1e6})
        CHECK(noncentral_tail(lo, psi, TailDirection::Geq) == 1.0);

    // monotone in psi
    ContingencyTable mid{5, 12, 19, 57};
    double prev = 0;
    for (double psi : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        const double v = noncentral_tail(mid, psi, TailDirection::Geq);
        CHECK(v > prev);
        prev = v;
    }

    CHECK_THROWS(noncentral_tail(t, 0.0, TailDirection::Geq));
    CHECK_THROWS(noncentral_tail(t, -1.0, TailDirection::Geq));
}

TEST_CASE("exact one-sided confidence intervals") {
    auto ci = exact_ci({2, 3, 288, 3680}, Alternative::Greater);
    CHECK(ci.low == Approx(1.8470036598425348).margin(1e-5));
    CHECK(std::isinf(ci.high));

    ci = exact_ci({7, 19, 288, 3680}, Alternative::Greater);
    CHECK(ci.low == Approx(2.752220970011346).margin(1e-5));

    // self-consistency: the tail at the bound equals alpha
    for (ContingencyTable t :
         {ContingencyTable{2, 3, 288, 3680}, ContingencyTable{7, 19, 288, 3680},
          ContingencyTable{5, 12, 19, 57}}) {
        const auto g = exact_ci(t, Alternative::Greater, 0.05);
        CHECK(noncentral_tail(t, g.low, TailDirection::Geq) == Approx(0.05).margin(1e-6));
        const auto l = exact_ci(t, Alternative::Less, 0.05);
        CHECK(noncentral_tail(t, l.high, TailDirection::Leq) == Approx(0.05).margin(1e-6));
    }

    // support boundaries give the trivial interval
    ci = exact_ci({0, 3, 288, 3680}, Alternative::Greater);
    CHECK(ci.low == 0.0);
    CHECK(std::isinf(ci.high));
    ci = exact_ci({3, 3, 288, 3680}, Alternative::Less);
    CHECK(ci.low == 0.0);
    CHECK(std::isinf(ci.high));

    CHECK_THROWS(exact_ci({2, 3, 288, 3680}, Alternative::Greater, 0.0));
    CHECK_THROWS(exact_ci({2, 3, 288, 3680}, Alternative::TwoSided));
}

TEST_CASE("conditional MLE odds ratio") {
    CHECK(conditional_mle_odds_ratio({3, 4, 5, 10}).estimate ==
          Approx(4.918373800380868).margin(1e-6));
    // symmetric null table
    CHECK(conditional_mle_odds_ratio({5, 10, 10, 20}).estimate == Approx(1.0).margin(1e-8));
    // support boundaries
    CHECK(std::isinf(conditional_mle_odds_ratio({4, 4, 5, 10}).estimate));
    CHECK(conditional_mle_odds_ratio({0, 4, 5, 10}).estimate == 0.0);
}

TEST_CASE("table validation") {
    CHECK_THROWS(fisher_p_value({5, 3, 288, 3680}, Alternative::Greater));  // a > n
    CHECK_THROWS(fisher_p_value({2, 3, 4000, 3680}, Alternative::Greater)); // K > N
    CHECK_THROWS(fisher_p_value({0, 3, 3679, 3680}, Alternative::Greater)); // a below support
}
