#pragma once

// Exact statistics on 2x2 contingency tables: hypergeometric PMF in log
// space, Fisher exact tests, Fisher noncentral tails, exact one-sided
// confidence intervals by tail inversion, conditional-MLE odds ratio, plus
// the averaged S score and the prior-relative odds ratio.
//
// Every tail quantity is computed as a ratio of weighted sums normalized
// over the whole support (max-shifted in log space, terms accumulated
// smallest first), so the central reductions hold to the last bit and
// boundary tails are exactly 1.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "emosent/emoji.hpp"

namespace emosent {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// The 2x2 table (a, n-a; K-a, N-n-K+a) summarized by its free cell and
// margins: a = key-and-icon count, n = key count, K = icon count, N = total.
struct ContingencyTable {
    int64_t a = 0;
    int64_t n = 0;
    int64_t K = 0;
    int64_t N = 0;

    int64_t support_lo() const { return std::max<int64_t>(0, n + K - N); }
    int64_t support_hi() const { return std::min(n, K); }

    bool valid() const {
        return N >= 1 && n >= 0 && n <= N && K >= 0 && K <= N && a >= support_lo() &&
               a <= support_hi();
    }
};

enum class Alternative { Greater, Less, TwoSided };
enum class TailDirection { Geq, Leq };

struct SentimentScore {
    double mean = 0;  // in [-1, +1]
    double sd = 0;    // sample standard deviation, 0 for a single observation
};

struct OddsResult {
    double sample_odds = 0;  // a/(n-a), +inf when a == n
    double prior_odds = 0;   // K/(N-K)
    double ratio = 0;        // sample odds over prior odds
};

struct ConfidenceInterval {
    double low = 0;
    double high = kInf;
};

struct ExactTestResult {
    double p_value = 1;
    Alternative alternative = Alternative::Greater;
    double ci_low = 0;     // 0 for Less (interval open toward 0)
    double ci_high = kInf; // +inf for Greater (interval open toward +inf)
    double alpha = 0.05;
};

struct ConditionalMleOdds {
    double estimate = 1;  // 0 / +inf at the support boundaries
};

namespace detail {

inline void check_table(const ContingencyTable& t) {
    if (!t.valid()) throw std::invalid_argument("invalid contingency table");
}

// log k!, cached per thread; the cache only grows.
inline double log_factorial(int64_t k) {
    thread_local std::vector<double> cache{0.0, 0.0};
    if (k < 0) throw std::invalid_argument("negative factorial");
    if (static_cast<size_t>(k) >= cache.size()) {
        cache.reserve(static_cast<size_t>(k) + 1);
        for (size_t i = cache.size(); i <= static_cast<size_t>(k); ++i)
            cache.push_back(std::lgamma(static_cast<double>(i) + 1.0));
    }
    return cache[static_cast<size_t>(k)];
}

inline double log_binom(int64_t n, int64_t k) {
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

inline double log_pmf_at(const ContingencyTable& t, int64_t x) {
    return log_binom(t.K, x) + log_binom(t.N - t.K, t.n - x) - log_binom(t.N, t.n);
}

// Sums the values smallest first; positive terms only, so this is the
// cancellation-free order.
inline double ascending_sum(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end());
    double s = 0;
    for (double v : terms) s += v;
    return s;
}

// Log weights of the noncentral law over the support: central log-pmf plus
// x*log_psi.  log_psi = 0 gives bitwise the central weights.
inline void support_log_weights(const ContingencyTable& t, double log_psi,
                                std::vector<double>& lw) {
    const int64_t lo = t.support_lo(), hi = t.support_hi();
    lw.clear();
    lw.reserve(static_cast<size_t>(hi - lo + 1));
    for (int64_t x = lo; x <= hi; ++x)
        lw.push_back(log_pmf_at(t, x) + static_cast<double>(x) * log_psi);
}

// P(X >= x0) or P(X <= x0) under weights exp(lw): a ratio of max-shifted
// sums.  Identical term multisets give exactly 1, so boundary tails are 1.0.
inline double tail_fraction(const ContingencyTable& t, int64_t x0, TailDirection dir,
                            double log_psi) {
    thread_local std::vector<double> lw, all, part;
    support_log_weights(t, log_psi, lw);
    const int64_t lo = t.support_lo();
    const double shift = *std::max_element(lw.begin(), lw.end());
    all.clear();
    part.clear();
    for (size_t i = 0; i < lw.size(); ++i) {
        const double term = std::exp(lw[i] - shift);
        all.push_back(term);
        const int64_t x = lo + static_cast<int64_t>(i);
        if (dir == TailDirection::Geq ? x >= x0 : x <= x0) part.push_back(term);
    }
    const double denom = ascending_sum(all);
    const double numer = ascending_sum(part);
    return std::min(1.0, numer / denom);
}

// Conditional expectation of X under weights exp(lw); computed relative to
// the support floor so all addends stay non-negative.
inline double expectation(const ContingencyTable& t, double log_psi) {
    thread_local std::vector<double> lw;
    support_log_weights(t, log_psi, lw);
    const int64_t lo = t.support_lo();
    const double shift = *std::max_element(lw.begin(), lw.end());
    double denom = 0, numer = 0;
    for (size_t i = 0; i < lw.size(); ++i) {
        const double term = std::exp(lw[i] - shift);
        denom += term;
        numer += static_cast<double>(i) * term;
    }
    return static_cast<double>(lo) + numer / denom;
}

}  // namespace detail

// ---- S score -------------------------------------------------------------

inline constexpr double icon_value(IconRating r) {
    switch (r) {
        case IconRating::Sad: return -1.0;
        case IconRating::Neutral: return -0.5;
        case IconRating::Good: return 0.0;
        case IconRating::Great: return 1.0;
    }
    return 0.0;
}

// Mean of the mapped ratings and their sample standard deviation
// (divisor total-1; 0 when there is a single observation).
inline SentimentScore s_score(const IconCounts& counts) {
    const int64_t total = counts.total();
    if (total == 0) throw std::invalid_argument("no observations");
    double sum = 0;
    for (IconRating r : kAllIcons) sum += icon_value(r) * static_cast<double>(counts.count(r));
    SentimentScore s;
    s.mean = sum / static_cast<double>(total);
    if (total > 1) {
        double ss = 0;
        for (IconRating r : kAllIcons) {
            const double d = icon_value(r) - s.mean;
            ss += static_cast<double>(counts.count(r)) * d * d;
        }
        s.sd = std::sqrt(std::max(0.0, ss / static_cast<double>(total - 1)));
    }
    return s;
}

// ---- Odds ----------------------------------------------------------------

inline double sample_odds(int64_t a, int64_t n) {
    if (n <= 0) throw std::invalid_argument("no observations");
    if (a < 0 || a > n) throw std::invalid_argument("count outside [0, n]");
    if (a == n) return kInf;
    return static_cast<double>(a) / static_cast<double>(n - a);
}

inline double prior_odds(int64_t K, int64_t N) {
    if (K <= 0 || K >= N) throw std::domain_error("degenerate prior");
    return static_cast<double>(K) / static_cast<double>(N - K);
}

// Sample odds over whole-corpus prior odds.  Interior tables use the product
// form a(N-K) / (n-a)K, which is one correctly-rounded division.
inline OddsResult odds_ratio_vs_prior(const ContingencyTable& t) {
    detail::check_table(t);
    OddsResult r;
    r.sample_odds = sample_odds(t.a, t.n);
    r.prior_odds = prior_odds(t.K, t.N);
    if (t.a == 0)
        r.ratio = 0;
    else if (t.a == t.n)
        r.ratio = kInf;
    else
        r.ratio = (static_cast<double>(t.a) * static_cast<double>(t.N - t.K)) /
                  (static_cast<double>(t.n - t.a) * static_cast<double>(t.K));
    return r;
}

// ---- Hypergeometric machinery ---------------------------------------------

// log of C(K,x) C(N-K,n-x) / C(N,n).
inline double log_hypergeom_pmf(const ContingencyTable& t, int64_t x) {
    detail::check_table(t);
    if (x < t.support_lo() || x > t.support_hi()) throw std::domain_error("outside support");
    return detail::log_pmf_at(t, x);
}

inline double fisher_p_value(const ContingencyTable& t, Alternative alt) {
    detail::check_table(t);
    switch (alt) {
        case Alternative::Greater:
            return detail::tail_fraction(t, t.a, TailDirection::Geq, 0.0);
        case Alternative::Less:
            return detail::tail_fraction(t, t.a, TailDirection::Leq, 0.0);
        case Alternative::TwoSided:
            break;
    }
    // minimum-likelihood rule: every x at most as likely as a, with a hair
    // of relative slack on the comparison
    thread_local std::vector<double> lw, all, part;
    detail::support_log_weights(t, 0.0, lw);
    const int64_t lo = t.support_lo();
    const double shift = *std::max_element(lw.begin(), lw.end());
    const double cutoff = lw[static_cast<size_t>(t.a - lo)] + std::log1p(1e-7);
    all.clear();
    part.clear();
    for (double v : lw) {
        const double term = std::exp(v - shift);
        all.push_back(term);
        if (v <= cutoff) part.push_back(term);
    }
    const double denom = detail::ascending_sum(all);
    const double numer = detail::ascending_sum(part);
    return std::min(1.0, numer / denom);
}

// P(X >= a | psi) or P(X <= a | psi) under Fisher's noncentral law with
// weight psi^x.  psi = 1 reduces bitwise to the central tail.
inline double noncentral_tail(const ContingencyTable& t, double psi, TailDirection dir) {
    detail::check_table(t);
    if (!(psi > 0) || !std::isfinite(psi)) throw std::invalid_argument("psi must be positive");
    return detail::tail_fraction(t, t.a, dir, std::log(psi));
}

namespace detail {

// Solves tail(log_psi) = alpha for a monotone tail by bracket growth plus
// bisection on log psi; |tail - alpha| <= tol at the returned point.
template <typename TailFn>
double invert_tail(TailFn tail, double alpha, bool increasing, double tol) {
    auto f = [&](double s) { return tail(s) - alpha; };
    double lo = 0, hi = 0;
    double flo = f(0), fhi = flo;
    const double sign = increasing ? 1.0 : -1.0;
    for (int i = 0; sign * flo > 0; ++i) {
        if (i >= 200) throw std::runtime_error("CI inversion failed");
        lo -= 4.0;
        flo = f(lo);
    }
    for (int i = 0; sign * fhi < 0; ++i) {
        if (i >= 200) throw std::runtime_error("CI inversion failed");
        hi += 4.0;
        fhi = f(hi);
    }
    for (int step = 0; step < 200; ++step) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::abs(fm) <= tol) return std::exp(mid);
        if (sign * fm < 0)
            lo = mid;
        else
            hi = mid;
    }
    throw std::runtime_error("CI inversion failed");
}

}  // namespace detail

// One-sided exact interval for the odds-ratio parameter: Greater gives
// (psi_L, +inf) with P(X >= a | psi_L) = alpha, Less gives (0, psi_U) with
// P(X <= a | psi_U) = alpha.  Support-boundary observations yield the
// trivial bound (no evidence in that direction).
inline ConfidenceInterval exact_ci(const ContingencyTable& t, Alternative alt,
                                   double alpha = 0.05) {
    detail::check_table(t);
    if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("alpha must be in (0,1)");
    if (alt == Alternative::TwoSided)
        throw std::invalid_argument("exact_ci is one-sided: use Greater or Less");
    ConfidenceInterval ci;
    if (alt == Alternative::Greater) {
        if (t.a == t.support_lo()) return ci;  // (0, inf)
        ci.low = detail::invert_tail(
            [&](double s) { return detail::tail_fraction(t, t.a, TailDirection::Geq, s); },
            alpha, /*increasing=*/true, 1e-8);
    } else {
        if (t.a == t.support_hi()) return ci;  // (0, inf)
        ci.high = detail::invert_tail(
            [&](double s) { return detail::tail_fraction(t, t.a, TailDirection::Leq, s); },
            alpha, /*increasing=*/false, 1e-8);
    }
    return ci;
}

// The psi equating the noncentral expectation of X with the observed a;
// the conventional companion estimate to the exact test.  This conditions
// on both margins and is NOT the prior-relative ratio reported above.
inline ConditionalMleOdds conditional_mle_odds_ratio(const ContingencyTable& t) {
    detail::check_table(t);
    const int64_t lo = t.support_lo(), hi = t.support_hi();
    if (lo == hi) return {1.0};  // single-point support: psi unidentifiable
    if (t.a == lo) return {0.0};
    if (t.a == hi) return {kInf};
    const double target = static_cast<double>(t.a);
    auto dev = [&](double s) { return detail::expectation(t, s); };
    // expectation is strictly increasing in psi
    double slo = 0, shi = 0;
    while (dev(slo) > target) slo -= 4.0;
    while (dev(shi) < target) shi += 4.0;
    for (int step = 0; step < 300; ++step) {
        const double mid = 0.5 * (slo + shi);
        const double e = dev(mid);
        if (std::abs(e - target) <= 1e-10 || shi - slo < 1e-14) return {std::exp(mid)};
        if (e < target)
            slo = mid;
        else
            shi = mid;
    }
    return {std::exp(0.5 * (slo + shi))};
}

}  // namespace emosent
