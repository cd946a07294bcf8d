#pragma once
// Welch and paired t-tests with two-sided p-values from the regularized
// incomplete beta function (continued-fraction evaluation).

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace genome {

namespace detail {

// Continued fraction for the incomplete beta function (modified Lentz).
inline double betacf(double a, double b, double x) {
    constexpr int max_iterations = 300;
    constexpr double eps = 3.0e-16;
    constexpr double fpmin = 1.0e-300;

    double qab = a + b;
    double qap = a + 1.0;
    double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iterations; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

// Regularized incomplete beta I_x(a, b).
inline double betai(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                         a * std::log(x) + b * std::log(1.0 - x));
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

inline double mean(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

inline double sample_variance(const std::vector<double>& xs, double m) {
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size() - 1);
}

}  // namespace detail

// Two-sided p-value for a t statistic with df degrees of freedom.
inline double t_to_p(double t, double df) {
    if (!std::isfinite(t)) return 0.0;
    return detail::betai(df / 2.0, 0.5, df / (df + t * t));
}

enum class TTestMode { welch, paired };

struct TTestResult {
    double t = 0.0;
    double p = 1.0;
    double df = 0.0;
    // Zero-variance input with a nonzero mean difference: t is +-infinity.
    bool degenerate = false;
};

// t sign convention: before - after (improvement gives negative t).
inline TTestResult significance_test(const std::vector<double>& before,
                                     const std::vector<double>& after, TTestMode mode) {
    if (before.size() < 2 || after.size() < 2)
        throw std::invalid_argument("significance_test needs at least 2 samples per side");

    TTestResult r;
    if (mode == TTestMode::welch) {
        double m1 = detail::mean(before), m2 = detail::mean(after);
        double v1 = detail::sample_variance(before, m1);
        double v2 = detail::sample_variance(after, m2);
        double n1 = static_cast<double>(before.size());
        double n2 = static_cast<double>(after.size());
        double se2 = v1 / n1 + v2 / n2;
        if (se2 == 0.0) {
            if (m1 == m2) return r;  // t=0, p=1
            r.t = (m1 < m2) ? -std::numeric_limits<double>::infinity()
                            : std::numeric_limits<double>::infinity();
            r.p = 0.0;
            r.degenerate = true;
            return r;
        }
        r.t = (m1 - m2) / std::sqrt(se2);
        r.df = se2 * se2 /
               (v1 * v1 / (n1 * n1 * (n1 - 1.0)) + v2 * v2 / (n2 * n2 * (n2 - 1.0)));
        r.p = t_to_p(r.t, r.df);
        return r;
    }

    if (before.size() != after.size())
        throw std::invalid_argument("paired test needs equal-length samples");
    std::vector<double> diffs(before.size());
    for (std::size_t i = 0; i < before.size(); ++i) diffs[i] = before[i] - after[i];
    double md = detail::mean(diffs);
    double vd = detail::sample_variance(diffs, md);
    double n = static_cast<double>(diffs.size());
    r.df = n - 1.0;
    if (vd == 0.0) {
        if (md == 0.0) return TTestResult{0.0, 1.0, r.df, false};
        r.t = (md < 0.0) ? -std::numeric_limits<double>::infinity()
                         : std::numeric_limits<double>::infinity();
        r.p = 0.0;
        r.degenerate = true;
        return r;
    }
    r.t = md / std::sqrt(vd / n);
    r.p = t_to_p(r.t, r.df);
    return r;
}

}  // namespace genome
