#pragma once

// Test-only reference implementations. These deliberately avoid the library's
// own code paths so they can serve as independent oracles.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oracle {

// erfc in long double: alternating Taylor series of erf for |x| <= 1, modified
// Lentz continued fraction for the tail. Good to ~1e-17 absolute, well below
// the 1e-12 budget it is used to certify.
inline long double erfc_ref(long double x) {
    const long double ax = fabsl(x);
    long double r;
    if (ax <= 1.0L) {
        // erf(ax) = (2/sqrt(pi)) * sum (-1)^n ax^(2n+1) / (n! (2n+1))
        long double term = ax;
        long double sum = ax;
        for (int n = 1; n < 80; ++n) {
            term *= -ax * ax / n;
            const long double add = term / (2 * n + 1);
            sum += add;
            if (fabsl(add) < 1e-25L * fabsl(sum)) break;
        }
        const long double two_over_sqrt_pi = 1.12837916709551257389615890312154517L;
        r = 1.0L - two_over_sqrt_pi * sum;
    } else {
        // sqrt(pi) exp(x^2) erfc(x) = 1/(x+ (1/2)/(x+ (2/2)/(x+ (3/2)/(x+ ...))))
        const long double tiny = 1e-30L;
        long double f = ax, c = ax, d = 0.0L;
        for (int k = 1; k < 300; ++k) {
            const long double a = k * 0.5L;
            d = ax + a * d;
            if (fabsl(d) < tiny) d = tiny;
            c = ax + a / c;
            if (fabsl(c) < tiny) c = tiny;
            d = 1.0L / d;
            const long double delta = c * d;
            f *= delta;
            if (fabsl(delta - 1.0L) < 1e-25L) break;
        }
        const long double sqrt_pi = 1.77245385090551602729816748334114518L;
        r = expl(-ax * ax) / (sqrt_pi * f);
    }
    return x < 0.0L ? 2.0L - r : r;
}

inline long double normal_cdf_ref(long double x) {
    const long double inv_sqrt2 = 0.70710678118654752440084436210484904L;
    return 0.5L * erfc_ref(-x * inv_sqrt2);
}

// symmetric central difference
inline double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// exact maximum of the perturbed linear loss over all 2^d corners of the
// sup-norm box; tractable for small d only
inline double corner_max_loss(const std::vector<double>& theta, const std::vector<double>& x,
                              int y, double eps) {
    const std::size_t d = theta.size();
    if (d > 20) throw std::invalid_argument("corner_max_loss: d too large");
    double best = -1e300;
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        double dot = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double delta = (mask >> j) & 1 ? eps : -eps;
            dot += theta[j] * (x[j] + delta);
        }
        best = std::max(best, -y * dot);
    }
    return best;
}

inline std::vector<double> ranks(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
        i = j + 1;
    }
    return r;
}

// Spearman rank correlation (average ranks for ties)
inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    const auto ra = ranks(a);
    const auto rb = ranks(b);
    const double n = static_cast<double>(a.size());
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < ra.size(); ++i) { ma += ra[i]; mb += rb[i]; }
    ma /= n; mb /= n;
    double num = 0, da = 0, db = 0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        num += (ra[i] - ma) * (rb[i] - mb);
        da += (ra[i] - ma) * (ra[i] - ma);
        db += (rb[i] - mb) * (rb[i] - mb);
    }
    return num / std::sqrt(da * db);
}

}  // namespace oracle
