// SPDX-License-Identifier: Apache-2.0
//
// Test-only oracles, deliberately independent of the library implementation
// paths they are used to check.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracles {

// Plain composite Simpson on a fixed grid. No adaptivity, no transforms.
template <class F>
double simpson(F&& f, double a, double b, int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; i += 2) sum += 4.0 * f(a + i * h);
    for (int i = 2; i < n; i += 2) sum += 2.0 * f(a + i * h);
    return sum * h / 3.0;
}

// K_nu(x) through the branch-cut representation
//   K_nu(x) = sqrt(pi) (x/2)^nu / Gamma(nu+1/2) *
//             int_1^inf e^{-x t} (t^2-1)^{nu-1/2} dt,
// a different representation from the cosh integral used by the library.
// Valid for nu > -1/2; adequate accuracy for moderate nu and x.
inline double bessel_k_branchcut(double nu, double x) {
    auto integrand = [nu, x](double u) {
        // t = 1 + u^2 removes the endpoint singularity
        const double t = 1.0 + u * u;
        const double w = u * u * (t + 1.0); // t^2 - 1
        return std::exp(-x * t + (nu - 0.5) * std::log(w)) * 2.0 * u;
    };
    const double tail = std::sqrt((745.0 / x));
    const double integral = simpson(integrand, 0.0, tail, 40000);
    return std::sqrt(M_PI) * std::pow(0.5 * x, nu) * integral /
           std::exp(std::lgamma(nu + 0.5));
}

// Sum of independent exponential densities by direct numerical convolution.
// rates[i] is the rate of component i. Evaluates the density of the sum at y.
inline double hypoexp_pdf_by_convolution(std::vector<double> rates, double y) {
    std::function<double(std::size_t, double)> pdf = [&](std::size_t k,
                                                         double t) -> double {
        if (t < 0.0) return 0.0;
        if (k == 0) return rates[0] * std::exp(-rates[0] * t);
        auto f = [&](double u) {
            return pdf(k - 1, u) * rates[k] * std::exp(-rates[k] * (t - u));
        };
        return simpson(f, 0.0, t, 4000);
    };
    return pdf(rates.size() - 1, y);
}

// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        const double fa = static_cast<double>(i) / a.size();
        const double fb = static_cast<double>(j) / b.size();
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

// Streaming mean and standard error.
struct MeanAccumulator {
    double sum = 0.0, sum_sq = 0.0;
    long long n = 0;
    void add(double x) {
        sum += x;
        sum_sq += x * x;
        ++n;
    }
    double mean() const { return sum / n; }
    double std_error() const {
        const double m = mean();
        const double var = std::max(0.0, sum_sq / n - m * m);
        return std::sqrt(var / n);
    }
};

} // namespace oracles
