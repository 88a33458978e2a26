// SPDX-License-Identifier: Apache-2.0
//
// risser: SER analysis and phase optimization for space-time coded RIS links

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "risser/errors.hpp"

namespace risser::numerics {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLnSqrt2Pi = 0.91893853320467274178; // ln sqrt(2*pi)

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadratureSpec {
    enum class Kind { FiniteAdaptive, SemiInfinite, LogSpacedSemiInfinite };

    Kind kind = Kind::FiniteAdaptive;
    double rel_tol = 1e-9;
    int max_subdivisions = 100000;

    void validate() const {
        if (!(rel_tol > 0.0) || rel_tol > 1e-3)
            throw DomainError("QuadratureSpec: rel_tol must lie in (0, 1e-3]");
        if (max_subdivisions < 1)
            throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
    }
};

struct IntegralEstimate {
    double value = 0.0;
    double abs_error = 0.0; // error indicator accumulated from Richardson terms
};

namespace detail {

struct Panel {
    double a, b;
    double fa, fm, fb;
    double estimate;
};

inline double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

// Adaptive Simpson with a global panel budget. The absolute tolerance is
// derived from an L1 scale of the integrand so that a symmetric integrand
// cancelling to ~0 does not demand impossible relative accuracy.
template <class F>
IntegralEstimate adaptive_simpson(F&& f, double a, double b, double rel_tol,
                                  int max_subdivisions) {
    const int kInit = 16;
    std::vector<Panel> stack;
    stack.reserve(256);

    double scale_l1 = 0.0;
    {
        const double h = (b - a) / kInit;
        double x0 = a, f0 = f(a);
        for (int i = 0; i < kInit; ++i) {
            const double x2 = (i == kInit - 1) ? b : a + (i + 1) * h;
            const double x1 = 0.5 * (x0 + x2);
            const double f1 = f(x1), f2 = f(x2);
            const double s = simpson(x0, x2, f0, f1, f2);
            scale_l1 += std::abs(s);
            stack.push_back({x0, x2, f0, f1, f2, s});
            x0 = x2;
            f0 = f2;
        }
    }
    const double abs_tol =
        rel_tol * std::max(scale_l1, std::numeric_limits<double>::min() * 1e8);
    const double total_width = b - a;
    const double min_width = total_width * 0x1p-45;

    double value = 0.0;
    double err_accepted = 0.0;
    double err_pending = 0.0; // panels abandoned on budget/width limits
    int splits = 0;

    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();

        const double m = 0.5 * (p.a + p.b);
        const double lm = 0.5 * (p.a + m), rm = 0.5 * (m + p.b);
        const double flm = f(lm), frm = f(rm);
        const double left = simpson(p.a, m, p.fa, flm, p.fm);
        const double right = simpson(m, p.b, p.fm, frm, p.fb);
        const double richardson = (left + right - p.estimate) / 15.0;
        const double local_tol = abs_tol * (p.b - p.a) / total_width;

        if (std::abs(richardson) <= local_tol || (p.b - p.a) < min_width) {
            value += left + right + richardson;
            if (std::abs(richardson) <= local_tol)
                err_accepted += std::abs(richardson);
            else
                err_pending += std::abs(richardson);
            continue;
        }
        if (splits >= max_subdivisions) {
            value += left + right + richardson;
            err_pending += std::abs(richardson);
            continue;
        }
        ++splits;
        stack.push_back({p.a, m, p.fa, flm, p.fm, left});
        stack.push_back({m, p.b, p.fm, frm, p.fb, right});
    }

    IntegralEstimate est{value, err_accepted + err_pending};
    if (err_pending > abs_tol)
        throw QuadratureError("adaptive Simpson did not converge", est.value,
                              est.abs_error);
    return est;
}

} // namespace detail

/// Integrate f over the finite interval [a, b].
template <class F>
IntegralEstimate integrate(F&& f, double a, double b,
                           const QuadratureSpec& spec = {}) {
    spec.validate();
    if (a == b) return {0.0, 0.0};
    if (b < a) {
        auto r = integrate(std::forward<F>(f), b, a, spec);
        return {-r.value, r.abs_error};
    }
    return detail::adaptive_simpson(std::forward<F>(f), a, b, spec.rel_tol,
                                    spec.max_subdivisions);
}

/// Integrate f over [a, inf).
///
/// Kind SemiInfinite uses the rational map x = a + t/(1-t). Kind
/// LogSpacedSemiInfinite substitutes x = e^v over (0, inf), which absorbs
/// integrable power singularities at the origin; it requires a == 0.
template <class F>
IntegralEstimate integrate_semi_infinite(F&& f, double a,
                                         const QuadratureSpec& spec = {}) {
    spec.validate();
    if (spec.kind == QuadratureSpec::Kind::LogSpacedSemiInfinite) {
        if (a != 0.0)
            throw DomainError("log-spaced semi-infinite quadrature starts at 0");
        auto g = [&f](double v) {
            const double y = std::exp(v);
            const double fy = f(y);
            return fy == 0.0 ? 0.0 : fy * y;
        };
        // Locate the support of the transformed integrand by coarse scan.
        double gmax = 0.0, vmax = 0.0;
        for (double v = -700.0; v <= 700.0; v += 1.0) {
            const double gv = std::abs(g(v));
            if (gv > gmax) { gmax = gv; vmax = v; }
        }
        if (gmax == 0.0) return {0.0, 0.0};
        double lo = vmax, hi = vmax;
        while (lo > -700.0 && std::abs(g(lo)) > gmax * 1e-18) lo -= 1.0;
        while (hi < 700.0 && std::abs(g(hi)) > gmax * 1e-18) hi += 1.0;
        lo = std::max(lo - 2.0, -705.0);
        hi = std::min(hi + 2.0, 705.0);
        QuadratureSpec inner = spec;
        inner.kind = QuadratureSpec::Kind::FiniteAdaptive;
        return integrate(g, lo, hi, inner);
    }
    auto g = [&f, a](double t) {
        if (t >= 1.0 - 1e-14) return 0.0;
        const double u = 1.0 - t;
        const double fx = f(a + t / u);
        return fx == 0.0 ? 0.0 : fx / (u * u);
    };
    QuadratureSpec inner = spec;
    inner.kind = QuadratureSpec::Kind::FiniteAdaptive;
    return integrate(g, 0.0, 1.0, inner);
}

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

struct Bracket {
    double lo;
    double hi;

    void validate() const {
        if (!(lo < hi)) throw DomainError("Bracket: requires lo < hi");
    }
};

/// Find the root of a strictly monotone f on a sign-changing bracket via
/// safeguarded Newton-bisection. Never evaluates f outside the bracket.
/// Convergence is an abscissa test: width <= tol * max(1, |x|).
template <class F, class DF>
double find_root_monotone(F&& f, DF&& df, Bracket bracket, double tol,
                          int max_iter = 200) {
    bracket.validate();
    if (!(tol > 0.0)) throw DomainError("find_root_monotone: tol must be > 0");

    double lo = bracket.lo, hi = bracket.hi;
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw BracketError("find_root_monotone: no sign change over bracket");

    double x = 0.5 * (lo + hi);
    for (int it = 0; it < max_iter; ++it) {
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (fhi > 0.0)) {
            hi = x;
            fhi = fx;
        } else {
            lo = x;
            flo = fx;
        }
        if (hi - lo <= tol * std::max(1.0, std::abs(x))) return 0.5 * (lo + hi);

        double next = std::numeric_limits<double>::quiet_NaN();
        const double d = df(x);
        if (std::isfinite(d) && d != 0.0) next = x - fx / d;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        x = next;
    }
    throw IterationLimitError("find_root_monotone: iteration limit reached");
}

/// Derivative-free variant: Illinois-modified regula falsi. The weight
/// halving keeps the bracket shrinking even against near-pole endpoints.
template <class F>
double find_root_monotone(F&& f, Bracket bracket, double tol,
                          int max_iter = 200) {
    bracket.validate();
    if (!(tol > 0.0)) throw DomainError("find_root_monotone: tol must be > 0");

    double lo = bracket.lo, hi = bracket.hi;
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw BracketError("find_root_monotone: no sign change over bracket");

    int last_side = 0;
    for (int it = 0; it < max_iter; ++it) {
        double x = lo - flo * (hi - lo) / (fhi - flo);
        if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (fhi > 0.0)) {
            hi = x;
            fhi = fx;
            if (last_side == +1) flo *= 0.5;
            last_side = +1;
        } else {
            lo = x;
            flo = fx;
            if (last_side == -1) fhi *= 0.5;
            last_side = -1;
        }
        if (hi - lo <= tol * std::max(1.0, std::abs(x))) return 0.5 * (lo + hi);
    }
    throw IterationLimitError("find_root_monotone: iteration limit reached");
}

// ---------------------------------------------------------------------------
// Signed accumulation in the log domain
// ---------------------------------------------------------------------------

/// Accumulates sum_i sign_i * exp(log_mag_i), factoring out the running
/// maximum so that partial-fraction sums with huge prefactors stay finite.
class SignedLogSum {
public:
    void add(double sign, double log_mag) {
        if (sign == 0.0 || log_mag == -std::numeric_limits<double>::infinity())
            return;
        if (log_mag > peak_) {
            acc_ *= std::exp(peak_ - log_mag);
            peak_ = log_mag;
        }
        acc_ += sign * std::exp(log_mag - peak_);
    }

    /// sum_i sign_i * exp(log_mag_i)
    double value() const {
        if (peak_ == -std::numeric_limits<double>::infinity() || acc_ == 0.0)
            return 0.0;
        const double s = acc_ > 0.0 ? 1.0 : -1.0;
        return s * std::exp(peak_ + std::log(std::abs(acc_)));
    }

    /// Like value(), but returns exactly zero when the accumulated terms
    /// cancel below rel_floor of the largest term: past that point the
    /// residual is rounding noise, and zero is the better answer.
    double value_or_zero(double rel_floor) const {
        if (std::abs(acc_) < rel_floor) return 0.0;
        return value();
    }

    /// ln |sum|; -inf when the sum is zero.
    double log_abs() const {
        if (peak_ == -std::numeric_limits<double>::infinity() || acc_ == 0.0)
            return -std::numeric_limits<double>::infinity();
        return peak_ + std::log(std::abs(acc_));
    }

    double sign() const {
        return acc_ > 0.0 ? 1.0 : (acc_ < 0.0 ? -1.0 : 0.0);
    }

private:
    double peak_ = -std::numeric_limits<double>::infinity();
    double acc_ = 0.0;
};

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

/// ln Gamma(x) for x > 0 (Lanczos, g = 7).
inline double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma: requires x > 0");
    static constexpr double kCoef[9] = {
        0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,    12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6,  1.5056327351493116e-7};
    if (x < 0.5) {
        // Reflection keeps the series argument away from the origin.
        return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double series = kCoef[0];
    for (int i = 1; i < 9; ++i) series += kCoef[i] / (z + i);
    const double t = z + 7.5;
    return kLnSqrt2Pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

namespace detail {

inline double log_cosh(double u) {
    const double au = std::abs(u);
    return au + std::log1p(std::exp(-2.0 * au)) - 0.6931471805599453094;
}

// Integrate exp(h(t) - h_peak) over [lo, hi] and return
// h_peak + ln(integral). The window must already contain all of the mass.
template <class H>
double log_integral_of_exp(H&& h, double lo, double hi, double h_peak,
                           double rel_tol) {
    QuadratureSpec spec;
    spec.rel_tol = rel_tol;
    auto g = [&](double t) {
        const double e = h(t) - h_peak;
        return e < -746.0 ? 0.0 : std::exp(e);
    };
    const auto est = integrate(g, lo, hi, spec);
    return h_peak + std::log(est.value);
}

} // namespace detail

/// ln K_nu(x) for x > 0, via the cosh integral representation
/// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt, evaluated with the
/// peak exponent factored out. Symmetric in the sign of nu.
inline double log_bessel_k(double order, double x) {
    if (!(x > 0.0)) throw DomainError("bessel_k: requires x > 0");
    const double nu = std::abs(order);

    auto h = [nu, x](double t) {
        return -x * std::cosh(t) + detail::log_cosh(nu * t);
    };

    // Coarse scan for the exponent peak, then extend until the tail is dead.
    const double t_guess = nu > 0.0 ? std::asinh(nu / x) : 0.0;
    double t_hi = t_guess + 10.0;
    double h_peak = h(0.0), t_peak = 0.0;
    const int kScan = 256;
    for (int i = 1; i <= kScan; ++i) {
        const double t = t_hi * i / kScan;
        const double ht = h(t);
        if (ht > h_peak) { h_peak = ht; t_peak = t; }
    }
    while (h(t_hi) > h_peak - 60.0) t_hi = t_hi * 1.5 + 1.0;
    (void)t_peak;

    return detail::log_integral_of_exp(h, 0.0, t_hi, h_peak, 1e-11);
}

/// K_nu(x). Overflows to +inf for very large orders; use log_bessel_k there.
inline double bessel_k(double order, double x) {
    return std::exp(log_bessel_k(order, x));
}

/// ln U(a, b, x) for a > 0, x > 0, via the Laplace integral
/// U(a,b,x) = (1/Gamma(a)) int_0^inf e^{-xt} t^{a-1} (1+t)^{b-a-1} dt
/// under the substitution t = e^v, so large parameters stay in range.
inline double log_tricomi_u(double a, double b, double x) {
    if (!(a > 0.0)) throw DomainError("tricomi_u: requires a > 0");
    if (!(x > 0.0)) throw DomainError("tricomi_u: requires x > 0");

    const double c = b - a - 1.0;
    auto h = [a, c, x](double v) {
        if (v > 690.0) return -std::numeric_limits<double>::infinity();
        const double t = std::exp(v);
        return -x * t + a * v + c * std::log1p(t);
    };

    // The mass sits between e^{a v} growth on the left and e^{-x e^v} decay
    // on the right; bracket generously, then trim to the 60-nat window.
    const double v_hi0 = std::log((a + std::abs(c) + 100.0) / x) + 10.0;
    const double v_lo0 = std::min(-10.0, v_hi0 - 20.0) - 80.0 / std::min(a, 1.0);

    const int kScan = 1024;
    double h_peak = -std::numeric_limits<double>::infinity();
    int i_peak = 0;
    const double dv = (v_hi0 - v_lo0) / kScan;
    for (int i = 0; i <= kScan; ++i) {
        const double hv = h(v_lo0 + i * dv);
        if (hv > h_peak) { h_peak = hv; i_peak = i; }
    }
    // Refine the peak estimate on a local fine grid.
    {
        const double fl = v_lo0 + std::max(0, i_peak - 2) * dv;
        const double fh = v_lo0 + std::min(kScan, i_peak + 2) * dv;
        for (int i = 0; i <= 64; ++i) {
            const double hv = h(fl + (fh - fl) * i / 64.0);
            h_peak = std::max(h_peak, hv);
        }
    }
    int ilo = i_peak, ihi = i_peak;
    while (ilo > 0 && h(v_lo0 + (ilo - 1) * dv) > h_peak - 60.0) --ilo;
    while (ihi < kScan && h(v_lo0 + (ihi + 1) * dv) > h_peak - 60.0) ++ihi;
    const double lo = v_lo0 + std::max(0, ilo - 1) * dv;
    const double hi = v_lo0 + std::min(kScan, ihi + 1) * dv;

    const double log_int = detail::log_integral_of_exp(h, lo, hi, h_peak, 1e-10);
    return log_int - log_gamma(a);
}

/// U(a, b, x).
inline double tricomi_u(double a, double b, double x) {
    return std::exp(log_tricomi_u(a, b, x));
}

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes
// ---------------------------------------------------------------------------

struct GaussLegendre {
    std::vector<double> nodes;   // on (-1, 1)
    std::vector<double> weights;

    /// n-point rule computed by Newton iteration on the Legendre recurrence.
    static GaussLegendre make(int n) {
        if (n < 1) throw DomainError("GaussLegendre: n must be >= 1");
        GaussLegendre rule;
        rule.nodes.resize(n);
        rule.weights.resize(n);
        const int half = (n + 1) / 2;
        for (int i = 0; i < half; ++i) {
            double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            rule.nodes[i] = -x;
            rule.nodes[n - 1 - i] = x;
            rule.weights[i] = w;
            rule.weights[n - 1 - i] = w;
        }
        return rule;
    }

    /// Sum of w_i * f(x_i) mapped onto [a, b].
    template <class F>
    double apply(F&& f, double a, double b) const {
        const double scale = 0.5 * (b - a), shift = 0.5 * (a + b);
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            sum += weights[i] * f(scale * nodes[i] + shift);
        return scale * sum;
    }
};

} // namespace risser::numerics
