// SPDX-License-Identifier: Apache-2.0
//
// risser: SER analysis and phase optimization for space-time coded RIS links
//
// Distributions of the nonzero Gram-matrix eigenvalue lambda = sum beta_i^2 E_i
// (E_i unit exponentials) and of Z = lambda * V with V ~ Gamma(Nt, 1), in
// exact, Gaussian-limit, and saddle-point forms.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "risser/errors.hpp"
#include "risser/numerics.hpp"
#include "risser/ris_model.hpp"

namespace risser::eig {

using model::GainClass;
using model::GainProfile;

// ---------------------------------------------------------------------------
// Exact and limit densities of lambda
// ---------------------------------------------------------------------------

/// Erlang density of lambda for an identical profile of n elements with
/// common gain beta^2.
inline double erlang_lambda_pdf(double y, int n_ris, double gain) {
    if (!(y > 0.0)) throw DomainError("erlang_lambda_pdf: requires y > 0");
    if (!(gain > 0.0) || n_ris < 1)
        throw DomainError("erlang_lambda_pdf: invalid parameters");
    const double log_pdf = -n_ris * std::log(gain) + (n_ris - 1) * std::log(y) -
                           y / gain - numerics::log_gamma(n_ris);
    return std::exp(log_pdf);
}

/// Hypoexponential density of lambda for a profile with pairwise-distinct
/// gains. The partial-fraction prefactors are assembled in the log domain.
inline double hypoexp_lambda_pdf(double y, const GainProfile& profile) {
    if (profile.classification != GainClass::Distinct)
        throw DegenerateRatesError(
            "hypoexp_lambda_pdf: profile has repeated or near-repeated gains; "
            "route to the SPA path");
    if (y < 0.0) return 0.0;

    const std::size_t n = profile.size();
    std::vector<double> rates(n);
    double log_rate_prod = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        rates[i] = 1.0 / profile.gains[i];
        log_rate_prod += std::log(rates[i]);
    }

    numerics::SignedLogSum sum;
    for (std::size_t j = 0; j < n; ++j) {
        double log_mag = log_rate_prod - rates[j] * y;
        double sign = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            const double d = rates[k] - rates[j];
            log_mag -= std::log(std::abs(d));
            if (d < 0.0) sign = -sign;
        }
        sum.add(sign, log_mag);
    }
    // y -> 0 drives the branch sum into full cancellation; below the noise
    // floor the density is numerically zero.
    return sum.value_or_zero(1e-13);
}

/// Lindeberg-Feller Gaussian limit: Normal(sum beta_i^2, sum beta_i^4).
inline double lclt_lambda_pdf(double y, const GainProfile& profile) {
    const double d = y - profile.mu;
    return std::exp(-0.5 * d * d / profile.var) /
           std::sqrt(2.0 * numerics::kPi * profile.var);
}

// ---------------------------------------------------------------------------
// Cumulant generating function
// ---------------------------------------------------------------------------

namespace detail {
inline void check_admissible(double s, const GainProfile& p) {
    if (!(s * p.max_gain < 1.0))
        throw DomainError("cgf: s is at or beyond the pole 1/max(gain)");
}
} // namespace detail

/// psi(s) = -sum_i log(1 - s beta_i^2), for s < 1/max(gain).
inline double cgf(double s, const GainProfile& profile) {
    detail::check_admissible(s, profile);
    double sum = 0.0;
    for (const auto& [g, n] : profile.compressed)
        sum -= n * std::log1p(-s * g);
    return sum;
}

/// psi'(s) = sum_i beta_i^2 / (1 - s beta_i^2).
inline double cgf_d1(double s, const GainProfile& profile) {
    detail::check_admissible(s, profile);
    double sum = 0.0;
    for (const auto& [g, n] : profile.compressed) sum += n * g / (1.0 - s * g);
    return sum;
}

/// psi''(s) = sum_i beta_i^4 / (1 - s beta_i^2)^2.
inline double cgf_d2(double s, const GainProfile& profile) {
    detail::check_admissible(s, profile);
    double sum = 0.0;
    for (const auto& [g, n] : profile.compressed) {
        const double u = g / (1.0 - s * g);
        sum += n * u * u;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Saddle point
// ---------------------------------------------------------------------------

/// A solved saddle point for one evaluation abscissa y.
struct SpaSolution {
    double y = 0.0;
    double s_hat = 0.0; // root of psi'(s) = y, below the pole
    double psi = 0.0;   // psi(s_hat)
    double psi2 = 0.0;  // psi''(s_hat) > 0
};

namespace detail {

// Certified bracket for psi'(s) = y. Left end: psi'(s) <= N/|s| for s < 0,
// so s = -(N/y) - 1 gives psi' <= Ny/(N+y) < y. Right end: the max-gain term
// alone exceeds y once 1 - s g is small enough.
inline numerics::Bracket saddle_bracket(double y, const GainProfile& p) {
    const double n = static_cast<double>(p.size());
    const double lo = -(n / y) - 1.0;
    const double u = std::min(1e-12, 0.5 * p.max_gain / y);
    const double hi = (1.0 - u) / p.max_gain;
    return {lo, hi};
}

} // namespace detail

/// Solve psi'(s_hat) = y. s_hat < 0 iff y < sum beta_i^2.
inline SpaSolution saddle_point(double y, const GainProfile& profile) {
    if (!(y > 0.0)) throw DomainError("saddle_point: requires y > 0");
    const auto bracket = detail::saddle_bracket(y, profile);
    auto f = [&](double s) { return cgf_d1(s, profile) - y; };
    auto df = [&](double s) { return cgf_d2(s, profile); };
    const double s_hat =
        numerics::find_root_monotone(f, df, bracket, 1e-13, 300);
    return {y, s_hat, cgf(s_hat, profile), cgf_d2(s_hat, profile)};
}

/// Saddle-point density exp(psi(s_hat) - s_hat y) / sqrt(2 pi psi''(s_hat)).
/// Unnormalized: on an identical profile its ratio to the Erlang density is
/// the constant Gamma(N) e^N / (sqrt(2 pi) N^{N-1/2}).
inline double spa_lambda_pdf(double y, const GainProfile& profile) {
    const auto sol = saddle_point(y, profile);
    const double log_pdf = sol.psi - sol.s_hat * y -
                           0.5 * std::log(sol.psi2) - numerics::kLnSqrt2Pi;
    return std::exp(log_pdf);
}

// ---------------------------------------------------------------------------
// Tabulated SPA density
// ---------------------------------------------------------------------------

/// SPA density sampled on a log-spaced grid covering both the y -> 0
/// integrable-singularity region of y^{-Nt} weights and the Gaussian bulk.
/// All mixture integrals against the SPA density run over this table; the
/// saddle solves walk the grid with warm starts.
class SpaDensity {
public:
    explicit SpaDensity(GainProfile profile, int points = 400)
        : profile_(std::move(profile)) {
        if (points < 16) throw DomainError("SpaDensity: needs >= 16 points");
        build(points);
        // Richardson check: halving the grid must reproduce the mass.
        for (int attempt = 0; attempt < 3; ++attempt) {
            if (mass_error() < 1e-6) break;
            build(static_cast<int>(y_.size()) * 2);
        }
    }

    const GainProfile& profile() const { return profile_; }
    const std::vector<double>& grid() const { return y_; }
    const std::vector<double>& density() const { return f_; }

    /// Total mass of the raw SPA density (the Stirling-type constant).
    double mass() const { return mass_; }

    /// Raw SPA density by a fresh saddle solve (off-grid evaluation).
    double pdf(double y) const { return spa_lambda_pdf(y, profile_); }
    double normalized_pdf(double y) const { return pdf(y) / mass_; }

    /// E[y^{-nt}] against the (optionally normalized) SPA density.
    double negative_moment(int nt, bool normalize = true) const {
        if (static_cast<int>(profile_.size()) <= nt)
            throw DivergenceError(
                "negative_moment: requires N_RIS > Nt for integrability");
        double sum = 0.0;
        for (std::size_t i = 0; i < y_.size(); ++i)
            sum += w_[i] * f_[i] * std::exp(-nt * log_y_[i]);
        return normalize ? sum / mass_ : sum;
    }

    /// E[(1 + mu y)^{-nt}]: the MGF of the instantaneous SNR given the
    /// Gamma(nt, 1) OSTBC factor, against the SPA density of lambda.
    double snr_mgf(double mu, int nt, bool normalize = true) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < y_.size(); ++i)
            sum += w_[i] * f_[i] * std::pow(1.0 + mu * y_[i], -nt);
        return normalize ? sum / mass_ : sum;
    }

    /// Mixture density of Z = lambda V at a > 0.
    double fz(double a, int nt, bool normalize = false) const {
        if (!(a > 0.0)) throw DomainError("fz: requires a > 0");
        const double lg_nt = numerics::log_gamma(nt);
        double sum = 0.0;
        for (std::size_t i = 0; i < y_.size(); ++i) {
            const double log_cond =
                (nt - 1) * std::log(a) - a / y_[i] - nt * log_y_[i] - lg_nt;
            if (log_cond > -746.0) sum += w_[i] * f_[i] * std::exp(log_cond);
        }
        return normalize ? sum / mass_ : sum;
    }

private:
    void build(int points) {
        y_.assign(points, 0.0);
        log_y_.assign(points, 0.0);
        w_.assign(points, 0.0);
        f_.assign(points, 0.0);

        const double v_lo = std::log(profile_.mu * 1e-4);
        const double v_hi = std::log(profile_.mu + 12.0 * profile_.sigma());
        const double dv = (v_hi - v_lo) / (points - 1);
        for (int i = 0; i < points; ++i) {
            log_y_[i] = v_lo + i * dv;
            y_[i] = std::exp(log_y_[i]);
            w_[i] = y_[i] * dv; // trapezoid in v = ln y
        }
        w_.front() *= 0.5;
        w_.back() *= 0.5;

        // Walk the grid with warm-started Newton; s_hat(y) is increasing.
        const auto global = detail::saddle_bracket(y_.front(), profile_);
        double s = 0.0;
        bool have_s = false;
        for (int i = 0; i < points; ++i) {
            const double y = y_[i];
            const double hi =
                (1.0 - std::min(1e-12, 0.5 * profile_.max_gain / y)) /
                profile_.max_gain;
            bool converged = false;
            if (have_s) {
                double x = s;
                for (int it = 0; it < 50; ++it) {
                    const double g1 = cgf_d1(x, profile_) - y;
                    const double g2 = cgf_d2(x, profile_);
                    double step = g1 / g2;
                    double next = x - step;
                    if (!(next > global.lo && next < hi)) break;
                    x = next;
                    if (std::abs(step) <= 1e-13 * std::max(1.0, std::abs(x))) {
                        converged = true;
                        break;
                    }
                }
                if (converged) s = x;
            }
            if (!converged) {
                auto f = [&](double t) { return cgf_d1(t, profile_) - y; };
                auto df = [&](double t) { return cgf_d2(t, profile_); };
                s = numerics::find_root_monotone(
                    f, df, numerics::Bracket{global.lo, hi}, 1e-13, 300);
            }
            have_s = true;
            const double psi = cgf(s, profile_);
            const double psi2 = cgf_d2(s, profile_);
            f_[i] = std::exp(psi - s * y - 0.5 * std::log(psi2) -
                             numerics::kLnSqrt2Pi);
        }

        mass_ = 0.0;
        for (int i = 0; i < points; ++i) mass_ += w_[i] * f_[i];

        // Half-resolution trapezoid over the even-index subgrid; the
        // difference from the full-grid mass is the convergence indicator.
        double mass_half = 0.0;
        const int last_even = (points - 1) - (points - 1) % 2;
        for (int i = 0; i <= last_even; i += 2) {
            double w = 2.0 * dv * y_[i];
            if (i == 0 || i == last_even) w *= 0.5;
            mass_half += w * f_[i];
        }
        mass_error_ = std::abs(mass_ - mass_half) / mass_;
    }

    double mass_error() const { return mass_error_; }

    GainProfile profile_;
    std::vector<double> y_, log_y_, w_, f_;
    double mass_ = 0.0;
    double mass_error_ = 0.0;
};

// ---------------------------------------------------------------------------
// Exact densities of Z
// ---------------------------------------------------------------------------

/// Exact density of Z for an identical profile: a Bessel-K form obtained by
/// mixing the Gamma(nt, y) conditional with the Erlang density of lambda.
inline double fz_exact_identical(double a, int n_ris, double gain, int nt) {
    if (!(a > 0.0)) throw DomainError("fz_exact_identical: requires a > 0");
    if (!(gain > 0.0) || n_ris < 1 || nt < 1)
        throw DomainError("fz_exact_identical: invalid parameters");
    const double log_beta = 0.5 * std::log(gain);
    const double arg = 2.0 * std::sqrt(a) * std::exp(-log_beta);
    const double log_pdf = std::log(2.0) +
                           0.5 * (n_ris + nt - 2) * std::log(a) -
                           (n_ris + nt) * log_beta -
                           numerics::log_gamma(nt) - numerics::log_gamma(n_ris) +
                           numerics::log_bessel_k(n_ris - nt, arg);
    return std::exp(log_pdf);
}

/// Exact density of Z for a distinct profile: the Bessel-K mixture over the
/// hypoexponential branches.
inline double fz_exact_hypoexp(double a, const GainProfile& profile, int nt) {
    if (profile.classification != GainClass::Distinct)
        throw DegenerateRatesError(
            "fz_exact_hypoexp: profile has repeated or near-repeated gains; "
            "route to the SPA path");
    if (!(a > 0.0)) throw DomainError("fz_exact_hypoexp: requires a > 0");
    if (nt < 1) throw DomainError("fz_exact_hypoexp: requires nt >= 1");

    const std::size_t n = profile.size();
    std::vector<double> rates(n);
    double log_rate_prod = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        rates[i] = 1.0 / profile.gains[i];
        log_rate_prod += std::log(rates[i]);
    }
    const double common = std::log(2.0) + 0.5 * (nt - 1) * std::log(a) -
                          numerics::log_gamma(nt) + log_rate_prod;

    numerics::SignedLogSum sum;
    for (std::size_t j = 0; j < n; ++j) {
        const double gj = profile.gains[j];
        double log_mag = common + 0.5 * (1 - nt) * std::log(gj) +
                         numerics::log_bessel_k(1 - nt, 2.0 * std::sqrt(a / gj));
        double sign = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            const double d = rates[k] - rates[j];
            log_mag -= std::log(std::abs(d));
            if (d < 0.0) sign = -sign;
        }
        sum.add(sign, log_mag);
    }
    return sum.value_or_zero(1e-13);
}

/// SPA-based density of Z (raw SPA by default; see SpaDensity::fz).
inline double fz_spa(double a, const GainProfile& profile, int nt,
                     bool normalize = false) {
    return SpaDensity(profile).fz(a, nt, normalize);
}

/// E[lambda^{-nt}] against the SPA density. Normalized mode rescales the SPA
/// density to unit mass, which makes it exact on identical profiles.
inline double negative_moment(const GainProfile& profile, int nt,
                              bool normalize = true) {
    if (static_cast<int>(profile.size()) <= nt)
        throw DivergenceError(
            "negative_moment: requires N_RIS > Nt for integrability");
    return SpaDensity(profile).negative_moment(nt, normalize);
}

} // namespace risser::eig
