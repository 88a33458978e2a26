// SPDX-License-Identifier: Apache-2.0
//
// risser: SER analysis and phase optimization for space-time coded RIS links
//
// MGFs of the instantaneous SNR, MGF-based M-PSK SER, high-SNR asymptotics,
// diversity/coding gains, and the coding-gain ratio r.

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "risser/eig_dist.hpp"
#include "risser/errors.hpp"
#include "risser/modulation.hpp"
#include "risser/numerics.hpp"
#include "risser/ris_model.hpp"

namespace risser::perf {

using eig::SpaDensity;
using model::GainClass;
using model::GainProfile;
using model::OstbcScheme;

/// mu(s) = (gamma_bar / Rc) s, the scale entering every MGF.
inline double mgf_scale(double s, const OstbcScheme& scheme, double gamma_bar) {
    return gamma_bar / scheme.rate * s;
}

// ---------------------------------------------------------------------------
// MGFs of the instantaneous SNR, evaluated at -s for s > 0
// ---------------------------------------------------------------------------

/// Identical-profile MGF: mu^-N beta^-2N U(N, N - Nt + 1, 1/(mu beta^2)).
inline double mgf_identical(double s, int n_ris, double gain,
                            const OstbcScheme& scheme, double gamma_bar) {
    if (!(s > 0.0)) throw DomainError("mgf_identical: requires s > 0");
    if (!(gain > 0.0) || n_ris < 1)
        throw DomainError("mgf_identical: invalid parameters");
    const double mu = mgf_scale(s, scheme, gamma_bar);
    const double x = 1.0 / (mu * gain);
    const double log_m = -n_ris * (std::log(mu) + std::log(gain)) +
                         numerics::log_tricomi_u(n_ris, n_ris - scheme.nt + 1, x);
    return std::exp(log_m);
}

/// Distinct-profile MGF: the hypoexponential branch sum of U(1, 2-Nt, .)
/// terms. Each U is a Laplace integral over the same kernel, so the sum is
/// evaluated with the branches folded inside one shared integral,
///   sum_j U(1, 2-Nt, r_j/mu)/D_j ~ int (1 + mu y)^{-Nt} f_lambda(y) dy;
/// summing first keeps the partial-fraction cancellation in ordinary
/// arithmetic at every node, which survives arbitrarily large mu.
inline double mgf_hypoexp(double s, const GainProfile& profile,
                          const OstbcScheme& scheme, double gamma_bar) {
    if (!(s > 0.0)) throw DomainError("mgf_hypoexp: requires s > 0");
    if (profile.classification != GainClass::Distinct)
        throw DegenerateRatesError(
            "mgf_hypoexp: profile has repeated or near-repeated gains; route "
            "to the SPA path");
    const double mu = mgf_scale(s, scheme, gamma_bar);
    const double nt = static_cast<double>(scheme.nt);
    auto integrand = [&](double y) {
        return std::pow(1.0 + mu * y, -nt) * eig::hypoexp_lambda_pdf(y, profile);
    };
    numerics::QuadratureSpec spec;
    spec.kind = numerics::QuadratureSpec::Kind::LogSpacedSemiInfinite;
    // The partial-fraction density carries ~1e-8 relative noise; demanding
    // more than 1e-6 here only chases that noise.
    spec.rel_tol = 1e-6;
    return numerics::integrate_semi_infinite(integrand, 0.0, spec).value;
}

/// SPA-based MGF: E[(1 + mu y)^{-Nt}] against the tabulated SPA density.
inline double mgf_spa(double s, const SpaDensity& spa,
                      const OstbcScheme& scheme, double gamma_bar,
                      bool normalize = true) {
    if (!(s > 0.0)) throw DomainError("mgf_spa: requires s > 0");
    return spa.snr_mgf(mgf_scale(s, scheme, gamma_bar), scheme.nt, normalize);
}

/// Convenience overload; builds the SPA table per call.
inline double mgf_spa(double s, const GainProfile& profile,
                      const OstbcScheme& scheme, double gamma_bar,
                      bool normalize = true) {
    return mgf_spa(s, SpaDensity(profile), scheme, gamma_bar, normalize);
}

// ---------------------------------------------------------------------------
// MGF-based M-PSK SER
// ---------------------------------------------------------------------------

/// (1/pi) int_0^{(M-1)pi/M} mgf(alpha/(2 sin^2 theta)) dtheta. The integrand
/// limit at theta -> 0 is zero (the MGF argument diverges); underflowing MGF
/// values clamp to zero rather than NaN. The default tolerance sits above
/// the MGF evaluators' own quadrature noise and four decades below the
/// tightest cross-method comparison applied to SER values.
template <class Mgf>
double ser_mpsk(Mgf&& mgf, int m, double rel_tol = 1e-6) {
    const double alpha = modulation::alpha_psk(m);
    const double upper = modulation::mpsk_upper_limit(m);
    auto integrand = [&](double theta) {
        if (theta <= 0.0) return 0.0;
        const double sin_t = std::sin(theta);
        const double s = alpha / (2.0 * sin_t * sin_t);
        if (!std::isfinite(s)) return 0.0;
        return mgf(s);
    };
    numerics::QuadratureSpec spec;
    spec.rel_tol = rel_tol;
    return numerics::integrate(integrand, 0.0, upper, spec).value /
           numerics::kPi;
}

/// I(theta) = int_0^{(M-1)pi/M} sin^{2 Nt} theta dtheta.
inline double sin_power_integral(int nt, int m) {
    if (nt < 1) throw DomainError("sin_power_integral: nt must be >= 1");
    const double upper = modulation::mpsk_upper_limit(m);
    auto f = [nt](double t) {
        return std::pow(std::sin(t), 2.0 * nt);
    };
    return numerics::integrate(f, 0.0, upper).value;
}

// ---------------------------------------------------------------------------
// High-SNR asymptotics
// ---------------------------------------------------------------------------

/// Asymptotic M-PSK SER for identical profiles,
/// (Gamma(N-Nt)/(pi Gamma(N))) I(theta) (beta^2 alpha gamma_bar/(2 Rc))^{-Nt}.
/// Valid for N_RIS > Nt + 2.
inline double ser_asymptotic_identical(double gamma_bar, int n_ris, double gain,
                                       const OstbcScheme& scheme, int m) {
    if (n_ris <= scheme.nt + 2)
        throw ValidityError(
            "ser_asymptotic_identical: requires N_RIS > Nt + 2");
    const double log_i = std::log(sin_power_integral(scheme.nt, m));
    const double log_p =
        numerics::log_gamma(n_ris - scheme.nt) - numerics::log_gamma(n_ris) -
        std::log(numerics::kPi) + log_i -
        scheme.nt * std::log(gain * modulation::alpha_psk(m) * gamma_bar /
                             (2.0 * scheme.rate));
    return std::exp(log_p);
}

/// Asymptotic M-PSK SER from the SPA negative moment,
/// (I(theta)/pi) E[y^{-Nt}] (alpha gamma_bar/(2 Rc))^{-Nt}. Valid N_RIS > Nt.
inline double ser_asymptotic_spa(double gamma_bar, const SpaDensity& spa,
                                 const OstbcScheme& scheme, int m) {
    const double moment = spa.negative_moment(scheme.nt, true);
    const double log_p =
        std::log(sin_power_integral(scheme.nt, m)) - std::log(numerics::kPi) +
        std::log(moment) -
        scheme.nt * std::log(modulation::alpha_psk(m) * gamma_bar /
                             (2.0 * scheme.rate));
    return std::exp(log_p);
}

inline double ser_asymptotic_spa(double gamma_bar, const GainProfile& profile,
                                 const OstbcScheme& scheme, int m) {
    return ser_asymptotic_spa(gamma_bar, SpaDensity(profile), scheme, m);
}

/// Diversity and coding gain (Gd, Gc). Gd = Nt always; Gc comes from the
/// Gamma-ratio form on identical profiles and from the SPA negative moment
/// otherwise.
struct DiversityCodingGain {
    double gd = 0.0;
    double gc = 0.0;
};

inline DiversityCodingGain diversity_coding_gain(const GainProfile& profile,
                                                 const OstbcScheme& scheme,
                                                 int m) {
    const int nt = scheme.nt;
    if (static_cast<int>(profile.size()) <= nt)
        throw DivergenceError("diversity_coding_gain: requires N_RIS > Nt");
    const double alpha = modulation::alpha_psk(m);
    const double log_i = std::log(sin_power_integral(nt, m));
    double log_gc;
    if (profile.classification == GainClass::Identical) {
        const int n = static_cast<int>(profile.size());
        const double log_ratio =
            numerics::log_gamma(n - nt) - numerics::log_gamma(n);
        log_gc = std::log(profile.gains[0] * alpha / (2.0 * scheme.rate)) -
                 (log_ratio - std::log(numerics::kPi) + log_i) / nt;
    } else {
        const double moment = eig::negative_moment(profile, nt, true);
        log_gc = std::log(alpha / (2.0 * scheme.rate)) -
                 (log_i - std::log(numerics::kPi) + std::log(moment)) / nt;
    }
    return {static_cast<double>(nt), std::exp(log_gc)};
}

/// Coding-gain degradation r = Gamma(N-Nt) / (Gamma(N) E[y^{-Nt}]) relative
/// to the ideal unit-amplitude surface; r = 1 at the bound.
inline double coding_gain_ratio(const GainProfile& profile,
                                const OstbcScheme& scheme) {
    const int nt = scheme.nt;
    const int n = static_cast<int>(profile.size());
    if (n <= nt) throw DivergenceError("coding_gain_ratio: requires N_RIS > Nt");
    const double moment = eig::negative_moment(profile, nt, true);
    return std::exp(numerics::log_gamma(n - nt) - numerics::log_gamma(n) -
                    std::log(moment));
}

// ---------------------------------------------------------------------------
// SER sweeps
// ---------------------------------------------------------------------------

enum class SerMethod { ExactIdentical, ExactHypoexp, Spa, Asymptotic, MonteCarlo };

inline const char* ser_method_label(SerMethod m) {
    switch (m) {
        case SerMethod::ExactIdentical: return "exact-identical";
        case SerMethod::ExactHypoexp: return "exact-hypoexp";
        case SerMethod::Spa: return "spa";
        case SerMethod::Asymptotic: return "asymptotic";
        default: return "monte-carlo";
    }
}

/// Ordered sweep of average received SNR values.
struct SnrSweep {
    std::vector<double> snr_db;
    std::vector<double> gamma_bar; // linear scale, aligned with snr_db
    OstbcScheme scheme;
    int mod_order = 2;

    static SnrSweep make(double start_db, double stop_db, double step_db,
                         const OstbcScheme& scheme, int mod_order) {
        modulation::check_mpsk_order(mod_order);
        if (!(step_db > 0.0))
            throw DomainError("SnrSweep: step must be > 0 dB");
        if (start_db > stop_db)
            throw DomainError("SnrSweep: empty range (start > stop)");
        SnrSweep sweep;
        sweep.scheme = scheme;
        sweep.mod_order = mod_order;
        for (double db = start_db; db <= stop_db + 1e-9; db += step_db) {
            sweep.snr_db.push_back(db);
            sweep.gamma_bar.push_back(std::pow(10.0, db / 10.0));
        }
        return sweep;
    }

    /// Rescales every linear gamma_bar (transmit-SNR parameterization
    /// applies the path loss here).
    void scale_gamma(double factor) {
        for (double& g : gamma_bar) g *= factor;
    }
};

struct SerPoint {
    double snr_db = 0.0;
    double ser = 0.0;
    double std_error = 0.0; // zero for analytic methods
};

struct SerCurve {
    std::vector<SerPoint> points;
    SerMethod method = SerMethod::Spa;
    std::string profile_summary;
    OstbcScheme scheme;
    int mod_order = 2;
};

inline std::string summarize_profile(const GainProfile& p) {
    const char* cls = p.classification == GainClass::Identical ? "identical"
                      : p.classification == GainClass::Distinct ? "distinct"
                                                                : "clustered";
    return "N=" + std::to_string(p.size()) + " " + cls;
}

/// Exact SER sweep; routes to the Erlang or hypoexponential MGF by
/// classification. Clustered profiles have no exact closed form here.
inline SerCurve ser_curve_exact(const GainProfile& profile,
                                const SnrSweep& sweep) {
    SerCurve curve;
    curve.scheme = sweep.scheme;
    curve.mod_order = sweep.mod_order;
    curve.profile_summary = summarize_profile(profile);
    const bool identical = profile.classification == GainClass::Identical;
    if (!identical && profile.classification != GainClass::Distinct)
        throw DegenerateRatesError(
            "ser_curve_exact: clustered profile; use the SPA method");
    curve.method =
        identical ? SerMethod::ExactIdentical : SerMethod::ExactHypoexp;
    for (std::size_t i = 0; i < sweep.snr_db.size(); ++i) {
        const double gb = sweep.gamma_bar[i];
        auto mgf = [&](double s) {
            return identical
                       ? mgf_identical(s, static_cast<int>(profile.size()),
                                       profile.gains[0], sweep.scheme, gb)
                       : mgf_hypoexp(s, profile, sweep.scheme, gb);
        };
        curve.points.push_back(
            {sweep.snr_db[i], ser_mpsk(mgf, sweep.mod_order), 0.0});
    }
    return curve;
}

/// SPA-based SER sweep (normalized SPA density; one table per profile).
inline SerCurve ser_curve_spa(const GainProfile& profile, const SnrSweep& sweep) {
    SerCurve curve;
    curve.scheme = sweep.scheme;
    curve.mod_order = sweep.mod_order;
    curve.method = SerMethod::Spa;
    curve.profile_summary = summarize_profile(profile);
    const SpaDensity spa(profile);
    for (std::size_t i = 0; i < sweep.snr_db.size(); ++i) {
        const double gb = sweep.gamma_bar[i];
        auto mgf = [&](double s) { return mgf_spa(s, spa, sweep.scheme, gb); };
        curve.points.push_back(
            {sweep.snr_db[i], ser_mpsk(mgf, sweep.mod_order), 0.0});
    }
    return curve;
}

/// Asymptotic SER sweep; Gamma-ratio form on identical profiles, SPA
/// negative-moment form otherwise.
inline SerCurve ser_curve_asymptotic(const GainProfile& profile,
                                     const SnrSweep& sweep) {
    SerCurve curve;
    curve.scheme = sweep.scheme;
    curve.mod_order = sweep.mod_order;
    curve.method = SerMethod::Asymptotic;
    curve.profile_summary = summarize_profile(profile);
    const bool identical = profile.classification == GainClass::Identical;
    std::optional<SpaDensity> spa;
    if (!identical) spa.emplace(profile);
    for (std::size_t i = 0; i < sweep.snr_db.size(); ++i) {
        const double gb = sweep.gamma_bar[i];
        const double p =
            identical ? ser_asymptotic_identical(
                            gb, static_cast<int>(profile.size()),
                            profile.gains[0], sweep.scheme, sweep.mod_order)
                      : ser_asymptotic_spa(gb, *spa, sweep.scheme,
                                           sweep.mod_order);
        curve.points.push_back({sweep.snr_db[i], p, 0.0});
    }
    return curve;
}

// ---------------------------------------------------------------------------
// Diversity-order estimation from a curve tail
// ---------------------------------------------------------------------------

/// Least-squares slope of log10(SER) against snr_db/10 over the qualifying
/// tail: points with SER in [1e-7, 1e-3] lying in the final decade (last
/// 10 dB) of the qualifying range. Returned as a positive diversity estimate.
inline double estimate_diversity_slope(const SerCurve& curve) {
    std::vector<SerPoint> tail;
    double snr_max = -std::numeric_limits<double>::infinity();
    for (const auto& p : curve.points)
        if (p.ser >= 1e-7 && p.ser <= 1e-3) snr_max = std::max(snr_max, p.snr_db);
    for (const auto& p : curve.points)
        if (p.ser >= 1e-7 && p.ser <= 1e-3 && p.snr_db >= snr_max - 10.0)
            tail.push_back(p);
    if (tail.size() < 4)
        throw InsufficientPointsError(
            "estimate_diversity_slope: needs >= 4 points in the final decade "
            "with SER in [1e-7, 1e-3]");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& p : tail) {
        const double x = p.snr_db / 10.0;
        const double y = std::log10(p.ser);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(tail.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return -slope;
}

} // namespace risser::perf
