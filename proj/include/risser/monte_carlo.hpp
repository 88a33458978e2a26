// SPDX-License-Identifier: Apache-2.0
//
// risser: SER analysis and phase optimization for space-time coded RIS links
//
// Sampling oracle for the analytic machinery: cascaded-channel realizations,
// eigenvalue samples, empirical densities, and semi-analytic SER. Every
// stream is keyed by (seed, trial index), so parallel and serial evaluation
// orders produce bit-identical results.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "risser/errors.hpp"
#include "risser/modulation.hpp"
#include "risser/numerics.hpp"
#include "risser/ris_model.hpp"

namespace risser::mc {

using modulation::alpha_psk;

using model::AmplitudeLaw;
using model::GainProfile;
using model::OstbcScheme;
using model::RisConfig;

// ---------------------------------------------------------------------------
// Counter-based RNG
// ---------------------------------------------------------------------------

struct RunSpec {
    std::uint64_t seed = 1;
    std::int64_t trials = 1000000;
    std::int64_t batch = 1 << 16;

    void validate() const {
        if (trials < 1) throw DomainError("RunSpec: trials must be >= 1");
        if (batch < 1) throw DomainError("RunSpec: batch must be >= 1");
    }
};

/// One splitmix64 stream per (seed, stream index) pair. The stream index is
/// the counter; outputs depend only on (seed, stream, draw number).
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t stream)
        : state_(seed + 0x9E3779B97F4A7C15ull * (stream + 1)) {
        next_u64();
        next_u64();
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Unit-mean exponential.
    double exponential() { return -std::log1p(-u01()); }

    /// Standard normal (Box-Muller, one of the pair cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log1p(-u01()));
        const double t = 2.0 * numerics::kPi * u01();
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    /// CN(0,1): unit total variance, split 1/2 per real component.
    std::complex<double> complex_gaussian() {
        const double s = 0.70710678118654752440;
        const double re = normal(), im = normal();
        return {s * re, s * im};
    }

    /// Gamma(alpha, 1) for alpha >= 1 (Marsaglia-Tsang squeeze).
    double gamma(double alpha) {
        const double d = alpha - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = u01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
                return d * v;
        }
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

namespace detail {

// lambda = sum beta_i^2 E_i. Profiles with few distinct gains use one
// Gamma(count) draw per distinct gain; the distribution is identical and the
// cost drops from O(N) to O(#distinct).
inline double sample_lambda(TrialRng& rng, const GainProfile& profile) {
    if (profile.compressed.size() <= 8 && profile.size() >= 32) {
        double lambda = 0.0;
        for (const auto& [g, n] : profile.compressed) lambda += g * rng.gamma(n);
        return lambda;
    }
    double lambda = 0.0;
    for (double g : profile.gains) lambda += g * rng.exponential();
    return lambda;
}

// V ~ Gamma(nt, 1) for the small integer nt of an OSTBC scheme.
inline double sample_v(TrialRng& rng, int nt) {
    double v = 0.0;
    for (int i = 0; i < nt; ++i) v += rng.exponential();
    return v;
}

} // namespace detail

/// Z = ||g Phi H||^2 with H (N_RIS x Nt) and g (1 x N_RIS) i.i.d. CN(0,1).
/// Per trial, g is drawn first, then H row by row.
template <class Sink>
void sample_cascade_z(const RunSpec& spec, const RisConfig& config,
                      const AmplitudeLaw& law, int nt, Sink&& sink) {
    spec.validate();
    if (nt < 1) throw DomainError("sample_cascade_z: nt must be >= 1");
    const std::size_t n = config.size();
    std::vector<std::complex<double>> reflect(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double b = model::amplitude(law, config.phases[i]);
        reflect[i] = std::polar(b, config.phases[i]);
    }
    std::vector<std::complex<double>> gphi(n);
    std::vector<std::complex<double>> f(nt);
    for (std::int64_t t = 0; t < spec.trials; ++t) {
        TrialRng rng(spec.seed, static_cast<std::uint64_t>(t));
        for (std::size_t i = 0; i < n; ++i)
            gphi[i] = rng.complex_gaussian() * reflect[i];
        std::fill(f.begin(), f.end(), std::complex<double>(0.0, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (int j = 0; j < nt; ++j) f[j] += gphi[i] * rng.complex_gaussian();
        double z = 0.0;
        for (int j = 0; j < nt; ++j) z += std::norm(f[j]);
        sink(z);
    }
}

/// Z = lambda V with lambda = sum beta_i^2 E_i and V ~ Gamma(nt, 1): the
/// reduced form after the unitary-invariance argument.
template <class Sink>
void sample_reduced_z(const RunSpec& spec, const GainProfile& profile, int nt,
                      Sink&& sink) {
    spec.validate();
    if (nt < 1) throw DomainError("sample_reduced_z: nt must be >= 1");
    for (std::int64_t t = 0; t < spec.trials; ++t) {
        TrialRng rng(spec.seed, static_cast<std::uint64_t>(t));
        const double lambda = detail::sample_lambda(rng, profile);
        sink(lambda * detail::sample_v(rng, nt));
    }
}

// ---------------------------------------------------------------------------
// Conditional M-PSK symbol error probability
// ---------------------------------------------------------------------------

/// SEP(rho) = (1/pi) int_0^{(M-1)pi/M} exp(-rho alpha/(2 sin^2 theta)) dtheta
/// for one SNR realization. BPSK collapses to the Craig form 0.5 erfc(sqrt rho);
/// higher orders use a fixed Gauss-Legendre rule on the smooth integrand.
class SepEvaluator {
public:
    explicit SepEvaluator(int m, int nodes = 64) : m_(m), alpha_(alpha_psk(m)) {
        if (m_ == 2) return;
        const auto rule = numerics::GaussLegendre::make(nodes);
        const double a = 0.0, b = modulation::mpsk_upper_limit(m_);
        coef_.reserve(rule.nodes.size());
        weight_.reserve(rule.nodes.size());
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double theta = 0.5 * (b - a) * rule.nodes[i] + 0.5 * (a + b);
            const double s = std::sin(theta);
            coef_.push_back(alpha_ / (2.0 * s * s));
            weight_.push_back(rule.weights[i] * 0.5 * (b - a) / numerics::kPi);
        }
    }

    double operator()(double rho) const {
        if (m_ == 2) return 0.5 * std::erfc(std::sqrt(rho));
        double sep = 0.0;
        for (std::size_t i = 0; i < coef_.size(); ++i) {
            const double e = -rho * coef_[i];
            if (e > -746.0) sep += weight_[i] * std::exp(e);
        }
        return sep;
    }

private:
    int m_;
    double alpha_;
    std::vector<double> coef_, weight_;
};

/// Conditional SEP for a single deterministic SNR value.
inline double conditional_sep_mpsk(double rho, int m) {
    if (!(rho >= 0.0)) throw DomainError("conditional_sep_mpsk: rho must be >= 0");
    return SepEvaluator(m)(rho);
}

// ---------------------------------------------------------------------------
// Semi-analytic SER and empirical densities
// ---------------------------------------------------------------------------

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t trials = 0;
};

namespace detail {

template <class SampleZ>
McEstimate average_sep(const RunSpec& spec, const OstbcScheme& scheme, int m,
                       double gamma_bar, SampleZ&& sample) {
    const SepEvaluator sep(m);
    const double scale = gamma_bar / scheme.rate;
    double total = 0.0, total_sq = 0.0;
    std::int64_t done = 0;
    while (done < spec.trials) {
        const std::int64_t count = std::min(spec.batch, spec.trials - done);
        double batch_sum = 0.0, batch_sq = 0.0;
        for (std::int64_t i = 0; i < count; ++i) {
            const double s = sep(scale * sample(done + i));
            batch_sum += s;
            batch_sq += s * s;
        }
        total += batch_sum;
        total_sq += batch_sq;
        done += count;
    }
    const double mean = total / spec.trials;
    const double var = std::max(0.0, total_sq / spec.trials - mean * mean);
    return {mean, std::sqrt(var / spec.trials), spec.trials};
}

} // namespace detail

/// Semi-analytic Monte Carlo SER: the conditional SEP averaged over sampled
/// rho = (gamma_bar / Rc) Z, using the reduced sampler.
inline McEstimate ser_semi_analytic(const RunSpec& spec,
                                    const GainProfile& profile,
                                    const OstbcScheme& scheme, int m,
                                    double gamma_bar) {
    spec.validate();
    return detail::average_sep(
        spec, scheme, m, gamma_bar, [&](std::int64_t t) {
            TrialRng rng(spec.seed, static_cast<std::uint64_t>(t));
            return detail::sample_lambda(rng, profile) *
                   detail::sample_v(rng, scheme.nt);
        });
}

/// Same, but sampling the full cascaded channel g Phi H.
inline McEstimate ser_semi_analytic(const RunSpec& spec, const RisConfig& config,
                                    const AmplitudeLaw& law,
                                    const OstbcScheme& scheme, int m,
                                    double gamma_bar) {
    spec.validate();
    std::vector<double> zs;
    zs.reserve(static_cast<std::size_t>(spec.trials));
    sample_cascade_z(spec, config, law, scheme.nt,
                     [&](double z) { zs.push_back(z); });
    return detail::average_sep(spec, scheme, m, gamma_bar,
                               [&](std::int64_t t) { return zs[t]; });
}

/// Histogram density of lambda over [0, mu + 8 sigma]. Samples above the top
/// edge land in the last bin, so the mass is exactly one.
struct EmpiricalPdf {
    std::vector<double> edges;   // bins + 1 ascending values
    std::vector<double> density; // one per bin
    std::int64_t count = 0;

    double upper() const { return edges.back(); }
};

inline EmpiricalPdf empirical_lambda_pdf(const RunSpec& spec,
                                         const GainProfile& profile, int bins) {
    spec.validate();
    if (bins < 10) throw DomainError("empirical_lambda_pdf: bins must be >= 10");
    const double hi = profile.mu + 8.0 * profile.sigma();
    const double width = hi / bins;

    std::vector<std::int64_t> counts(bins, 0);
    for (std::int64_t t = 0; t < spec.trials; ++t) {
        TrialRng rng(spec.seed, static_cast<std::uint64_t>(t));
        const double lambda = detail::sample_lambda(rng, profile);
        int idx = static_cast<int>(lambda / width);
        if (idx >= bins) idx = bins - 1;
        ++counts[idx];
    }

    EmpiricalPdf pdf;
    pdf.count = spec.trials;
    pdf.edges.resize(bins + 1);
    pdf.density.resize(bins);
    for (int i = 0; i <= bins; ++i) pdf.edges[i] = i * width;
    for (int i = 0; i < bins; ++i)
        pdf.density[i] =
            static_cast<double>(counts[i]) / (spec.trials * width);
    return pdf;
}

} // namespace risser::mc
