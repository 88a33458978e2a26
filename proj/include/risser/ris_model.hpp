// SPDX-License-Identifier: Apache-2.0
//
// risser: SER analysis and phase optimization for space-time coded RIS links

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "risser/errors.hpp"
#include "risser/numerics.hpp"

namespace risser::model {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s
inline constexpr double kTwoPi = 2.0 * numerics::kPi;

/// Gains equal within this relative spread are treated as one rate.
inline constexpr double kIdenticalEpsilon = 1e-12;
/// Pairwise relative gaps at or below this route a profile to the SPA path;
/// the hypoexponential partial fractions divide by these gaps.
inline constexpr double kRateEpsilon = 1e-6;

// ---------------------------------------------------------------------------
// Amplitude law
// ---------------------------------------------------------------------------

enum class AmplitudeVariant {
    Standard, // (1-z) ((sin(phi-c)+1)/2)^k + z, range [zeta_min, 1]
    Literal   // (1-z) (sin(phi-c)/2)^k + z, complex for sin < 0, non-integer k
};

/// Phase-dependent reflection amplitude of one RIS element.
struct AmplitudeLaw {
    double zeta_min = 0.8;
    double c = 0.43 * numerics::kPi; // radians
    double k = 1.6;
    AmplitudeVariant variant = AmplitudeVariant::Standard;

    void validate() const {
        if (!(zeta_min >= 0.0 && zeta_min <= 1.0))
            throw DomainError("AmplitudeLaw: zeta_min must lie in [0, 1]");
        if (!(c >= 0.0)) throw DomainError("AmplitudeLaw: c must be >= 0");
        if (!(k >= 0.0)) throw DomainError("AmplitudeLaw: k must be >= 0");
    }
};

/// Reflection amplitude beta(phi). Standard variant peaks at exactly 1 for
/// phi = pi/2 + c and bottoms out at zeta_min for phi = 3pi/2 + c.
inline double amplitude(const AmplitudeLaw& law, double phase) {
    law.validate();
    const double s = std::sin(phase - law.c);
    if (law.variant == AmplitudeVariant::Standard) {
        return (1.0 - law.zeta_min) * std::pow(0.5 * (s + 1.0), law.k) +
               law.zeta_min;
    }
    const bool integer_k = std::floor(law.k) == law.k;
    if (s < 0.0 && !integer_k)
        throw ComplexResultError(
            "amplitude: literal law is complex-valued for sin(phi - c) < 0 "
            "with non-integer k");
    return (1.0 - law.zeta_min) * std::pow(0.5 * s, law.k) + law.zeta_min;
}

// ---------------------------------------------------------------------------
// Phase configuration
// ---------------------------------------------------------------------------

/// Quantized phase codebook Xi_b = {2 pi i / 2^b}.
struct PhaseCodebook {
    int bits = 2;
    std::vector<double> phases;
};

inline PhaseCodebook codebook(int bits) {
    if (bits < 1 || bits > 8)
        throw DomainError("codebook: bits must lie in [1, 8]");
    PhaseCodebook cb;
    cb.bits = bits;
    const int n = 1 << bits;
    cb.phases.resize(n);
    for (int i = 0; i < n; ++i) cb.phases[i] = kTwoPi * i / n;
    return cb;
}

/// Per-element phase shifts, wrapped into [0, 2 pi).
struct RisConfig {
    std::vector<double> phases;

    static RisConfig from_phases(std::vector<double> raw) {
        if (raw.empty()) throw DomainError("RisConfig: needs at least one element");
        for (double& p : raw) {
            p = std::fmod(p, kTwoPi);
            if (p < 0.0) p += kTwoPi;
        }
        return RisConfig{std::move(raw)};
    }

    static RisConfig uniform(std::size_t n, double phase) {
        return from_phases(std::vector<double>(n, phase));
    }

    std::size_t size() const { return phases.size(); }
};

// ---------------------------------------------------------------------------
// OSTBC schemes
// ---------------------------------------------------------------------------

/// (Nt, Rc) parameters of the G2/G3/G4 code matrices. Only these two
/// parameters enter the SNR statistics.
struct OstbcScheme {
    enum class Name { G2, G3, G4 };

    Name name = Name::G2;
    int nt = 2;
    double rate = 1.0;

    static OstbcScheme g2() { return {Name::G2, 2, 1.0}; }
    static OstbcScheme g3() { return {Name::G3, 3, 0.5}; }
    static OstbcScheme g4() { return {Name::G4, 4, 0.5}; }

    static OstbcScheme from_name(const std::string& s) {
        if (s == "G2" || s == "g2") return g2();
        if (s == "G3" || s == "g3") return g3();
        if (s == "G4" || s == "g4") return g4();
        throw DomainError("OstbcScheme: unknown scheme '" + s + "'");
    }

    const char* label() const {
        switch (name) {
            case Name::G2: return "G2";
            case Name::G3: return "G3";
            default: return "G4";
        }
    }
};

// ---------------------------------------------------------------------------
// Gain profile
// ---------------------------------------------------------------------------

enum class GainClass { Identical, Distinct, Clustered };

/// The vector of squared amplitude responses beta_i^2(phi_i): the sole
/// statistical input to every eigenvalue distribution. The classification
/// routes evaluation: Identical -> Erlang, Distinct -> hypoexponential,
/// Clustered -> saddle point.
struct GainProfile {
    std::vector<double> gains; // beta_i^2, each in (0, 1]
    GainClass classification = GainClass::Identical;

    // derived quantities, filled by make()
    double mu = 0.0;       // sum of gains = E[lambda]
    double var = 0.0;      // sum of squared gains = Var[lambda]
    double max_gain = 0.0;
    std::vector<std::pair<double, int>> compressed; // (gain, multiplicity)

    static GainProfile make(std::vector<double> gains) {
        if (gains.empty())
            throw DomainError("GainProfile: needs at least one gain");
        GainProfile p;
        for (double g : gains) {
            // Physical profiles satisfy g <= 1; the distribution machinery is
            // valid for any positive weights, so only positivity is enforced.
            if (!(g > 0.0))
                throw DomainError("GainProfile: gains must be > 0");
            p.mu += g;
            p.var += g * g;
            p.max_gain = std::max(p.max_gain, g);
        }
        p.gains = std::move(gains);

        std::vector<double> sorted = p.gains;
        std::sort(sorted.begin(), sorted.end());
        // collapse bit-near duplicates into (gain, count) pairs
        p.compressed.push_back({sorted[0], 1});
        bool any_close = false;
        for (std::size_t i = 1; i < sorted.size(); ++i) {
            auto& [g, n] = p.compressed.back();
            if (sorted[i] - g <= kIdenticalEpsilon * sorted[i]) {
                ++n;
            } else {
                if (sorted[i] - g <= kRateEpsilon * sorted[i]) any_close = true;
                p.compressed.push_back({sorted[i], 1});
            }
        }
        if (p.compressed.size() == 1)
            p.classification = GainClass::Identical;
        else if (p.compressed.size() == p.gains.size() && !any_close)
            p.classification = GainClass::Distinct;
        else
            p.classification = GainClass::Clustered;
        return p;
    }

    std::size_t size() const { return gains.size(); }
    double sigma() const { return std::sqrt(var); }
};

/// beta_i^2(phi_i) for every element of a configuration.
inline GainProfile reflection_gains(const RisConfig& config,
                                    const AmplitudeLaw& law) {
    std::vector<double> gains;
    gains.reserve(config.size());
    for (double phi : config.phases) {
        const double b = amplitude(law, phi);
        gains.push_back(b * b);
    }
    return GainProfile::make(std::move(gains));
}

// ---------------------------------------------------------------------------
// Link geometry and near-field path loss
// ---------------------------------------------------------------------------

/// Deployment geometry. Wavelength derives from the carrier unless pinned
/// explicitly (scenario tables often quote a rounded wavelength).
struct LinkGeometry {
    double d_tx = 30.0, d_ty = 40.0; // m, transmitter offsets from the RIS
    double d_rx = 30.0, d_ry = 40.0; // m, receiver offsets from the RIS
    double f_c_hz = 3.8e9;
    double g_t = 1.0, g_r = 1.0;
    double d_m = 0.0, d_n = 0.0;     // RIS panel dimensions, m
    double wavelength_override = 0.0; // 0 means derive from f_c_hz

    void validate() const {
        if (!(d_tx > 0.0 && d_ty > 0.0 && d_rx > 0.0 && d_ry > 0.0))
            throw DomainError("LinkGeometry: distances must be > 0");
        if (!(g_t > 0.0 && g_r > 0.0))
            throw DomainError("LinkGeometry: antenna gains must be > 0");
        if (wavelength_override == 0.0 && !(f_c_hz > 0.0))
            throw DomainError("LinkGeometry: carrier frequency must be > 0");
        if (d_m < 0.0 || d_n < 0.0)
            throw DomainError("LinkGeometry: panel dimensions must be >= 0");
    }

    double wavelength() const {
        return wavelength_override > 0.0 ? wavelength_override
                                         : kSpeedOfLight / f_c_hz;
    }
    double d_t() const { return std::hypot(d_tx, d_ty); }
    double d_r() const { return std::hypot(d_rx, d_ry); }
};

/// Near-field path loss P_L = Gt Gr l^2/(16 pi^2) (beta_max/(d_t+d_r))^2.
inline double path_loss(const LinkGeometry& geom, double beta_max) {
    geom.validate();
    if (!(beta_max > 0.0) || beta_max > 1.0)
        throw DomainError("path_loss: beta_max must lie in (0, 1]");
    const double l = geom.wavelength();
    const double ratio = beta_max / (geom.d_t() + geom.d_r());
    return geom.g_t * geom.g_r * l * l / (16.0 * numerics::kPi * numerics::kPi) *
           ratio * ratio;
}

/// Fraunhofer distance 2 D^2 / l for aperture dimension D = max(d_M, d_N).
inline double fraunhofer_distance(const LinkGeometry& geom) {
    geom.validate();
    const double d = std::max(geom.d_m, geom.d_n);
    return 2.0 * d * d / geom.wavelength();
}

} // namespace risser::model
