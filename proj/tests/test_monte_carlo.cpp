// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "risser/eig_dist.hpp"
#include "risser/monte_carlo.hpp"

using namespace risser;
using namespace risser::mc;
using model::AmplitudeLaw;
using model::AmplitudeVariant;
using model::GainProfile;
using model::OstbcScheme;
using model::RisConfig;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
AmplitudeLaw paper_law() {
    return AmplitudeLaw{0.8, 0.43 * numerics::kPi, 1.6, AmplitudeVariant::Standard};
}
AmplitudeLaw ideal_law() {
    return AmplitudeLaw{1.0, 0.0, 1.0, AmplitudeVariant::Standard};
}
} // namespace

TEST_CASE("cascade sampler first moment", "[monte_carlo]") {
    // N=1, Nt=1, beta=1: product of two unit-mean exponentials
    RunSpec spec{42, 200000, 1 << 16};
    oracles::MeanAccumulator acc;
    sample_cascade_z(spec, RisConfig::uniform(1, 0.3), ideal_law(), 1,
                     [&](double z) { acc.add(z); });
    CHECK_THAT(acc.mean(), WithinAbs(1.0, 3.0 * acc.std_error()));

    // E[Z] = (sum beta_i^2) Nt
    const auto cfg = RisConfig::from_phases({0.0, 1.0, 2.0, 3.0, 4.5});
    const auto profile = model::reflection_gains(cfg, paper_law());
    oracles::MeanAccumulator acc2;
    sample_cascade_z(spec, cfg, paper_law(), 2, [&](double z) { acc2.add(z); });
    CHECK_THAT(acc2.mean(), WithinAbs(profile.mu * 2.0, 3.0 * acc2.std_error()));
}

TEST_CASE("samplers are deterministic for a fixed seed", "[monte_carlo]") {
    RunSpec spec{7, 10, 4};
    const auto cfg = RisConfig::from_phases({0.1, 1.3, 2.9});
    std::vector<double> first, second;
    sample_cascade_z(spec, cfg, paper_law(), 2, [&](double z) { first.push_back(z); });
    sample_cascade_z(spec, cfg, paper_law(), 2, [&](double z) { second.push_back(z); });
    REQUIRE(first.size() == 10);
    for (int i = 0; i < 10; ++i) CHECK(first[i] == second[i]);

    const auto p = model::reflection_gains(cfg, paper_law());
    std::vector<double> r1, r2;
    sample_reduced_z(spec, p, 3, [&](double z) { r1.push_back(z); });
    sample_reduced_z(spec, p, 3, [&](double z) { r2.push_back(z); });
    for (int i = 0; i < 10; ++i) CHECK(r1[i] == r2[i]);

    const auto e1 = ser_semi_analytic(RunSpec{9, 5000, 512}, p,
                                      OstbcScheme::g2(), 2, 3.0);
    const auto e2 = ser_semi_analytic(RunSpec{9, 5000, 512}, p,
                                      OstbcScheme::g2(), 2, 3.0);
    CHECK(e1.value == e2.value);
    CHECK(e1.std_error == e2.std_error);
}

TEST_CASE("reduced and cascade samplers share one distribution", "[monte_carlo]") {
    // Kolmogorov-Smirnov on the Eq. (1) -> Eq. (12) reduction chain
    const auto cfg = RisConfig::from_phases({0.0, 0.9, 1.7, 2.8});
    const auto law = paper_law();
    const auto profile = model::reflection_gains(cfg, law);
    const int nt = 2;
    const std::int64_t n = 1000000;

    std::vector<double> a, b;
    a.reserve(n);
    b.reserve(n);
    sample_cascade_z(RunSpec{11, n}, cfg, law, nt, [&](double z) { a.push_back(z); });
    sample_reduced_z(RunSpec{12, n}, profile, nt, [&](double z) { b.push_back(z); });
    CHECK(oracles::ks_two_sample(a, b) < 0.002);
}

TEST_CASE("reduced sampler moments and tail", "[monte_carlo]") {
    const auto profile = GainProfile::make({0.7, 0.8, 0.95, 1.0});
    RunSpec spec{5, 400000};
    oracles::MeanAccumulator acc;
    sample_reduced_z(spec, profile, 3, [&](double z) { acc.add(z); });
    CHECK_THAT(acc.mean(), WithinAbs(profile.mu * 3.0, 3.0 * acc.std_error()));

    // N=1, Nt=1 identical: P(Z > 1) against the Bessel-K tail of Eq. (20)
    const auto single = GainProfile::make({1.0});
    std::int64_t above = 0;
    const std::int64_t trials = 400000;
    sample_reduced_z(RunSpec{6, trials}, single, 1,
                     [&](double z) { above += z > 1.0; });
    const double p_mc = static_cast<double>(above) / trials;
    const double p_exact = oracles::simpson(
        [](double x) { return eig::fz_exact_identical(x, 1, 1.0, 1); }, 1.0,
        60.0, 40000);
    const double se = std::sqrt(p_exact * (1.0 - p_exact) / trials);
    CHECK_THAT(p_mc, WithinAbs(p_exact, 3.0 * se));
}

TEST_CASE("compressed-gain sampling path stays unbiased", "[monte_carlo]") {
    // 64 elements over 4 distinct gains exercises the Gamma(count) path
    std::vector<double> gains;
    for (int i = 0; i < 64; ++i) gains.push_back(0.6 + 0.1 * (i % 4));
    const auto profile = GainProfile::make(gains);
    oracles::MeanAccumulator acc;
    sample_reduced_z(RunSpec{21, 200000}, profile, 2,
                     [&](double z) { acc.add(z); });
    CHECK_THAT(acc.mean(), WithinAbs(profile.mu * 2.0, 3.0 * acc.std_error()));
}

TEST_CASE("conditional SEP anchors", "[monte_carlo]") {
    CHECK_THAT(alpha_psk(2), WithinRel(2.0, 1e-14));
    CHECK_THAT(alpha_psk(4), WithinRel(1.0, 1e-14));

    // zero SNR: (M-1)/M for any order
    CHECK_THAT(conditional_sep_mpsk(0.0, 2), WithinRel(0.5, 1e-12));
    CHECK_THAT(conditional_sep_mpsk(0.0, 4), WithinRel(0.75, 1e-12));
    CHECK_THAT(conditional_sep_mpsk(0.0, 8), WithinRel(7.0 / 8.0, 1e-12));

    // BPSK Craig identity: (1/pi) int exp(-rho/sin^2) = 0.5 erfc(sqrt rho)
    for (double rho : {0.1, 0.7, 3.0}) {
        const double direct = oracles::simpson(
            [rho](double th) {
                const double s = std::sin(th);
                return std::exp(-rho / (s * s)) / numerics::kPi;
            },
            1e-9, numerics::kPi / 2.0, 100000);
        CHECK_THAT(conditional_sep_mpsk(rho, 2), WithinRel(direct, 1e-9));
    }

    // quadrature path against a fine Simpson oracle
    for (double rho : {0.2, 1.5, 6.0}) {
        const double a8 = alpha_psk(8);
        const double direct = oracles::simpson(
            [rho, a8](double th) {
                const double s = std::sin(th);
                return std::exp(-rho * a8 / (2.0 * s * s)) / numerics::kPi;
            },
            1e-9, 7.0 * numerics::kPi / 8.0, 100000);
        CHECK_THAT(conditional_sep_mpsk(rho, 8), WithinRel(direct, 1e-7));
    }

    CHECK_THROWS_AS(alpha_psk(3), DomainError);
    CHECK_THROWS_AS(alpha_psk(1), DomainError);
}

TEST_CASE("semi-analytic SER limits", "[monte_carlo]") {
    const auto profile = GainProfile::make({0.8, 0.9, 1.0});
    // gamma_bar -> 0 gives the zero-SNR SEP
    const auto low = ser_semi_analytic(RunSpec{3, 2000}, profile,
                                       OstbcScheme::g2(), 2, 1e-14);
    CHECK_THAT(low.value, WithinRel(0.5, 1e-6));
    const auto low8 = ser_semi_analytic(RunSpec{3, 2000}, profile,
                                        OstbcScheme::g4(), 8, 1e-14);
    CHECK_THAT(low8.value, WithinRel(7.0 / 8.0, 1e-6));
    CHECK(low.std_error >= 0.0);
    CHECK(low.trials == 2000);
}

TEST_CASE("empirical lambda histogram", "[monte_carlo]") {
    // identical profile: sup distance to the Erlang density
    const int n = 10;
    const auto profile = GainProfile::make(std::vector<double>(n, 1.0));
    const auto pdf = empirical_lambda_pdf(RunSpec{17, 10000000}, profile, 120);

    double mass = 0.0;
    for (std::size_t i = 0; i < pdf.density.size(); ++i)
        mass += pdf.density[i] * (pdf.edges[i + 1] - pdf.edges[i]);
    CHECK_THAT(mass, WithinAbs(1.0, 1e-9));

    double sup = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < pdf.density.size(); ++i) {
        const double mid = 0.5 * (pdf.edges[i] + pdf.edges[i + 1]);
        const double exact = eig::erlang_lambda_pdf(mid, n, 1.0);
        sup = std::max(sup, std::abs(pdf.density[i] - exact));
        peak = std::max(peak, exact);
    }
    CHECK(sup < 0.01 * peak);

    CHECK_THROWS_AS(empirical_lambda_pdf(RunSpec{1, 100}, profile, 5), DomainError);
}

TEST_CASE("SPA tracks the histogram more closely than the LCLT", "[monte_carlo]") {
    // small version of the Fig. 2(a) comparison: 2-bit phases, N = 10
    const auto cb = model::codebook(2);
    TrialRng rng(2024, 0);
    std::vector<double> phases;
    for (int i = 0; i < 10; ++i)
        phases.push_back(cb.phases[rng.next_u64() & 3]);
    const auto profile =
        model::reflection_gains(RisConfig::from_phases(phases), paper_law());

    const auto hist = empirical_lambda_pdf(RunSpec{99, 1000000}, profile, 100);
    eig::SpaDensity spa(profile);
    double d_spa = 0.0, d_lclt = 0.0;
    for (std::size_t i = 0; i < hist.density.size(); ++i) {
        const double mid = 0.5 * (hist.edges[i] + hist.edges[i + 1]);
        d_spa = std::max(d_spa, std::abs(hist.density[i] - spa.normalized_pdf(mid)));
        d_lclt = std::max(d_lclt,
                          std::abs(hist.density[i] - eig::lclt_lambda_pdf(mid, profile)));
    }
    CHECK(d_spa < d_lclt);
}
