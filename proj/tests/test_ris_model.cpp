// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "risser/ris_model.hpp"

using namespace risser;
using namespace risser::model;
using namespace risser::numerics;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
AmplitudeLaw paper_law() {
    return AmplitudeLaw{0.8, 0.43 * kPi, 1.6, AmplitudeVariant::Standard};
}
} // namespace

TEST_CASE("amplitude standard variant anchors", "[ris_model]") {
    const auto law = paper_law();
    CHECK_THAT(amplitude(law, kPi / 2.0 + law.c), WithinRel(1.0, 1e-14));
    CHECK_THAT(amplitude(law, law.c - kPi / 2.0), WithinRel(0.8, 1e-14));

    AmplitudeLaw ideal{1.0, 0.1, 2.0, AmplitudeVariant::Standard};
    for (double phi = 0.0; phi < 2.0 * kPi; phi += 0.3)
        CHECK_THAT(amplitude(ideal, phi), WithinRel(1.0, 1e-14));
}

TEST_CASE("amplitude extremes and range", "[ris_model]") {
    const auto law = paper_law();
    double lo = 2.0, hi = -1.0;
    for (int i = 0; i < 5000; ++i) {
        const double phi = 2.0 * kPi * i / 5000.0;
        const double b = amplitude(law, phi);
        lo = std::min(lo, b);
        hi = std::max(hi, b);
        CHECK(b >= law.zeta_min - 1e-14);
        CHECK(b <= 1.0 + 1e-14);
    }
    CHECK_THAT(hi, WithinAbs(1.0, 1e-6));
    CHECK_THAT(lo, WithinAbs(0.8, 1e-6));
    // 2 pi periodicity
    CHECK_THAT(amplitude(law, 1.234), WithinRel(amplitude(law, 1.234 + 2.0 * kPi), 1e-12));
}

TEST_CASE("amplitude literal variant", "[ris_model]") {
    AmplitudeLaw lit{0.8, 0.43 * kPi, 1.6, AmplitudeVariant::Literal};
    // sin(phi - c) > 0: real value, below the standard variant's
    CHECK_THAT(amplitude(lit, kPi / 2.0 + lit.c),
               WithinRel(0.2 * std::pow(0.5, 1.6) + 0.8, 1e-14));
    // sin(phi - c) < 0 with non-integer k is complex: rejected
    CHECK_THROWS_AS(amplitude(lit, lit.c - kPi / 2.0), ComplexResultError);
    // integer k keeps it real
    AmplitudeLaw lit2{0.8, 0.0, 2.0, AmplitudeVariant::Literal};
    CHECK_THAT(amplitude(lit2, 3.0 * kPi / 2.0),
               WithinRel(0.2 * 0.25 + 0.8, 1e-14));
}

TEST_CASE("reflection_gains classification", "[ris_model]") {
    AmplitudeLaw ideal{1.0, 0.0, 1.0, AmplitudeVariant::Standard};

    auto same = reflection_gains(RisConfig::uniform(8, 1.0), paper_law());
    CHECK(same.classification == GainClass::Identical);
    CHECK(same.compressed.size() == 1);

    auto ones = reflection_gains(
        RisConfig::from_phases({0.1, 2.0, 4.0, 5.5}), ideal);
    CHECK(ones.classification == GainClass::Identical);
    for (double g : ones.gains) CHECK_THAT(g, WithinRel(1.0, 1e-14));

    auto distinct = GainProfile::make({1.0, 2.0});
    CHECK(distinct.classification == GainClass::Distinct);

    // ten elements drawn from a 2-bit codebook: at most 4 distinct gains
    const auto cb = codebook(2);
    std::vector<double> phases;
    for (int i = 0; i < 10; ++i) phases.push_back(cb.phases[i % 4]);
    auto clustered = reflection_gains(RisConfig::from_phases(phases), paper_law());
    CHECK(clustered.classification == GainClass::Clustered);
    CHECK(clustered.compressed.size() <= 4);

    int total = 0;
    for (auto& [g, n] : clustered.compressed) total += n;
    CHECK(total == 10);
}

TEST_CASE("gain profile moments", "[ris_model]") {
    auto p = GainProfile::make({1.0, 2.0});
    CHECK_THAT(p.mu, WithinRel(3.0, 1e-14));
    CHECK_THAT(p.var, WithinRel(5.0, 1e-14));
    CHECK_THAT(p.max_gain, WithinRel(2.0, 1e-14));
    CHECK_THROWS_AS(GainProfile::make({1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(GainProfile::make({}), DomainError);
}

TEST_CASE("codebook", "[ris_model]") {
    const auto b2 = codebook(2);
    REQUIRE(b2.phases.size() == 4);
    CHECK_THAT(b2.phases[0], WithinAbs(0.0, 1e-15));
    CHECK_THAT(b2.phases[1], WithinRel(kPi / 2.0, 1e-15));
    CHECK_THAT(b2.phases[2], WithinRel(kPi, 1e-15));
    CHECK_THAT(b2.phases[3], WithinRel(3.0 * kPi / 2.0, 1e-15));

    const auto b1 = codebook(1);
    REQUIRE(b1.phases.size() == 2);
    CHECK_THAT(b1.phases[1], WithinRel(kPi, 1e-15));

    const auto b3 = codebook(3);
    REQUIRE(b3.phases.size() == 8);
    for (int i = 0; i < 8; ++i)
        CHECK_THAT(b3.phases[i], WithinAbs(2.0 * kPi * i / 8.0, 1e-15));

    CHECK_THROWS_AS(codebook(0), DomainError);
    CHECK_THROWS_AS(codebook(9), DomainError);
}

TEST_CASE("path loss anchors", "[ris_model]") {
    LinkGeometry geom;
    geom.d_tx = geom.d_rx = 30.0;
    geom.d_ty = geom.d_ry = 40.0;
    CHECK_THAT(geom.d_t(), WithinRel(50.0, 1e-14));
    CHECK_THAT(geom.d_r(), WithinRel(50.0, 1e-14));

    geom.f_c_hz = 3.8e9;
    CHECK_THAT(geom.wavelength(), WithinAbs(0.0789, 1e-4));

    geom.wavelength_override = 0.0789;
    geom.g_t = geom.g_r = 1.0;
    CHECK_THAT(path_loss(geom, 1.0), WithinRel(3.942e-9, 1e-3));
}

TEST_CASE("path loss properties", "[ris_model]") {
    LinkGeometry near;
    near.d_tx = near.d_rx = 10.0;
    near.d_ty = near.d_ry = 10.0;
    LinkGeometry far = near;
    far.d_tx = far.d_rx = 40.0;
    CHECK(path_loss(near, 0.9) > path_loss(far, 0.9));
    // quadratic in beta_max
    CHECK_THAT(path_loss(near, 0.6) / path_loss(near, 0.3), WithinRel(4.0, 1e-12));
    CHECK_THROWS_AS(path_loss(near, 0.0), DomainError);
    CHECK_THROWS_AS(path_loss(near, 1.5), DomainError);
}

TEST_CASE("fraunhofer distance", "[ris_model]") {
    LinkGeometry geom;
    geom.wavelength_override = 0.0789;
    geom.d_m = 4.0397;
    geom.d_n = 1.0;
    CHECK_THAT(fraunhofer_distance(geom), WithinAbs(413.66, 0.01));

    geom.d_m = geom.d_n = 0.0;
    CHECK(fraunhofer_distance(geom) == 0.0);

    geom.d_m = 1.0;
    geom.wavelength_override = 0.5;
    CHECK_THAT(fraunhofer_distance(geom), WithinRel(4.0, 1e-14));
}

TEST_CASE("ris config wraps phases", "[ris_model]") {
    auto cfg = RisConfig::from_phases({-kPi / 2.0, 5.0 * kPi});
    CHECK_THAT(cfg.phases[0], WithinRel(3.0 * kPi / 2.0, 1e-12));
    CHECK_THAT(cfg.phases[1], WithinRel(kPi, 1e-12));
    CHECK_THROWS_AS(RisConfig::from_phases({}), DomainError);
}

TEST_CASE("ostbc schemes", "[ris_model]") {
    const auto g2 = OstbcScheme::from_name("G2");
    CHECK(g2.nt == 2);
    CHECK(g2.rate == 1.0);
    const auto g3 = OstbcScheme::from_name("G3");
    CHECK(g3.nt == 3);
    CHECK(g3.rate == 0.5);
    const auto g4 = OstbcScheme::from_name("g4");
    CHECK(g4.nt == 4);
    CHECK(g4.rate == 0.5);
    CHECK_THROWS_AS(OstbcScheme::from_name("G5"), DomainError);
}
