#include "qsa/crossing.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qsa;

namespace {

DetunedPair pair_at(double delta, double k) {
    DetunedPair p;
    p.delta_omega = delta;
    p.omega_m = rad(400e3);
    p.k_int = k;
    p.n = 2;
    return p;
}

}  // namespace

TEST(DetunedPair, ResonantSplittingMatchesExactPair) {
    const auto sp = IonSpecies::calcium40();
    const double k = 2e-14;
    const auto [hi, lo] = detuned_pair_frequencies(pair_at(0.0, k));
    const auto [com, str] = exact_pair_frequencies(k, 2, sp, rad(400e3));
    EXPECT_NEAR(std::abs(hi - lo), std::abs(str - com), 1e-3 * std::abs(str - com));
}

TEST(DetunedPair, FarDetunedModesLocalise) {
    const auto [plus, minus] = detuned_pair_modevectors(pair_at(rad(200e3), 1e-15));
    EXPECT_GT(std::abs(plus[1]), 0.999);
    EXPECT_LT(std::abs(minus[1]), 0.05);
    EXPECT_NEAR(plus.norm(), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(plus.dot(minus)), 0.0, 1e-12);
}

TEST(DetunedPair, UncoupledChiIsInfinite) { EXPECT_TRUE(std::isinf(pair_at(1.0, 0.0).chi())); }

TEST(CrossingFit, NoiselessRecoveryIsTight) {
    for (double f : {5e3, 39e3}) {
        const auto scan = default_crossing_scan(rad(f), 6, rad(400e3), 0.0, 0.0, 1);
        const auto fit = fit_avoided_crossing(synth_crossing_spectrum(scan));
        EXPECT_NEAR(hz(fit.omega_c), f, 1e-3 * f);
        EXPECT_FALSE(fit.ill_conditioned);
    }
}

TEST(CrossingFit, NoisyRecoveryFrozen) {
    const auto scan = default_crossing_scan(rad(5e3), 6, rad(400e3), 0.0, 0.01, 1000);
    const auto fit = fit_avoided_crossing(synth_crossing_spectrum(scan));
    EXPECT_NEAR(hz(fit.omega_c), 4990.6, 0.5);
    EXPECT_GT(fit.ci95, 0.0);
}

TEST(CrossingFit, SameSeedSameSpectrum) {
    const auto a = synth_crossing_spectrum(default_crossing_scan(rad(19e3), 6, rad(400e3), 0.0, 0.01, 5));
    const auto b = synth_crossing_spectrum(default_crossing_scan(rad(19e3), 6, rad(400e3), 0.0, 0.01, 5));
    const auto c = synth_crossing_spectrum(default_crossing_scan(rad(19e3), 6, rad(400e3), 0.0, 0.01, 6));
    EXPECT_EQ(a.to_csv(), b.to_csv());
    EXPECT_NE(a.to_csv(), c.to_csv());
}

TEST(CrossingFit, PeaksOnBothBranches) {
    const auto peaks = extract_peaks(synth_crossing_spectrum(default_crossing_scan(rad(19e3), 6, rad(400e3), 0.0, 0.0, 1)));
    int up = 0, down = 0;
    for (const auto& p : peaks) (p.branch > 0 ? up : down)++;
    EXPECT_GT(up, 10);
    EXPECT_GT(down, 10);
}
