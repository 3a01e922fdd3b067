#include "qsa/dynamics.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qsa;

TEST(Ramp, ApproachesFinal) {
    EXPECT_DOUBLE_EQ(frequency_ramp(0.0, 1.0, 3.0, 1.0), 1.0);
    EXPECT_NEAR(frequency_ramp(50.0, 1.0, 3.0, 1.0), 3.0, 1e-12);
    EXPECT_NEAR(frequency_ramp(1.0, 0.0, 1.0, 1.0), 1.0 - std::exp(-1.0), 1e-15);
}

TEST(Exchange, AnalyticFullTransferAtHalfPeriod) {
    const double wc = rad(10e3), wm = rad(540e3), t = M_PI / wc;
    const auto [y1, y2] = analytic_exchange(1.0, wc, wm, t);
    EXPECT_NEAR(y1, 0.0, 1e-12);
    EXPECT_NEAR(y2, -std::cos(wm * t), 1e-12);
    const auto [a0, b0] = analytic_exchange(1.0, wc, wm, 0.25 * M_PI / wm);
    EXPECT_NEAR(a0, std::sin(0.25 * M_PI), 1e-3);
    EXPECT_NEAR(b0, 0.0, 1e-2);
}

TEST(Exchange, RateAtSevenAndAHalfKhzFrozen) {
    const auto rows = detuning_scan({-7.5e3}, ExchangeConfig{});
    ASSERT_EQ(rows[0].status, "ok");
    EXPECT_NEAR(rows[0].m.rate / 1e3, 10.043, 0.01);
}

TEST(Exchange, ScanOptimaFrozen) {
    std::vector<double> df;
    for (int k = 0; k <= 24; ++k) df.push_back(-12e3 + 500.0 * k);
    const auto rows = detuning_scan(df, ExchangeConfig{});
    std::size_t imax = 0, icon = 0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k].m.max_occ2 > rows[imax].m.max_occ2) imax = k;
        if (rows[k].m.contrast > rows[icon].m.contrast) icon = k;
    }
    EXPECT_DOUBLE_EQ(df[imax], -6.5e3);
    EXPECT_DOUBLE_EQ(df[icon], -7.5e3);
}

TEST(Exchange, SwitchedOnIsSymmetric) {
    const auto c = ExchangeConfig::switched_on(-4e3);
    EXPECT_NEAR(c.f2_final - c.f1_final, -4e3, 1e-9);
    EXPECT_NEAR(c.f1_final + c.f2_final, c.f1_initial + c.f2_initial, 1e-9);
}

TEST(Exchange, InvalidConfigRejected) {
    ExchangeConfig c;
    c.tau_on = -1.0;
    EXPECT_THROW(c.validate(), DomainError);
}

TEST(ExchangeFit, RecoversSyntheticCurve) {
    ExchangeFitResult truth;
    truth.n1_0 = 1.0, truth.n2_0 = 0.2, truth.omega_c = rad(9e3), truth.phi = 0.3, truth.tau_d = 2e-3;
    std::vector<double> t, y;
    for (int k = 0; k < 2000; ++k) {
        t.push_back(k * 0.2e-6);
        y.push_back(exchange_model(truth, t.back()));
    }
    const auto f = fit_exchange_curve(t, y);
    EXPECT_NEAR(f.omega_c, truth.omega_c, 1e-6 * truth.omega_c);
    EXPECT_NEAR(f.tau_d, truth.tau_d, 1e-4 * truth.tau_d);
}

TEST(Exchange, TrajectoryTableStride) {
    IntegrationOptions o;
    o.t_end = 50e-6;
    const auto tr = integrate_exchange(ExchangeConfig::switched_on(-7.5e3), o);
    EXPECT_EQ(trajectory_table(tr, 10).rows(), (tr.t.size() + 9) / 10);
}
