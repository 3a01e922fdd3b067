#pragma once

#include "qsa/core.hpp"
#include "qsa/table.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qsa {

// f(t) = f_final - (f_final - f_init) exp(-t / tau)
double frequency_ramp(double t, double f_init, double f_final, double tau);

// resonant symmetric pair displaced by lambda in well 1 at t = 0
std::pair<double, double> analytic_exchange(double lambda, double omega_c, double omega_m, double t);

struct ExchangeConfig {
    double f1_initial = 520e3, f2_initial = 560e3;  // Hz
    double f1_final = 540e3, f2_final = 540e3;      // Hz
    double k_tilde = 1.41e11;                       // k_int / m, 1/s^2
    double tau_on = 37e-6;                          // s
    double tau_off = 49e-6;                         // s, unused by the switch-on model

    void validate() const;
    // wells settle symmetrically about the initial mean with f2 - f1 = delta_f
    static ExchangeConfig switched_on(double delta_f);
};

struct IntegrationOptions {
    double t_end = 600e-6;
    double sample_dt = 0.05e-6;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double smooth_periods = 5.0;  // moving-average window in carrier periods
};

struct ExchangeTrajectory {
    std::vector<double> t, y1, y2, v1, v2;
    std::vector<double> occ1, occ2;                // y^2 + (dy/dt / omega)^2
    std::vector<double> occ1_smooth, occ2_smooth;  // averaged over the carrier
    std::size_t smooth_half = 0;                   // samples at each end without a full window
};

ExchangeTrajectory integrate_exchange(const ExchangeConfig& c, const IntegrationOptions& o = {});
Table trajectory_table(const ExchangeTrajectory& tr, std::size_t stride = 1);

struct ExchangeMetrics {
    double contrast = 0.0;      // max - min of smoothed occ2 after settling
    double max_occ2 = 0.0;      // over the whole run
    double max_occ2_settled = 0.0;
    double rate = 0.0;          // apparent exchange frequency after settling, Hz
};

ExchangeMetrics exchange_metrics(const ExchangeTrajectory& tr, double settle = 130e-6);

struct DetuningRow {
    double delta_f = 0.0;  // Hz
    ExchangeMetrics m;
    std::string status = "ok";
};

std::vector<DetuningRow> detuning_scan(const std::vector<double>& delta_f, const ExchangeConfig& base,
                                       const IntegrationOptions& o = {}, double settle = 130e-6,
                                       int jobs = 1);
Table detuning_table(const std::vector<DetuningRow>& rows);

// n2(t) = [ (n1 - n2) cos(omega_c t + phi) exp(-t / tau_d) + n1 + n2 ] / 2
struct ExchangeFitResult {
    double n1_0 = 0.0, n2_0 = 0.0;
    double omega_c = 0.0, phi = 0.0, tau_d = 0.0;
    double ci_n1 = 0.0, ci_n2 = 0.0, ci_omega_c = 0.0, ci_phi = 0.0, ci_tau_d = 0.0;
    double rss = 0.0;
    int dof = 0;
};

double exchange_model(const ExchangeFitResult& p, double t);
ExchangeFitResult fit_exchange_curve(const std::vector<double>& t, const std::vector<double>& n2,
                                     double exclude_before = 0.0);

}  // namespace qsa
