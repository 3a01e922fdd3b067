#pragma once

#include "qsa/core.hpp"
#include "qsa/table.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

namespace qsa {

// two detuned wells coupled by k_int
struct DetunedPair {
    double delta_omega = 0.0;  // omega_2 - omega_1, rad/s
    double omega_m = 0.0;      // mean, rad/s
    double k_int = 0.0;        // N/m
    int n = 1;
    IonSpecies species = IonSpecies::calcium40();

    // n m omega_m delta_omega / k_int, +-inf when uncoupled
    double chi() const;
};

// (omega_plus, omega_minus)
std::pair<double, double> detuned_pair_frequencies(const DetunedPair& p);
// (nu_plus, nu_minus), components ordered (well 1, well 2)
std::pair<Eigen::Vector2d, Eigen::Vector2d> detuned_pair_modevectors(const DetunedPair& p);

// Synthetic sideband spectrum: field gamma tunes delta_omega = slope (gamma - field_center)
struct CrossingScan {
    std::vector<double> fields;  // V/m
    double field_center = 0.0;   // V/m
    double slope = 0.0;          // rad/s per V/m
    double omega_m = kTwoPi * 400e3;
    double k_int = 0.0;
    int n = 1;
    IonSpecies species = IonSpecies::calcium40();
    std::vector<double> probe;  // rad/s
    double line_width = 0.0;    // Gaussian sigma, rad/s
    double center_noise_sd = 0.0;     // rad/s on each peak center
    double amplitude_noise_sd = 0.0;  // absolute, on each excitation sample
    int observed_well = 1;
    std::uint64_t seed = 0;
};

// scan resolving a crossing of the given gap: 41 fields spanning +-4 gaps of detuning
CrossingScan default_crossing_scan(double coupling_rate, int n, double omega_m,
                                   double field_center, double noise_fraction,
                                   std::uint64_t seed);

// columns field_V_per_m, detuning_Hz, excitation
Table synth_crossing_spectrum(const CrossingScan& scan);

struct PeakPoint {
    double field = 0.0;
    double omega = 0.0;
    double amplitude = 0.0;
    int branch = 0;  // +1 upper, -1 lower
};

// per-column Gaussian fits, branches assigned against the mean frequency
std::vector<PeakPoint> extract_peaks(const Table& spectrum);

struct CrossingFit {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d_center = 0.0;
    double omega_c = 0.0;
    double omega_c_se = 0.0;
    double ci95 = 0.0;  // half width on omega_c
    double rss = 0.0;
    int dof = 0;
    double condition = 0.0;
    bool ill_conditioned = false;
    std::vector<PeakPoint> peaks;
};

CrossingFit fit_peak_positions(const std::vector<PeakPoint>& peaks);
CrossingFit fit_avoided_crossing(const Table& spectrum);

// model branch frequency for fitted parameters
double crossing_model(const CrossingFit& f, double field, int branch);

}  // namespace qsa
