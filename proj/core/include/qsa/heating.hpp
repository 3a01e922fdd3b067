#pragma once

#include "qsa/core.hpp"
#include "qsa/pseudo.hpp"
#include "qsa/statics.hpp"
#include "qsa/table.hpp"

#include <Eigen/Dense>
#include <vector>

namespace qsa {

// uncorrelated voltage noise on every DC electrode
struct NoiseModel {
    double psd = 0.0;                      // V^2/Hz shared by all electrodes
    std::vector<double> per_electrode;     // optional override, V^2/Hz
    double psd_of(std::size_t k) const;
    void validate() const;
};

// fields[ion][electrode]: field per volt, V/m
using FieldSet = std::vector<std::vector<Eigen::Vector3d>>;

struct HeatingReport {
    std::vector<double> frequencies;          // rad/s
    std::vector<double> rates;                // quanta/s per mode
    Eigen::MatrixXd per_electrode;            // modes x electrodes, quanta/s
    double ratio(int numerator_mode, int denominator_mode) const;
};

// rate of mode l: sum_k q^2 S_k |sum_i nu_l^(i) . E_k^(i)|^2 / (4 m hbar omega_l)
HeatingReport mode_heating_rates(const ModeSpectrum& spectrum, const FieldSet& fields,
                                 const NoiseModel& noise, const IonSpecies& sp);

// same field for every ion and electrode count
FieldSet homogeneous_fields(std::size_t ions, std::size_t electrodes, const Eigen::Vector3d& e);

// PSD that reproduces a measured single-ion rate along `direction` at frequency omega
NoiseModel calibrate_noise_amplitude(double reference_rate, const SurfaceTrapGeometry& g,
                                     const Eigen::Vector3d& ion, const Eigen::Vector3d& direction,
                                     double omega, const IonSpecies& sp);

// two DC pads mirrored about x = 0, |x| in [80, 300] um, z in [30, 230] um
SurfaceTrapGeometry heating_reference_geometry();

struct HeatingScanOptions {
    double height = 80e-6;                 // ion height above the plane
    double omega_chain = kTwoPi * 540e3;   // chain-axis frequency
    double omega_local = kTwoPi * 2.4e6;   // along the double-well axis
    double omega_vertical = kTwoPi * 3.0e6;
    NoiseModel noise{1e-12, {}};
};

struct HeatingRow {
    double d = 0.0;
    double omega_com = 0.0, omega_str = 0.0;
    double rate_com = 0.0, rate_str = 0.0;
    double ratio = 0.0;
    std::string status = "ok";
};

// radial double well along x at the given height; chain-axis ip/oop pair
HeatingRow heating_at(double d, int n, const SurfaceTrapGeometry& g, const IonSpecies& sp,
                      const HeatingScanOptions& opt);
std::vector<HeatingRow> heating_ratio_scan(const std::vector<double>& d_values, int n,
                                           const SurfaceTrapGeometry& g, const IonSpecies& sp,
                                           const HeatingScanOptions& opt, int jobs = 1);
Table heating_table(const std::vector<HeatingRow>& rows);

}  // namespace qsa
