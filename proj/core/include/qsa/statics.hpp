#pragma once

#include "qsa/core.hpp"
#include "qsa/table.hpp"

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qsa {

struct IonConfiguration {
    IonSpecies species;
    std::vector<Eigen::Vector3d> positions;
    std::vector<int> well_assignment;  // 1 or 2
    bool merge_warning = false;
    double gradient_norm = 0.0;
    int iterations = 0;

    std::size_t size() const { return positions.size(); }
    std::vector<int> ions_in_well(int well) const;
    // mean position of the ions in one well
    Eigen::Vector3d centroid(int well) const;
};

enum class PairPhase { None, InPhase, OutOfPhase };
const char* to_string(PairPhase p);

struct ModeSpectrum {
    std::vector<double> frequencies;   // rad/s ascending
    Eigen::MatrixXd mode_vectors;      // 3N x 3N, column l is mode l
    std::vector<Axis> axis_label;
    std::vector<PairPhase> pair_phase;
    std::vector<int> pair_index;       // partner mode or -1
    std::vector<int> well_of_ion;

    std::size_t size() const { return frequencies.size(); }
    std::size_t ions() const { return well_of_ion.size(); }
    // per-ion displacement of mode l along one axis
    Eigen::VectorXd axis_component(int l, int axis) const;
    // lowest ip/oop pair on the given axis as (in-phase, out-of-phase)
    std::optional<std::pair<int, int>> lowest_pair(Axis axis) const;
    // all ip/oop pairs on the axis ordered by mean frequency
    std::vector<std::pair<int, int>> pairs(Axis axis) const;
};

struct SaddlePointError : Error {
    SaddlePointError(const std::string& what, Eigen::VectorXd mode, double eigenvalue)
        : Error(what), mode(std::move(mode)), eigenvalue(eigenvalue) {}
    Eigen::VectorXd mode;
    double eigenvalue;
};
struct CollapseError : Error {
    using Error::Error;
};

struct EquilibriumOptions {
    int max_iterations = 200;
    double gradient_tolerance = 1e-9;  // relative to q |alpha| d
    std::vector<Eigen::Vector3d> seed;  // optional explicit layout
};

// total potential energy (trap + Coulomb) and its derivatives for a flat 3N vector
struct PotentialEvaluation {
    double energy = 0.0;
    Eigen::VectorXd gradient;
    Eigen::MatrixXd hessian;
};
PotentialEvaluation evaluate_potential(const Eigen::VectorXd& x, const TrapPotential& pot,
                                       const IonSpecies& sp, bool with_hessian = true);

IonConfiguration solve_equilibrium(const TrapPotential& pot, const IonSpecies& sp,
                                   std::pair<int, int> ions_per_well,
                                   const EquilibriumOptions& opt = {});

ModeSpectrum normal_modes(const IonConfiguration& config, const TrapPotential& pot);

CoupledPair coupled_pair(const ModeSpectrum& spectrum, const IonSpecies& sp, double omega_ref,
                         int n);

// Family of double wells parametrised by the potential separation.
// Axial: well along z, omega_chain sets -2 alpha, transverse = (x, y).
// Radial: well along x, omega_chain sets the z curvature, transverse = (x local, y).
struct DoubleWellFamily {
    Orientation orientation = Orientation::Axial;
    double omega_chain = kTwoPi * 400e3;
    double omega_transverse_1 = kTwoPi * 3.0e6;
    double omega_transverse_2 = kTwoPi * 3.1e6;

    TrapPotential at(double d_potential, const IonSpecies& sp) const;
    static DoubleWellFamily axial_default();
    static DoubleWellFamily radial_default();
};

enum class SeparationConvention { ChainCentroid, PotentialMinimum };

struct CalibrationOptions {
    DoubleWellFamily family;  // omega_chain is overwritten by the calibration
    SeparationConvention convention = SeparationConvention::ChainCentroid;
    double tolerance = 1e-10;  // relative, on the calibrated frequency
};

CalibrationOptions default_calibration(Orientation o);

TrapPotential calibrate_double_well(double target_com, int n, double d, const IonSpecies& sp,
                                    Orientation o, const CalibrationOptions& opt);
inline TrapPotential calibrate_double_well(double target_com, int n, double d,
                                           const IonSpecies& sp, Orientation o) {
    return calibrate_double_well(target_com, n, d, sp, o, default_calibration(o));
}

// mean of the lowest chain-axis ip/oop pair in the n+n configuration, i.e. the
// uncoupled per-well COM frequency to second order in the coupling
double pair_mean_frequency(const TrapPotential& pot, const IonSpecies& sp, int n);
// centroid distance of the two chains in the n+n configuration
double chain_centroid_separation(const TrapPotential& pot, const IonSpecies& sp, int n);

struct CouplingRow {
    int n = 0;
    double d = 0.0;
    double omega_com = 0.0;
    double omega_str = 0.0;
    double coupling = 0.0;
    double k_int = 0.0;
    double point_charge = 0.0;
    std::string status = "ok";
};

std::vector<CouplingRow> coupling_scan(const std::vector<int>& n_values,
                                       const std::vector<double>& d_values, double target_com,
                                       Orientation o, const CalibrationOptions& opt,
                                       const IonSpecies& sp, int jobs = 1);
Table coupling_table(const std::vector<CouplingRow>& rows);

struct SplittingRow {
    double d = 0.0;
    int pair_rank = 0;
    Axis axis = Axis::Z;
    double omega_ip = 0.0;
    double omega_oop = 0.0;
    double splitting = 0.0;
    std::string status = "ok";
};

std::vector<SplittingRow> mode_splitting_scan(const DoubleWellFamily& family,
                                              const std::vector<double>& d_values, int n,
                                              const IonSpecies& sp, int jobs = 1);
Table splitting_table(const std::vector<SplittingRow>& rows);

struct EquidistanceResult {
    double lz_over_dz = 0.0;
    double spacing_inhomogeneity = 0.0;
    double quartic = 0.0;  // V/m^4 at the optimum
};

// l_z = (q / (4 pi eps0 phi_z))^(1/3)
double chain_length_scale(const TrapPotential& pot, const IonSpecies& sp);
// quartic coefficient giving l_z / d_z = ratio, with d_z = sqrt(24 phi_z / gamma)
double quartic_for_ratio(double ratio, const TrapPotential& pot, const IonSpecies& sp);
// max over wells of (max gap / min gap - 1) along z
double spacing_inhomogeneity(const IonConfiguration& config);

EquidistanceResult optimize_quartic_equidistance(int n, const TrapPotential& pot,
                                                 const IonSpecies& sp,
                                                 std::pair<int, int> ions_per_well = {-1, -1},
                                                 double ratio_lo = 0.05, double ratio_hi = 1.0);

}  // namespace qsa
