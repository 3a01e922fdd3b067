#pragma once

#include <Eigen/Dense>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace qsa {

// CODATA 2018
struct PhysicalConstants {
    static constexpr double vacuum_permittivity = 8.8541878128e-12;
    static constexpr double elementary_charge = 1.602176634e-19;
    static constexpr double atomic_mass_unit = 1.66053906660e-27;
    static constexpr double reduced_planck = 1.054571817e-34;
};

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kEps0 = PhysicalConstants::vacuum_permittivity;
inline constexpr double kE = PhysicalConstants::elementary_charge;
inline constexpr double kAmu = PhysicalConstants::atomic_mass_unit;
inline constexpr double kHbar = PhysicalConstants::reduced_planck;
inline constexpr double kMicron = 1e-6;

inline constexpr double hz(double omega) { return omega / kTwoPi; }
inline constexpr double rad(double f_hz) { return f_hz * kTwoPi; }

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : Error {
    using Error::Error;
};
struct ConvergenceError : Error {
    using Error::Error;
};

struct IonSpecies {
    double mass = 0.0;
    double charge = 0.0;
    std::string label;

    static IonSpecies calcium40();
    void validate() const;
    // q^2 / (4 pi eps0), the Coulomb energy times distance
    double coulomb_constant() const;
};

enum class Orientation { Axial, Radial };
double kappa(Orientation o);
const char* to_string(Orientation o);

enum class Axis { X = 0, Y = 1, Z = 2 };
const char* to_string(Axis a);

// Per-ion potential energy / charge:
//   alpha/2 s^2 + beta/24 s^4 - bias_field s     along the double-well axis s
//   curvature[k]/2 r_k^2                          along the other two axes
//   + quartic_z/24 z^4                             only when the double well is along x
struct TrapPotential {
    Axis double_well_axis = Axis::Z;
    double alpha = 0.0;            // V/m^2
    double beta = 0.0;             // V/m^4
    Eigen::Vector3d curvature = Eigen::Vector3d::Zero();  // V/m^2, entry on the double-well axis unused
    double quartic_z = 0.0;        // V/m^4
    double bias_field = 0.0;       // V/m

    int well_axis() const { return static_cast<int>(double_well_axis); }
    // axis along which the chains are aligned
    static constexpr int chain_axis() { return 2; }

    void validate() const;
    double separation() const;        // sqrt(-24 alpha / beta)
    double local_curvature() const;   // -2 alpha
    double curvature_on(int axis) const;  // local harmonic curvature seen by one ion at a well minimum

    // single-ion energy, gradient and diagonal Hessian (J, N, N/m)
    double energy(const Eigen::Vector3d& r, double charge) const;
    Eigen::Vector3d gradient(const Eigen::Vector3d& r, double charge) const;
    Eigen::Vector3d hessian_diag(const Eigen::Vector3d& r, double charge) const;

    // double well along z (axial coupling), local curvature from a single-ion frequency
    static TrapPotential axial(double d, double omega_local, const IonSpecies& sp,
                               double omega_x, double omega_y);
    // double well along x (radial coupling), chain along z
    static TrapPotential radial(double d, double omega_local, const IonSpecies& sp,
                                double omega_y, double omega_z);
};

struct CoupledPair {
    double omega_com = 0.0;
    double omega_str = 0.0;
    double coupling_rate = 0.0;
    double k_int = 0.0;  // N/m

    double k_int_eV_per_m2() const { return k_int / kE; }
};

double well_separation(double alpha, double beta);
double local_curvature(double alpha);

double point_charge_coupling(int n, const IonSpecies& sp, double omega_z, double d, Orientation o);
// true when |k_int| stays below `fraction` of n m omega_z^2
bool point_charge_valid(int n, const IonSpecies& sp, double omega_z, double d, Orientation o,
                        double fraction = 0.1);
// signed interaction constant kappa q^2 / (4 pi eps0 d^3) for chains of n ions
double point_charge_k_int(int n, const IonSpecies& sp, double d, Orientation o);

// (omega_com, omega_str) = sqrt(omega_z^2 +- k_int/(n m)), k_int signed
std::pair<double, double> exact_pair_frequencies(double k_int, int n, const IonSpecies& sp,
                                                 double omega_z);
double interaction_constant_from_splitting(double coupling_rate, int n, const IonSpecies& sp,
                                           double omega_z);

}  // namespace qsa
