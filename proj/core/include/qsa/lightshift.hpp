#pragma once

#include "qsa/hilbert.hpp"
#include "qsa/statics.hpp"
#include "qsa/table.hpp"

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace qsa {

// radial double well of two n-ion chains used for the transversal light-shift gate
struct LightShiftTrap {
    double omega_z = kTwoPi * 0.613e6;  // chain axis
    double omega_y = kTwoPi * 2.1e6;
    double omega_x = kTwoPi * 2.0e6;     // local, along the double-well axis
    double separation_in_lz = 31.0 / 6.0;  // potential well distance / l_z
    double lz_over_dz = 0.0;               // chain-axis quartic, 0 = harmonic
};

struct LightShiftSetup {
    int n = 0;  // ions per well
    IonSpecies species;
    TrapPotential potential;
    IonConfiguration config;
    ModeSpectrum spectrum;
    std::vector<int> order;       // qubit q -> ion; well 1 by z, then well 2 by z
    std::vector<Eigen::Vector3d> positions;  // in qubit order
    int mode_low = -1, mode_high = -1;       // the coupled chain-axis pair
    double coupling = 0.0;                   // splitting of that pair, rad/s
    double spacing = 0.0;                    // first gap in well 1

    int qubits() const { return 2 * n; }
};

LightShiftSetup lightshift_setup(int n, const LightShiftTrap& trap, const IonSpecies& sp);

enum class Cancellation { Even, Odd };
enum class Participation { Uniform, ModeVectors };
enum class Beatnote { Above, Middle, Below };
const char* to_string(Cancellation c);

struct LightShiftConfig {
    int p = 25;  // dk_z * spacing = (2p or 2p+1) pi/2
    Cancellation cancellation = Cancellation::Odd;
    double angle = 0.0;   // dk direction in the yz plane, measured from z
    double omega = 0.0;   // two-photon Rabi frequency, rad/s
    Beatnote beatnote = Beatnote::Above;
    Participation participation = Participation::Uniform;
    std::vector<int> spin_echo;  // qubits flipped at half time, 0-based

    void validate(int qubits) const;
};

struct LightShiftGate {
    Eigen::MatrixXd coupling;  // J, rad/s, symmetric with zero diagonal
    double gate_time = 0.0;    // 2 pi / detuning
    double detuning = 0.0;     // half the mode splitting
    Eigen::Vector3d wavevector = Eigen::Vector3d::Zero();
};

// J_jk = -cos(dk . r_jk) sum_m Omega^2 eta_m^2 nu_j nu_k / (4 delta_m)
LightShiftGate lightshift_coupling_matrix(const LightShiftConfig& c, const LightShiftSetup& s);

struct LightShiftEvolution {
    Eigen::VectorXcd state;
    double fidelity = 0.0;
};

// U = exp(-i H t), H = sum_{j != k} J_jk Z_j Z_k, optionally echoed; target is
// prod_j exp(-i pi/4 Z_j Z_{j+n}) acting on the initial state (|+>^N by default)
LightShiftEvolution lightshift_evolve(const Eigen::MatrixXd& coupling, double gate_time,
                                      const std::vector<int>& spin_echo,
                                      const Eigen::VectorXcd& initial = {});
double lightshift_fidelity(const Eigen::MatrixXd& coupling, double gate_time,
                           const std::vector<int>& spin_echo = {});

// Omega at which the first inter-well pair accumulates the ideal pi/4
double reference_rabi_frequency(const LightShiftConfig& c, const LightShiftSetup& s);

struct ScanPoint {
    double omega = 0.0;
    double fidelity = 0.0;
};
std::vector<ScanPoint> fidelity_scan_vs_omega(const LightShiftConfig& c, const LightShiftSetup& s,
                                              double omega_max, int points);
double peak_fidelity(const std::vector<ScanPoint>& scan);
void append_scan(Table& t, const std::vector<ScanPoint>& scan, const std::string& variant);
Table lightshift_scan_table();

}  // namespace qsa
