#pragma once

#include "qsa/hilbert.hpp"
#include "qsa/lindblad.hpp"
#include "qsa/table.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace qsa {

struct CutoffError : Error {
    using Error::Error;
};
struct ClosureError : Error {
    using Error::Error;
};

// 1: red of both modes, 2: blue of both, 3: laser centred between the modes
enum class MSCase { RedBoth = 1, BlueBoth = 2, Centered = 3 };

enum class MSSolver { Auto, Block, Density, Trajectories };
const char* to_string(MSSolver s);

// Two modes: 0 = stretch (couples to s1 - s2), 1 = COM (couples to s1 + s2).
// The COM sits Omega_c above the stretch, so delta_com = delta_str - Omega_c with
// delta = omega_laser - omega_mode.
struct MSGateConfig {
    MSCase gate_case = MSCase::RedBoth;
    double coupling = kTwoPi / 190e-6;  // mode splitting, rad/s
    double omega_sb = 0.0;              // sideband Rabi frequency eta * Omega, rad/s
    double delta_1 = 0.0;               // detuning from the stretch mode, rad/s
    double gate_time = 0.0;
    std::array<double, 2> lamb_dicke{0.05, 0.05};  // absorbed into omega_sb at first order
    std::array<double, 2> heating{0.0, 0.0};       // quanta/s, (stretch, COM)
    std::optional<double> dephasing_time;
    int cutoff = 12;
    double closure_tolerance = 0.01;  // relative to the loop count
    MSSolver solver = MSSolver::Auto;
    bool preflight = true;
    double preflight_tolerance = 1e-4;
    TrajectoryOptions trajectories{};

    // standard settings of the three drive cases for a given splitting
    static MSGateConfig standard(MSCase c, double coupling);

    std::array<double, 2> detunings() const;  // (stretch, COM)
    void validate() const;                    // closure and case constraints
};

struct MSOutcome {
    QuantumState qubits;  // two-qubit density, modes traced out
    MSSolver solver = MSSolver::Auto;
    int cutoff = 0;
    double cutoff_change = 0.0;  // fidelity change on doubling the cutoff (block model)
    long long jumps = 0;
};

// qubit-only two-qubit input: modes start in the ground state. An input carrying
// two modes is evolved as given with the density or trajectory solver.
MSOutcome ms_evolve(const MSGateConfig& config, const QuantumState& initial);

// reduced qubit density from the product-block solver (heating only, modes in vacuum)
Eigen::Matrix4cd ms_block_solution(const MSGateConfig& config, const Eigen::Matrix4cd& rho0,
                                   int cutoff);
// |Bell fidelity(c) - Bell fidelity(2c)| with the block model
double ms_cutoff_change(const MSGateConfig& config, int cutoff);

OpenSystem ms_open_system(const MSGateConfig& config, const HilbertSpec& spec);

struct ParityAnalysis {
    double p_ss = 0.0;
    double p_mixed = 0.0;  // P_SD + P_DS
    double p_dd = 0.0;
    std::vector<double> phases;
    std::vector<double> parity;
    double visibility = 0.0;
    double bell_fidelity = 0.0;  // (P_SS + P_DD)/2 + V/2
};

// parity after a pi/2 pulse of phase phi on both qubits. The default sweep is
// uniform over one period, so the 2 phi Fourier amplitude is the least-squares contrast.
ParityAnalysis populations_and_parity(const Eigen::Matrix4cd& rho, int points = 64);
ParityAnalysis populations_and_parity(const QuantumState& state, int points = 64);
// max over local Z rotations of the overlap with (|SS> + e^{i phi}|DD>)/sqrt2
double bell_fidelity(const Eigen::Matrix4cd& rho);
Table parity_table(const ParityAnalysis& p);

enum class SidebandKind { Carrier, Red, Blue };
const char* to_string(SidebandKind k);

// U = exp(-i area/2 (e^{i phase} sigma+ A + h.c.)), A = 1, a, a^dagger; sigma+ = |D><S|
QuantumState sideband_pulse(const QuantumState& state, int ion, int mode, SidebandKind kind,
                            double area, double phase = 0.0);
SpMat sideband_unitary(const HilbertSpec& spec, int ion, int mode, SidebandKind kind, double area,
                       double phase);

// exp(-i t Omega_c/2 (a1^dagger a2 + a1 a2^dagger))
QuantumState exchange_coupling(const QuantumState& state, std::pair<int, int> modes,
                               double omega_c, double duration);

struct SequenceOptions {
    double coupling = kTwoPi * 1e3;
    double exchange_fraction = 1.0;  // exchange duration in units of pi/(2 Omega_c)
    int cutoff = 4;
    std::optional<double> dephasing_time;  // collective, applied over the sequence
    double sequence_duration = 0.0;        // s, used only with dephasing
    int parity_points = 64;
};

struct SequenceResult {
    QuantumState state;
    ParityAnalysis analysis;
};

SequenceResult phonon_exchange_sequence(const SequenceOptions& o = {});

// exact collective dephasing L = sqrt(1/tau) (Z1 + Z2 + ...)/2 applied for time t
Eigen::MatrixXcd collective_dephasing(const Eigen::MatrixXcd& qubit_rho, int n_qubits,
                                      double duration, double tau);

}  // namespace qsa
