#include "qsa/lightshift.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qsa {

const char* to_string(Cancellation c) { return c == Cancellation::Even ? "even" : "odd"; }

LightShiftSetup lightshift_setup(int n, const LightShiftTrap& trap, const IonSpecies& sp) {
    if (n < 1) throw DomainError("need at least one ion per well");
    LightShiftSetup s;
    s.n = n;
    s.species = sp;
    TrapPotential pot = TrapPotential::radial(1.0, trap.omega_x, sp, trap.omega_y, trap.omega_z);
    const double lz = chain_length_scale(pot, sp);
    pot = TrapPotential::radial(trap.separation_in_lz * lz, trap.omega_x, sp, trap.omega_y, trap.omega_z);
    if (trap.lz_over_dz > 0.0) pot.quartic_z = quartic_for_ratio(trap.lz_over_dz, pot, sp);
    s.potential = pot;
    s.config = solve_equilibrium(pot, sp, {n, n});
    s.spectrum = normal_modes(s.config, pot);

    s.order.resize(2 * n);
    std::iota(s.order.begin(), s.order.end(), 0);
    std::sort(s.order.begin(), s.order.end(), [&](int a, int b) {
        const int wa = s.config.well_assignment[a], wb = s.config.well_assignment[b];
        if (wa != wb) return wa < wb;
        return s.config.positions[a][2] < s.config.positions[b][2];
    });
    for (int i : s.order) s.positions.push_back(s.config.positions[i]);
    s.spacing = n > 1 ? std::abs(s.positions[1][2] - s.positions[0][2]) : 0.0;

    std::vector<int> zmodes;
    for (std::size_t l = 0; l < s.spectrum.size(); ++l)
        if (s.spectrum.axis_label[l] == Axis::Z) zmodes.push_back(static_cast<int>(l));
    if (zmodes.size() < 2) throw DomainError("no chain-axis mode pair");
    s.mode_low = zmodes[0];
    s.mode_high = zmodes[1];
    s.coupling = s.spectrum.frequencies[s.mode_high] - s.spectrum.frequencies[s.mode_low];
    if (zmodes.size() > 2) {
        const double gap = s.spectrum.frequencies[zmodes[2]] - s.spectrum.frequencies[s.mode_high];
        if (gap < 4.0 * s.coupling) throw DomainError("coupled chain-axis pair is not isolated");
    }
    return s;
}

void LightShiftConfig::validate(int qubits) const {
    if (p < 0) throw DomainError("cancellation integer must be non-negative");
    if (!(omega >= 0.0)) throw DomainError("Rabi frequency must be non-negative");
    if (std::abs(std::cos(angle)) < 1e-6) throw DomainError("wavevector needs a chain-axis component");
    for (int q : spin_echo)
        if (q < 0 || q >= qubits) throw DomainError("echo qubit out of range");
}

LightShiftGate lightshift_coupling_matrix(const LightShiftConfig& c, const LightShiftSetup& s) {
    const int nq = s.qubits();
    c.validate(nq);
    if (s.n < 2) throw DomainError("cancellation needs at least two ions per well");
    const int multiple = 2 * c.p + (c.cancellation == Cancellation::Odd ? 1 : 0);
    const double kz = multiple * kPi / (2.0 * s.spacing);
    LightShiftGate g;
    g.wavevector = Eigen::Vector3d(0.0, kz * std::tan(c.angle), kz);

    const double w0 = s.spectrum.frequencies[s.mode_low], w1 = s.spectrum.frequencies[s.mode_high];
    double laser = 0.0;
    switch (c.beatnote) {
        case Beatnote::Above: laser = w1 + 0.5 * s.coupling; break;
        case Beatnote::Middle: laser = 0.5 * (w0 + w1); break;
        case Beatnote::Below: laser = w0 - 0.5 * s.coupling; break;
    }
    g.detuning = 0.5 * s.coupling;
    g.gate_time = kTwoPi / g.detuning;

    Eigen::MatrixXd chi = Eigen::MatrixXd::Zero(nq, nq);
    for (int mode : {s.mode_low, s.mode_high}) {
        const double w = s.spectrum.frequencies[mode];
        const double dm = w - laser;
        if (std::abs(dm) < 1e-12 * w) throw DomainError("laser resonant with a coupled mode");
        Eigen::VectorXd nu(nq);
        for (int q = 0; q < nq; ++q) {
            const double v = s.spectrum.mode_vectors(3 * s.order[q] + 2, mode);
            nu[q] = c.participation == Participation::Uniform ? (v >= 0 ? 1.0 : -1.0) / std::sqrt(nq) : v;
        }
        const double eta2 = kz * kz * kHbar / (2.0 * s.species.mass * w);
        chi -= c.omega * c.omega * eta2 / (4.0 * dm) * (nu * nu.transpose());
    }
    g.coupling.resize(nq, nq);
    for (int j = 0; j < nq; ++j)
        for (int k = 0; k < nq; ++k)
            g.coupling(j, k) = j == k ? 0.0 : chi(j, k) * std::cos(g.wavevector.dot(s.positions[j] - s.positions[k]));
    return g;
}

namespace {

// sum_{j != k} J_jk s_j s_k on every computational basis state
Eigen::VectorXd zz_energies(const Eigen::MatrixXd& j) {
    const int n = static_cast<int>(j.rows());
    Eigen::VectorXd e(1 << n);
    Eigen::VectorXd s(n);
    for (int b = 0; b < (1 << n); ++b) {
        for (int q = 0; q < n; ++q) s[q] = ((b >> (n - 1 - q)) & 1) ? -1.0 : 1.0;
        e[b] = s.dot(j * s) - (j.diagonal().array() * s.array().square()).sum();
    }
    return e;
}

}  // namespace

LightShiftEvolution lightshift_evolve(const Eigen::MatrixXd& j, double t, const std::vector<int>& echo,
                                      const Eigen::VectorXcd& initial) {
    const int n = static_cast<int>(j.rows());
    if (j.cols() != n || n % 2 != 0 || n > 20) throw DomainError("coupling matrix must be square over 2n qubits");
    const long long dim = 1LL << n;
    Eigen::VectorXcd psi0 = initial.size() ? initial : Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(double(dim)));
    if (psi0.size() != dim) throw DomainError("initial state dimension mismatch");
    const Eigen::VectorXd e = zz_energies(j);
    auto phase = [&](Eigen::VectorXcd& v, double dt) {
        for (long long b = 0; b < dim; ++b) v[b] *= std::exp(cplx(0.0, -e[b] * dt));
    };
    Eigen::VectorXcd psi = psi0;
    if (echo.empty()) {
        phase(psi, t);
    } else {
        long long mask = 0;
        for (int q : echo) {
            if (q < 0 || q >= n) throw DomainError("echo qubit out of range");
            mask |= 1LL << (n - 1 - q);
        }
        auto flip = [&](Eigen::VectorXcd& v) {
            Eigen::VectorXcd w(dim);
            for (long long b = 0; b < dim; ++b) w[b] = v[b ^ mask];
            v = w;
        };
        phase(psi, 0.5 * t);
        flip(psi);
        phase(psi, 0.5 * t);
        flip(psi);  // undo the refocusing flips so the frame matches the target
    }
    Eigen::MatrixXd ideal = Eigen::MatrixXd::Zero(n, n);
    for (int q = 0; q < n / 2; ++q) ideal(q, q + n / 2) = kPi / 4.0;
    // zz_energies counts both orderings; the ideal lists each pair once
    Eigen::VectorXcd target = psi0;
    const Eigen::VectorXd ei = zz_energies(ideal);
    for (long long b = 0; b < dim; ++b) target[b] *= std::exp(cplx(0.0, -ei[b]));
    LightShiftEvolution out;
    out.state = psi;
    out.fidelity = std::norm(target.dot(psi));
    return out;
}

double lightshift_fidelity(const Eigen::MatrixXd& j, double t, const std::vector<int>& echo) {
    return lightshift_evolve(j, t, echo).fidelity;
}

double reference_rabi_frequency(const LightShiftConfig& c, const LightShiftSetup& s) {
    LightShiftConfig unit = c;
    unit.omega = 1.0;
    const auto g = lightshift_coupling_matrix(unit, s);
    const double j = std::abs(g.coupling(0, s.n));
    if (!(j > 0.0)) throw DomainError("inter-well coupling vanishes");
    return std::sqrt(kPi / 4.0 / (2.0 * j * g.gate_time));
}

std::vector<ScanPoint> fidelity_scan_vs_omega(const LightShiftConfig& c, const LightShiftSetup& s,
                                              double omega_max, int points) {
    if (points < 2 || !(omega_max > 0.0)) throw DomainError("scan needs two points and a positive range");
    LightShiftConfig unit = c;
    unit.omega = 1.0;
    const auto g = lightshift_coupling_matrix(unit, s);
    std::vector<ScanPoint> out;
    out.reserve(points);
    for (int k = 0; k < points; ++k) {
        const double om = omega_max * k / (points - 1);
        // J scales with Omega^2
        out.push_back({om, lightshift_fidelity(g.coupling * (om * om), g.gate_time, c.spin_echo)});
    }
    return out;
}

double peak_fidelity(const std::vector<ScanPoint>& scan) {
    double best = 0.0;
    for (const auto& p : scan) best = std::max(best, p.fidelity);
    return best;
}

Table lightshift_scan_table() { return Table({"omega_Hz", "fidelity", "variant"}, {"Hz", "1", "-"}); }

void append_scan(Table& t, const std::vector<ScanPoint>& scan, const std::string& variant) {
    for (const auto& p : scan) t.add_row({hz(p.omega), p.fidelity, variant});
}

}  // namespace qsa
