#include "qsa/quantum.hpp"

#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <map>

namespace qsa {

namespace ode = boost::numeric::odeint;

const char* to_string(MSSolver s) {
    switch (s) {
        case MSSolver::Auto: return "auto";
        case MSSolver::Block: return "block";
        case MSSolver::Density: return "density";
        case MSSolver::Trajectories: return "trajectories";
    }
    return "?";
}

const char* to_string(SidebandKind k) {
    switch (k) {
        case SidebandKind::Carrier: return "carrier";
        case SidebandKind::Red: return "rsb";
        case SidebandKind::Blue: return "bsb";
    }
    return "?";
}

MSGateConfig MSGateConfig::standard(MSCase c, double coupling) {
    MSGateConfig g;
    g.gate_case = c;
    g.coupling = coupling;
    switch (c) {
        case MSCase::RedBoth:
            g.delta_1 = -coupling;
            g.gate_time = kTwoPi / coupling;
            g.omega_sb = coupling / std::sqrt(2.0);
            break;
        case MSCase::BlueBoth:
            g.delta_1 = 2.0 * coupling;
            g.gate_time = kTwoPi / coupling;
            g.omega_sb = coupling / std::sqrt(2.0);
            break;
        case MSCase::Centered:
            g.delta_1 = 0.5 * coupling;
            g.gate_time = 2.0 * kTwoPi / coupling;
            g.omega_sb = coupling / (4.0 * std::sqrt(2.0));
            break;
    }
    return g;
}

std::array<double, 2> MSGateConfig::detunings() const { return {delta_1, delta_1 - coupling}; }

void MSGateConfig::validate() const {
    if (!(coupling > 0.0) || !(omega_sb > 0.0) || !(gate_time > 0.0))
        throw DomainError("MS gate needs positive splitting, Rabi frequency and duration");
    if (cutoff < 4) throw DomainError("Fock cutoff must be at least 4");
    if (heating[0] < 0.0 || heating[1] < 0.0) throw DomainError("heating rates must be non-negative");
    if (dephasing_time && !(*dephasing_time > 0.0)) throw DomainError("dephasing time must be positive");
    const auto d = detunings();
    switch (gate_case) {
        case MSCase::RedBoth:
            if (!(d[0] < 0.0 && d[1] < 0.0)) throw ClosureError("case 1 drives red of both modes");
            break;
        case MSCase::BlueBoth:
            if (!(d[0] > 0.0 && d[1] > 0.0)) throw ClosureError("case 2 drives blue of both modes");
            break;
        case MSCase::Centered:
            if (std::abs(delta_1 - 0.5 * coupling) > 1e-9 * coupling)
                throw ClosureError("case 3 requires the laser exactly between the modes");
            break;
    }
    for (double dm : d) {
        const double loops = gate_time * std::abs(dm) / kTwoPi;
        if (loops < 0.5 || std::abs(loops - std::round(loops)) > closure_tolerance * std::round(loops))
            throw ClosureError("phase-space loop not closed: " + std::to_string(loops) + " loops");
    }
}

namespace {

using Buffer = std::vector<double>;

Eigen::Matrix4cd hadamard2() {
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = h(i, j) * h;
    return out;
}

// tr X(t) with dX = -i(l H X - lp X H) + D[X], H = a e^{-i d t} + h.c., X(0) = |0><0|.
// a and a^dagger act as weighted shifts, so the right-hand side is O(c^2).
cplx mode_block_trace(double l, double lp, double detuning, double rate, double t, int c) {
    if ((l == lp && rate == 0.0) || (l == 0.0 && lp == 0.0)) return 1.0;
    std::vector<double> sq(c + 1);
    for (int n = 0; n <= c; ++n) sq[n] = std::sqrt(static_cast<double>(n));
    auto rhs = [&](const Buffer& in, Buffer& dx, double tt) {
        dx.resize(in.size());
        const cplx* x = reinterpret_cast<const cplx*>(in.data());
        cplx* d = reinterpret_cast<cplx*>(dx.data());
        auto at = [&](int i, int j) { return (i < 0 || j < 0 || i >= c || j >= c) ? cplx(0.0) : x[j * c + i]; };
        const cplx f = std::exp(cplx(0.0, -detuning * tt)), fc = std::conj(f);
        for (int j = 0; j < c; ++j)
            for (int i = 0; i < c; ++i) {
                // (H X)_ij = f sqrt(i+1) X_{i+1,j} + fc sqrt(i) X_{i-1,j}
                const cplx hx = f * sq[i + 1] * at(i + 1, j) + fc * sq[i] * at(i - 1, j);
                // (X H)_ij = f X_{i,j-1} sqrt(j) + fc X_{i,j+1} sqrt(j+1)
                const cplx xh = f * sq[j] * at(i, j - 1) + fc * sq[j + 1] * at(i, j + 1);
                cplx v = cplx(0.0, -l) * hx + cplx(0.0, lp) * xh;
                if (rate > 0.0) {
                    // a X a^dagger + a^dagger X a - (n + 1/2) X - X (n + 1/2)
                    v += rate * (sq[i + 1] * sq[j + 1] * at(i + 1, j + 1) + sq[i] * sq[j] * at(i - 1, j - 1) -
                                 (i + j + 1.0) * x[j * c + i]);
                }
                d[j * c + i] = v;
            }
    };
    Buffer x(2 * c * c, 0.0);
    x[0] = 1.0;
    const double scale = std::max({std::abs(l), std::abs(lp), std::abs(detuning)});
    ode::integrate_adaptive(ode::make_controlled(1e-12, 1e-10, ode::runge_kutta_dopri5<Buffer>()), rhs, x,
                            0.0, t, 1e-3 / scale);
    cplx tr = 0.0;
    for (int n = 0; n < c; ++n) tr += cplx(x[2 * (n * c + n)], x[2 * (n * c + n) + 1]);
    return tr;
}

}  // namespace

Eigen::Matrix4cd ms_block_solution(const MSGateConfig& g, const Eigen::Matrix4cd& rho0, int cutoff) {
    const auto det = g.detunings();
    const Eigen::Matrix4cd hm = hadamard2();
    const Eigen::Matrix4cd rx = hm * rho0 * hm.adjoint();
    const int sgn[2] = {1, -1};
    // (mode, l, lp) -> trace, using tr(l, lp) = tr(-l, -lp) (parity) and tr(lp, l) = conj tr(l, lp)
    std::map<std::tuple<int, int, int>, cplx> cache;
    auto block = [&](int m, int kl, int kr) {
        // pick the largest representative of the symmetry orbit
        bool swapped = false;
        int bl = kl, br = kr;
        for (int sw = 0; sw < 2; ++sw)
            for (int neg = 0; neg < 2; ++neg) {
                int x = sw ? kr : kl, y = sw ? kl : kr;
                if (neg) x = -x, y = -y;
                if (std::make_pair(x, y) > std::make_pair(bl, br)) bl = x, br = y, swapped = sw;
            }
        kl = bl, kr = br;
        auto key = std::make_tuple(m, kl, kr);
        auto it = cache.find(key);
        if (it == cache.end()) {
            const cplx tr = mode_block_trace(0.5 * g.omega_sb * kl, 0.5 * g.omega_sb * kr, det[m], g.heating[m],
                                             g.gate_time, cutoff);
            it = cache.emplace(key, tr).first;
        }
        return swapped ? std::conj(it->second) : it->second;
    };
    Eigen::Matrix4cd q;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const int s1 = sgn[i >> 1], s2 = sgn[i & 1], t1 = sgn[j >> 1], t2 = sgn[j & 1];
            cplx prod = rx(i, j);
            prod *= block(0, s1 - s2, t1 - t2);
            prod *= block(1, s1 + s2, t1 + t2);
            q(i, j) = prod;
        }
    return hm.adjoint() * q * hm;
}

double ms_cutoff_change(const MSGateConfig& g, int cutoff) {
    Eigen::Matrix4cd r0 = Eigen::Matrix4cd::Zero();
    r0(0, 0) = 1.0;
    return std::abs(bell_fidelity(ms_block_solution(g, r0, cutoff)) -
                    bell_fidelity(ms_block_solution(g, r0, 2 * cutoff)));
}

OpenSystem ms_open_system(const MSGateConfig& g, const HilbertSpec& spec) {
    if (spec.n_qubits != 2 || spec.modes.size() != 2)
        throw DomainError("MS gate acts on two qubits and two modes");
    const auto det = g.detunings();
    const SpMat x1 = spec.qubit_op(0, pauli_x()), x2 = spec.qubit_op(1, pauli_x());
    OpenSystem sys;
    sys.dim = spec.dimension();
    const SpMat coupling[2] = {SpMat(x1 - x2), SpMat(x1 + x2)};
    for (int m = 0; m < 2; ++m) {
        const SpMat a = spec.annihilation(m);
        sys.drives.push_back({SpMat(coupling[m] * a), 0.5 * g.omega_sb, det[m]});
        if (g.heating[m] > 0.0) {
            sys.collapse.push_back(std::sqrt(g.heating[m]) * a);
            sys.collapse.push_back(SpMat(std::sqrt(g.heating[m]) * SpMat(a.adjoint())));
        }
    }
    if (g.dephasing_time) {
        const SpMat z = spec.qubit_op(0, pauli_z()) + spec.qubit_op(1, pauli_z());
        sys.collapse.push_back(std::sqrt(1.0 / *g.dephasing_time) * 0.5 * z);
    }
    return sys;
}

MSOutcome ms_evolve(const MSGateConfig& g, const QuantumState& initial) {
    g.validate();
    initial.validate();
    if (initial.spec.n_qubits != 2) throw DomainError("MS gate needs a two-qubit state");
    const bool vacuum_modes = initial.spec.modes.empty();
    if (!vacuum_modes && initial.spec.modes.size() != 2)
        throw DomainError("MS gate input must carry no modes or exactly two");

    MSOutcome out;
    out.cutoff = vacuum_modes ? g.cutoff : initial.spec.modes[0].cutoff;
    HilbertSpec full;
    full.n_qubits = 2;
    if (vacuum_modes)
        full.modes = {ModeSpec{0.0, g.cutoff}, ModeSpec{0.0, g.cutoff}};
    else
        full = initial.spec;
    full.validate();

    MSSolver s = g.solver;
    if (s == MSSolver::Auto) {
        if (vacuum_modes && !g.dephasing_time)
            s = MSSolver::Block;
        else
            s = full.dimension() < 4096 ? MSSolver::Density : MSSolver::Trajectories;
    }
    if (s == MSSolver::Block && (!vacuum_modes || g.dephasing_time))
        throw DomainError("block solver needs modes in vacuum and no qubit dephasing");
    out.solver = s;

    if (g.preflight) {
        out.cutoff_change = ms_cutoff_change(g, out.cutoff);
        if (out.cutoff_change > g.preflight_tolerance)
            throw CutoffError("Fock cutoff " + std::to_string(out.cutoff) + " not converged (change " +
                              std::to_string(out.cutoff_change) + ")");
    }

    Eigen::MatrixXcd rq;
    if (s == MSSolver::Block) {
        rq = ms_block_solution(g, initial.density(), out.cutoff);
    } else {
        const OpenSystem sys = ms_open_system(g, full);
        const long long md = full.mode_dimension();
        if (s == MSSolver::Density) {
            Eigen::MatrixXcd rho0;
            if (vacuum_modes) {
                const Eigen::MatrixXcd q = initial.density();
                rho0 = Eigen::MatrixXcd::Zero(full.dimension(), full.dimension());
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) rho0(i * md, j * md) = q(i, j);
            } else {
                rho0 = initial.density();
            }
            rq = reduce_to_qubits(evolve_density(sys, rho0, 0.0, g.gate_time), 4);
        } else {
            if (initial.kind != StateKind::Pure) throw DomainError("trajectory solver needs a pure input");
            Eigen::VectorXcd psi0;
            if (vacuum_modes) {
                psi0 = Eigen::VectorXcd::Zero(full.dimension());
                for (int i = 0; i < 4; ++i) psi0[i * md] = initial.psi[i];
            } else {
                psi0 = initial.psi;
            }
            auto avg = average_trajectories(sys, psi0, 0.0, g.gate_time, g.trajectories,
                                            [](const Eigen::VectorXcd& p) { return reduce_to_qubits(p, 4); });
            rq = avg.mean;
            out.jumps = avg.jumps;
        }
    }
    out.qubits.spec.n_qubits = 2;
    out.qubits.kind = StateKind::Density;
    out.qubits.rho = 0.5 * (rq + rq.adjoint());
    return out;
}

double bell_fidelity(const Eigen::Matrix4cd& r) {
    return 0.5 * (r(0, 0).real() + r(3, 3).real()) + std::abs(r(0, 3));
}

ParityAnalysis populations_and_parity(const Eigen::Matrix4cd& rho, int points) {
    if (points < 3) throw DomainError("parity sweep needs at least three phases");
    ParityAnalysis p;
    p.p_ss = rho(0, 0).real();
    p.p_mixed = rho(1, 1).real() + rho(2, 2).real();
    p.p_dd = rho(3, 3).real();
    cplx fourier = 0.0;
    for (int k = 0; k < points; ++k) {
        const double phi = kTwoPi * k / points;
        // pi/2 pulse exp(-i pi/4 (cos phi X + sin phi Y))
        Eigen::Matrix2cd r;
        const double c = std::cos(kPi / 4), s = std::sin(kPi / 4);
        r << c, cplx(0, -1) * s * std::exp(cplx(0, -phi)), cplx(0, -1) * s * std::exp(cplx(0, phi)), c;
        Eigen::Matrix4cd u;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) u.block<2, 2>(2 * i, 2 * j) = r(i, j) * r;
        const Eigen::Matrix4cd after = u * rho * u.adjoint();
        const double par = after(0, 0).real() + after(3, 3).real() - after(1, 1).real() - after(2, 2).real();
        p.phases.push_back(phi);
        p.parity.push_back(par);
        fourier += par * std::exp(cplx(0, -2.0 * phi));
    }
    p.visibility = 2.0 * std::abs(fourier) / points;
    p.bell_fidelity = 0.5 * (p.p_ss + p.p_dd) + 0.5 * p.visibility;
    return p;
}

ParityAnalysis populations_and_parity(const QuantumState& state, int points) {
    if (state.spec.n_qubits != 2) throw DomainError("parity analysis needs two qubits");
    return populations_and_parity(Eigen::Matrix4cd(state.reduced_qubits()), points);
}

Table parity_table(const ParityAnalysis& p) {
    Table t({"phase_rad", "parity"}, {"rad", "1"});
    for (std::size_t k = 0; k < p.phases.size(); ++k) t.add_row({p.phases[k], p.parity[k]});
    return t;
}

namespace {

void check_overflow(const QuantumState& s, const std::vector<long long>& idx, const char* what) {
    double w = 0.0;
    for (long long i : idx)
        w += s.kind == StateKind::Pure ? std::norm(s.psi[i]) : s.rho(i, i).real();
    if (w > 1e-12) throw CutoffError(std::string(what) + " drives population beyond the Fock cutoff");
}

QuantumState apply_unitary(const QuantumState& s, const SpMat& u) {
    QuantumState out = s;
    if (s.kind == StateKind::Pure)
        out.psi = u * s.psi;
    else
        out.rho = u * (u * s.rho).adjoint();  // rho Hermitian
    return out;
}

}  // namespace

SpMat sideband_unitary(const HilbertSpec& spec, int ion, int mode, SidebandKind kind, double area,
                       double phase) {
    spec.validate();
    if (ion < 0 || ion >= spec.n_qubits) throw DomainError("ion index out of range");
    if (kind != SidebandKind::Carrier && (mode < 0 || mode >= static_cast<int>(spec.modes.size())))
        throw DomainError("mode index out of range");
    const long long dim = spec.dimension();
    const long long qstride = spec.mode_dimension() << (spec.n_qubits - ion - 1);
    const long long mstride = kind == SidebandKind::Carrier ? 0 : spec.mode_stride(mode);
    const int c = kind == SidebandKind::Carrier ? 0 : spec.modes[mode].cutoff;
    std::vector<Eigen::Triplet<cplx>> trip;
    std::vector<char> paired(dim, 0);
    const cplx eip = std::exp(cplx(0, phase));
    for (long long i = 0; i < dim; ++i) {
        if (spec.qubit_of(i, ion) != 0) continue;  // visit each pair from its S side
        long long j = -1;
        double g = 1.0;
        if (kind == SidebandKind::Carrier) {
            j = i + qstride;
        } else {
            const int n = spec.fock_of(i, mode);
            if (kind == SidebandKind::Blue && n + 1 < c) {
                j = i + qstride + mstride;
                g = std::sqrt(n + 1.0);
            } else if (kind == SidebandKind::Red && n >= 1) {
                j = i + qstride - mstride;
                g = std::sqrt(static_cast<double>(n));
            }
        }
        if (j < 0) continue;
        const double co = std::cos(0.5 * area * g), si = std::sin(0.5 * area * g);
        paired[i] = paired[j] = 1;
        trip.emplace_back(i, i, co);
        trip.emplace_back(j, j, co);
        trip.emplace_back(j, i, cplx(0, -si) * eip);
        trip.emplace_back(i, j, cplx(0, -si) * std::conj(eip));
    }
    // unpaired basis states are left untouched
    for (long long i = 0; i < dim; ++i)
        if (!paired[i]) trip.emplace_back(i, i, 1.0);
    SpMat u(dim, dim);
    u.setFromTriplets(trip.begin(), trip.end());
    return u;
}

QuantumState sideband_pulse(const QuantumState& s, int ion, int mode, SidebandKind kind, double area,
                            double phase) {
    s.validate();
    if (kind != SidebandKind::Carrier) {
        if (mode < 0 || mode >= static_cast<int>(s.spec.modes.size())) throw DomainError("mode index out of range");
        // S,c-1 under bsb and D,c-1 under rsb have partners beyond the cutoff
        const int edge_qubit = kind == SidebandKind::Blue ? 0 : 1;
        std::vector<long long> edge;
        const int c = s.spec.modes[mode].cutoff;
        for (long long i = 0; i < s.spec.dimension(); ++i)
            if (s.spec.qubit_of(i, ion) == edge_qubit && s.spec.fock_of(i, mode) == c - 1) edge.push_back(i);
        check_overflow(s, edge, to_string(kind));
    }
    return apply_unitary(s, sideband_unitary(s.spec, ion, mode, kind, area, phase));
}

QuantumState exchange_coupling(const QuantumState& s, std::pair<int, int> modes, double omega_c,
                               double duration) {
    s.validate();
    const auto& sp = s.spec;
    const int nm = static_cast<int>(sp.modes.size());
    const auto [m1, m2] = modes;
    if (m1 < 0 || m2 < 0 || m1 >= nm || m2 >= nm || m1 == m2) throw DomainError("invalid mode pair");
    const int c1 = sp.modes[m1].cutoff, c2 = sp.modes[m2].cutoff;
    const int cmin = std::min(c1, c2);
    // beam splitter conserves n1 + n2; states at or above the smaller cutoff are truncated
    std::vector<long long> edge;
    for (long long i = 0; i < sp.dimension(); ++i)
        if (sp.fock_of(i, m1) + sp.fock_of(i, m2) >= cmin) edge.push_back(i);
    check_overflow(s, edge, "exchange");

    const int d = c1 * c2;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
    for (int n1 = 0; n1 + 1 < c1; ++n1)
        for (int n2 = 1; n2 < c2; ++n2) {
            // a1^dagger a2 |n1, n2> = sqrt((n1+1) n2) |n1+1, n2-1>
            const double v = std::sqrt((n1 + 1.0) * n2);
            h((n1 + 1) * c2 + n2 - 1, n1 * c2 + n2) = v;
            h(n1 * c2 + n2, (n1 + 1) * c2 + n2 - 1) = v;
        }
    const Eigen::MatrixXcd u2 = (cplx(0, -0.5 * omega_c * duration) * h).exp();

    const long long s1 = sp.mode_stride(m1), s2 = sp.mode_stride(m2);
    std::vector<Eigen::Triplet<cplx>> trip;
    for (long long i = 0; i < sp.dimension(); ++i) {
        const int n1 = sp.fock_of(i, m1), n2 = sp.fock_of(i, m2);
        const long long base = i - n1 * s1 - n2 * s2;
        const int col = n1 * c2 + n2;
        for (int r = 0; r < d; ++r) {
            const cplx v = u2(r, col);
            if (std::abs(v) < 1e-15) continue;
            trip.emplace_back(base + (r / c2) * s1 + (r % c2) * s2, i, v);
        }
    }
    SpMat u(sp.dimension(), sp.dimension());
    u.setFromTriplets(trip.begin(), trip.end());
    return apply_unitary(s, u);
}

Eigen::MatrixXcd collective_dephasing(const Eigen::MatrixXcd& r, int n_qubits, double t, double tau) {
    if (!(tau > 0.0) || t < 0.0) throw DomainError("dephasing needs positive time constant");
    if (r.rows() != (1 << n_qubits)) throw DomainError("qubit density size mismatch");
    auto m = [&](int i) {
        int z = 0;
        for (int q = 0; q < n_qubits; ++q) z += ((i >> q) & 1) ? -1 : 1;
        return 0.5 * z;
    };
    Eigen::MatrixXcd out = r;
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j) {
            const double dm = m(i) - m(j);
            out(i, j) *= std::exp(-0.5 * dm * dm * t / tau);
        }
    return out;
}

SequenceResult phonon_exchange_sequence(const SequenceOptions& o) {
    if (!(o.coupling > 0.0)) throw DomainError("coupling must be positive");
    HilbertSpec spec;
    spec.n_qubits = 2;
    spec.modes = {ModeSpec{0.0, o.cutoff}, ModeSpec{0.0, o.cutoff}};
    QuantumState s = QuantumState::product(spec, {0, 0}, {0, 0});
    s = sideband_pulse(s, 0, 0, SidebandKind::Blue, kPi);
    s = exchange_coupling(s, {0, 1}, o.coupling, o.exchange_fraction * kPi / (2.0 * o.coupling));
    s = sideband_pulse(s, 0, 0, SidebandKind::Blue, kPi);
    s = sideband_pulse(s, 1, 1, SidebandKind::Red, kPi);
    SequenceResult res;
    if (o.dephasing_time) {
        QuantumState q;
        q.spec.n_qubits = 2;
        q.kind = StateKind::Density;
        q.rho = collective_dephasing(s.reduced_qubits(), 2, o.sequence_duration, *o.dephasing_time);
        res.state = q;
    } else {
        res.state = s;
    }
    res.analysis = populations_and_parity(res.state, o.parity_points);
    return res;
}

}  // namespace qsa
