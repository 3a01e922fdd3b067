#include "qsa/lindblad.hpp"

#include "qsa/parallel.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <random>

namespace qsa {

namespace ode = boost::numeric::odeint;
using Buffer = std::vector<double>;

void OpenSystem::validate() const {
    if (dim < 1) throw DomainError("open system needs a positive dimension");
    auto check = [&](const SpMat& m) {
        if (m.size() != 0 && (m.rows() != dim || m.cols() != dim))
            throw DomainError("operator dimension mismatch");
    };
    check(h0);
    for (const auto& d : drives) check(d.op);
    for (const auto& c : collapse) check(c);
}

namespace {

Eigen::Map<const Eigen::VectorXcd> as_vec(const Buffer& b) {
    return {reinterpret_cast<const cplx*>(b.data()), static_cast<Eigen::Index>(b.size() / 2)};
}
Eigen::Map<Eigen::VectorXcd> as_vec(Buffer& b) {
    return {reinterpret_cast<cplx*>(b.data()), static_cast<Eigen::Index>(b.size() / 2)};
}
Eigen::Map<const Eigen::MatrixXcd> as_mat(const Buffer& b, Eigen::Index n) {
    return {reinterpret_cast<const cplx*>(b.data()), n, n};
}
Eigen::Map<Eigen::MatrixXcd> as_mat(Buffer& b, Eigen::Index n) {
    return {reinterpret_cast<cplx*>(b.data()), n, n};
}

// precomputed pieces of -i H_eff
struct Generator {
    const OpenSystem& sys;
    std::vector<SpMat> adj;  // op^dagger per drive
    SpMat k;                 // sum L^dag L
    bool has_h0 = false;

    explicit Generator(const OpenSystem& s) : sys(s) {
        s.validate();
        for (const auto& d : s.drives) adj.emplace_back(d.op.adjoint());
        k = SpMat(s.dim, s.dim);
        for (const auto& l : s.collapse) k += SpMat(l.adjoint() * l);
        has_h0 = s.h0.size() != 0 && s.h0.nonZeros() > 0;
    }

    // out = -i H_eff(t) x, with x a vector or matrix
    template <class In, class Out>
    void apply(double t, const In& x, Out& out) const {
        out.setZero();
        if (has_h0) out.noalias() += sys.h0 * x;
        for (std::size_t j = 0; j < sys.drives.size(); ++j) {
            const cplx f = sys.drives[j].amplitude * std::exp(cplx(0.0, -sys.drives[j].detuning * t));
            out.noalias() += f * (sys.drives[j].op * x);
            out.noalias() += std::conj(f) * (adj[j] * x);
        }
        out *= cplx(0.0, -1.0);
        if (k.nonZeros() > 0) out.noalias() -= 0.5 * (k * x);
    }
};

double time_scale(const OpenSystem& sys) {
    double w = 0.0;
    for (const auto& d : sys.drives) w = std::max({w, std::abs(d.detuning), std::abs(d.amplitude)});
    return w > 0.0 ? 1.0 / w : 1.0;
}

}  // namespace

Eigen::VectorXcd evolve_pure(const OpenSystem& sys, const Eigen::VectorXcd& psi, double t0,
                             double t1, const OdeOptions& o) {
    OpenSystem h = sys;
    h.collapse.clear();
    Generator g(h);
    if (psi.size() != sys.dim) throw DomainError("state dimension mismatch");
    Buffer x(2 * psi.size());
    as_vec(x) = psi;
    Eigen::VectorXcd tmp(psi.size());
    auto rhs = [&](const Buffer& in, Buffer& out, double t) {
        out.resize(in.size());
        g.apply(t, as_vec(in), tmp);
        as_vec(out) = tmp;
    };
    ode::integrate_adaptive(ode::make_controlled(o.abs_tol, o.rel_tol, ode::runge_kutta_dopri5<Buffer>()),
                            rhs, x, t0, t1, 0.01 * time_scale(sys));
    return as_vec(static_cast<const Buffer&>(x));
}

Eigen::MatrixXcd evolve_density(const OpenSystem& sys, const Eigen::MatrixXcd& rho, double t0,
                                double t1, const OdeOptions& o) {
    Generator g(sys);
    const Eigen::Index n = sys.dim;
    if (rho.rows() != n || rho.cols() != n) throw DomainError("density dimension mismatch");
    Buffer x(2 * n * n);
    as_mat(x, n) = rho;
    Eigen::MatrixXcd m(n, n), lr(n, n);
    auto rhs = [&](const Buffer& in, Buffer& out, double t) {
        out.resize(in.size());
        const auto r = as_mat(in, n);
        g.apply(t, r, m);
        auto d = as_mat(out, n);
        d = m + m.adjoint();
        for (const auto& l : sys.collapse) {
            lr.noalias() = l * r;
            d.noalias() += l * lr.adjoint();
        }
    };
    ode::integrate_adaptive(ode::make_controlled(o.abs_tol, o.rel_tol, ode::runge_kutta_dopri5<Buffer>()),
                            rhs, x, t0, t1, 0.01 * time_scale(sys));
    Eigen::MatrixXcd out = as_mat(static_cast<const Buffer&>(x), n);
    return 0.5 * (out + out.adjoint());
}

TrajectoryAverage average_trajectories(
    const OpenSystem& sys, const Eigen::VectorXcd& psi0, double t0, double t1,
    const TrajectoryOptions& o,
    const std::function<Eigen::MatrixXcd(const Eigen::VectorXcd&)>& observe) {
    if (o.trajectories < 1) throw DomainError("need at least one trajectory");
    if (psi0.size() != sys.dim) throw DomainError("state dimension mismatch");
    Generator g(sys);
    const auto n = static_cast<std::size_t>(o.trajectories);
    std::vector<Eigen::MatrixXcd> results(n);
    std::vector<long long> jumps(n, 0);

    parallel_for(n, o.jobs, [&](std::size_t idx) {
        std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32),
                          static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(idx >> 32)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        Eigen::VectorXcd tmp(psi0.size());
        auto rhs = [&](const Buffer& in, Buffer& out, double t) {
            out.resize(in.size());
            g.apply(t, as_vec(in), tmp);
            as_vec(out) = tmp;
        };
        auto norm2 = [](const Buffer& b) { return as_vec(b).squaredNorm(); };

        Buffer x(2 * psi0.size()), probe(x.size());
        as_vec(x) = psi0.normalized();
        double r = uni(rng);
        auto stepper = ode::make_dense_output(o.ode.abs_tol, o.ode.rel_tol, ode::runge_kutta_dopri5<Buffer>());
        double dt = 0.01 * time_scale(sys);
        stepper.initialize(x, t0, dt);
        while (true) {
            auto [ta, tb] = stepper.do_step(rhs);
            const double end = std::min(tb, t1);
            stepper.calc_state(end, probe);
            if (norm2(probe) > r) {
                if (tb >= t1) {
                    x = probe;
                    break;
                }
                continue;
            }
            // locate the jump time by bisection on the dense output
            double lo = ta, hi = end;
            for (int it = 0; it < 60 && hi - lo > 1e-12 * (std::abs(hi) + 1e-300); ++it) {
                const double mid = 0.5 * (lo + hi);
                stepper.calc_state(mid, probe);
                (norm2(probe) > r ? lo : hi) = mid;
            }
            stepper.calc_state(hi, x);
            const Eigen::VectorXcd psi = as_vec(static_cast<const Buffer&>(x));
            std::vector<double> w;
            double total = 0.0;
            for (const auto& l : sys.collapse) {
                w.push_back((l * psi).squaredNorm());
                total += w.back();
            }
            if (total > 0.0) {
                double pick = uni(rng) * total;
                std::size_t k = 0;
                while (k + 1 < w.size() && pick > w[k]) pick -= w[k++];
                as_vec(x) = (sys.collapse[k] * psi).normalized();
                ++jumps[idx];
            } else {
                as_vec(x) = psi.normalized();
            }
            r = uni(rng);
            dt = std::max(stepper.current_time_step(), 1e-9 * time_scale(sys));
            if (hi >= t1) break;
            stepper.initialize(x, hi, dt);
        }
        results[idx] = observe(as_vec(static_cast<const Buffer&>(x)).normalized());
    });

    TrajectoryAverage avg;
    avg.mean = Eigen::MatrixXcd::Zero(results[0].rows(), results[0].cols());
    for (const auto& m : results) avg.mean += m;
    avg.mean /= static_cast<double>(n);
    Eigen::MatrixXd var = Eigen::MatrixXd::Zero(avg.mean.rows(), avg.mean.cols());
    for (const auto& m : results) var += (m - avg.mean).cwiseAbs2();
    const double denom = n > 1 ? static_cast<double>(n) * static_cast<double>(n - 1) : 1.0;
    avg.standard_error = (var / denom).cwiseSqrt().cast<cplx>();
    for (auto j : jumps) avg.jumps += j;
    return avg;
}

}  // namespace qsa
