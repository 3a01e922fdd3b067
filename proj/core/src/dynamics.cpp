#include "qsa/dynamics.hpp"

#include "qsa/lsq.hpp"
#include "qsa/parallel.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace qsa {

double frequency_ramp(double t, double f_init, double f_final, double tau) {
    if (!(tau > 0.0)) throw DomainError("ramp time constant must be positive");
    return f_final - (f_final - f_init) * std::exp(-t / tau);
}

std::pair<double, double> analytic_exchange(double lambda, double omega_c, double omega_m, double t) {
    return {lambda * std::cos(0.5 * omega_c * t) * std::sin(omega_m * t),
            -lambda * std::sin(0.5 * omega_c * t) * std::cos(omega_m * t)};
}

void ExchangeConfig::validate() const {
    if (!(f1_initial > 0.0 && f2_initial > 0.0 && f1_final > 0.0 && f2_final > 0.0))
        throw DomainError("oscillator frequencies must be positive");
    if (!(tau_on > 0.0) || !(tau_off > 0.0)) throw DomainError("ramp time constants must be positive");
    if (!std::isfinite(k_tilde)) throw DomainError("coupling must be finite");
}

ExchangeConfig ExchangeConfig::switched_on(double delta_f) {
    ExchangeConfig c;
    const double mid = 0.5 * (c.f1_initial + c.f2_initial);
    c.f1_final = mid - 0.5 * delta_f;
    c.f2_final = mid + 0.5 * delta_f;
    return c;
}

namespace {

using State = std::array<double, 4>;

std::vector<double> moving_average(const std::vector<double>& v, std::size_t half) {
    const std::size_t n = v.size();
    std::vector<double> out(n, 0.0);
    std::vector<double> pre(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) pre[i + 1] = pre[i] + v[i];
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(n, i + half + 1);
        out[i] = (pre[hi] - pre[lo]) / static_cast<double>(hi - lo);
    }
    return out;
}

}  // namespace

ExchangeTrajectory integrate_exchange(const ExchangeConfig& c, const IntegrationOptions& o) {
    c.validate();
    if (!(o.t_end > 0.0) || !(o.sample_dt > 0.0)) throw DomainError("integration span must be positive");
    namespace ode = boost::numeric::odeint;
    // time scaled by a reference angular frequency so the state is O(1)
    const double w0 = kTwoPi * 0.5 * (c.f1_final + c.f2_final);
    auto omega = [&](double t, int well) {
        return kTwoPi * (well == 1 ? frequency_ramp(t, c.f1_initial, c.f1_final, c.tau_on)
                                   : frequency_ramp(t, c.f2_initial, c.f2_final, c.tau_on));
    };
    auto rhs = [&](const State& s, State& ds, double tau) {
        const double t = tau / w0;
        const double a = omega(t, 1), b = omega(t, 2);
        const double k = c.k_tilde;
        ds[0] = s[2];
        ds[1] = s[3];
        ds[2] = ((-a * a + k) * s[0] + k * s[1]) / (w0 * w0);
        ds[3] = (k * s[0] + (-b * b + k) * s[1]) / (w0 * w0);
    };
    const auto samples = static_cast<std::size_t>(std::floor(o.t_end / o.sample_dt + 1e-9)) + 1;
    std::vector<double> taus(samples);
    for (std::size_t i = 0; i < samples; ++i) taus[i] = w0 * o.sample_dt * static_cast<double>(i);

    ExchangeTrajectory tr;
    tr.t.reserve(samples);
    State s{1.0, 0.0, 0.0, 0.0};
    auto stepper = ode::make_dense_output(o.abs_tol, o.rel_tol, ode::runge_kutta_dopri5<State>());
    ode::integrate_times(stepper, rhs, s, taus.begin(), taus.end(), 1e-3,
                         [&](const State& x, double tau) {
                             const double t = tau / w0;
                             tr.t.push_back(t);
                             tr.y1.push_back(x[0]);
                             tr.y2.push_back(x[1]);
                             tr.v1.push_back(x[2] * w0);
                             tr.v2.push_back(x[3] * w0);
                         });
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        if (!std::isfinite(tr.y1[i]) || !std::isfinite(tr.y2[i]))
            throw ConvergenceError("exchange integration diverged");
        const double a = omega(tr.t[i], 1), b = omega(tr.t[i], 2);
        tr.occ1.push_back(tr.y1[i] * tr.y1[i] + std::pow(tr.v1[i] / a, 2));
        tr.occ2.push_back(tr.y2[i] * tr.y2[i] + std::pow(tr.v2[i] / b, 2));
    }
    const double period = 1.0 / (0.5 * (c.f1_final + c.f2_final));
    tr.smooth_half = static_cast<std::size_t>(std::ceil(0.5 * o.smooth_periods * period / o.sample_dt));
    tr.occ1_smooth = moving_average(tr.occ1, tr.smooth_half);
    tr.occ2_smooth = moving_average(tr.occ2, tr.smooth_half);
    return tr;
}

Table trajectory_table(const ExchangeTrajectory& tr, std::size_t stride) {
    Table t({"t_us", "y1", "y2", "occ1", "occ2"}, {"us", "arb", "arb", "arb", "arb"});
    stride = std::max<std::size_t>(stride, 1);
    for (std::size_t i = 0; i < tr.t.size(); i += stride)
        t.add_row({tr.t[i] * 1e6, tr.y1[i], tr.y2[i], tr.occ1_smooth[i], tr.occ2_smooth[i]});
    return t;
}

ExchangeMetrics exchange_metrics(const ExchangeTrajectory& tr, double settle) {
    ExchangeMetrics m;
    const std::size_t n = tr.t.size();
    if (n < 2 * tr.smooth_half + 2) throw DomainError("trajectory shorter than the smoothing window");
    const std::size_t lo_full = tr.smooth_half, hi_full = n - tr.smooth_half;  // [lo, hi)
    double mx = -std::numeric_limits<double>::infinity(), mn = -mx, mx_all = mx;
    std::vector<std::size_t> settled;
    for (std::size_t i = lo_full; i < hi_full; ++i) {
        const double v = tr.occ2_smooth[i];
        mx_all = std::max(mx_all, v);
        if (tr.t[i] >= settle) {
            mx = std::max(mx, v);
            mn = std::min(mn, v);
            settled.push_back(i);
        }
    }
    if (settled.size() < 2) throw DomainError("no samples after the settle time");
    m.contrast = mx - mn;
    m.max_occ2 = mx_all;
    m.max_occ2_settled = mx;
    // exchange frequency from crossings of the settled mean
    double mean = 0.0;
    for (auto i : settled) mean += tr.occ2_smooth[i];
    mean /= static_cast<double>(settled.size());
    std::vector<double> cross;
    for (std::size_t k = 1; k < settled.size(); ++k) {
        const double a = tr.occ2_smooth[settled[k - 1]] - mean, b = tr.occ2_smooth[settled[k]] - mean;
        if ((a < 0.0) != (b < 0.0)) {
            const double ta = tr.t[settled[k - 1]], tb = tr.t[settled[k]];
            cross.push_back(ta + (tb - ta) * a / (a - b));
        }
    }
    if (cross.size() >= 3)
        m.rate = 0.5 * static_cast<double>(cross.size() - 1) / (cross.back() - cross.front());
    return m;
}

std::vector<DetuningRow> detuning_scan(const std::vector<double>& delta_f, const ExchangeConfig& base,
                                       const IntegrationOptions& o, double settle, int jobs) {
    std::vector<DetuningRow> rows(delta_f.size());
    parallel_for(rows.size(), jobs, [&](std::size_t i) {
        DetuningRow& r = rows[i];
        r.delta_f = delta_f[i];
        try {
            ExchangeConfig c = base;
            const double mid = 0.5 * (base.f1_initial + base.f2_initial);
            c.f1_final = mid - 0.5 * delta_f[i];
            c.f2_final = mid + 0.5 * delta_f[i];
            r.m = exchange_metrics(integrate_exchange(c, o), settle);
        } catch (const std::exception& e) {
            r.status = e.what();
            std::replace(r.status.begin(), r.status.end(), ',', ';');
        }
    });
    return rows;
}

Table detuning_table(const std::vector<DetuningRow>& rows) {
    Table t({"delta_f_kHz", "contrast", "max_occ2", "max_occ2_settled", "rate_kHz", "status"},
            {"kHz", "arb", "arb", "arb", "kHz", "text"});
    for (const auto& r : rows)
        t.add_row({r.delta_f / 1e3, r.m.contrast, r.m.max_occ2, r.m.max_occ2_settled, r.m.rate / 1e3,
                   r.status});
    return t;
}

double exchange_model(const ExchangeFitResult& p, double t) {
    return 0.5 * ((p.n1_0 - p.n2_0) * std::cos(p.omega_c * t + p.phi) * std::exp(-t / p.tau_d) +
                  p.n1_0 + p.n2_0);
}

ExchangeFitResult fit_exchange_curve(const std::vector<double>& t_in, const std::vector<double>& y_in,
                                     double exclude_before) {
    if (t_in.size() != y_in.size()) throw DomainError("time and occupation lengths differ");
    std::vector<double> t, y;
    for (std::size_t i = 0; i < t_in.size(); ++i)
        if (t_in[i] >= exclude_before) {
            t.push_back(t_in[i]);
            y.push_back(y_in[i]);
        }
    const std::size_t m = t.size();
    if (m < 10) throw DomainError("exchange fit needs at least 10 points");
    const double t0 = *std::min_element(t.begin(), t.end());
    const double span = *std::max_element(t.begin(), t.end()) - t0;
    if (!(span > 0.0)) throw DomainError("exchange fit needs a time span");
    std::vector<double> s(m);
    for (std::size_t i = 0; i < m; ++i) s[i] = t[i] / span;  // scaled time, origin kept

    // periodogram over scaled angular frequency for the start value
    auto lin_fit = [&](double w, Eigen::Vector3d& coef) {
        Eigen::MatrixXd A(m, 3);
        Eigen::VectorXd b(m);
        for (std::size_t i = 0; i < m; ++i) {
            A(i, 0) = std::cos(w * s[i]);
            A(i, 1) = std::sin(w * s[i]);
            A(i, 2) = 1.0;
            b[i] = y[i];
        }
        coef = A.colPivHouseholderQr().solve(b);
        return (A * coef - b).squaredNorm();
    };
    double best_w = 0.0, best_r = std::numeric_limits<double>::infinity();
    Eigen::Vector3d coef;
    // at least one period inside the span, up to a quarter of the sampling rate
    const double w_max = kPi * static_cast<double>(m) / 2.0;
    for (double w = kTwoPi * 0.5; w <= w_max; w *= 1.002) {
        const double r = lin_fit(w, coef);
        if (r < best_r) {
            best_r = r;
            best_w = w;
        }
    }
    lin_fit(best_w, coef);
    const double amp = std::hypot(coef[0], coef[1]);
    const double phi0 = std::atan2(-coef[1], coef[0]);
    // parameters: n1, n2, w, phi, gamma (scaled decay rate)
    Eigen::VectorXd p0(5);
    p0 << coef[2] + amp, coef[2] - amp, best_w, phi0, 0.1;

    LeastSquaresProblem prob;
    prob.parameters = 5;
    prob.residuals = static_cast<int>(m);
    prob.residual = [&](const Eigen::VectorXd& p) {
        Eigen::VectorXd r(m);
        for (std::size_t i = 0; i < m; ++i)
            r[i] = 0.5 * ((p[0] - p[1]) * std::cos(p[2] * s[i] + p[3]) * std::exp(-p[4] * s[i]) +
                          p[0] + p[1]) -
                   y[i];
        return r;
    };
    prob.jacobian = [&](const Eigen::VectorXd& p) {
        Eigen::MatrixXd J(m, 5);
        for (std::size_t i = 0; i < m; ++i) {
            const double c = std::cos(p[2] * s[i] + p[3]), sn = std::sin(p[2] * s[i] + p[3]);
            const double e = std::exp(-p[4] * s[i]);
            const double d = p[0] - p[1];
            J(i, 0) = 0.5 * (c * e + 1.0);
            J(i, 1) = 0.5 * (-c * e + 1.0);
            J(i, 2) = -0.5 * d * sn * e * s[i];
            J(i, 3) = -0.5 * d * sn * e;
            J(i, 4) = -0.5 * d * c * e * s[i];
        }
        return J;
    };
    auto res = least_squares(prob, p0);
    if (!res.converged) throw ConvergenceError("exchange fit did not converge");
    Eigen::VectorXd p = res.params;
    // canonical form: positive rate, phase in (-pi, pi]
    if (p[2] < 0.0) {
        p[2] = -p[2];
        p[3] = -p[3];
    }
    p[3] = std::remainder(p[3], kTwoPi);

    ExchangeFitResult f;
    f.n1_0 = p[0];
    f.n2_0 = p[1];
    f.omega_c = p[2] / span;
    f.phi = p[3];
    f.tau_d = p[4] > 0.0 ? span / p[4] : std::numeric_limits<double>::infinity();
    const double tq = t_quantile_95(res.dof);
    auto se = [&](int k) { return std::sqrt(std::max(res.covariance(k, k), 0.0)); };
    f.ci_n1 = tq * se(0);
    f.ci_n2 = tq * se(1);
    f.ci_omega_c = tq * se(2) / span;
    f.ci_phi = tq * se(3);
    f.ci_tau_d = p[4] > 0.0 ? tq * se(4) * span / (p[4] * p[4]) : std::numeric_limits<double>::infinity();
    f.rss = res.rss;
    f.dof = res.dof;
    return f;
}

}  // namespace qsa
