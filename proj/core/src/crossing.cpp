#include "qsa/crossing.hpp"

#include "qsa/lsq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

namespace qsa {

double DetunedPair::chi() const {
    if (k_int == 0.0)
        return delta_omega >= 0.0 ? std::numeric_limits<double>::infinity()
                                  : -std::numeric_limits<double>::infinity();
    return n * species.mass * omega_m * delta_omega / k_int;
}

std::pair<double, double> detuned_pair_frequencies(const DetunedPair& p) {
    if (!(p.omega_m > 0.0) || p.n < 1) throw DomainError("detuned pair needs omega_m > 0 and n >= 1");
    const double g = p.k_int / (p.n * p.species.mass);
    const double inner = std::sqrt(g * g + p.delta_omega * p.delta_omega * p.omega_m * p.omega_m);
    const double base = 0.25 * p.delta_omega * p.delta_omega + p.omega_m * p.omega_m;
    if (!(base - inner > 0.0)) throw DomainError("detuned pair: non-positive radicand (overcoupled)");
    return {std::sqrt(base + inner), std::sqrt(base - inner)};
}

std::pair<Eigen::Vector2d, Eigen::Vector2d> detuned_pair_modevectors(const DetunedPair& p) {
    const double chi = p.chi();
    if (std::isinf(chi)) {
        // uncoupled: each mode lives in one well
        const bool up = chi > 0.0;
        return {up ? Eigen::Vector2d(0, 1) : Eigen::Vector2d(-1, 0),
                up ? Eigen::Vector2d(-1, 0) : Eigen::Vector2d(0, 1)};
    }
    const double r = std::hypot(1.0, chi);
    // -chi + r loses precision for large chi, 1/(chi + r) does not
    const double plus = chi >= 0.0 ? 1.0 / (chi + r) : r - chi;
    const double minus = chi >= 0.0 ? -(chi + r) : -1.0 / (r - chi);
    Eigen::Vector2d vp(plus, 1.0), vm(minus, 1.0);
    return {vp.normalized(), vm.normalized()};
}

CrossingScan default_crossing_scan(double coupling_rate, int n, double omega_m,
                                   double field_center, double noise_fraction,
                                   std::uint64_t seed) {
    if (!(coupling_rate > 0.0)) throw DomainError("coupling rate must be positive");
    CrossingScan s;
    s.n = n;
    s.omega_m = omega_m;
    s.k_int = interaction_constant_from_splitting(coupling_rate, n, s.species, omega_m);
    s.field_center = field_center;
    const double half_span = 2.0;  // V/m
    s.slope = 4.0 * coupling_rate / half_span;
    for (int i = 0; i <= 40; ++i) s.fields.push_back(field_center - half_span + i * half_span / 20.0);
    s.line_width = coupling_rate / 8.0;
    const double step = coupling_rate / 32.0;
    for (int i = -96; i <= 96; ++i) s.probe.push_back(omega_m + i * step);
    s.center_noise_sd = noise_fraction * coupling_rate;
    s.seed = seed;
    return s;
}

Table synth_crossing_spectrum(const CrossingScan& scan) {
    if (!(scan.line_width > 0.0)) throw DomainError("line width must be positive");
    if (scan.observed_well != 1 && scan.observed_well != 2) throw DomainError("observed well is 1 or 2");
    std::mt19937_64 rng(scan.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Table t({"field_V_per_m", "detuning_Hz", "excitation"}, {"V/m", "Hz", "arb"});
    const int w = scan.observed_well - 1;
    for (double g : scan.fields) {
        DetunedPair p{scan.slope * (g - scan.field_center), scan.omega_m, scan.k_int, scan.n,
                      scan.species};
        auto [wp, wm] = detuned_pair_frequencies(p);
        auto [vp, vm] = detuned_pair_modevectors(p);
        if (scan.center_noise_sd > 0.0) {
            wp += scan.center_noise_sd * normal(rng);
            wm += scan.center_noise_sd * normal(rng);
        }
        const double ap = vp[w] * vp[w], am = vm[w] * vm[w];
        for (double f : scan.probe) {
            auto gauss = [&](double c) {
                const double x = (f - c) / scan.line_width;
                return std::exp(-0.5 * x * x);
            };
            double y = ap * gauss(wp) + am * gauss(wm);
            if (scan.amplitude_noise_sd > 0.0) y += scan.amplitude_noise_sd * normal(rng);
            t.add_row({g, hz(f), y});
        }
    }
    return t;
}

namespace {

struct Column {
    double field = 0.0;
    std::vector<double> f, y;
};

std::vector<Column> split_columns(const Table& t) {
    std::map<double, Column> cols;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        const double g = t.number(r, "field_V_per_m");
        auto& c = cols[g];
        c.field = g;
        c.f.push_back(rad(t.number(r, "detuning_Hz")));
        c.y.push_back(t.number(r, "excitation"));
    }
    std::vector<Column> out;
    for (auto& [g, c] : cols) {
        std::vector<std::size_t> idx(c.f.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return c.f[a] < c.f[b]; });
        Column s;
        s.field = g;
        for (auto i : idx) {
            s.f.push_back(c.f[i]);
            s.y.push_back(c.y[i]);
        }
        out.push_back(std::move(s));
    }
    return out;
}

// sum of Gaussians, params (amp, center, sigma) per peak in scaled frequency x
std::vector<PeakPoint> fit_column(const Column& c) {
    const std::size_t m = c.f.size();
    if (m < 8) return {};
    const double ymax = *std::max_element(c.y.begin(), c.y.end());
    if (!(ymax > 0.0)) return {};
    const double f0 = c.f.front(), span = c.f.back() - c.f.front();
    if (!(span > 0.0)) return {};
    std::vector<double> x(m);
    for (std::size_t i = 0; i < m; ++i) x[i] = (c.f[i] - f0) / span;

    std::vector<std::size_t> maxima;
    for (std::size_t i = 0; i < m; ++i) {
        const bool left = i == 0 || c.y[i] >= c.y[i - 1];
        const bool right = i + 1 == m || c.y[i] > c.y[i + 1];
        if (left && right && c.y[i] > 0.1 * ymax) maxima.push_back(i);
    }
    std::sort(maxima.begin(), maxima.end(), [&](auto a, auto b) { return c.y[a] > c.y[b]; });
    if (maxima.size() > 2) maxima.resize(2);
    const int k = static_cast<int>(maxima.size());
    if (k == 0) return {};

    Eigen::VectorXd p(3 * k);
    for (int j = 0; j < k; ++j) {
        const std::size_t i = maxima[j];
        std::size_t lo = i, hi = i;
        while (lo > 0 && c.y[lo] > 0.5 * c.y[i]) --lo;
        while (hi + 1 < m && c.y[hi] > 0.5 * c.y[i]) ++hi;
        const double fwhm = std::max(x[hi] - x[lo], 2.0 / m);
        p.segment<3>(3 * j) << c.y[i], x[i], fwhm / 2.3548;
    }

    LeastSquaresProblem prob;
    prob.parameters = 3 * k;
    prob.residuals = static_cast<int>(m);
    prob.residual = [&](const Eigen::VectorXd& q) {
        Eigen::VectorXd r(m);
        for (std::size_t i = 0; i < m; ++i) {
            double s = 0.0;
            for (int j = 0; j < k; ++j) {
                const double u = (x[i] - q[3 * j + 1]) / q[3 * j + 2];
                s += q[3 * j] * std::exp(-0.5 * u * u);
            }
            r[i] = s - c.y[i];
        }
        return r;
    };
    prob.jacobian = [&](const Eigen::VectorXd& q) {
        Eigen::MatrixXd J(m, 3 * k);
        for (std::size_t i = 0; i < m; ++i)
            for (int j = 0; j < k; ++j) {
                const double a = q[3 * j], mu = q[3 * j + 1], s = q[3 * j + 2];
                const double u = (x[i] - mu) / s;
                const double e = std::exp(-0.5 * u * u);
                J(i, 3 * j) = e;
                J(i, 3 * j + 1) = a * e * u / s;
                J(i, 3 * j + 2) = a * e * u * u / s;
            }
        return J;
    };
    auto res = least_squares(prob, p);
    if (!res.converged) return {};

    std::vector<PeakPoint> out;
    double amax = 0.0;
    for (int j = 0; j < k; ++j) amax = std::max(amax, res.params[3 * j]);
    for (int j = 0; j < k; ++j) {
        const double a = res.params[3 * j], mu = res.params[3 * j + 1];
        if (!(a > 0.1 * amax) || mu < 0.0 || mu > 1.0) continue;
        out.push_back({c.field, f0 + mu * span, a, 0});
    }
    if (out.size() == 2 && std::abs(out[0].omega - out[1].omega) < 1e-9 * span) out.resize(1);
    return out;
}

struct Scaled {
    double wscale = 1.0, gscale = 1.0;
};

// reparametrised model in scaled units: A = a, W = a sqrt(b), C = a^2 c, D = d
double model(const Eigen::Vector4d& q, double g, int branch, Eigen::Vector4d* grad) {
    const double A = q[0], W = q[1], C = q[2], D = q[3];
    const double dg = g - D, u = A * dg;
    const double S = std::sqrt(C * C + W * W * u * u);
    const double R = 0.25 * u * u + W * W + branch * S;
    const double w = std::sqrt(std::max(R, 0.0));
    if (grad) {
        const double iS = S > 0.0 ? 1.0 / S : 0.0;
        const double dRdu = 0.5 * u + branch * W * W * u * iS;
        (*grad)[0] = dRdu * dg;
        (*grad)[1] = 2.0 * W + branch * W * u * u * iS;
        (*grad)[2] = branch * C * iS;
        (*grad)[3] = -dRdu * A;
        *grad /= 2.0 * std::max(w, 1e-300);
    }
    return w;
}

}  // namespace

std::vector<PeakPoint> extract_peaks(const Table& spectrum) {
    auto cols = split_columns(spectrum);
    std::vector<PeakPoint> all;
    for (const auto& c : cols) {
        auto pk = fit_column(c);
        all.insert(all.end(), pk.begin(), pk.end());
    }
    // mean frequency from columns that resolve both branches
    std::map<double, std::vector<std::size_t>> by_field;
    for (std::size_t i = 0; i < all.size(); ++i) by_field[all[i].field].push_back(i);
    double sum = 0.0;
    int cnt = 0;
    for (auto& [g, ix] : by_field)
        if (ix.size() == 2) {
            sum += 0.5 * (all[ix[0]].omega + all[ix[1]].omega);
            ++cnt;
        }
    if (cnt == 0) {
        for (auto& p : all) sum += p.omega;
        cnt = static_cast<int>(all.size());
    }
    const double mean = cnt ? sum / cnt : 0.0;
    for (auto& [g, ix] : by_field) {
        if (ix.size() == 2) {
            const bool first_up = all[ix[0]].omega > all[ix[1]].omega;
            all[ix[0]].branch = first_up ? 1 : -1;
            all[ix[1]].branch = first_up ? -1 : 1;
        } else {
            for (auto i : ix) all[i].branch = all[i].omega >= mean ? 1 : -1;
        }
    }
    return all;
}

double crossing_model(const CrossingFit& f, double field, int branch) {
    const double A = f.a, W = f.a * std::sqrt(f.b), C = f.a * f.a * f.c;
    return model(Eigen::Vector4d(A, W, C, f.d_center), field, branch, nullptr);
}

CrossingFit fit_peak_positions(const std::vector<PeakPoint>& peaks) {
    std::vector<double> fields;
    for (const auto& p : peaks) fields.push_back(p.field);
    std::sort(fields.begin(), fields.end());
    fields.erase(std::unique(fields.begin(), fields.end()), fields.end());
    if (fields.size() < 8) throw DomainError("avoided-crossing fit needs at least 8 field settings");
    if (peaks.size() < 5) throw DomainError("avoided-crossing fit needs more peak positions");

    Scaled sc;
    double wsum = 0.0;
    for (const auto& p : peaks) wsum += p.omega;
    sc.wscale = wsum / peaks.size();
    sc.gscale = std::max(0.5 * (fields.back() - fields.front()), 1e-300);
    const std::size_t m = peaks.size();
    std::vector<double> g(m), w(m);
    std::vector<int> br(m);
    for (std::size_t i = 0; i < m; ++i) {
        g[i] = peaks[i].field / sc.gscale;
        w[i] = peaks[i].omega / sc.wscale;
        br[i] = peaks[i].branch;
    }

    // starting point from the data: narrowest resolved gap gives centre and coupling
    std::map<double, std::pair<double, double>> pair_at;  // field -> (upper, lower)
    for (std::size_t i = 0; i < m; ++i) {
        auto& e = pair_at.try_emplace(g[i], std::numeric_limits<double>::quiet_NaN(),
                                      std::numeric_limits<double>::quiet_NaN())
                      .first->second;
        (br[i] > 0 ? e.first : e.second) = w[i];
    }
    double D0 = 0.0, gap0 = std::numeric_limits<double>::infinity(), W0 = 1.0;
    for (auto& [gg, e] : pair_at)
        if (std::isfinite(e.first) && std::isfinite(e.second) && e.first - e.second < gap0) {
            gap0 = e.first - e.second;
            D0 = gg;
            W0 = 0.5 * (e.first + e.second);
        }
    if (!std::isfinite(gap0)) throw DomainError("avoided-crossing fit needs two resolved peaks near the center");
    const double C0 = gap0 * W0;
    std::vector<double> slopes;
    for (std::size_t i = 0; i < m; ++i) {
        const double dw = std::abs(w[i] - W0), dg = std::abs(g[i] - D0);
        if (dw > gap0 && dg > 0.0) slopes.push_back(2.0 * std::sqrt(dw * dw - 0.25 * gap0 * gap0) / dg);
    }
    double A0 = gap0;
    if (!slopes.empty()) {
        std::nth_element(slopes.begin(), slopes.begin() + slopes.size() / 2, slopes.end());
        A0 = slopes[slopes.size() / 2];
    }

    LeastSquaresProblem prob;
    prob.parameters = 4;
    prob.residuals = static_cast<int>(m);
    prob.residual = [&](const Eigen::VectorXd& q) {
        Eigen::VectorXd r(m);
        const Eigen::Vector4d q4 = q;
        for (std::size_t i = 0; i < m; ++i) r[i] = model(q4, g[i], br[i], nullptr) - w[i];
        return r;
    };
    prob.jacobian = [&](const Eigen::VectorXd& q) {
        Eigen::MatrixXd J(m, 4);
        const Eigen::Vector4d q4 = q;
        Eigen::Vector4d gr;
        for (std::size_t i = 0; i < m; ++i) {
            model(q4, g[i], br[i], &gr);
            J.row(i) = gr.transpose();
        }
        return J;
    };

    // coarse grid around the data-driven guess, then polish the best start
    Eigen::Vector4d best(A0, W0, C0, D0);
    double best_rss = std::numeric_limits<double>::infinity();
    for (double fa : {0.5, 1.0, 2.0})
        for (double fc : {0.5, 1.0, 2.0}) {
            Eigen::Vector4d q(A0 * fa, W0, C0 * fc, D0);
            const double r = prob.residual(q).squaredNorm();
            if (r < best_rss) {
                best_rss = r;
                best = q;
            }
        }
    auto res = least_squares(prob, best);
    if (!res.converged) throw ConvergenceError("avoided-crossing fit did not converge");

    const double A = std::abs(res.params[0]) * sc.wscale / sc.gscale;
    const double W = std::abs(res.params[1]) * sc.wscale;
    const double C = std::abs(res.params[2]) * sc.wscale * sc.wscale;
    const double D = res.params[3] * sc.gscale;
    if (!(W * W > C)) throw ConvergenceError("avoided-crossing fit: overcoupled optimum");

    CrossingFit f;
    f.a = A;
    f.b = W * W / (A * A);
    f.c = C / (A * A);
    f.d_center = D;
    const double sp = std::sqrt(W * W + C), sm = std::sqrt(W * W - C);
    f.omega_c = sp - sm;
    // delta method in scaled parameters
    const double ws = sc.wscale;
    Eigen::Vector4d grad(0.0, (W / sp - W / sm) * ws * (res.params[1] < 0 ? -1 : 1),
                         (0.5 / sp + 0.5 / sm) * ws * ws * (res.params[2] < 0 ? -1 : 1), 0.0);
    const double var = grad.dot(res.covariance.topLeftCorner<4, 4>() * grad);
    f.omega_c_se = std::sqrt(std::max(var, 0.0));
    f.ci95 = t_quantile_95(res.dof) * f.omega_c_se;
    f.rss = res.rss * ws * ws;
    f.dof = res.dof;
    f.condition = res.condition;
    f.ill_conditioned = res.ill_conditioned;
    f.peaks = peaks;
    return f;
}

CrossingFit fit_avoided_crossing(const Table& spectrum) {
    return fit_peak_positions(extract_peaks(spectrum));
}

}  // namespace qsa
