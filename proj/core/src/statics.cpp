#include "qsa/statics.hpp"
#include "qsa/parallel.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numeric>

namespace qsa {

std::vector<int> IonConfiguration::ions_in_well(int well) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < well_assignment.size(); ++i)
        if (well_assignment[i] == well) out.push_back(static_cast<int>(i));
    return out;
}

Eigen::Vector3d IonConfiguration::centroid(int well) const {
    Eigen::Vector3d c = Eigen::Vector3d::Zero();
    int k = 0;
    for (std::size_t i = 0; i < positions.size(); ++i)
        if (well_assignment[i] == well) {
            c += positions[i];
            ++k;
        }
    if (k == 0) throw Error("empty well");
    return c / k;
}

const char* to_string(PairPhase p) {
    switch (p) {
        case PairPhase::InPhase: return "in_phase";
        case PairPhase::OutOfPhase: return "out_of_phase";
        default: return "none";
    }
}

Eigen::VectorXd ModeSpectrum::axis_component(int l, int axis) const {
    const int n = static_cast<int>(ions());
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = mode_vectors(3 * i + axis, l);
    return v;
}

std::vector<std::pair<int, int>> ModeSpectrum::pairs(Axis axis) const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t l = 0; l < size(); ++l) {
        if (axis_label[l] != axis || pair_phase[l] != PairPhase::InPhase) continue;
        out.emplace_back(static_cast<int>(l), pair_index[l]);
    }
    std::sort(out.begin(), out.end(), [&](auto a, auto b) {
        return frequencies[a.first] + frequencies[a.second] <
               frequencies[b.first] + frequencies[b.second];
    });
    return out;
}

std::optional<std::pair<int, int>> ModeSpectrum::lowest_pair(Axis axis) const {
    auto p = pairs(axis);
    if (p.empty()) return std::nullopt;
    return p.front();
}

PotentialEvaluation evaluate_potential(const Eigen::VectorXd& x, const TrapPotential& pot,
                                       const IonSpecies& sp, bool with_hessian) {
    const int n = static_cast<int>(x.size() / 3);
    const double q = sp.charge;
    const double kc = sp.coulomb_constant();
    PotentialEvaluation ev;
    ev.gradient = Eigen::VectorXd::Zero(3 * n);
    if (with_hessian) ev.hessian = Eigen::MatrixXd::Zero(3 * n, 3 * n);
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector3d r = x.segment<3>(3 * i);
        ev.energy += pot.energy(r, q);
        ev.gradient.segment<3>(3 * i) += pot.gradient(r, q);
        if (with_hessian) {
            const Eigen::Vector3d h = pot.hessian_diag(r, q);
            for (int k = 0; k < 3; ++k) ev.hessian(3 * i + k, 3 * i + k) += h[k];
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Eigen::Vector3d d = x.segment<3>(3 * i) - x.segment<3>(3 * j);
            const double r = d.norm();
            const double r3 = r * r * r;
            ev.energy += kc / r;
            const Eigen::Vector3d f = -kc * d / r3;
            ev.gradient.segment<3>(3 * i) += f;
            ev.gradient.segment<3>(3 * j) -= f;
            if (with_hessian) {
                const Eigen::Matrix3d b =
                    kc * (3.0 * d * d.transpose() / (r3 * r * r) - Eigen::Matrix3d::Identity() / r3);
                ev.hessian.block<3, 3>(3 * i, 3 * i) += b;
                ev.hessian.block<3, 3>(3 * j, 3 * j) += b;
                ev.hessian.block<3, 3>(3 * i, 3 * j) -= b;
                ev.hessian.block<3, 3>(3 * j, 3 * i) -= b;
            }
        }
    }
    return ev;
}

namespace {

struct NewtonResult {
    Eigen::VectorXd x;
    double gradient_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    double min_eigenvalue = 0.0;
    Eigen::VectorXd min_mode;
};

NewtonResult damped_newton(Eigen::VectorXd x, const TrapPotential& pot, const IonSpecies& sp,
                           double gtol, int max_iter) {
    NewtonResult res;
    for (int it = 0; it < max_iter; ++it) {
        auto ev = evaluate_potential(x, pot, sp, true);
        const double gn = ev.gradient.norm();
        res.iterations = it;
        if (gn < gtol) {
            res.converged = true;
            break;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ev.hessian);
        const Eigen::VectorXd lam = es.eigenvalues();
        const double floor = 1e-6 * lam.cwiseAbs().maxCoeff();
        Eigen::VectorXd c = es.eigenvectors().transpose() * ev.gradient;
        for (int k = 0; k < c.size(); ++k) c[k] /= std::max(std::abs(lam[k]), floor);
        const Eigen::VectorXd step = -(es.eigenvectors() * c);
        double t = 1.0;
        Eigen::VectorXd xn = x + step;
        while (t > 1e-10) {
            xn = x + t * step;
            auto en = evaluate_potential(xn, pot, sp, false);
            if (std::isfinite(en.energy) &&
                (en.energy < ev.energy || en.gradient.norm() < gn))
                break;
            t *= 0.5;
        }
        x = xn;
    }
    auto ev = evaluate_potential(x, pot, sp, true);
    res.x = x;
    res.gradient_norm = ev.gradient.norm();
    res.converged = res.gradient_norm < gtol;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ev.hessian);
    res.min_eigenvalue = es.eigenvalues()[0];
    res.min_mode = es.eigenvectors().col(0);
    return res;
}

double chain_spacing_scale(const TrapPotential& pot, const IonSpecies& sp) {
    const double c = pot.curvature_on(2);
    return std::cbrt(sp.coulomb_constant() / (sp.charge * c));
}

Eigen::VectorXd lattice_seed(const TrapPotential& pot, const IonSpecies& sp, int n1, int n2,
                             double scale) {
    const int w = pot.well_axis();
    const double d = pot.separation();
    const double l = chain_spacing_scale(pot, sp);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(3 * (n1 + n2));
    int idx = 0;
    for (auto [s, n] : {std::pair{-1.0, n1}, std::pair{1.0, n2}}) {
        // approximate half-length of a harmonic chain
        const double half = n > 1 ? scale * 0.63 * l * std::pow(n - 1, 0.78) : 0.0;
        for (int k = 0; k < n; ++k) {
            const double off = n > 1 ? -half + 2.0 * half * k / (n - 1) : 0.0;
            Eigen::Vector3d p = Eigen::Vector3d::Zero();
            p[w] = s * d / 2.0;
            p[2] += off;
            x.segment<3>(3 * idx++) = p;
        }
    }
    return x;
}

}  // namespace

IonConfiguration solve_equilibrium(const TrapPotential& pot, const IonSpecies& sp,
                                   std::pair<int, int> ions_per_well,
                                   const EquilibriumOptions& opt) {
    pot.validate();
    sp.validate();
    const auto [n1, n2] = ions_per_well;
    if (n1 < 0 || n2 < 0 || n1 + n2 < 1) throw DomainError("need at least one ion");
    const int n = n1 + n2;
    const int w = pot.well_axis();
    const double d = pot.separation();
    const double gtol = opt.gradient_tolerance * sp.charge * std::abs(pot.alpha) * d;
    const double l = chain_spacing_scale(pot, sp);

    std::vector<Eigen::VectorXd> seeds;
    if (!opt.seed.empty()) {
        if (static_cast<int>(opt.seed.size()) != n) throw DomainError("seed size mismatch");
        Eigen::VectorXd x(3 * n);
        for (int i = 0; i < n; ++i) x.segment<3>(3 * i) = opt.seed[i];
        seeds.push_back(x);
    }
    for (double s : {1.0, 0.7, 1.4}) seeds.push_back(lattice_seed(pot, sp, n1, n2, s));

    std::string last_failure = "no seed converged";
    for (const auto& seed : seeds) {
        NewtonResult r = damped_newton(seed, pot, sp, gtol, opt.max_iterations);
        // kick off saddles (e.g. a zig-zag instability) along the soft direction
        for (int kick = 0; kick < 3 && r.converged && r.min_eigenvalue < 0.0; ++kick)
            r = damped_newton(r.x + 0.05 * l * r.min_mode, pot, sp, gtol, opt.max_iterations);
        if (!r.converged) {
            last_failure = fmt::format("equilibrium not converged: |grad| = {:.3e} N after {} iterations",
                                       r.gradient_norm, r.iterations);
            continue;
        }
        if (r.min_eigenvalue < 0.0) {
            last_failure = "equilibrium is a saddle point";
            continue;
        }
        IonConfiguration c;
        c.species = sp;
        c.gradient_norm = r.gradient_norm;
        c.iterations = r.iterations;
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        auto well_of = [&](int i) { return r.x[3 * i + w] > 0.0 ? 2 : 1; };
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (well_of(a) != well_of(b)) return well_of(a) < well_of(b);
            return r.x[3 * a + 2] < r.x[3 * b + 2];
        });
        int c1 = 0, c2 = 0;
        for (int i : order) {
            const Eigen::Vector3d p = r.x.segment<3>(3 * i);
            c.positions.push_back(p);
            const int wi = well_of(i);
            c.well_assignment.push_back(wi);
            (wi == 1 ? c1 : c2)++;
            if (std::abs(p[w]) < d / 100.0) c.merge_warning = true;
        }
        if (c1 != n1 || c2 != n2) {
            last_failure = fmt::format("chains collapsed: wells hold {}+{} ions, requested {}+{}", c1,
                                       c2, n1, n2);
            continue;
        }
        return c;
    }
    if (last_failure.rfind("chains collapsed", 0) == 0) throw CollapseError(last_failure);
    throw ConvergenceError(last_failure);
}

ModeSpectrum normal_modes(const IonConfiguration& config, const TrapPotential& pot) {
    const auto& sp = config.species;
    const int n = static_cast<int>(config.size());
    Eigen::VectorXd x(3 * n);
    for (int i = 0; i < n; ++i) x.segment<3>(3 * i) = config.positions[i];
    auto ev = evaluate_potential(x, pot, sp, true);
    const double scale = sp.charge * std::abs(pot.alpha) * pot.separation();
    if (ev.gradient.norm() > 1e-6 * scale)
        throw DomainError("configuration is not an equilibrium of the potential");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ev.hessian / sp.mass);
    const Eigen::VectorXd lam = es.eigenvalues();
    const double lmax = lam.cwiseAbs().maxCoeff();
    if (lam[0] < -1e-9 * lmax)
        throw SaddlePointError("negative Hessian eigenvalue: saddle point", es.eigenvectors().col(0),
                               lam[0]);

    ModeSpectrum s;
    s.mode_vectors = es.eigenvectors();
    s.well_of_ion = config.well_assignment;
    const int m = 3 * n;
    s.frequencies.resize(m);
    s.axis_label.resize(m);
    s.pair_phase.assign(m, PairPhase::None);
    s.pair_index.assign(m, -1);
    for (int l = 0; l < m; ++l) {
        s.frequencies[l] = std::sqrt(std::max(lam[l], 0.0));
        Eigen::Vector3d w = Eigen::Vector3d::Zero();
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < 3; ++k) w[k] += std::pow(s.mode_vectors(3 * i + k, l), 2);
        int best;
        w.maxCoeff(&best);
        s.axis_label[l] = static_cast<Axis>(best);
    }

    const auto w1 = config.ions_in_well(1);
    const auto w2 = config.ions_in_well(2);
    if (w1.empty() || w1.size() != w2.size()) return s;

    // mirror partner of each well-1 ion
    const int wa = pot.well_axis();
    std::vector<int> partner(w1.size());
    for (std::size_t a = 0; a < w1.size(); ++a) {
        Eigen::Vector3d mirror = config.positions[w1[a]];
        mirror[wa] = -mirror[wa];
        double best = std::numeric_limits<double>::infinity();
        for (int j : w2) {
            const double dist = (config.positions[j] - mirror).norm();
            if (dist < best) {
                best = dist;
                partner[a] = j;
            }
        }
    }
    auto sub = [&](int l, const std::vector<int>& ions) {
        Eigen::VectorXd v(3 * ions.size());
        for (std::size_t a = 0; a < ions.size(); ++a)
            v.segment<3>(3 * a) = s.mode_vectors.block<3, 1>(3 * ions[a], l);
        return v;
    };
    std::vector<Eigen::VectorXd> a1(m), a2(m);
    std::vector<double> phase(m);
    for (int l = 0; l < m; ++l) {
        a1[l] = sub(l, w1);
        a2[l] = sub(l, w2);
        double c = 0.0;
        for (std::size_t a = 0; a < w1.size(); ++a)
            c += s.mode_vectors.block<3, 1>(3 * w1[a], l).dot(
                s.mode_vectors.block<3, 1>(3 * partner[a], l));
        phase[l] = c;
    }
    struct Cand {
        double score;
        int a, b;
    };
    std::vector<Cand> cands;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            if (s.axis_label[a] != s.axis_label[b]) continue;
            const double o1 = a1[a].dot(a1[b]);
            const double o2 = a2[a].dot(a2[b]);
            if (o1 * o2 >= 0.0) continue;
            const double score = std::abs(o1) + std::abs(o2);
            if (score > 0.5) cands.push_back({score, a, b});
        }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Cand& x, const Cand& y) { return x.score > y.score; });
    for (const auto& c : cands) {
        if (s.pair_index[c.a] >= 0 || s.pair_index[c.b] >= 0) continue;
        s.pair_index[c.a] = c.b;
        s.pair_index[c.b] = c.a;
        const bool a_ip = phase[c.a] >= phase[c.b];
        s.pair_phase[c.a] = a_ip ? PairPhase::InPhase : PairPhase::OutOfPhase;
        s.pair_phase[c.b] = a_ip ? PairPhase::OutOfPhase : PairPhase::InPhase;
    }
    return s;
}

CoupledPair coupled_pair(const ModeSpectrum& spectrum, const IonSpecies& sp, double omega_ref,
                         int n) {
    auto p = spectrum.lowest_pair(Axis::Z);
    if (!p) throw Error("no coupled chain-axis mode pair (wells merged or unpaired)");
    CoupledPair cp;
    cp.omega_com = spectrum.frequencies[p->first];
    cp.omega_str = spectrum.frequencies[p->second];
    cp.coupling_rate = std::abs(cp.omega_com - cp.omega_str);
    cp.k_int = interaction_constant_from_splitting(cp.coupling_rate, n, sp, omega_ref);
    return cp;
}

TrapPotential DoubleWellFamily::at(double d_potential, const IonSpecies& sp) const {
    if (orientation == Orientation::Axial)
        return TrapPotential::axial(d_potential, omega_chain, sp, omega_transverse_1,
                                    omega_transverse_2);
    return TrapPotential::radial(d_potential, omega_transverse_1, sp, omega_transverse_2,
                                 omega_chain);
}

DoubleWellFamily DoubleWellFamily::axial_default() {
    return {Orientation::Axial, kTwoPi * 400e3, kTwoPi * 3.0e6, kTwoPi * 3.1e6};
}

DoubleWellFamily DoubleWellFamily::radial_default() {
    return {Orientation::Radial, kTwoPi * 400e3, kTwoPi * 2.4e6, kTwoPi * 3.0e6};
}

CalibrationOptions default_calibration(Orientation o) {
    CalibrationOptions c;
    c.family = o == Orientation::Axial ? DoubleWellFamily::axial_default()
                                       : DoubleWellFamily::radial_default();
    return c;
}

double pair_mean_frequency(const TrapPotential& pot, const IonSpecies& sp, int n) {
    auto cfg = solve_equilibrium(pot, sp, {n, n});
    auto s = normal_modes(cfg, pot);
    auto p = s.lowest_pair(Axis::Z);
    if (!p) throw Error("no chain-axis mode pair");
    return 0.5 * (s.frequencies[p->first] + s.frequencies[p->second]);
}

double chain_centroid_separation(const TrapPotential& pot, const IonSpecies& sp, int n) {
    auto cfg = solve_equilibrium(pot, sp, {n, n});
    const int w = pot.well_axis();
    return cfg.centroid(2)[w] - cfg.centroid(1)[w];
}

namespace {

// Root of f near x = 1: grows a bracket [1 - w, 1 + w] until the sign changes.
// A side whose evaluation throws (e.g. a chain that no longer fits its well) stops growing.
template <class F>
double bracket_root(F f, double rel_tol, const char* what) {
    auto safe = [&](double x, bool& ok) {
        try {
            ok = true;
            return f(x);
        } catch (const Error&) {
            ok = false;
            return 0.0;
        }
    };
    double w = 0.03;
    double lo = 1.0 - w, hi = 1.0 + w;
    bool ok_lo, ok_hi;
    double flo = safe(lo, ok_lo), fhi = safe(hi, ok_hi);
    if (!ok_lo || !ok_hi) throw ConvergenceError(fmt::format("{}: model fails near the start point", what));
    for (int k = 0; k < 12 && flo * fhi > 0.0; ++k) {
        w *= 1.6;
        bool grow_lo = std::abs(flo) < std::abs(fhi);
        double x = grow_lo ? std::max(1.0 - w, 0.05) : 1.0 + w;
        bool ok;
        const double fx = safe(x, ok);
        if (!ok) continue;
        if (grow_lo) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
    }
    if (flo * fhi > 0.0) throw ConvergenceError(fmt::format("{}: root not bracketed", what));
    std::uintmax_t iters = 200;
    auto tol = [rel_tol](double a, double b) { return std::abs(b - a) <= rel_tol * std::abs(a); };
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
    if (iters >= 200) throw ConvergenceError(fmt::format("{}: root search did not converge", what));
    return 0.5 * (r.first + r.second);
}

}  // namespace

TrapPotential calibrate_double_well(double target_com, int n, double d, const IonSpecies& sp,
                                    Orientation o, const CalibrationOptions& opt) {
    if (n < 1) throw DomainError("ion number must be >= 1");
    if (!(d > 0.0) || !(target_com > 0.0)) throw DomainError("separation and target must be positive");
    DoubleWellFamily fam = opt.family;
    fam.orientation = o;

    // per-well COM for a given potential separation
    auto calibrate_at = [&](double dp) {
        DoubleWellFamily f = fam;
        if (o == Orientation::Radial) {
            // chain axis is exactly harmonic
            f.omega_chain = target_com;
            return f;
        }
        auto err = [&](double w) {
            f.omega_chain = w;
            return pair_mean_frequency(f.at(dp, sp), sp, n) / target_com - 1.0;
        };
        f.omega_chain = target_com * bracket_root([&](double x) { return err(x * target_com); },
                                                  opt.tolerance, "per-well frequency calibration");
        return f;
    };

    if (opt.convention == SeparationConvention::PotentialMinimum) return calibrate_at(d).at(d, sp);

    auto sep_err = [&](double x) {
        const double dp = x * d;
        return chain_centroid_separation(calibrate_at(dp).at(dp, sp), sp, n) / d - 1.0;
    };
    const double x = bracket_root(sep_err, 1e-10, "centroid separation calibration");
    return calibrate_at(x * d).at(x * d, sp);
}

std::vector<CouplingRow> coupling_scan(const std::vector<int>& n_values,
                                       const std::vector<double>& d_values, double target_com,
                                       Orientation o, const CalibrationOptions& opt,
                                       const IonSpecies& sp, int jobs) {
    std::vector<CouplingRow> rows(n_values.size() * d_values.size());
    parallel_for(rows.size(), jobs, [&](std::size_t idx) {
        const int n = n_values[idx / d_values.size()];
        const double d = d_values[idx % d_values.size()];
        CouplingRow& r = rows[idx];
        r.n = n;
        r.d = d;
        try {
            r.point_charge = point_charge_coupling(n, sp, target_com, d, o);
            auto pot = calibrate_double_well(target_com, n, d, sp, o, opt);
            auto cfg = solve_equilibrium(pot, sp, {n, n});
            auto spec = normal_modes(cfg, pot);
            auto cp = coupled_pair(spec, sp, target_com, n);
            r.omega_com = cp.omega_com;
            r.omega_str = cp.omega_str;
            r.coupling = cp.coupling_rate;
            r.k_int = cp.k_int;
        } catch (const std::exception& e) {
            r.status = e.what();
            std::replace(r.status.begin(), r.status.end(), ',', ';');
        }
    });
    return rows;
}

Table coupling_table(const std::vector<CouplingRow>& rows) {
    Table t({"n", "d_um", "omega_com_Hz", "omega_str_Hz", "coupling_Hz", "k_int_eV_per_m2",
             "point_charge_Hz", "status"},
            {"count", "um", "Hz", "Hz", "Hz", "eV/m^2", "Hz", "text"});
    for (const auto& r : rows)
        t.add_row({static_cast<long long>(r.n), r.d / kMicron, hz(r.omega_com), hz(r.omega_str),
                   hz(r.coupling), r.k_int / kE, hz(r.point_charge), r.status});
    return t;
}

std::vector<SplittingRow> mode_splitting_scan(const DoubleWellFamily& family,
                                              const std::vector<double>& d_values, int n,
                                              const IonSpecies& sp, int jobs) {
    std::vector<std::vector<SplittingRow>> slots(d_values.size());
    parallel_for(d_values.size(), jobs, [&](std::size_t k) {
        const double d = d_values[k];
        try {
            auto pot = family.at(d, sp);
            auto cfg = solve_equilibrium(pot, sp, {n, n});
            auto spec = normal_modes(cfg, pot);
            for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
                int rank = 0;
                for (auto [ip, oop] : spec.pairs(ax)) {
                    SplittingRow r;
                    r.d = d;
                    r.axis = ax;
                    r.pair_rank = rank++;
                    r.omega_ip = spec.frequencies[ip];
                    r.omega_oop = spec.frequencies[oop];
                    r.splitting = std::abs(r.omega_ip - r.omega_oop);
                    slots[k].push_back(r);
                }
            }
        } catch (const std::exception& e) {
            SplittingRow r;
            r.d = d;
            r.status = e.what();
            std::replace(r.status.begin(), r.status.end(), ',', ';');
            slots[k].push_back(r);
        }
    });
    std::vector<SplittingRow> out;
    for (auto& s : slots) out.insert(out.end(), s.begin(), s.end());
    return out;
}

Table splitting_table(const std::vector<SplittingRow>& rows) {
    Table t({"d_um", "axis", "pair_rank", "omega_ip_Hz", "omega_oop_Hz", "splitting_Hz", "status"},
            {"um", "text", "index", "Hz", "Hz", "Hz", "text"});
    for (const auto& r : rows)
        t.add_row({r.d / kMicron, std::string(to_string(r.axis)), static_cast<long long>(r.pair_rank),
                   hz(r.omega_ip), hz(r.omega_oop), hz(r.splitting), r.status});
    return t;
}

double chain_length_scale(const TrapPotential& pot, const IonSpecies& sp) {
    return std::cbrt(sp.coulomb_constant() / (sp.charge * pot.curvature[2]));
}

double quartic_for_ratio(double ratio, const TrapPotential& pot, const IonSpecies& sp) {
    if (pot.double_well_axis != Axis::X) throw DomainError("chain-axis quartic needs a radial double well");
    const double lz = chain_length_scale(pot, sp);
    return 24.0 * pot.curvature[2] * ratio * ratio / (lz * lz);
}

double spacing_inhomogeneity(const IonConfiguration& config) {
    double worst = 0.0;
    for (int w : {1, 2}) {
        std::vector<double> z;
        for (int i : config.ions_in_well(w)) z.push_back(config.positions[i][2]);
        if (z.size() < 3) continue;
        std::sort(z.begin(), z.end());
        double gmin = std::numeric_limits<double>::infinity(), gmax = 0.0;
        for (std::size_t k = 1; k < z.size(); ++k) {
            gmin = std::min(gmin, z[k] - z[k - 1]);
            gmax = std::max(gmax, z[k] - z[k - 1]);
        }
        worst = std::max(worst, gmax / gmin - 1.0);
    }
    return worst;
}

EquidistanceResult optimize_quartic_equidistance(int n, const TrapPotential& pot,
                                                 const IonSpecies& sp,
                                                 std::pair<int, int> ions_per_well,
                                                 double ratio_lo, double ratio_hi) {
    if (n < 3) throw DomainError("equidistance needs at least 3 ions per well");
    if (ions_per_well.first < 0) ions_per_well = {n, n};
    auto inhom = [&](double r) {
        TrapPotential p = pot;
        p.quartic_z = quartic_for_ratio(r, pot, sp);
        return spacing_inhomogeneity(solve_equilibrium(p, sp, ions_per_well));
    };
    // coarse grid, then Brent inside the best bracket
    const int grid = 24;
    double best_r = ratio_lo, best_v = std::numeric_limits<double>::infinity();
    std::vector<double> rs(grid + 1);
    for (int k = 0; k <= grid; ++k) {
        rs[k] = ratio_lo + (ratio_hi - ratio_lo) * k / grid;
        const double v = inhom(rs[k]);
        if (v < best_v) {
            best_v = v;
            best_r = rs[k];
        }
    }
    const double step = (ratio_hi - ratio_lo) / grid;
    const double lo = std::max(ratio_lo, best_r - step), hi = std::min(ratio_hi, best_r + step);
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::brent_find_minima(inhom, lo, hi, 40, iters);
    if (!std::isfinite(r.second)) throw ConvergenceError("equidistance optimizer diverged");
    EquidistanceResult out;
    out.lz_over_dz = r.first;
    out.spacing_inhomogeneity = r.second;
    out.quartic = quartic_for_ratio(r.first, pot, sp);
    return out;
}

}  // namespace qsa
