#include "checks.hpp"

#include "qsa/crossing.hpp"
#include "qsa/dynamics.hpp"
#include "qsa/heating.hpp"
#include "qsa/lightshift.hpp"
#include "qsa/pseudo.hpp"
#include "qsa/qec.hpp"
#include "qsa/quantum.hpp"
#include "qsa/statics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>

namespace qsa::checks {

bool CheckResult::passed() const {
    if (clauses.empty()) return false;
    for (const auto& c : clauses)
        if (!c.ok) return false;
    return seconds <= limit;
}

namespace {

bool within(double v, double target, double rel) { return std::abs(v - target) <= rel * std::abs(target); }

// slope of log y against log x
double log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void point_charge(CheckResult& r) {
    const auto sp = IonSpecies::calcium40();
    const double ax = hz(point_charge_coupling(1, sp, rad(400e3), 56e-6, Orientation::Axial));
    const double ra = hz(point_charge_coupling(1, sp, rad(540e3), 29e-6, Orientation::Radial));
    r.clauses.push_back({fmt::format("axial n=1 d=56um: {:.4f} kHz (2.5 +-2%)", ax / 1e3), within(ax, 2.5e3, 0.02)});
    r.clauses.push_back({fmt::format("radial n=1 d=29um: {:.4f} kHz (7.0 +-7%)", ra / 1e3), within(ra, 7.0e3, 0.07)});
}

void coupling_scaling(CheckResult& r) {
    const auto sp = IonSpecies::calcium40();
    const std::vector<int> ns{1, 2, 4, 6};
    const auto ax = coupling_scan(ns, {56e-6}, rad(400e3), Orientation::Axial,
                                  default_calibration(Orientation::Axial), sp);
    std::vector<double> x, y;
    for (const auto& row : ax) {
        if (row.status != "ok") throw Error("axial scan point failed: " + row.status);
        x.push_back(row.n);
        y.push_back(row.coupling);
    }
    const double c6 = hz(y.back());
    const double pc1 = hz(point_charge_coupling(1, sp, rad(400e3), 56e-6, Orientation::Axial));
    r.clauses.push_back({fmt::format("n=6 d=56um: {:.3f} kHz (39 +-15%)", c6 / 1e3), within(c6, 39e3, 0.15)});
    r.clauses.push_back({fmt::format("ratio to n=1 point charge: {:.2f} (16 +-3)", c6 / pc1),
                         std::abs(c6 / pc1 - 16.0) <= 3.0});
    const double sa = log_slope(x, y);
    r.clauses.push_back({fmt::format("axial log-slope over n=1,2,4,6: {:.3f} (> 1.3)", sa), sa > 1.3});

    auto ropt = default_calibration(Orientation::Radial);
    const auto rad_rows = coupling_scan(ns, {51e-6}, rad(262.2e3), Orientation::Radial, ropt, sp);
    std::vector<double> yr;
    for (const auto& row : rad_rows) {
        if (row.status != "ok") throw Error("radial scan point failed: " + row.status);
        yr.push_back(row.coupling);
    }
    const double sr = log_slope(x, yr);
    r.clauses.push_back({fmt::format("radial log-slope over n=1,2,4,6: {:.3f} (< 1)", sr), sr < 1.0});
}

void mode_oracle(CheckResult& r) {
    const auto sp = IonSpecies::calcium40();
    // chain axis of a radial double well is harmonic, so a lone two-ion well is exact
    const auto pot = TrapPotential::radial(60e-6, rad(2.4e6), sp, rad(3.0e6), rad(500e3));
    EquilibriumOptions tight;
    tight.gradient_tolerance = 1e-15;
    const auto cfg = solve_equilibrium(pot, sp, {2, 0}, tight);
    const auto s = normal_modes(cfg, pot);
    std::vector<double> z;
    for (std::size_t l = 0; l < s.size(); ++l)
        if (s.axis_label[l] == Axis::Z) z.push_back(s.frequencies[l]);
    const double ratio = z.size() == 2 ? z[1] / z[0] : 0.0;
    r.clauses.push_back({fmt::format("stretch/COM: {:.12f} (sqrt3, 1e-9)", ratio), std::abs(ratio - std::sqrt(3.0)) < 1e-9});
    const auto cfg6 = solve_equilibrium(pot, sp, {3, 3});
    const auto s6 = normal_modes(cfg6, pot);
    r.clauses.push_back({fmt::format("mode count for 6 ions: {} (18)", s6.size()), s6.size() == 18});
    const Eigen::MatrixXd g = s6.mode_vectors.transpose() * s6.mode_vectors;
    const double err = (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
    r.clauses.push_back({fmt::format("orthonormality error: {:.2e} (< 1e-9)", err), err < 1e-9});
}

void crossing_fit(CheckResult& r) {
    int k = 0;
    for (double f : {5e3, 19e3, 39e3}) {
        const auto scan = default_crossing_scan(rad(f), 6, rad(400e3), 0.0, 0.01, 1000 + k++);
        const auto fit = fit_avoided_crossing(synth_crossing_spectrum(scan));
        const double got = hz(fit.omega_c);
        r.clauses.push_back({fmt::format("{:.0f} kHz with 1% noise: {:.4f} kHz (2%)", f / 1e3, got / 1e3), within(got, f, 0.02)});
    }
}

void heating_properties(CheckResult& r) {
    const auto sp = IonSpecies::calcium40();
    auto pot = TrapPotential::axial(60e-6, rad(400e3), sp, rad(3.0e6), rad(3.1e6));
    const auto cfg = solve_equilibrium(pot, sp, {2, 2});
    const auto s = normal_modes(cfg, pot);
    const auto pair = s.lowest_pair(Axis::Z);
    const auto rep = mode_heating_rates(s, homogeneous_fields(cfg.size(), 3, Eigen::Vector3d(0, 0, 1)), {1e-12, {}}, sp);
    const double rel = rep.rates[pair->second] / rep.rates[pair->first];
    r.clauses.push_back({fmt::format("homogeneous stretch/COM: {:.2e} (< 1e-10)", rel), rel < 1e-10});

    // point-like wells: widely separated single ions, 2n ions in total along z
    double base = 0.0, worst = 0.0;
    for (int n : {1, 2, 3, 4}) {
        auto p = TrapPotential::radial(400e-6, rad(2.4e6), sp, rad(3.0e6), rad(400e3));
        const auto c = solve_equilibrium(p, sp, {n, n});
        const auto sp_modes = normal_modes(c, p);
        // in-phase member of the lowest chain-axis pair is the crystal COM
        const int com = sp_modes.lowest_pair(Axis::Z)->first;
        const auto hr = mode_heating_rates(sp_modes, homogeneous_fields(c.size(), 1, Eigen::Vector3d(0, 0, 1)),
                                           {1e-12, {}}, sp);
        if (n == 1) base = hr.rates[com];
        worst = std::max(worst, std::abs(hr.rates[com] / (n * base) - 1.0));
    }
    r.clauses.push_back({fmt::format("COM rate linear in N: max deviation {:.2e} (< 1%)", worst), worst < 0.01});

    const auto g = heating_reference_geometry();
    for (int n : {1, 2}) {
        const auto row = heating_at(29e-6, n, g, sp, {});
        r.clauses.push_back({fmt::format("80um geometry d=29um n={}: com/str {:.2f} ([8, 32])", n, row.ratio),
                             row.status == "ok" && row.ratio >= 8.0 && row.ratio <= 32.0});
    }
}

void exchange_dynamics(CheckResult& r) {
    std::vector<double> df;
    for (int k = 0; k <= 24; ++k) df.push_back(-12e3 + 500.0 * k);
    const auto rows = detuning_scan(df, ExchangeConfig{});
    std::size_t imax = 0, icon = 0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k].status != "ok") throw Error("detuning point failed: " + rows[k].status);
        if (rows[k].m.max_occ2 > rows[imax].m.max_occ2) imax = k;
        if (rows[k].m.contrast > rows[icon].m.contrast) icon = k;
    }
    const double best_occ = df[imax] / 1e3, best_con = df[icon] / 1e3;
    r.clauses.push_back({fmt::format("max occupation at {:.1f} kHz (-6 +-1)", best_occ), std::abs(best_occ + 6.0) <= 1.0});
    r.clauses.push_back({fmt::format("max contrast at {:.1f} kHz (-7 +-1)", best_con), std::abs(best_con + 7.0) <= 1.0});
    const auto at = std::find(df.begin(), df.end(), -7.5e3) - df.begin();
    const double rate = rows[at].m.rate / 1e3;
    r.clauses.push_back({fmt::format("exchange rate at -7.5 kHz: {:.3f} kHz (10 +-1)", rate), std::abs(rate - 10.0) <= 1.0});
}

QuantumState ss_state() {
    QuantumState s;
    s.spec.n_qubits = 2;
    s.psi = Eigen::VectorXcd::Zero(4);
    s.psi[0] = 1.0;
    return s;
}

void ms_heating(CheckResult& r) {
    double inf[3], ideal = 0.0;
    const double target[3] = {0.13e-2, 0.35e-2, 0.2e-2};
    for (int k = 0; k < 3; ++k) {
        auto g = MSGateConfig::standard(static_cast<MSCase>(k + 1), kTwoPi / 190e-6);
        ideal = std::max(ideal, 1.0 - bell_fidelity(ms_evolve(g, ss_state()).qubits.rho));
        g.heating = {2.6, 18.0};
        inf[k] = 1.0 - bell_fidelity(ms_evolve(g, ss_state()).qubits.rho);
        r.clauses.push_back({fmt::format("case {} infidelity {:.4f}% ({:.2f}% +-50%)", k + 1, 100 * inf[k], 100 * target[k]),
                             within(inf[k], target[k], 0.5)});
    }
    r.clauses.push_back({"ordering case1 < case3 < case2", inf[0] < inf[2] && inf[2] < inf[1]});
    r.clauses.push_back({fmt::format("case2/case1 {:.3f} ([2.0, 3.5])", inf[1] / inf[0]), inf[1] / inf[0] >= 2.0 && inf[1] / inf[0] <= 3.5});
    r.clauses.push_back({fmt::format("case3/case1 {:.3f} ([1.2, 2.3])", inf[2] / inf[0]), inf[2] / inf[0] >= 1.2 && inf[2] / inf[0] <= 2.3});
    r.clauses.push_back({fmt::format("ideal infidelity {:.2e} (< 1e-4)", ideal), ideal < 1e-4});
}

void ms_dephasing(CheckResult& r) {
    auto g = MSGateConfig::standard(MSCase::RedBoth, rad(5.3e3));
    g.gate_time = 190e-6;
    g.dephasing_time = 700e-6;
    g.cutoff = 10;
    const auto out = ms_evolve(g, ss_state());
    const double f = populations_and_parity(out.qubits).bell_fidelity;
    r.clauses.push_back({fmt::format("cutoff change on doubling {:.1e} (< 1e-4)", out.cutoff_change), out.cutoff_change < 1e-4});
    r.clauses.push_back({fmt::format("Bell fidelity {:.4f} (0.85 +-0.04)", f), std::abs(f - 0.85) <= 0.04});
}

void exchange_sequence(CheckResult& r) {
    const auto res = phonon_exchange_sequence();
    r.clauses.push_back({fmt::format("Bell fidelity {:.10f} (> 0.999)", res.analysis.bell_fidelity), res.analysis.bell_fidelity > 0.999});
    r.clauses.push_back({fmt::format("parity visibility {:.10f} (> 0.999)", res.analysis.visibility), res.analysis.visibility > 0.999});
}

void lightshift(CheckResult& r) {
    const auto sp = IonSpecies::calcium40();
    auto peak = [&](int n, Cancellation c, bool echo) {
        LightShiftTrap trap;
        if (n == 4) trap.lz_over_dz = 0.43;
        const auto s = lightshift_setup(n, trap, sp);
        LightShiftConfig cf;
        cf.cancellation = c;
        if (echo) cf.spin_echo = n == 4 ? std::vector<int>{2, 3, 6, 7} : std::vector<int>{1, 3};
        LightShiftConfig odd = cf;
        odd.cancellation = Cancellation::Odd;
        const double o1 = reference_rabi_frequency(odd, s);
        return peak_fidelity(fidelity_scan_vs_omega(cf, s, 3.0 * o1, 3001));
    };
    const double e22 = peak(2, Cancellation::Even, false);
    const double e24 = peak(4, Cancellation::Even, false);
    const double o24 = peak(4, Cancellation::Odd, false);
    const double x24 = peak(4, Cancellation::Odd, true);
    r.clauses.push_back({fmt::format("2x2 even peak {:.4f} (0.41 +-0.05)", e22), std::abs(e22 - 0.41) <= 0.05});
    r.clauses.push_back({fmt::format("2x4 even max {:.4f} (< 0.01)", e24), e24 < 0.01});
    r.clauses.push_back({fmt::format("2x4 odd peak {:.4f} (0.17 +-0.05)", o24), std::abs(o24 - 0.17) <= 0.05});
    r.clauses.push_back({fmt::format("2x4 odd echo peak {:.4f} (>= 0.98)", x24), x24 >= 0.98});
    const auto s = lightshift_setup(4, LightShiftTrap{}, sp);
    const auto eq = optimize_quartic_equidistance(4, s.potential, sp);
    r.clauses.push_back({fmt::format("equidistance l_z/d_z {:.4f} (0.43 +-0.02)", eq.lz_over_dz), std::abs(eq.lz_over_dz - 0.43) <= 0.02});
}

void pseudo(CheckResult& r) {
    const auto sp = IonSpecies::calcium40();
    const auto g = SurfaceTrapGeometry::two_rf_reference();
    const auto land = find_rf_nulls(g, sp);
    r.clauses.push_back({fmt::format("zeta=1 separation {:.2f} um (110 +-15%)", land.separation * 1e6),
                         !land.merged && within(land.separation, 110e-6, 0.15)});
    double asym = 1.0;
    if (land.minima.size() >= 2) {
        const auto& a = land.minima.front();
        const auto& b = land.minima.back();
        asym = std::max(std::abs(a.x + b.x), std::abs(a.height - b.height)) / land.separation;
    }
    r.clauses.push_back({fmt::format("mirror asymmetry {:.1e} (< 1e-9)", asym), asym < 1e-9});
    std::vector<double> zetas;
    for (int k = 0; k <= 12; ++k) zetas.push_back(0.8 + 0.05 * k);
    const auto rows = separation_vs_ratio(g, sp, zetas);
    bool sep_mono = true, wx_dec = true;
    int sgn = 0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const int s = rows[k].separation > rows[k - 1].separation ? 1 : -1;
        if (sgn == 0) sgn = s;
        if (s != sgn || rows[k].merged || rows[k].status != "ok") sep_mono = false;
        if (!(rows[k].omega_x < rows[k - 1].omega_x)) wx_dec = false;
    }
    r.clauses.push_back({fmt::format("separation monotone over zeta {:.2f}..{:.2f}: {:.1f} -> {:.1f} um", zetas.front(),
                                     zetas.back(), rows.front().separation * 1e6, rows.back().separation * 1e6),
                         sep_mono});
    r.clauses.push_back({fmt::format("omega_x decreasing in zeta: {:.3f} -> {:.3f} MHz", hz(rows.front().omega_x) / 1e6,
                                     hz(rows.back().omega_x) / 1e6),
                         wx_dec});
}

void qec(CheckResult& r) {
    const bool table = resource_table(Protocol::SteaneEC713).ions_per_well == 7 &&
                       resource_table(Protocol::SteaneEC713).registers == 2 &&
                       resource_table(Protocol::MSI713).ions_per_well == 7 &&
                       resource_table(Protocol::MSI713).registers == 2 &&
                       resource_table(Protocol::UniversalGateSet).ions_per_well == 15 &&
                       resource_table(Protocol::UniversalGateSet).registers == 7 &&
                       resource_table(Protocol::Surface422, 3).ions_per_well == 4 &&
                       resource_table(Protocol::Surface422, 3).registers == 13;
    r.clauses.push_back({"resource table (7,2) (7,2) (15,7) (4, d^2+(d-1)^2)", table});
    for (int dc : {2, 3}) {
        const auto l = concatenated_stabilizers(dc);
        const auto c = check_layout(l);
        const int dx = css_distance(l, 'X', 2 * dc), dz = css_distance(l, 'Z', 2 * dc);
        r.clauses.push_back({fmt::format("d_c={}: [[{},{},{}]], commute {}, GF(2) k {}, min logical weight {}/{}", dc,
                                         l.code.n, l.code.k, l.code.d, c.all_commute, c.encoded_qubits, dx, dz),
                             l.code.n == 4 * surface_qubits(dc) && l.code.k == 2 && l.code.d == 2 * dc && c.all_commute &&
                                 c.encoded_qubits == 2 && dx == 2 * dc && dz == 2 * dc && c.local});
    }
}

struct Entry {
    const char* title;
    double limit;
    std::function<void(CheckResult&)> fn;
};

const std::map<int, Entry>& registry() {
    static const std::map<int, Entry> r{
        {1, {"point-charge law", 1.0, point_charge}},
        {2, {"coupling scaling", 120.0, coupling_scaling}},
        {3, {"mode oracle", 1.0, mode_oracle}},
        {4, {"avoided-crossing fit", 10.0, crossing_fit}},
        {5, {"heating properties", 30.0, heating_properties}},
        {6, {"exchange dynamics", 60.0, exchange_dynamics}},
        {7, {"MS gate with heating", 300.0, ms_heating}},
        {8, {"MS gate with dephasing", 120.0, ms_dephasing}},
        {9, {"phonon-exchange entangling sequence", 5.0, exchange_sequence}},
        {10, {"light-shift gate", 300.0, lightshift}},
        {11, {"pseudopotential double well", 60.0, pseudo}},
        {12, {"QEC layout", 5.0, qec}},
    };
    return r;
}

}  // namespace

std::vector<int> library_check_ids() {
    std::vector<int> ids;
    for (const auto& [k, v] : registry()) ids.push_back(k);
    return ids;
}

CheckResult run_check(int id) {
    const auto& e = registry().at(id);
    CheckResult r;
    r.id = id;
    r.title = e.title;
    r.limit = e.limit;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        e.fn(r);
    } catch (const std::exception& ex) {
        r.clauses.push_back({std::string("error: ") + ex.what(), false});
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::string summary_line(const CheckResult& r) {
    std::string s = fmt::format("[{}] criterion {}: {} ({:.2f} s, limit {:.0f} s)", r.passed() ? "PASS" : "FAIL", r.id,
                                r.title, r.seconds, r.limit);
    for (const auto& c : r.clauses) s += fmt::format("\n    {} {}", c.ok ? "ok  " : "FAIL", c.what);
    return s;
}

}  // namespace qsa::checks
