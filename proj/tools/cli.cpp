#include "cli.hpp"

#include "checks.hpp"
#include "schema.hpp"

#include "qsa/crossing.hpp"
#include "qsa/dynamics.hpp"
#include "qsa/heating.hpp"
#include "qsa/lightshift.hpp"
#include "qsa/pseudo.hpp"
#include "qsa/qec.hpp"
#include "qsa/quantum.hpp"
#include "qsa/statics.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

namespace qsa::cli {

namespace fs = std::filesystem;

void Artifacts::commit(const std::string& dir) const {
    fs::create_directories(dir);
    for (const auto& [name, content] : files) {
        const fs::path target = fs::path(dir) / name;
        const fs::path tmp = fs::path(dir) / (name + ".tmp");
        {
            std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
            if (!f) throw std::runtime_error("cannot write " + tmp.string());
            f << content;
            if (!f.flush()) throw std::runtime_error("write failed for " + tmp.string());
        }
        fs::rename(tmp, target);
    }
}

namespace {

struct Context {
    json params;
    std::uint64_t seed = 7;
    int jobs = 1;
    Artifacts artifacts;
    json hints = json::object();
    std::vector<std::string> failures;  // per-point numeric failures
    std::ostream* out = nullptr;
    std::ostream* err = nullptr;

    void hint(const std::string& file, const std::string& x, const std::string& y, const std::string& group = "") {
        json h{{"x", x}, {"y", y}};
        if (!group.empty()) h["group"] = group;
        hints[file] = h;
    }
    void fail(const std::string& what) { failures.push_back(what); }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Orientation orientation_of(const std::string& s) { return s == "radial" ? Orientation::Radial : Orientation::Axial; }

std::vector<double> scaled(const json& v, double factor) {
    std::vector<double> out;
    for (const auto& x : v) out.push_back(x.get<double>() * factor);
    return out;
}

void coupling_scan_cmd(Context& c) {
    const auto& p = c.params;
    const auto o = orientation_of(p["orientation"]);
    auto opt = default_calibration(o);
    opt.convention = p["convention"] == "potential" ? SeparationConvention::PotentialMinimum
                                                     : SeparationConvention::ChainCentroid;
    const auto rows = coupling_scan(p["n_values"].get<std::vector<int>>(), scaled(p["d_um"], 1e-6),
                                    rad(p["com_kHz"].get<double>() * 1e3), o, opt, IonSpecies::calcium40(), c.jobs);
    for (const auto& r : rows)
        if (r.status != "ok") c.fail(fmt::format("n={} d={:.6g} um: {}", r.n, r.d * 1e6, r.status));
    c.artifacts.add("coupling.csv", coupling_table(rows).to_csv());
    c.hint("coupling.csv", "d_um", "coupling_Hz", "n");
}

void crossing_cmd(Context& c) {
    const auto& p = c.params;
    const int n = p["n"];
    const auto rates = scaled(p["coupling_kHz"], 1e3);
    Table fits({"coupling_true_Hz", "coupling_fit_Hz", "ci95_Hz", "a", "b", "c", "d_center", "rss", "dof",
                "ill_conditioned"},
               {"Hz", "Hz", "Hz", "rad/s", "rad/s", "rad/s", "V/m", "rad^2/s^2", "1", "bool"});
    Table peaks({"coupling_true_Hz", "field_V_per_m", "peak_Hz", "amplitude", "branch"},
                {"Hz", "V/m", "Hz", "arb", "1"});
    for (std::size_t k = 0; k < rates.size(); ++k) {
        const auto scan = default_crossing_scan(rad(rates[k]), n, rad(p["mean_kHz"].get<double>() * 1e3), 0.0,
                                                p["noise_fraction"], c.seed * 1000 + k);
        const auto spectrum = synth_crossing_spectrum(scan);
        c.artifacts.add(fmt::format("spectrum_{}.csv", k), spectrum.to_csv());
        c.hint(fmt::format("spectrum_{}.csv", k), "field_V_per_m", "detuning_Hz");
        try {
            const auto f = fit_avoided_crossing(spectrum);
            fits.add_row({rates[k], hz(f.omega_c), hz(f.ci95), f.a, f.b, f.c, f.d_center, f.rss,
                          static_cast<long long>(f.dof), static_cast<long long>(f.ill_conditioned)});
            for (const auto& pk : f.peaks)
                peaks.add_row({rates[k], pk.field, hz(pk.omega), pk.amplitude, static_cast<long long>(pk.branch)});
            if (f.ill_conditioned) c.fail(fmt::format("coupling {:.6g} Hz: ill-conditioned fit", rates[k]));
        } catch (const std::exception& e) {
            c.fail(fmt::format("coupling {:.6g} Hz: {}", rates[k], e.what()));
        }
    }
    c.artifacts.add("fit.csv", fits.to_csv());
    c.artifacts.add("peaks.csv", peaks.to_csv());
    c.hint("peaks.csv", "field_V_per_m", "peak_Hz", "coupling_true_Hz");
}

void mode_structure_cmd(Context& c) {
    const auto& p = c.params;
    auto fam = p["orientation"] == "radial" ? DoubleWellFamily::radial_default() : DoubleWellFamily::axial_default();
    fam.omega_chain = rad(p["chain_kHz"].get<double>() * 1e3);
    const auto rows = mode_splitting_scan(fam, scaled(p["d_um"], 1e-6), p["n"], IonSpecies::calcium40(), c.jobs);
    for (const auto& r : rows)
        if (r.status != "ok") c.fail(fmt::format("d={:.6g} um: {}", r.d * 1e6, r.status));
    c.artifacts.add("modes.csv", splitting_table(rows).to_csv());
    c.hint("modes.csv", "d_um", "splitting_Hz", "pair_rank");
}

void heating_cmd(Context& c) {
    const auto& p = c.params;
    HeatingScanOptions o;
    o.height = p["height_um"].get<double>() * 1e-6;
    o.omega_chain = rad(p["chain_kHz"].get<double>() * 1e3);
    o.omega_local = rad(p["local_MHz"].get<double>() * 1e6);
    o.omega_vertical = rad(p["vertical_MHz"].get<double>() * 1e6);
    o.noise = {p["noise_psd"].get<double>(), {}};
    const auto rows = heating_ratio_scan(scaled(p["d_um"], 1e-6), p["n"], heating_reference_geometry(),
                                         IonSpecies::calcium40(), o, c.jobs);
    for (const auto& r : rows)
        if (r.status != "ok") c.fail(fmt::format("d={:.6g} um: {}", r.d * 1e6, r.status));
    c.artifacts.add("heating.csv", heating_table(rows).to_csv());
    c.hint("heating.csv", "d_um", "ratio");
}

void exchange_cmd(Context& c) {
    const auto& p = c.params;
    ExchangeConfig base;
    base.f1_initial = p["f1_initial_kHz"].get<double>() * 1e3;
    base.f2_initial = p["f2_initial_kHz"].get<double>() * 1e3;
    base.k_tilde = p["k_tilde"];
    base.tau_on = p["tau_on_us"].get<double>() * 1e-6;
    IntegrationOptions io;
    io.t_end = p["t_end_us"].get<double>() * 1e-6;
    const double settle = p["settle_us"].get<double>() * 1e-6;
    const auto rows = detuning_scan(scaled(p["delta_f_kHz"], 1e3), base, io, settle, c.jobs);
    for (const auto& r : rows)
        if (r.status != "ok") c.fail(fmt::format("delta_f={:.6g} kHz: {}", r.delta_f / 1e3, r.status));
    c.artifacts.add("detuning.csv", detuning_table(rows).to_csv());
    c.hint("detuning.csv", "delta_f_kHz", "max_occ2");

    ExchangeConfig one = base;
    const double mid = 0.5 * (base.f1_initial + base.f2_initial), df = p["trajectory_delta_f_kHz"].get<double>() * 1e3;
    one.f1_final = mid - 0.5 * df;
    one.f2_final = mid + 0.5 * df;
    const auto tr = integrate_exchange(one, io);
    c.artifacts.add("trajectory.csv", trajectory_table(tr, p["stride"].get<std::size_t>()).to_csv());
    c.hint("trajectory.csv", "t_us", "occ2");
    try {
        // skip the averaging edges, whose windows are incomplete
        const std::size_t lo = tr.smooth_half, hi = tr.t.size() - tr.smooth_half;
        const std::vector<double> t(tr.t.begin() + lo, tr.t.begin() + hi);
        const std::vector<double> n2(tr.occ2_smooth.begin() + lo, tr.occ2_smooth.begin() + hi);
        const auto f = fit_exchange_curve(t, n2, settle);
        json j{{"delta_f_Hz", df},
               {"n1_0", f.n1_0},
               {"n2_0", f.n2_0},
               {"exchange_rate_Hz", hz(f.omega_c)},
               {"exchange_rate_ci95_Hz", hz(f.ci_omega_c)},
               {"phase_rad", f.phi},
               {"decay_time_s", f.tau_d},
               {"decay_time_ci95_s", f.ci_tau_d},
               {"rss", f.rss},
               {"dof", f.dof}};
        c.artifacts.add("fit.json", dump(j));
    } catch (const std::exception& e) {
        c.fail(fmt::format("trajectory fit at {:.6g} kHz: {}", df / 1e3, e.what()));
    }
}

QuantumState ground_qubits() {
    QuantumState s;
    s.spec.n_qubits = 2;
    s.psi = Eigen::VectorXcd::Zero(4);
    s.psi[0] = 1.0;
    return s;
}

MSSolver solver_of(const std::string& s) {
    if (s == "block") return MSSolver::Block;
    if (s == "density") return MSSolver::Density;
    if (s == "trajectories") return MSSolver::Trajectories;
    return MSSolver::Auto;
}

json analysis_json(const ParityAnalysis& a) {
    return {{"p_ss", a.p_ss}, {"p_mixed", a.p_mixed}, {"p_dd", a.p_dd}, {"visibility", a.visibility},
            {"bell_fidelity", a.bell_fidelity}};
}

void ms_gate_cmd(Context& c) {
    const auto& p = c.params;
    const double coupling = kTwoPi / (p["gate_period_us"].get<double>() * 1e-6);
    Table t({"case", "solver", "cutoff", "ideal_infidelity", "infidelity", "cutoff_change", "jumps"},
            {"1", "text", "1", "1", "1", "1", "1"});
    for (int k : p["cases"].get<std::vector<int>>()) {
        auto g = MSGateConfig::standard(static_cast<MSCase>(k), coupling);
        g.cutoff = p["cutoff"];
        g.solver = solver_of(p["solver"]);
        g.trajectories.trajectories = p["trajectories"];
        g.trajectories.seed = c.seed;
        g.trajectories.jobs = c.jobs;
        try {
            const double ideal = 1.0 - bell_fidelity(ms_evolve(g, ground_qubits()).qubits.rho);
            g.heating = {p["heating"][0].get<double>(), p["heating"][1].get<double>()};
            const auto out = ms_evolve(g, ground_qubits());
            t.add_row({static_cast<long long>(k), std::string(to_string(out.solver)),
                       static_cast<long long>(out.cutoff), ideal, 1.0 - bell_fidelity(out.qubits.rho), out.cutoff_change,
                       out.jumps});
        } catch (const std::exception& e) {
            c.fail(fmt::format("case {}: {}", k, e.what()));
        }
    }
    c.artifacts.add("ms_gate.csv", t.to_csv());
    c.hint("ms_gate.csv", "case", "infidelity");

    const auto& dp = p["dephasing"];
    if (dp["enabled"].get<bool>()) {
        auto g = MSGateConfig::standard(MSCase::RedBoth, rad(dp["coupling_kHz"].get<double>() * 1e3));
        g.gate_time = dp["gate_time_us"].get<double>() * 1e-6;
        g.dephasing_time = dp["dephasing_time_us"].get<double>() * 1e-6;
        g.cutoff = dp["cutoff"];
        g.solver = solver_of(p["solver"]);
        g.trajectories.trajectories = p["trajectories"];
        g.trajectories.seed = c.seed;
        g.trajectories.jobs = c.jobs;
        try {
            const auto out = ms_evolve(g, ground_qubits());
            const auto a = populations_and_parity(out.qubits, p["parity_points"]);
            json j = analysis_json(a);
            j["solver"] = to_string(out.solver);
            j["cutoff"] = out.cutoff;
            j["cutoff_change"] = out.cutoff_change;
            c.artifacts.add("dephasing.json", dump(j));
            c.artifacts.add("parity.csv", parity_table(a).to_csv());
            c.hint("parity.csv", "phase_rad", "parity");
        } catch (const std::exception& e) {
            c.fail(std::string("dephasing scenario: ") + e.what());
        }
    }

    SequenceOptions so;
    so.parity_points = p["parity_points"];
    const auto seq = phonon_exchange_sequence(so);
    c.artifacts.add("exchange_sequence.json", dump(analysis_json(seq.analysis)));
    c.artifacts.add("exchange_sequence_parity.csv", parity_table(seq.analysis).to_csv());
    c.hint("exchange_sequence_parity.csv", "phase_rad", "parity");
}

void lightshift_cmd(Context& c) {
    const auto& p = c.params;
    const auto sp = IonSpecies::calcium40();
    const Beatnote beat = p["beatnote"] == "middle" ? Beatnote::Middle
                          : p["beatnote"] == "below" ? Beatnote::Below
                                                     : Beatnote::Above;
    const Participation part = p["participation"] == "modes" ? Participation::ModeVectors : Participation::Uniform;
    Table t = lightshift_scan_table();
    json peaks = json::object();
    for (int n : {2, 4}) {
        LightShiftTrap trap;
        if (n == 4) trap.lz_over_dz = p["quartic_ratio"];
        const auto s = lightshift_setup(n, trap, sp);
        LightShiftConfig base;
        base.p = p["p"];
        base.beatnote = beat;
        base.participation = part;
        const double o1 = reference_rabi_frequency(base, s);
        struct Variant {
            std::string name;
            Cancellation cancel;
            std::vector<int> echo;
        };
        std::vector<Variant> vs{{"even", Cancellation::Even, {}}, {"odd", Cancellation::Odd, {}}};
        vs.push_back({"odd_echo", Cancellation::Odd, n == 4 ? std::vector<int>{2, 3, 6, 7} : std::vector<int>{1, 3}});
        for (const auto& v : vs) {
            auto cf = base;
            cf.cancellation = v.cancel;
            cf.spin_echo = v.echo;
            const auto scan = fidelity_scan_vs_omega(cf, s, p["range_factor"].get<double>() * o1, p["points"]);
            const std::string name = fmt::format("2x{}_{}", n, v.name);
            append_scan(t, scan, name);
            peaks[name] = peak_fidelity(scan);
        }
    }
    c.artifacts.add("scan.csv", t.to_csv());
    c.hint("scan.csv", "omega_Hz", "fidelity", "variant");
    const auto s4 = lightshift_setup(4, LightShiftTrap{}, sp);
    const auto eq = optimize_quartic_equidistance(4, s4.potential, sp);
    json j{{"peak_fidelity", peaks},
           {"equidistant_quartic", {{"lz_over_dz", eq.lz_over_dz}, {"spacing_inhomogeneity", eq.spacing_inhomogeneity}}}};
    c.artifacts.add("summary.json", dump(j));
}

void pseudo_cmd(Context& c) {
    const auto& p = c.params;
    const auto sp = IonSpecies::calcium40();
    auto g = SurfaceTrapGeometry::two_rf_reference().scaled(p["scale"]);
    g.v_rf2 = p["v_rf2"];
    g.omega_rf = rad(p["rf_MHz"].get<double>() * 1e6);
    const auto rows = separation_vs_ratio(g, sp, p["zeta"].get<std::vector<double>>());
    for (const auto& r : rows)
        if (r.status != "ok") c.fail(fmt::format("zeta={:.6g}: {}", r.zeta, r.status));
    c.artifacts.add("ratio.csv", ratio_table(rows).to_csv());
    c.hint("ratio.csv", "zeta", "separation_um");
    g.zeta = 1.0;
    const auto land = find_rf_nulls(g, sp);
    json minima = json::array();
    for (const auto& m : land.minima)
        minima.push_back({{"x_um", m.x * 1e6}, {"height_um", m.height * 1e6}, {"omega_x_Hz", hz(m.omega_x)},
                          {"omega_y_Hz", hz(m.omega_y)}});
    c.artifacts.add("balanced.json", dump({{"zeta", 1.0},
                                           {"separation_um", land.separation * 1e6},
                                           {"height_um", land.height * 1e6},
                                           {"merged", land.merged},
                                           {"minima", minima}}));
}

void qec_cmd(Context& c) {
    const auto& p = c.params;
    const std::string proto = p["protocol"];
    if (!proto.empty()) {
        const auto row = resource_table(protocol_from_string(proto), p["distance"]);
        json j{{"protocol", proto}, {"ions_per_well", row.ions_per_well}, {"registers", row.registers}};
        if (row.protocol == Protocol::Surface422) j["surface_distance"] = p["distance"];
        *c.out << j.dump() << "\n";
        c.artifacts.add("protocol.json", dump(j));
        return;
    }
    json summary = json::array();
    for (int dc : p["distances"].get<std::vector<int>>()) {
        c.artifacts.add(fmt::format("resources_d{}.csv", dc), resource_table_csv(dc).to_csv());
        const auto l = concatenated_stabilizers(dc);
        const auto chk = check_layout(l);
        c.artifacts.add(fmt::format("layout_d{}.json", dc), layout_to_json(l));
        c.artifacts.add(fmt::format("layout_d{}.dot", dc), layout_to_dot(l));
        json s{{"surface_distance", dc},
               {"n", l.code.n},
               {"k", l.code.k},
               {"d", l.code.d},
               {"wells", l.wells.size()},
               {"stabilizers", l.stabilizers.size()},
               {"all_commute", chk.all_commute},
               {"encoded_qubits", chk.encoded_qubits},
               {"local", chk.local}};
        if (l.code.n <= 64) {
            s["min_x_logical"] = css_distance(l, 'X', 2 * dc);
            s["min_z_logical"] = css_distance(l, 'Z', 2 * dc);
        }
        summary.push_back(s);
    }
    c.artifacts.add("summary.json", dump(summary));
}

using Runner = std::function<void(Context&)>;

const std::map<std::string, Runner>& runners() {
    static const std::map<std::string, Runner> r{
        {"coupling-scan", coupling_scan_cmd}, {"avoided-crossing", crossing_cmd}, {"mode-structure", mode_structure_cmd},
        {"heating", heating_cmd},             {"exchange", exchange_cmd},        {"ms-gate", ms_gate_cmd},
        {"lightshift", lightshift_cmd},       {"pseudo", pseudo_cmd},            {"qec", qec_cmd},
    };
    return r;
}

struct Options {
    std::string config;
    std::string out_dir;
    std::optional<long long> seed;
    std::optional<int> jobs;
    std::string protocol;
    std::optional<int> distance;
    std::string defaults_for;
};

json load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw SchemaError({"/: cannot read config file " + path});
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw SchemaError({fmt::format("/: not valid JSON (byte {})", e.byte)});
    }
}

// merged params, seed and jobs from defaults, the config file and flags, in that order
Context prepare(const std::string& command, const Options& o, std::ostream& out, std::ostream& err) {
    Context c;
    c.out = &out;
    c.err = &err;
    json cfg = json::object();
    if (!o.config.empty()) cfg = load_config(o.config);
    c.params = validate_config(cfg, command);
    if (cfg.contains("seed")) c.seed = cfg["seed"].get<std::uint64_t>();
    if (cfg.contains("jobs")) c.jobs = cfg["jobs"];
    if (o.seed) {
        if (*o.seed < 0) throw SchemaError({"--seed: expected a non-negative integer"});
        c.seed = static_cast<std::uint64_t>(*o.seed);
    }
    if (o.jobs) {
        if (*o.jobs < 1) throw SchemaError({"--jobs: expected a positive integer"});
        c.jobs = *o.jobs;
    }
    json overrides = json::object();
    if (!o.protocol.empty()) overrides["protocol"] = o.protocol;
    if (o.distance) overrides["distance"] = *o.distance;
    if (!overrides.empty()) {
        json merged = c.params;
        merged.update(overrides);
        c.params = validate_config({{"params", merged}}, command);
    }
    return c;
}

void finish(Context& c, const std::string& command) {
    json hints{{"command", command}, {"files", c.hints}};
    c.artifacts.add("plot_hints.json", dump(hints));
    json used = default_config(command);
    used["seed"] = c.seed;
    used["jobs"] = c.jobs;
    used["params"] = c.params;
    used.erase("jobs");  // scheduling never changes the artifacts
    c.artifacts.add("config.json", dump(used));
}

int run_command(const std::string& command, const Options& o, std::ostream& out, std::ostream& err) {
    Context c = prepare(command, o, out, err);
    runners().at(command)(c);
    finish(c, command);
    c.artifacts.commit(o.out_dir.empty() ? "out/" + command : o.out_dir);
    for (const auto& f : c.failures) err << "point failed: " << f << "\n";
    return c.failures.empty() ? kOk : kNumericFailure;
}

int repro_all(const Options& o, std::ostream& out, std::ostream& err) {
    Context top = prepare("repro-all", o, out, err);
    const std::string root = o.out_dir.empty() ? "out" : o.out_dir;
    int code = kOk;
    for (const auto& [name, fn] : runners()) {
        Context c;
        c.out = &out;
        c.err = &err;
        c.params = validate_config(json::object(), name);
        c.seed = top.seed;
        c.jobs = top.jobs;
        const auto t0 = std::chrono::steady_clock::now();
        fn(c);
        finish(c, name);
        c.artifacts.commit((fs::path(root) / name).string());
        err << fmt::format("{}: {:.1f} s\n", name,
                           std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        for (const auto& f : c.failures) err << name << ": point failed: " << f << "\n";
        if (!c.failures.empty()) code = kNumericFailure;
    }
    json report = json::array();
    for (int id : checks::library_check_ids()) {
        const auto r = checks::run_check(id);
        json clauses = json::array();
        bool ok = !r.clauses.empty();
        for (const auto& cl : r.clauses) {
            clauses.push_back({{"what", cl.what}, {"ok", cl.ok}});
            ok = ok && cl.ok;
        }
        report.push_back({{"criterion", r.id}, {"title", r.title}, {"passed", ok}, {"clauses", clauses}});
        out << fmt::format("[{}] criterion {}: {}\n", ok ? "PASS" : "FAIL", r.id, r.title);
        err << fmt::format("criterion {}: {:.1f} s\n", r.id, r.seconds);
    }
    Artifacts a;
    a.add("report.json", dump({{"seed", top.seed}, {"criteria", report}}));
    a.commit(root);
    return code;
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"double-well ion trap simulations"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--config", o.config, "JSON run configuration");
    app.add_option("--out", o.out_dir, "output directory");
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--jobs", o.jobs, "worker threads");

    std::vector<CLI::App*> subs;
    for (const auto& s : command_schemas()) {
        auto* sub = app.add_subcommand(s.name, s.description);
        if (s.name == "qec") {
            sub->add_option("--protocol", o.protocol, "report one protocol");
            sub->add_option("--distance", o.distance, "surface distance for --protocol");
        }
        subs.push_back(sub);
    }
    auto* schema = app.add_subcommand("schema", "print the configuration JSON schema");
    auto* defaults = app.add_subcommand("defaults", "print the default configuration of a command");
    defaults->add_option("command", o.defaults_for, "command name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidInput;
    }

    try {
        if (schema->parsed()) {
            const std::string text = dump(schema_document());
            if (o.out_dir.empty()) {
                out << text;
            } else {
                Artifacts a;
                a.add("schema.json", text);
                a.commit(o.out_dir);
            }
            return kOk;
        }
        if (defaults->parsed()) {
            out << dump(default_config(o.defaults_for));
            return kOk;
        }
        for (auto* sub : subs) {
            if (!sub->parsed()) continue;
            if (sub->get_name() == "repro-all") return repro_all(o, out, err);
            return run_command(sub->get_name(), o, out, err);
        }
    } catch (const SchemaError& e) {
        for (const auto& line : e.errors) err << "invalid config: " << line << "\n";
        return kInvalidInput;
    } catch (const DomainError& e) {
        err << "invalid input: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const fs::filesystem_error& e) {
        err << "i/o error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kNumericFailure;
    }
    return kInvalidInput;
}

}  // namespace qsa::cli
