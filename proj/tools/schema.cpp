#include "schema.hpp"

#include <cmath>

namespace qsa::cli {

namespace {

Field num(std::string n, double def, std::string d, double lo = -1e300, double hi = 1e300) {
    return {std::move(n), Kind::Number, def, std::move(d), lo, hi, {}, {}};
}
Field integer(std::string n, long long def, std::string d, double lo = -1e300, double hi = 1e300) {
    return {std::move(n), Kind::Integer, def, std::move(d), lo, hi, {}, {}};
}
Field text(std::string n, std::string def, std::string d, std::vector<std::string> choices) {
    return {std::move(n), Kind::String, def, std::move(d), 0, 0, std::move(choices), {}};
}
Field flag(std::string n, bool def, std::string d) { return {std::move(n), Kind::Boolean, def, std::move(d), 0, 0, {}, {}}; }
Field nums(std::string n, std::vector<double> def, std::string d, double lo = -1e300, double hi = 1e300) {
    return {std::move(n), Kind::NumberArray, def, std::move(d), lo, hi, {}, {}};
}
Field ints(std::string n, std::vector<long long> def, std::string d, double lo = -1e300, double hi = 1e300) {
    return {std::move(n), Kind::IntegerArray, def, std::move(d), lo, hi, {}, {}};
}
Field object(std::string n, std::vector<Field> children, std::string d) {
    return {std::move(n), Kind::Object, json::object(), std::move(d), 0, 0, {}, std::move(children)};
}

std::vector<double> range(double start, double stop, double step) {
    std::vector<double> v;
    const int count = static_cast<int>(std::llround((stop - start) / step));
    for (int k = 0; k <= count; ++k) v.push_back(start + step * k);
    return v;
}

std::vector<CommandSchema> build() {
    std::vector<CommandSchema> s;
    s.push_back({"coupling-scan",
                 "coupling rate of two n-ion chains against well separation",
                 {text("orientation", "axial", "double-well axis relative to the chains", {"axial", "radial"}),
                  ints("n_values", {1, 2, 4, 6}, "ions per well", 1, 12),
                  nums("d_um", {40, 48, 56, 64, 80, 100}, "chain-centroid separation, um", 5, 1000),
                  num("com_kHz", 400, "per-well COM frequency, kHz", 1, 1e5),
                  nums("transverse_kHz", {3000, 3100}, "the two transverse frequencies, kHz", 1, 1e6),
                  text("convention", "centroid", "meaning of d", {"centroid", "potential"})}});
    s.push_back({"avoided-crossing",
                 "synthetic sideband spectra across the crossing and their fits",
                 {integer("n", 6, "ions per well", 1, 12),
                  nums("coupling_kHz", {5, 19, 39}, "true coupling rates, kHz", 0.01, 1e4),
                  num("mean_kHz", 400, "mean well frequency, kHz", 1, 1e5),
                  num("noise_fraction", 0.01, "peak-centre noise in units of the coupling", 0, 1)}});
    s.push_back({"mode-structure",
                 "ip/oop pair frequencies and splittings against separation",
                 {text("orientation", "axial", "double-well axis", {"axial", "radial"}),
                  integer("n", 2, "ions per well", 1, 12),
                  nums("d_um", range(30, 120, 5), "potential separation, um", 5, 1000),
                  num("chain_kHz", 400, "local curvature as a single-ion frequency, kHz", 1, 1e5)}});
    s.push_back({"heating",
                 "COM and stretch heating rates from electrode voltage noise",
                 {integer("n", 1, "ions per well", 1, 12),
                  nums("d_um", {8, 10, 15, 20, 29, 40, 60, 100, 160}, "well separation, um", 1, 1000),
                  num("height_um", 80, "ion height, um", 5, 1000),
                  num("chain_kHz", 540, "chain-axis frequency, kHz", 1, 1e5),
                  num("local_MHz", 2.4, "local frequency along the double-well axis, MHz", 0.01, 100),
                  num("vertical_MHz", 3.0, "vertical frequency, MHz", 0.01, 100),
                  num("noise_psd", 1e-12, "voltage noise PSD per electrode, V^2/Hz", 0, 1)}});
    s.push_back({"exchange",
                 "classical exchange after switching the wells into resonance",
                 {nums("delta_f_kHz", range(-12, 0, 0.5), "final detuning f2 - f1, kHz", -1e3, 1e3),
                  num("trajectory_delta_f_kHz", -7.5, "detuning of the emitted trajectory, kHz", -1e3, 1e3),
                  num("f1_initial_kHz", 520, "initial well 1 frequency, kHz", 1, 1e5),
                  num("f2_initial_kHz", 560, "initial well 2 frequency, kHz", 1, 1e5),
                  num("k_tilde", 1.41e11, "k_int / m, 1/s^2", 0, 1e16),
                  num("tau_on_us", 37, "switch-on time constant, us", 0.01, 1e4),
                  num("t_end_us", 600, "integration window, us", 1, 1e5),
                  num("settle_us", 130, "start of the analysed window, us", 0, 1e5),
                  integer("stride", 20, "trajectory rows per emitted row", 1, 100000)}});
    s.push_back({"ms-gate",
                 "two-mode MS gate with heating and collective dephasing",
                 {ints("cases", {1, 2, 3}, "drive cases", 1, 3),
                  num("gate_period_us", 190, "2 pi / mode splitting, us", 1, 1e6),
                  nums("heating", {2.6, 18.0}, "stretch and COM heating, quanta/s", 0, 1e6),
                  integer("cutoff", 12, "Fock cutoff per mode", 4, 64),
                  text("solver", "auto", "open-system solver", {"auto", "block", "density", "trajectories"}),
                  integer("trajectories", 200, "trajectory count when sampling", 1, 100000),
                  object("dephasing",
                         {flag("enabled", true, "run the dephasing scenario"),
                          num("coupling_kHz", 5.3, "mode splitting, kHz", 0.01, 1e4),
                          num("gate_time_us", 190, "gate duration, us", 1, 1e6),
                          num("dephasing_time_us", 700, "coherence time, us", 1, 1e9),
                          integer("cutoff", 10, "Fock cutoff per mode", 4, 32)},
                         "case-1 gate limited by laser dephasing"),
                  integer("parity_points", 64, "analysis phases over one period", 4, 4096)}});
    s.push_back({"lightshift",
                 "transversal light-shift gate fidelity against Rabi frequency",
                 {integer("p", 25, "cancellation integer", 0, 1000),
                  integer("points", 3001, "Rabi frequencies per curve", 2, 100000),
                  num("range_factor", 3.0, "scan up to this multiple of the reference Rabi frequency", 0.01, 100),
                  num("quartic_ratio", 0.43, "l_z / d_z for the four-ion wells", 0, 2),
                  text("beatnote", "above", "laser beatnote relative to the mode pair", {"above", "middle", "below"}),
                  text("participation", "uniform", "mode participation model", {"uniform", "modes"})}});
    s.push_back({"pseudo",
                 "RF double-well pseudopotential against the RF ratio",
                 {nums("zeta", range(0.7, 1.4, 0.02), "inner/outer RF amplitude ratios", 0.01, 10),
                  num("v_rf2", 70, "outer RF amplitude, V", 0.1, 1e4),
                  num("rf_MHz", 19, "RF drive frequency, MHz", 0.1, 1e3),
                  num("scale", 1.0, "uniform geometry scale", 0.01, 100)}});
    s.push_back({"qec",
                 "resource table and [[4,2,2]]-concatenated surface layouts",
                 {ints("distances", {2, 3}, "surface-code distances", 2, 6),
                  text("protocol", "", "single protocol to report",
                       {"", "steane-ec", "msi", "universal-gate-set", "surface-422"}),
                  integer("distance", 2, "surface distance for the single-protocol report", 2, 50)}});
    s.push_back({"repro-all", "every recipe with defaults plus the acceptance report", {}});
    return s;
}

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::Number: return "number";
        case Kind::Integer: return "integer";
        case Kind::String: return "string";
        case Kind::Boolean: return "boolean";
        case Kind::NumberArray: return "array of numbers";
        case Kind::IntegerArray: return "array of integers";
        case Kind::Object: return "object";
    }
    return "?";
}

json defaults_of(const std::vector<Field>& fields) {
    json out = json::object();
    for (const auto& f : fields) out[f.name] = f.kind == Kind::Object ? defaults_of(f.children) : f.fallback;
    return out;
}

// RFC 6901 token escaping
std::string escape_key(std::string s) {
    std::string out;
    for (char ch : s) {
        if (ch == '~')
            out += "~0";
        else if (ch == '/')
            out += "~1";
        else
            out += ch;
    }
    return out;
}

bool is_integer(const json& v) {
    if (v.is_number_integer()) return true;
    return v.is_number_float() && std::isfinite(v.get<double>()) && std::floor(v.get<double>()) == v.get<double>();
}

void check_scalar(const Field& f, const json& v, const std::string& ptr, std::vector<std::string>& errs) {
    const bool want_int = f.kind == Kind::Integer || f.kind == Kind::IntegerArray;
    if (!v.is_number() || (want_int && !is_integer(v))) {
        errs.push_back(ptr + ": expected " + (want_int ? "an integer" : "a number"));
        return;
    }
    const double x = v.get<double>();
    if (!std::isfinite(x) || x < f.min || x > f.max)
        errs.push_back(ptr + ": value " + v.dump() + " outside [" + json(f.min).dump() + ", " + json(f.max).dump() + "]");
}

void check_fields(const std::vector<Field>& fields, const json& given, const std::string& base, json& merged,
                  std::vector<std::string>& errs) {
    if (!given.is_object()) {
        errs.push_back((base.empty() ? "/" : base) + ": expected an object");
        return;
    }
    for (auto it = given.begin(); it != given.end(); ++it) {
        const auto f = std::find_if(fields.begin(), fields.end(), [&](const Field& x) { return x.name == it.key(); });
        const std::string ptr = base + "/" + escape_key(it.key());
        if (f == fields.end()) {
            errs.push_back(ptr + ": unknown key");
            continue;
        }
        const json& v = it.value();
        switch (f->kind) {
            case Kind::Number:
            case Kind::Integer:
                check_scalar(*f, v, ptr, errs);
                break;
            case Kind::String:
                if (!v.is_string())
                    errs.push_back(ptr + ": expected a string");
                else if (!f->choices.empty() &&
                         std::find(f->choices.begin(), f->choices.end(), v.get<std::string>()) == f->choices.end())
                    errs.push_back(ptr + ": unknown value " + v.dump());
                break;
            case Kind::Boolean:
                if (!v.is_boolean()) errs.push_back(ptr + ": expected a boolean");
                break;
            case Kind::NumberArray:
            case Kind::IntegerArray:
                if (!v.is_array() || v.empty()) {
                    errs.push_back(ptr + ": expected a non-empty " + kind_name(f->kind));
                    break;
                }
                for (std::size_t i = 0; i < v.size(); ++i) check_scalar(*f, v[i], ptr + "/" + std::to_string(i), errs);
                break;
            case Kind::Object: {
                json sub = merged[f->name];
                check_fields(f->children, v, ptr, sub, errs);
                merged[f->name] = sub;
                continue;
            }
        }
        merged[f->name] = v;
    }
}

json field_schema(const Field& f) {
    json s;
    s["description"] = f.description;
    auto bounds = [&](json& t) {
        if (f.min > -1e300) t["minimum"] = f.min;
        if (f.max < 1e300) t["maximum"] = f.max;
    };
    switch (f.kind) {
        case Kind::Number: s["type"] = "number"; bounds(s); break;
        case Kind::Integer: s["type"] = "integer"; bounds(s); break;
        case Kind::String:
            s["type"] = "string";
            if (!f.choices.empty()) s["enum"] = f.choices;
            break;
        case Kind::Boolean: s["type"] = "boolean"; break;
        case Kind::NumberArray:
        case Kind::IntegerArray: {
            json item;
            item["type"] = f.kind == Kind::NumberArray ? "number" : "integer";
            bounds(item);
            s["type"] = "array";
            s["minItems"] = 1;
            s["items"] = item;
            break;
        }
        case Kind::Object: {
            s["type"] = "object";
            s["additionalProperties"] = false;
            for (const auto& c : f.children) s["properties"][c.name] = field_schema(c);
            break;
        }
    }
    if (f.kind != Kind::Object) s["default"] = f.fallback;
    return s;
}

}  // namespace

const std::vector<CommandSchema>& command_schemas() {
    static const std::vector<CommandSchema> s = build();
    return s;
}

const CommandSchema& schema_for(const std::string& command) {
    for (const auto& c : command_schemas())
        if (c.name == command) return c;
    throw SchemaError({"/command: unknown command \"" + command + "\""});
}

json default_config(const std::string& command) {
    const auto& c = schema_for(command);
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["seed"] = 7;
    j["jobs"] = 1;
    j["params"] = defaults_of(c.params);
    return j;
}

json validate_config(const json& config, const std::string& command) {
    const auto& c = schema_for(command);
    std::vector<std::string> errs;
    json merged = defaults_of(c.params);
    if (!config.is_object()) throw SchemaError({"/: expected an object"});
    for (auto it = config.begin(); it != config.end(); ++it) {
        const std::string& k = it.key();
        const json& v = it.value();
        if (k == "schema_version") {
            if (!v.is_number_integer() || v.get<long long>() != kSchemaVersion)
                errs.push_back("/schema_version: expected " + std::to_string(kSchemaVersion));
        } else if (k == "command") {
            if (!v.is_string() || v.get<std::string>() != command)
                errs.push_back("/command: config is for " + v.dump() + ", not \"" + command + "\"");
        } else if (k == "seed") {
            if (!v.is_number_integer() || v.get<long long>() < 0) errs.push_back("/seed: expected a non-negative integer");
        } else if (k == "jobs") {
            if (!v.is_number_integer() || v.get<long long>() < 1) errs.push_back("/jobs: expected a positive integer");
        } else if (k == "params") {
            check_fields(c.params, v, "/params", merged, errs);
        } else {
            errs.push_back("/" + escape_key(k) + ": unknown key");
        }
    }
    if (!errs.empty()) throw SchemaError(errs);
    return merged;
}

json schema_document() {
    json doc;
    doc["$schema"] = "http://json-schema.org/draft-07/schema#";
    doc["title"] = "qsa run configuration";
    doc["version"] = kSchemaVersion;
    for (const auto& c : command_schemas()) {
        json s;
        s["description"] = c.description;
        s["type"] = "object";
        s["additionalProperties"] = false;
        s["properties"]["schema_version"] = {{"const", kSchemaVersion}};
        s["properties"]["command"] = {{"const", c.name}};
        s["properties"]["seed"] = {{"type", "integer"}, {"minimum", 0}};
        s["properties"]["jobs"] = {{"type", "integer"}, {"minimum", 1}};
        json p;
        p["type"] = "object";
        p["additionalProperties"] = false;
        p["properties"] = json::object();
        for (const auto& f : c.params) p["properties"][f.name] = field_schema(f);
        s["properties"]["params"] = p;
        doc["commands"][c.name] = s;
    }
    return doc;
}

}  // namespace qsa::cli
