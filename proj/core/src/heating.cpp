#include "qsa/heating.hpp"

#include "qsa/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace qsa {

double NoiseModel::psd_of(std::size_t k) const {
    return per_electrode.empty() ? psd : per_electrode.at(k);
}

void NoiseModel::validate() const {
    if (!(psd >= 0.0)) throw DomainError("noise PSD must be non-negative");
    for (double s : per_electrode)
        if (!(s >= 0.0)) throw DomainError("noise PSD must be non-negative");
}

double HeatingReport::ratio(int a, int b) const {
    return rates.at(static_cast<std::size_t>(a)) / rates.at(static_cast<std::size_t>(b));
}

HeatingReport mode_heating_rates(const ModeSpectrum& spectrum, const FieldSet& fields,
                                 const NoiseModel& noise, const IonSpecies& sp) {
    noise.validate();
    const std::size_t n_ions = spectrum.ions();
    if (fields.size() != n_ions) throw DomainError("field set does not match the ion count");
    const std::size_t n_el = n_ions ? fields[0].size() : 0;
    for (const auto& row : fields)
        if (row.size() != n_el) throw DomainError("ragged field set");
    if (!noise.per_electrode.empty() && noise.per_electrode.size() != n_el)
        throw DomainError("per-electrode PSD count does not match the electrodes");

    HeatingReport r;
    const std::size_t modes = spectrum.size();
    r.frequencies = spectrum.frequencies;
    r.rates.assign(modes, 0.0);
    r.per_electrode = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(modes),
                                            static_cast<Eigen::Index>(n_el));
    for (std::size_t l = 0; l < modes; ++l) {
        const double w = spectrum.frequencies[l];
        if (!(w > 0.0)) throw DomainError("heating needs positive mode frequencies");
        const double pre = sp.charge * sp.charge / (4.0 * sp.mass * kHbar * w);
        for (std::size_t k = 0; k < n_el; ++k) {
            double proj = 0.0;
            for (std::size_t i = 0; i < n_ions; ++i)
                proj += spectrum.mode_vectors.col(static_cast<Eigen::Index>(l))
                            .segment<3>(static_cast<Eigen::Index>(3 * i))
                            .dot(fields[i][k]);
            const double g = pre * noise.psd_of(k) * proj * proj;
            r.per_electrode(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k)) = g;
            r.rates[l] += g;
        }
    }
    return r;
}

FieldSet homogeneous_fields(std::size_t ions, std::size_t electrodes, const Eigen::Vector3d& e) {
    return FieldSet(ions, std::vector<Eigen::Vector3d>(electrodes, e));
}

NoiseModel calibrate_noise_amplitude(double reference_rate, const SurfaceTrapGeometry& g,
                                     const Eigen::Vector3d& ion, const Eigen::Vector3d& direction,
                                     double omega, const IonSpecies& sp) {
    if (!(reference_rate > 0.0)) throw DomainError("reference heating rate must be positive");
    if (!(omega > 0.0)) throw DomainError("frequency must be positive");
    const Eigen::Vector3d u = direction.normalized();
    const auto f = dc_field_per_volt(g, {ion});
    double sum = 0.0;
    for (const auto& e : f[0]) sum += std::pow(u.dot(e), 2);
    if (!(sum > 0.0)) throw DomainError("no projected field at the calibration ion");
    const double unit_rate = sp.charge * sp.charge * sum / (4.0 * sp.mass * kHbar * omega);
    return NoiseModel{reference_rate / unit_rate, {}};
}

SurfaceTrapGeometry heating_reference_geometry() {
    SurfaceTrapGeometry g;
    const double um = kMicron;
    g.electrodes = {
        {"dc_left", ElectrodeRole::DC, -300 * um, -80 * um, 30 * um, 230 * um},
        {"dc_right", ElectrodeRole::DC, 80 * um, 300 * um, 30 * um, 230 * um},
    };
    return g;
}

HeatingRow heating_at(double d, int n, const SurfaceTrapGeometry& g, const IonSpecies& sp,
                      const HeatingScanOptions& opt) {
    HeatingRow row;
    row.d = d;
    auto pot = TrapPotential::radial(d, opt.omega_local, sp, opt.omega_vertical, opt.omega_chain);
    auto cfg = solve_equilibrium(pot, sp, {n, n});
    auto spec = normal_modes(cfg, pot);
    auto pair = spec.lowest_pair(Axis::Z);
    if (!pair) throw Error("no chain-axis mode pair");
    std::vector<Eigen::Vector3d> ions;
    for (const auto& p : cfg.positions) ions.emplace_back(p[0], opt.height + p[1], p[2]);
    const auto fields = dc_field_per_volt(g, ions);
    const auto rep = mode_heating_rates(spec, fields, opt.noise, sp);
    row.omega_com = spec.frequencies[pair->first];
    row.omega_str = spec.frequencies[pair->second];
    row.rate_com = rep.rates[pair->first];
    row.rate_str = rep.rates[pair->second];
    row.ratio = row.rate_com / row.rate_str;
    return row;
}

std::vector<HeatingRow> heating_ratio_scan(const std::vector<double>& d_values, int n,
                                           const SurfaceTrapGeometry& g, const IonSpecies& sp,
                                           const HeatingScanOptions& opt, int jobs) {
    std::vector<HeatingRow> rows(d_values.size());
    parallel_for(rows.size(), jobs, [&](std::size_t i) {
        try {
            rows[i] = heating_at(d_values[i], n, g, sp, opt);
        } catch (const std::exception& e) {
            rows[i].d = d_values[i];
            rows[i].status = e.what();
            std::replace(rows[i].status.begin(), rows[i].status.end(), ',', ';');
        }
    });
    return rows;
}

Table heating_table(const std::vector<HeatingRow>& rows) {
    Table t({"d_um", "omega_com_Hz", "omega_str_Hz", "rate_com", "rate_str", "com_over_str", "status"},
            {"um", "Hz", "Hz", "quanta/s", "quanta/s", "1", "text"});
    for (const auto& r : rows)
        t.add_row({r.d / kMicron, hz(r.omega_com), hz(r.omega_str), r.rate_com, r.rate_str, r.ratio,
                   r.status});
    return t;
}

}  // namespace qsa
