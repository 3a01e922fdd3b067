#include "qsa/pseudo.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <optional>

namespace qsa {

using cd = std::complex<double>;

const char* to_string(ElectrodeRole r) {
    switch (r) {
        case ElectrodeRole::RF1: return "RF1";
        case ElectrodeRole::RF2: return "RF2";
        case ElectrodeRole::DC: return "DC";
    }
    return "?";
}

void SurfaceTrapGeometry::validate() const {
    if (!(zeta > 0.0)) throw DomainError("RF ratio zeta must be positive");
    if (!(omega_rf > 0.0)) throw DomainError("RF drive frequency must be positive");
    for (const auto& e : electrodes) {
        if (!(e.x_max > e.x_min)) throw DomainError("electrode " + e.name + " has empty x extent");
        if (e.role == ElectrodeRole::DC && !(e.z_max > e.z_min))
            throw DomainError("DC electrode " + e.name + " has empty z extent");
    }
    // strips in the same z band must not overlap
    for (std::size_t i = 0; i < electrodes.size(); ++i)
        for (std::size_t j = i + 1; j < electrodes.size(); ++j) {
            const auto& a = electrodes[i];
            const auto& b = electrodes[j];
            const bool rf = a.role != ElectrodeRole::DC || b.role != ElectrodeRole::DC;
            const bool zover = rf || (a.z_min < b.z_max && b.z_min < a.z_max);
            if (zover && a.x_min < b.x_max && b.x_min < a.x_max &&
                (a.role != ElectrodeRole::DC) == (b.role != ElectrodeRole::DC))
                throw DomainError("electrodes " + a.name + " and " + b.name + " overlap");
        }
}

double SurfaceTrapGeometry::rf_voltage(ElectrodeRole r) const {
    if (r == ElectrodeRole::RF1) return zeta * v_rf2;
    if (r == ElectrodeRole::RF2) return v_rf2;
    return 0.0;
}

SurfaceTrapGeometry SurfaceTrapGeometry::scaled(double s) const {
    if (!(s > 0.0)) throw DomainError("scale must be positive");
    SurfaceTrapGeometry g = *this;
    for (auto& e : g.electrodes) {
        e.x_min *= s;
        e.x_max *= s;
        e.z_min *= s;
        e.z_max *= s;
    }
    return g;
}

SurfaceTrapGeometry SurfaceTrapGeometry::two_rf_reference() {
    SurfaceTrapGeometry g;
    const double um = kMicron;
    g.electrodes = {
        {"rf1", ElectrodeRole::RF1, -37.5 * um, 37.5 * um, 0.0, 0.0},
        {"rf2_left", ElectrodeRole::RF2, -407.5 * um, -152.5 * um, 0.0, 0.0},
        {"rf2_right", ElectrodeRole::RF2, 152.5 * um, 407.5 * um, 0.0, 0.0},
    };
    return g;
}

namespace {

void require_above(const Eigen::Vector3d& p) {
    if (!(p[1] > 0.0)) throw DomainError("field point must lie above the electrode plane");
}

// complex field function of an infinite strip at 1 V: E_x = -Im G, E_y = -Re G
cd strip_g(const Electrode& e, cd w) { return (1.0 / (w - e.x_max) - 1.0 / (w - e.x_min)) / kPi; }
cd strip_dg(const Electrode& e, cd w) {
    const cd a = w - e.x_max, b = w - e.x_min;
    return (-1.0 / (a * a) + 1.0 / (b * b)) / kPi;
}
cd strip_d2g(const Electrode& e, cd w) {
    const cd a = w - e.x_max, b = w - e.x_min;
    return (2.0 / (a * a * a) - 2.0 / (b * b * b)) / kPi;
}

struct RfSum {
    cd g, dg, d2g;
};

RfSum rf_sum(const SurfaceTrapGeometry& geo, cd w) {
    RfSum s{};
    for (const auto& e : geo.electrodes) {
        const double v = geo.rf_voltage(e.role);
        if (v == 0.0) continue;
        s.g += v * strip_g(e, w);
        s.dg += v * strip_dg(e, w);
        s.d2g += v * strip_d2g(e, w);
    }
    return s;
}

Eigen::Vector3d rectangle_field(const Electrode& e, const Eigen::Vector3d& p) {
    const double h = p[1];
    Eigen::Vector3d E = Eigen::Vector3d::Zero();
    const double xs[2] = {e.x_min - p[0], e.x_max - p[0]};
    const double zs[2] = {e.z_min - p[2], e.z_max - p[2]};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double s = (i + j) % 2 == 0 ? 1.0 : -1.0;
            const double X = xs[i], Z = zs[j];
            const double R = std::sqrt(X * X + Z * Z + h * h);
            const double xh = X * X + h * h, zh = Z * Z + h * h;
            // derivatives of atan(X Z / (h R)) with X = x_i - x, Z = z_j - z
            const double dX = h * Z / (R * xh);
            const double dZ = h * X / (R * zh);
            const double dh = -X * Z * (R * R + h * h) / (R * xh * zh);
            E[0] += s * dX;
            E[2] += s * dZ;
            E[1] -= s * dh;
        }
    return E / kTwoPi;
}

double rectangle_potential(const Electrode& e, const Eigen::Vector3d& p) {
    const double h = p[1];
    double phi = 0.0;
    const double xs[2] = {e.x_min - p[0], e.x_max - p[0]};
    const double zs[2] = {e.z_min - p[2], e.z_max - p[2]};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double s = (i + j) % 2 == 0 ? 1.0 : -1.0;
            const double R = std::sqrt(xs[i] * xs[i] + zs[j] * zs[j] + h * h);
            phi += s * std::atan(xs[i] * zs[j] / (h * R));
        }
    return phi / kTwoPi;
}

double length_scale(const SurfaceTrapGeometry& g) {
    double s = 0.0;
    for (const auto& e : g.electrodes) s = std::max({s, std::abs(e.x_min), std::abs(e.x_max)});
    return s > 0.0 ? s : 1.0;
}

std::optional<cd> newton_null(const SurfaceTrapGeometry& g, cd w, double scale) {
    for (int it = 0; it < 100; ++it) {
        const RfSum s = rf_sum(g, w);
        if (std::abs(s.dg) == 0.0) return std::nullopt;
        cd step = s.g / s.dg;
        // keep the iterate above the plane and the step bounded
        const double lim = 0.25 * scale;
        if (std::abs(step) > lim) step *= lim / std::abs(step);
        cd next = w - step;
        if (next.imag() <= 0.0) next = cd(next.real(), 0.5 * w.imag());
        w = next;
        if (std::abs(step) < 1e-14 * scale) {
            if (std::abs(rf_sum(g, w).g) <= 1e-9 * std::abs(rf_sum(g, w).dg) * scale) return w;
        }
    }
    return std::nullopt;
}

PseudoMinimum make_minimum(const SurfaceTrapGeometry& g, const IonSpecies& sp, cd w) {
    const RfSum s = rf_sum(g, w);
    const double om = sp.charge * std::abs(s.dg) / (std::sqrt(2.0) * sp.mass * g.omega_rf);
    return {w.real(), w.imag(), om, om};
}

PseudoLandscape landscape_from(const SurfaceTrapGeometry& g, const IonSpecies& sp,
                               std::vector<PseudoMinimum> mins) {
    const double scale = length_scale(g);
    PseudoLandscape L;
    std::sort(mins.begin(), mins.end(), [](const auto& a, const auto& b) {
        return a.x != b.x ? a.x < b.x : a.height < b.height;
    });
    L.minima = mins;
    const double tol = 1e-7 * scale;
    const PseudoMinimum* right = nullptr;
    for (const auto& m : mins) {
        if (m.x <= tol) continue;
        const bool mirrored = std::any_of(mins.begin(), mins.end(), [&](const auto& o) {
            return std::abs(o.x + m.x) < 1e-6 * scale && std::abs(o.height - m.height) < 1e-6 * scale;
        });
        if (mirrored && (!right || m.x < right->x)) right = &m;
    }
    const double c = sp.charge * sp.charge / (4.0 * sp.mass * g.omega_rf * g.omega_rf);
    double hmid = right ? right->height : (mins.empty() ? 0.0 : mins.front().height);
    if (hmid > 0.0) {
        const RfSum s = rf_sum(g, cd(0.0, hmid));
        // d2/dx2 |G|^2 for analytic G
        L.midpoint_curvature = 2.0 * c * (std::norm(s.dg) + std::real(std::conj(s.g) * s.d2g));
    }
    if (right && L.midpoint_curvature <= 0.0) {
        L.separation = 2.0 * right->x;
        L.height = right->height;
        L.merged = false;
    } else {
        L.merged = true;
        L.separation = 0.0;
        L.height = hmid;
    }
    return L;
}

void add_unique(std::vector<PseudoMinimum>& v, const PseudoMinimum& m, double tol) {
    for (const auto& o : v)
        if (std::hypot(o.x - m.x, o.height - m.height) < tol) return;
    v.push_back(m);
}

}  // namespace

std::vector<Eigen::Vector3d> strip_field(const SurfaceTrapGeometry& g, const Eigen::Vector3d& point) {
    require_above(point);
    std::vector<Eigen::Vector3d> out;
    const cd w(point[0], point[1]);
    for (const auto& e : g.electrodes) {
        if (e.role == ElectrodeRole::DC) {
            out.push_back(rectangle_field(e, point));
        } else {
            const cd G = strip_g(e, w);
            out.emplace_back(-G.imag(), -G.real(), 0.0);
        }
    }
    return out;
}

double electrode_potential(const Electrode& e, const Eigen::Vector3d& p) {
    require_above(p);
    if (e.role == ElectrodeRole::DC) return rectangle_potential(e, p);
    return (std::atan((e.x_max - p[0]) / p[1]) - std::atan((e.x_min - p[0]) / p[1])) / kPi;
}

Eigen::Vector3d rf_field(const SurfaceTrapGeometry& g, const Eigen::Vector3d& point) {
    require_above(point);
    const cd G = rf_sum(g, cd(point[0], point[1])).g;
    return {-G.imag(), -G.real(), 0.0};
}

double pseudopotential_at(const SurfaceTrapGeometry& g, const Eigen::Vector3d& point,
                          const IonSpecies& sp) {
    return sp.charge * sp.charge * rf_field(g, point).squaredNorm() /
           (4.0 * sp.mass * g.omega_rf * g.omega_rf);
}

PseudoLandscape find_rf_nulls(const SurfaceTrapGeometry& g, const IonSpecies& sp,
                              const SearchWindow& win) {
    g.validate();
    if (!(win.y_min > 0.0) || !(win.y_max > win.y_min) || !(win.x_max > win.x_min))
        throw DomainError("search window must lie above the plane");
    const double scale = length_scale(g);
    std::vector<PseudoMinimum> mins;
    for (int i = 0; i < win.nx; ++i)
        for (int j = 0; j < win.ny; ++j) {
            const double x = win.x_min + (win.x_max - win.x_min) * i / std::max(win.nx - 1, 1);
            const double y = win.y_min + (win.y_max - win.y_min) * j / std::max(win.ny - 1, 1);
            auto w = newton_null(g, cd(x, y), scale);
            if (!w) continue;
            if (w->real() < win.x_min || w->real() > win.x_max || w->imag() < win.y_min ||
                w->imag() > win.y_max)
                continue;
            // snap mirror-symmetric on-axis roots
            if (std::abs(w->real()) < 1e-12 * scale) *w = cd(0.0, w->imag());
            add_unique(mins, make_minimum(g, sp, *w), 1e-9 * scale);
        }
    if (mins.empty()) throw ConvergenceError("no RF null in the search window");
    return landscape_from(g, sp, std::move(mins));
}

std::vector<RatioRow> separation_vs_ratio(const SurfaceTrapGeometry& g, const IonSpecies& sp,
                                          const std::vector<double>& zetas,
                                          const SearchWindow& w) {
    std::vector<RatioRow> rows;
    std::optional<cd> prev;
    const double scale = length_scale(g);
    for (double z : zetas) {
        RatioRow r;
        r.zeta = z;
        try {
            SurfaceTrapGeometry gz = g;
            gz.zeta = z;
            gz.validate();
            std::optional<PseudoLandscape> L;
            if (prev) {
                // warm start from the previous right-hand null
                if (auto wr = newton_null(gz, *prev, scale); wr && wr->real() > 1e-7 * scale) {
                    const PseudoMinimum mr = make_minimum(gz, sp, *wr);
                    PseudoMinimum ml = mr;
                    ml.x = -mr.x;
                    auto cand = landscape_from(gz, sp, {ml, mr});
                    if (!cand.merged) L = cand;
                }
            }
            if (!L) L = find_rf_nulls(gz, sp, w);
            r.merged = L->merged;
            r.separation = L->separation;
            r.height = L->height;
            if (!L->merged) {
                for (const auto& m : L->minima)
                    if (std::abs(m.x - 0.5 * L->separation) < 1e-6 * scale) r.omega_x = m.omega_x;
                prev = cd(0.5 * L->separation, L->height);
            } else {
                prev.reset();
            }
        } catch (const std::exception& e) {
            r.status = e.what();
            std::replace(r.status.begin(), r.status.end(), ',', ';');
            prev.reset();
        }
        rows.push_back(r);
    }
    return rows;
}

Table ratio_table(const std::vector<RatioRow>& rows) {
    Table t({"zeta", "separation_um", "height_um", "omega_x_Hz", "merged", "status"},
            {"1", "um", "um", "Hz", "bool", "text"});
    for (const auto& r : rows)
        t.add_row({r.zeta, r.separation / kMicron, r.height / kMicron, hz(r.omega_x),
                   static_cast<long long>(r.merged), r.status});
    return t;
}

double fit_zeta_scale(const SurfaceTrapGeometry& g, const IonSpecies& sp,
                      const std::vector<double>& zeta_measured,
                      const std::vector<double>& separation_measured, double lo, double hi) {
    if (zeta_measured.size() != separation_measured.size() || zeta_measured.empty())
        throw DomainError("zeta scale fit needs matching non-empty data");
    auto cost = [&](double s) {
        double c = 0.0;
        for (std::size_t i = 0; i < zeta_measured.size(); ++i) {
            SurfaceTrapGeometry gz = g;
            gz.zeta = s * zeta_measured[i];
            double sep = 0.0;
            try {
                sep = find_rf_nulls(gz, sp).separation;
            } catch (const Error&) {
                sep = 0.0;
            }
            const double r = (sep - separation_measured[i]) / kMicron;
            c += r * r;
        }
        return c;
    };
    auto r = boost::math::tools::brent_find_minima(cost, lo, hi, 40);
    return r.first;
}

std::vector<std::vector<Eigen::Vector3d>> dc_field_per_volt(
    const SurfaceTrapGeometry& g, const std::vector<Eigen::Vector3d>& ions) {
    std::vector<std::vector<Eigen::Vector3d>> out;
    for (const auto& p : ions) {
        require_above(p);
        std::vector<Eigen::Vector3d> row;
        for (const auto& e : g.electrodes)
            if (e.role == ElectrodeRole::DC) row.push_back(rectangle_field(e, p));
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace qsa
