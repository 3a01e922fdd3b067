#pragma once

#include "qsa/core.hpp"
#include "qsa/table.hpp"

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace qsa {

// Coordinates: x along the plane (double-well axis), y height above the plane,
// z along the strips (chain axis).

enum class ElectrodeRole { RF1, RF2, DC };
const char* to_string(ElectrodeRole r);

struct Electrode {
    std::string name;
    ElectrodeRole role = ElectrodeRole::DC;
    double x_min = 0.0, x_max = 0.0;
    // finite extent only for DC rectangles; RF strips are infinite along z
    double z_min = 0.0, z_max = 0.0;
};

struct SurfaceTrapGeometry {
    std::vector<Electrode> electrodes;
    double omega_rf = kTwoPi * 19e6;
    double v_rf2 = 70.0;  // outer RF amplitude, V
    double zeta = 1.0;    // v_rf1 / v_rf2

    void validate() const;
    double rf_voltage(ElectrodeRole r) const;
    // uniform scale of every length
    SurfaceTrapGeometry scaled(double s) const;

    // inner 75 um strip and two 255 um outer strips, 115 um gaps (collapsed)
    static SurfaceTrapGeometry two_rf_reference();
};

// per-volt field (V/m per V) of each electrode at the point
std::vector<Eigen::Vector3d> strip_field(const SurfaceTrapGeometry& g, const Eigen::Vector3d& point);
// per-volt potential of one electrode
double electrode_potential(const Electrode& e, const Eigen::Vector3d& point);

// RF field amplitude from all RF strips
Eigen::Vector3d rf_field(const SurfaceTrapGeometry& g, const Eigen::Vector3d& point);
// q^2 |E|^2 / (4 m omega_rf^2)
double pseudopotential_at(const SurfaceTrapGeometry& g, const Eigen::Vector3d& point,
                          const IonSpecies& sp);

struct PseudoMinimum {
    double x = 0.0, height = 0.0;
    double omega_x = 0.0, omega_y = 0.0;
};

struct PseudoLandscape {
    std::vector<PseudoMinimum> minima;  // sorted by x then height
    double separation = 0.0;            // x distance of the off-axis pair, 0 when merged
    double height = 0.0;
    bool merged = false;
    double midpoint_curvature = 0.0;    // d2U/dx2 at x = 0 on the minima height, J/m^2
};

struct SearchWindow {
    double x_min = -500e-6, x_max = 500e-6;
    double y_min = 1e-6, y_max = 600e-6;
    int nx = 21, ny = 15;
};

PseudoLandscape find_rf_nulls(const SurfaceTrapGeometry& g, const IonSpecies& sp,
                              const SearchWindow& w = {});

struct RatioRow {
    double zeta = 0.0;
    double separation = 0.0;
    double height = 0.0;
    double omega_x = 0.0;
    bool merged = false;
    std::string status = "ok";
};

std::vector<RatioRow> separation_vs_ratio(const SurfaceTrapGeometry& g, const IonSpecies& sp,
                                          const std::vector<double>& zetas,
                                          const SearchWindow& w = {});
Table ratio_table(const std::vector<RatioRow>& rows);

// factor s such that the model evaluated at s * zeta_measured best matches separations
double fit_zeta_scale(const SurfaceTrapGeometry& g, const IonSpecies& sp,
                      const std::vector<double>& zeta_measured,
                      const std::vector<double>& separation_measured, double lo = 0.9,
                      double hi = 1.1);

// per-volt field of every DC electrode at each ion: result[ion][electrode]
std::vector<std::vector<Eigen::Vector3d>> dc_field_per_volt(
    const SurfaceTrapGeometry& g, const std::vector<Eigen::Vector3d>& ions);

}  // namespace qsa
