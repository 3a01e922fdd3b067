#include "qsa/core.hpp"

#include <cmath>
#include <string>

namespace qsa {

IonSpecies IonSpecies::calcium40() {
    // neutral-atom mass, electron mass not subtracted
    return IonSpecies{39.9625909 * kAmu, kE, "40Ca+"};
}

void IonSpecies::validate() const {
    if (!(mass > 0.0)) throw DomainError("ion mass must be positive");
    if (!(charge > 0.0)) throw DomainError("ion charge must be positive");
}

double IonSpecies::coulomb_constant() const {
    return charge * charge / (4.0 * kPi * kEps0);
}

double kappa(Orientation o) { return o == Orientation::Axial ? -2.0 : 1.0; }

const char* to_string(Orientation o) { return o == Orientation::Axial ? "axial" : "radial"; }

const char* to_string(Axis a) {
    switch (a) {
        case Axis::X: return "x";
        case Axis::Y: return "y";
        default: return "z";
    }
}

void TrapPotential::validate() const {
    if (double_well_axis == Axis::Y) throw DomainError("double-well axis must be x or z");
    if (!(alpha < 0.0) || !(beta > 0.0))
        throw DomainError("double well requires alpha < 0 and beta > 0");
    for (int k = 0; k < 3; ++k) {
        if (k == well_axis()) continue;
        if (!(curvature[k] > 0.0)) throw DomainError("perpendicular curvatures must be positive");
    }
    if (quartic_z != 0.0 && double_well_axis == Axis::Z)
        throw DomainError("chain-axis quartic needs the double well along x");
}

double TrapPotential::separation() const { return well_separation(alpha, beta); }

double TrapPotential::local_curvature() const { return qsa::local_curvature(alpha); }

double TrapPotential::curvature_on(int axis) const {
    return axis == well_axis() ? -2.0 * alpha : curvature[axis];
}

double TrapPotential::energy(const Eigen::Vector3d& r, double q) const {
    const int w = well_axis();
    double v = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double s = r[k];
        if (k == w) {
            v += 0.5 * alpha * s * s + beta * s * s * s * s / 24.0 - bias_field * s;
        } else {
            v += 0.5 * curvature[k] * s * s;
        }
    }
    if (quartic_z != 0.0 && w != 2) v += quartic_z * std::pow(r[2], 4) / 24.0;
    return q * v;
}

Eigen::Vector3d TrapPotential::gradient(const Eigen::Vector3d& r, double q) const {
    const int w = well_axis();
    Eigen::Vector3d g;
    for (int k = 0; k < 3; ++k) {
        const double s = r[k];
        if (k == w)
            g[k] = alpha * s + beta * s * s * s / 6.0 - bias_field;
        else
            g[k] = curvature[k] * s;
    }
    if (quartic_z != 0.0 && w != 2) g[2] += quartic_z * r[2] * r[2] * r[2] / 6.0;
    return q * g;
}

Eigen::Vector3d TrapPotential::hessian_diag(const Eigen::Vector3d& r, double q) const {
    const int w = well_axis();
    Eigen::Vector3d h;
    for (int k = 0; k < 3; ++k) {
        if (k == w)
            h[k] = alpha + 0.5 * beta * r[k] * r[k];
        else
            h[k] = curvature[k];
    }
    if (quartic_z != 0.0 && w != 2) h[2] += 0.5 * quartic_z * r[2] * r[2];
    return q * h;
}

TrapPotential TrapPotential::axial(double d, double omega_local, const IonSpecies& sp,
                                   double omega_x, double omega_y) {
    TrapPotential p;
    p.double_well_axis = Axis::Z;
    const double aw = sp.mass * omega_local * omega_local / sp.charge;
    p.alpha = -0.5 * aw;
    p.beta = -24.0 * p.alpha / (d * d);
    p.curvature = Eigen::Vector3d(sp.mass * omega_x * omega_x / sp.charge,
                                  sp.mass * omega_y * omega_y / sp.charge, 0.0);
    return p;
}

TrapPotential TrapPotential::radial(double d, double omega_local, const IonSpecies& sp,
                                    double omega_y, double omega_z) {
    TrapPotential p;
    p.double_well_axis = Axis::X;
    const double aw = sp.mass * omega_local * omega_local / sp.charge;
    p.alpha = -0.5 * aw;
    p.beta = -24.0 * p.alpha / (d * d);
    p.curvature = Eigen::Vector3d(0.0, sp.mass * omega_y * omega_y / sp.charge,
                                  sp.mass * omega_z * omega_z / sp.charge);
    return p;
}

double well_separation(double alpha, double beta) {
    if (!(alpha < 0.0) || !(beta > 0.0))
        throw DomainError("no double well: need alpha < 0 and beta > 0");
    return std::sqrt(-24.0 * alpha / beta);
}

double local_curvature(double alpha) {
    if (!(alpha < 0.0)) throw DomainError("no double well: need alpha < 0");
    return -2.0 * alpha;
}

static void check_common(int n, const IonSpecies& sp, double omega_z) {
    if (n < 1) throw DomainError("ion number must be >= 1");
    if (!(omega_z > 0.0)) throw DomainError("trap frequency must be positive");
    sp.validate();
}

double point_charge_k_int(int n, const IonSpecies& sp, double d, Orientation o) {
    if (!(d > 0.0)) throw DomainError("separation must be positive");
    const double Q = n * sp.charge;
    return kappa(o) * Q * Q / (4.0 * kPi * kEps0 * d * d * d);
}

double point_charge_coupling(int n, const IonSpecies& sp, double omega_z, double d, Orientation o) {
    check_common(n, sp, omega_z);
    if (!(d > 0.0)) throw DomainError("separation must be positive");
    return std::abs(kappa(o)) * n * sp.charge * sp.charge /
           (4.0 * kPi * kEps0 * sp.mass * omega_z * d * d * d);
}

bool point_charge_valid(int n, const IonSpecies& sp, double omega_z, double d, Orientation o,
                        double fraction) {
    const double k = std::abs(point_charge_k_int(n, sp, d, o));
    return k < fraction * n * sp.mass * omega_z * omega_z;
}

std::pair<double, double> exact_pair_frequencies(double k_int, int n, const IonSpecies& sp,
                                                 double omega_z) {
    check_common(n, sp, omega_z);
    const double w2 = omega_z * omega_z;
    const double shift = k_int / (n * sp.mass);
    const double rc = w2 + shift;
    const double rs = w2 - shift;
    if (!(rs > 0.0)) throw DomainError("stretch radicand non-positive: overcoupled");
    if (!(rc > 0.0)) throw DomainError("common-mode radicand non-positive: overcoupled");
    return {std::sqrt(rc), std::sqrt(rs)};
}

double interaction_constant_from_splitting(double coupling_rate, int n, const IonSpecies& sp,
                                           double omega_z) {
    check_common(n, sp, omega_z);
    if (coupling_rate < 0.0) throw DomainError("coupling rate must be non-negative");
    if (!(coupling_rate < 2.0 * omega_z)) throw DomainError("coupling rate must be below 2 omega_z");
    return 0.5 * n * sp.mass * coupling_rate *
           std::sqrt(4.0 * omega_z * omega_z - coupling_rate * coupling_rate);
}

}  // namespace qsa
