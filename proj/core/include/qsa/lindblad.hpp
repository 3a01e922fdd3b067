#pragma once

#include "qsa/hilbert.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace qsa {

// amplitude * op * exp(-i detuning t) + h.c.
struct DrivenTerm {
    SpMat op;
    cplx amplitude = 1.0;
    double detuning = 0.0;
};

// H(t) = h0 + sum of driven terms, dissipators D[L] for every collapse operator
struct OpenSystem {
    long long dim = 0;
    SpMat h0;
    std::vector<DrivenTerm> drives;
    std::vector<SpMat> collapse;

    void validate() const;
};

struct OdeOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-11;
};

// Schrodinger evolution, collapse operators ignored
Eigen::VectorXcd evolve_pure(const OpenSystem& sys, const Eigen::VectorXcd& psi, double t0,
                             double t1, const OdeOptions& o = {});

// master equation with H_eff = H - i/2 sum L^dag L
Eigen::MatrixXcd evolve_density(const OpenSystem& sys, const Eigen::MatrixXcd& rho, double t0,
                                double t1, const OdeOptions& o = {});

struct TrajectoryOptions {
    int trajectories = 200;
    std::uint64_t seed = 0;
    int jobs = 1;
    OdeOptions ode;
};

struct TrajectoryAverage {
    Eigen::MatrixXcd mean;
    Eigen::MatrixXcd standard_error;  // element-wise, real and imaginary parts combined
    long long jumps = 0;
};

// Monte-Carlo wave functions; `observe` maps each normalised final state to a matrix
TrajectoryAverage average_trajectories(
    const OpenSystem& sys, const Eigen::VectorXcd& psi, double t0, double t1,
    const TrajectoryOptions& o,
    const std::function<Eigen::MatrixXcd(const Eigen::VectorXcd&)>& observe);

}  // namespace qsa
