#pragma once

#include "qsa/core.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <vector>

namespace qsa {

using cplx = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

struct ModeSpec {
    double frequency = 0.0;  // rad/s, informational
    int cutoff = 4;  // at least 4
};

// qubits first (qubit 0 most significant, |S> = 0, |D> = 1), then modes in order
struct HilbertSpec {
    int n_qubits = 0;
    std::vector<ModeSpec> modes;
    long long budget = 1LL << 22;

    void validate() const;
    long long dimension() const;
    int qubit_dimension() const { return 1 << n_qubits; }
    long long mode_dimension() const;

    // operator acting on one qubit, identity elsewhere
    SpMat qubit_op(int qubit, const Eigen::Matrix2cd& op) const;
    SpMat annihilation(int mode) const;
    SpMat number(int mode) const;
    SpMat identity() const;

    // basis index of a product state
    long long index(const std::vector<int>& qubits, const std::vector<int>& fock) const;
    int qubit_of(long long index, int qubit) const;
    int fock_of(long long index, int mode) const;
    long long mode_stride(int mode) const;
};

Eigen::Matrix2cd pauli_x();
Eigen::Matrix2cd pauli_y();
Eigen::Matrix2cd pauli_z();

enum class StateKind { Pure, Density };

struct QuantumState {
    HilbertSpec spec;
    StateKind kind = StateKind::Pure;
    Eigen::VectorXcd psi;
    Eigen::MatrixXcd rho;

    static QuantumState product(const HilbertSpec& spec, const std::vector<int>& qubits,
                                const std::vector<int>& fock);
    double norm() const;  // <psi|psi> or tr rho
    void validate(double tol = 1e-9) const;
    Eigen::MatrixXcd density() const;
    // trace over all modes
    Eigen::MatrixXcd reduced_qubits() const;
};

// tr_modes of |psi><psi| for a pure vector laid out as [qubits][modes]
Eigen::MatrixXcd reduce_to_qubits(const Eigen::VectorXcd& psi, int qubit_dim);
Eigen::MatrixXcd reduce_to_qubits(const Eigen::MatrixXcd& rho, int qubit_dim);

double purity(const Eigen::MatrixXcd& rho);

}  // namespace qsa
