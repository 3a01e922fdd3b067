#include "qsa/hilbert.hpp"

#include <cmath>
#include <string>

namespace qsa {

Eigen::Matrix2cd pauli_x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}
Eigen::Matrix2cd pauli_y() {
    Eigen::Matrix2cd m;
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}
Eigen::Matrix2cd pauli_z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}

void HilbertSpec::validate() const {
    if (n_qubits < 0 || n_qubits > 20) throw DomainError("qubit count out of range");
    for (const auto& m : modes)
        if (m.cutoff < 4) throw DomainError("Fock cutoff must be at least 4");
    if (dimension() > budget)
        throw DomainError("Hilbert dimension " + std::to_string(dimension()) + " exceeds the budget");
}

long long HilbertSpec::mode_dimension() const {
    long long d = 1;
    for (const auto& m : modes) d *= m.cutoff;
    return d;
}

long long HilbertSpec::dimension() const { return static_cast<long long>(qubit_dimension()) * mode_dimension(); }

namespace {

// I_left (x) op (x) I_right as a sparse matrix
SpMat embed(const Eigen::MatrixXcd& op, long long left, long long right) {
    const long long k = op.rows();
    const long long dim = left * k * right;
    std::vector<Eigen::Triplet<cplx>> trip;
    for (long long l = 0; l < left; ++l)
        for (long long i = 0; i < k; ++i)
            for (long long j = 0; j < k; ++j) {
                const cplx v = op(i, j);
                if (v == cplx(0.0)) continue;
                for (long long r = 0; r < right; ++r)
                    trip.emplace_back((l * k + i) * right + r, (l * k + j) * right + r, v);
            }
    SpMat m(dim, dim);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

}  // namespace

SpMat HilbertSpec::qubit_op(int q, const Eigen::Matrix2cd& op) const {
    if (q < 0 || q >= n_qubits) throw DomainError("qubit index out of range");
    const long long left = 1LL << q;
    const long long right = (1LL << (n_qubits - q - 1)) * mode_dimension();
    return embed(op, left, right);
}

SpMat HilbertSpec::annihilation(int mode) const {
    if (mode < 0 || mode >= static_cast<int>(modes.size())) throw DomainError("mode index out of range");
    const int c = modes[mode].cutoff;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(c, c);
    for (int n = 1; n < c; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    long long left = qubit_dimension(), right = 1;
    for (int k = 0; k < mode; ++k) left *= modes[k].cutoff;
    for (std::size_t k = mode + 1; k < modes.size(); ++k) right *= modes[k].cutoff;
    return embed(a, left, right);
}

SpMat HilbertSpec::number(int mode) const {
    SpMat a = annihilation(mode);
    return SpMat(a.adjoint() * a);
}

SpMat HilbertSpec::identity() const {
    SpMat m(dimension(), dimension());
    m.setIdentity();
    return m;
}

long long HilbertSpec::index(const std::vector<int>& qubits, const std::vector<int>& fock) const {
    if (static_cast<int>(qubits.size()) != n_qubits || fock.size() != modes.size())
        throw DomainError("product state does not match the Hilbert space");
    long long idx = 0;
    for (int q : qubits) {
        if (q != 0 && q != 1) throw DomainError("qubit labels are 0 (S) or 1 (D)");
        idx = idx * 2 + q;
    }
    for (std::size_t m = 0; m < modes.size(); ++m) {
        if (fock[m] < 0 || fock[m] >= modes[m].cutoff) throw DomainError("Fock level beyond cutoff");
        idx = idx * modes[m].cutoff + fock[m];
    }
    return idx;
}

long long HilbertSpec::mode_stride(int mode) const {
    if (mode < 0 || mode >= static_cast<int>(modes.size())) throw DomainError("mode index out of range");
    long long s = 1;
    for (std::size_t k = mode + 1; k < modes.size(); ++k) s *= modes[k].cutoff;
    return s;
}

int HilbertSpec::fock_of(long long idx, int mode) const {
    return static_cast<int>((idx / mode_stride(mode)) % modes[mode].cutoff);
}

int HilbertSpec::qubit_of(long long idx, int q) const {
    if (q < 0 || q >= n_qubits) throw DomainError("qubit index out of range");
    const long long qi = idx / mode_dimension();
    return static_cast<int>((qi >> (n_qubits - q - 1)) & 1);
}

QuantumState QuantumState::product(const HilbertSpec& spec, const std::vector<int>& qubits,
                                   const std::vector<int>& fock) {
    spec.validate();
    QuantumState s;
    s.spec = spec;
    s.kind = StateKind::Pure;
    s.psi = Eigen::VectorXcd::Zero(spec.dimension());
    s.psi[spec.index(qubits, fock)] = 1.0;
    return s;
}

double QuantumState::norm() const {
    return kind == StateKind::Pure ? psi.squaredNorm() : rho.trace().real();
}

void QuantumState::validate(double tol) const {
    if (std::abs(norm() - 1.0) > tol) throw DomainError("state is not normalised");
    if (kind == StateKind::Density) {
        if ((rho - rho.adjoint()).norm() > tol * std::max(1.0, rho.norm()))
            throw DomainError("density operator is not Hermitian");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho + rho.adjoint()));
        if (es.eigenvalues().minCoeff() < -tol) throw DomainError("density operator is not positive");
    }
}

Eigen::MatrixXcd QuantumState::density() const {
    return kind == StateKind::Pure ? Eigen::MatrixXcd(psi * psi.adjoint()) : rho;
}

Eigen::MatrixXcd QuantumState::reduced_qubits() const {
    return kind == StateKind::Pure ? reduce_to_qubits(psi, spec.qubit_dimension())
                                   : reduce_to_qubits(rho, spec.qubit_dimension());
}

Eigen::MatrixXcd reduce_to_qubits(const Eigen::VectorXcd& psi, int qd) {
    const Eigen::Index md = psi.size() / qd;
    // rows: qubit index, columns: mode index
    Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(psi.data(), qd, md);
    return m * m.adjoint();
}

Eigen::MatrixXcd reduce_to_qubits(const Eigen::MatrixXcd& rho, int qd) {
    const Eigen::Index md = rho.rows() / qd;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(qd, qd);
    for (int i = 0; i < qd; ++i)
        for (int j = 0; j < qd; ++j) out(i, j) = rho.block(i * md, j * md, md, md).trace();
    return out;
}

double purity(const Eigen::MatrixXcd& rho) { return (rho * rho).trace().real(); }

}  // namespace qsa
