// operator_core.hpp — dense complex-matrix kernel: validated operator types,
// Hermitian eigendecomposition, tensor products, partial traces, Gibbs states,
// and the entropic functionals used by every other module.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbatt {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

// ----------------------------- Tolerance record -----------------------------

// Every structural check in the library reads from this single record.
struct Tolerances {
    double hermiticity = 1e-12;   // max |A - A†| entry at construction
    double unitarity = 1e-10;     // max |UU† - I| entry
    double trace_one = 1e-12;     // |Tr ρ - 1|
    double psd_floor = -1e-10;    // smallest admissible state eigenvalue
    double orthonormal = 1e-10;   // eigenvector set and reconstruction checks
    double log_cutoff = 1e-12;    // eigenvalues below this are 0 in logs/support
    double commutator = 1e-10;    // max-entry bound for equilibrium commutators
    double first_law = 1e-10;     // |ΔE - W - Q| in thermodynamic reports
    double entropy_floor = -1e-10; // admissible numerical negativity of Σ
    double column_sum = 1e-10;    // stochastic-matrix column normalization
    double prob_bound = 1e-12;    // admissible excursion outside [0,1]
    double atom_merge = 1e-9;     // relative merge tolerance for atoms
    double degeneracy_gap = 1e-9; // minimal admissible gap of a system spectrum
    double regularity = 1e-12;    // positive-entry threshold for regular matrices
    double amplitude_prune = 1e-14; // composite-amplitude pruning threshold
};

inline const Tolerances& tol() {
    static const Tolerances t{};
    return t;
}

// ------------------------------- Domain types --------------------------------

// Square complex matrix verified Hermitian at construction.
class HermitianOperator {
public:
    explicit HermitianOperator(Matrix m);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const { return m_; }

private:
    Matrix m_;
};

// Square complex matrix verified unitary at construction.
class UnitaryOperator {
public:
    explicit UnitaryOperator(Matrix m);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const { return m_; }

private:
    Matrix m_;
};

// State: Hermitian, unit trace, positive semidefinite (within tolerances).
class DensityMatrix {
public:
    explicit DensityMatrix(Matrix m);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const { return m_; }

private:
    Matrix m_;
};

// Eigenvalues in non-decreasing order with orthonormal column eigenvectors.
struct EigenSystem {
    RealVector values;
    Matrix vectors;

    int dim() const { return static_cast<int>(values.size()); }
};

// -------------------------------- Operations ---------------------------------

// Kronecker product, (A ⊗ B)[(i,k),(j,l)] = A(i,j) B(k,l).
Matrix tensor(const Matrix& a, const Matrix& b);
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// Partial trace over the factors not listed in `keep`. `dims` are the factor
// dimensions in tensor order; the kept factors preserve their relative order.
Matrix partial_trace(const Matrix& rho, const std::vector<int>& dims,
                     const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep);

EigenSystem herm_eig(const HermitianOperator& h);

// U = V diag(e^{-i τ λ / ħ}) V† from the eigensystem of H.
UnitaryOperator unitary_from_hamiltonian(const HermitianOperator& h, double tau,
                                         double hbar);

// ω_β(H) = e^{-βH}/Z. Negative β is allowed; exponents are shifted by their
// maximum before exponentiation so any finite β is safe.
DensityMatrix gibbs_state(const HermitianOperator& h, double beta);

// D(a‖b) = Tr[a ln a] - Tr[a ln b] in nats. Throws if supp(a) ⊄ supp(b).
double relative_entropy(const DensityMatrix& a, const DensityMatrix& b);

// S(ρ) = -Tr[ρ ln ρ] in nats.
double von_neumann_entropy(const DensityMatrix& rho);

// (1/2)‖ρ - σ‖₁.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// ------------------------------- Constructors --------------------------------

Matrix identity(int n);
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix pauli_plus();   // |↑⟩⟨↓| = (σˣ + iσʸ)/2
Matrix pauli_minus();  // |↓⟩⟨↑|

// |v⟩⟨v| as a validated state.
DensityMatrix projector_state(const Vector& v);

// Real part of Tr[A ρ]; A Hermitian makes this the expectation value.
double expectation(const Matrix& a, const Matrix& rho);

double max_abs(const Matrix& a);

}  // namespace qbatt
