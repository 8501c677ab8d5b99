#include "qbatt/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qbatt {

namespace {

void require_square(const Matrix& m, const char* who) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument(std::string(who) + ": matrix must be square, got " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (m.rows() == 0) {
        throw std::invalid_argument(std::string(who) + ": dimension must be > 0");
    }
}

}  // namespace

double max_abs(const Matrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(Matrix m) : m_(std::move(m)) {
    require_square(m_, "HermitianOperator");
    const double dev = max_abs(m_ - m_.adjoint());
    if (dev > tol().hermiticity) {
        throw std::invalid_argument("HermitianOperator: not Hermitian, max |A - A†| entry = " +
                                    std::to_string(dev));
    }
}

UnitaryOperator::UnitaryOperator(Matrix m) : m_(std::move(m)) {
    require_square(m_, "UnitaryOperator");
    const Matrix i = Matrix::Identity(m_.rows(), m_.cols());
    const double dev = max_abs(m_ * m_.adjoint() - i);
    if (dev > tol().unitarity) {
        throw std::invalid_argument("UnitaryOperator: not unitary, max |UU† - I| entry = " +
                                    std::to_string(dev));
    }
}

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
    require_square(m_, "DensityMatrix");
    const double herm_dev = max_abs(m_ - m_.adjoint());
    if (herm_dev > tol().hermiticity) {
        throw std::invalid_argument("DensityMatrix: not Hermitian, deviation " +
                                    std::to_string(herm_dev));
    }
    const double tr_dev = std::abs(m_.trace().real() - 1.0) + std::abs(m_.trace().imag());
    if (tr_dev > tol().trace_one) {
        throw std::invalid_argument("DensityMatrix: trace deviates from 1 by " +
                                    std::to_string(tr_dev));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m_, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("DensityMatrix: eigenvalue check failed to converge");
    }
    const double lambda_min = solver.eigenvalues().minCoeff();
    if (lambda_min < tol().psd_floor) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                    std::to_string(lambda_min));
    }
}

Matrix tensor(const Matrix& a, const Matrix& b) {
    require_square(a, "tensor");
    require_square(b, "tensor");
    const Eigen::Index da = a.rows();
    const Eigen::Index db = b.rows();
    Matrix out(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < da; ++j)
            out.block(i * db, j * db, db, db) = a(i, j) * b;
    return out;
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
    return HermitianOperator(tensor(a.matrix(), b.matrix()));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(tensor(a.matrix(), b.matrix()));
}

Matrix partial_trace(const Matrix& rho, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
    require_square(rho, "partial_trace");
    long long prod = 1;
    for (int d : dims) {
        if (d <= 0) throw std::invalid_argument("partial_trace: factor dimensions must be > 0");
        prod *= d;
    }
    if (prod != rho.rows()) {
        throw std::invalid_argument("partial_trace: factor dimensions give " +
                                    std::to_string(prod) + ", matrix has " +
                                    std::to_string(rho.rows()));
    }
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");

    const int k = static_cast<int>(dims.size());
    std::vector<bool> kept(k, false);
    for (int f : keep) {
        if (f < 0 || f >= k) {
            throw std::invalid_argument("partial_trace: keep index " + std::to_string(f) +
                                        " out of range for " + std::to_string(k) + " factors");
        }
        if (kept[f]) throw std::invalid_argument("partial_trace: duplicate keep index");
        kept[f] = true;
    }

    std::vector<int> keep_sorted, traced;
    for (int f = 0; f < k; ++f) (kept[f] ? keep_sorted : traced).push_back(f);

    long long dim_keep = 1, dim_traced = 1;
    for (int f : keep_sorted) dim_keep *= dims[f];
    for (int f : traced) dim_traced *= dims[f];

    // Strides of each factor in the row-major composite index.
    std::vector<long long> stride(k, 1);
    for (int f = k - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

    auto compose = [&](long long ik, long long it) {
        long long idx = 0;
        long long rk = ik, rt = it;
        for (int s = static_cast<int>(keep_sorted.size()) - 1; s >= 0; --s) {
            const int f = keep_sorted[s];
            idx += (rk % dims[f]) * stride[f];
            rk /= dims[f];
        }
        for (int t = static_cast<int>(traced.size()) - 1; t >= 0; --t) {
            const int f = traced[t];
            idx += (rt % dims[f]) * stride[f];
            rt /= dims[f];
        }
        return idx;
    };

    Matrix out = Matrix::Zero(dim_keep, dim_keep);
    for (long long r = 0; r < dim_keep; ++r)
        for (long long c = 0; c < dim_keep; ++c) {
            Complex sum(0.0, 0.0);
            for (long long t = 0; t < dim_traced; ++t) sum += rho(compose(r, t), compose(c, t));
            out(r, c) = sum;
        }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
    return DensityMatrix(partial_trace(rho.matrix(), dims, keep));
}

EigenSystem herm_eig(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("herm_eig: eigendecomposition did not converge for dim " +
                                 std::to_string(h.dim()));
    }
    EigenSystem es{solver.eigenvalues(), solver.eigenvectors()};
    const Matrix recon =
        es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    if (max_abs(recon - h.matrix()) > tol().orthonormal) {
        throw std::runtime_error("herm_eig: reconstruction check failed");
    }
    return es;
}

UnitaryOperator unitary_from_hamiltonian(const HermitianOperator& h, double tau, double hbar) {
    if (tau < 0.0) throw std::invalid_argument("unitary_from_hamiltonian: tau must be >= 0");
    if (hbar <= 0.0) throw std::invalid_argument("unitary_from_hamiltonian: hbar must be > 0");
    const EigenSystem es = herm_eig(h);
    Vector phases(es.dim());
    for (int n = 0; n < es.dim(); ++n) {
        phases(n) = std::exp(Complex(0.0, -tau * es.values(n) / hbar));
    }
    return UnitaryOperator(es.vectors * phases.asDiagonal() * es.vectors.adjoint());
}

DensityMatrix gibbs_state(const HermitianOperator& h, double beta) {
    if (!std::isfinite(beta)) throw std::invalid_argument("gibbs_state: beta must be finite");
    const EigenSystem es = herm_eig(h);
    RealVector x = -beta * es.values;
    const double shift = x.maxCoeff();
    RealVector p = (x.array() - shift).exp();
    p /= p.sum();
    return DensityMatrix(es.vectors * p.cast<Complex>().asDiagonal() * es.vectors.adjoint());
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const EigenSystem es = herm_eig(HermitianOperator(rho.matrix()));
    double s = 0.0;
    for (int n = 0; n < es.dim(); ++n) {
        const double p = es.values(n);
        if (p > tol().log_cutoff) s -= p * std::log(p);
    }
    return s;
}

double relative_entropy(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("relative_entropy: dimension mismatch " +
                                    std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
    const double cutoff = tol().log_cutoff;

    const EigenSystem ea = herm_eig(HermitianOperator(a.matrix()));
    double tr_a_ln_a = 0.0;
    for (int n = 0; n < ea.dim(); ++n) {
        const double p = ea.values(n);
        if (p > cutoff) tr_a_ln_a += p * std::log(p);
    }

    const EigenSystem eb = herm_eig(HermitianOperator(b.matrix()));
    double tr_a_ln_b = 0.0;
    for (int n = 0; n < eb.dim(); ++n) {
        const double q = eb.values(n);
        const Vector v = eb.vectors.col(n);
        const double w = (v.adjoint() * a.matrix() * v)(0, 0).real();
        if (q > cutoff) {
            tr_a_ln_b += w * std::log(q);
        } else if (w > cutoff) {
            throw std::runtime_error(
                "relative_entropy: infinite relative entropy (support of a exceeds support "
                "of b by weight " +
                std::to_string(w) + ")");
        }
    }
    return tr_a_ln_a - tr_a_ln_b;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    const EigenSystem es = herm_eig(HermitianOperator(a.matrix() - b.matrix()));
    return 0.5 * es.values.cwiseAbs().sum();
}

Matrix identity(int n) { return Matrix::Identity(n, n); }

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix pauli_plus() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

Matrix pauli_minus() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}

DensityMatrix projector_state(const Vector& v) {
    const double nrm = v.norm();
    if (nrm <= 0.0) throw std::invalid_argument("projector_state: zero vector");
    const Vector u = v / nrm;
    return DensityMatrix(u * u.adjoint());
}

double expectation(const Matrix& a, const Matrix& rho) { return (a * rho).trace().real(); }

}  // namespace qbatt
