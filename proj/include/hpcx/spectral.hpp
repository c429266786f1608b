#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include <complex>
#include <vector>

#include "errors.hpp"
#include "sparse.hpp"

namespace hpcx {

/// Eigenvalues of a Hermitian operator given as a sparse matrix (densified;
/// the bundled complexes stay comfortably inside dense range).
inline Eigen::VectorXd hermitian_eigenvalues(const SparseCD& A) {
    Eigen::MatrixXcd m = A.to_dense();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw Error(ErrorKind::SpectralGapFailure, "eigensolver failed to converge");
    return es.eigenvalues();
}

struct InertiaCount {
    int positive = 0, negative = 0, near_zero = 0;
    double min_abs = 0;  // spectral gap around 0
};

inline InertiaCount hermitian_inertia(const SparseCD& A, double gap_tol) {
    Eigen::VectorXd ev = hermitian_eigenvalues(A);
    InertiaCount c;
    c.min_abs = ev.size() ? std::abs(ev[0]) : 0.0;
    for (int i = 0; i < ev.size(); ++i) {
        c.min_abs = std::min(c.min_abs, std::abs(ev[i]));
        if (ev[i] > gap_tol) c.positive++;
        else if (ev[i] < -gap_tol) c.negative++;
        else c.near_zero++;
    }
    return c;
}

/// Smallest singular value; Hermitian structure is not assumed.
/// Dense route for moderate sizes, SparseLU inverse iteration above that.
inline double min_singular_value(const SparseCD& A, int dense_threshold = 1600) {
    if (A.rows() != A.cols()) throw Error(ErrorKind::InputError, "min_singular_value: square only");
    const int n = A.rows();
    if (n == 0) return 0.0;
    if (n <= dense_threshold) {
        Eigen::MatrixXcd m = A.to_dense();
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        return svd.singularValues()(svd.singularValues().size() - 1);
    }
    // power iteration on (A^* A)^{-1} via one LU factorization
    Eigen::SparseMatrix<std::complex<double>> S = A.to_eigen_sparse();
    S.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<std::complex<double>>> lu(S);
    if (lu.info() != Eigen::Success) return 0.0;  // numerically singular
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(n).normalized();
    double sigma = 0.0;
    for (int it = 0; it < 30; ++it) {
        Eigen::VectorXcd w = lu.solve(v);
        Eigen::VectorXcd u = lu.adjoint().solve(w.normalized());
        double nrm = u.norm();
        if (nrm == 0) break;
        double next = 1.0 / std::sqrt(nrm);
        u /= nrm;
        if (it > 3 && std::abs(next - sigma) < 1e-10 * std::max(1.0, next)) { sigma = next; break; }
        sigma = next;
        v = u;
    }
    return sigma;
}

/// Operator norm estimate (largest singular value); dense for small, power
/// iteration otherwise.
inline double operator_norm(const SparseCD& A, int dense_threshold = 1600) {
    if (A.rows() == 0 || A.cols() == 0) return 0.0;
    if (A.rows() <= dense_threshold && A.cols() <= dense_threshold) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A.to_dense());
        return svd.singularValues()(0);
    }
    Eigen::SparseMatrix<std::complex<double>> S = A.to_eigen_sparse();
    Eigen::VectorXcd v = Eigen::VectorXcd::Random(A.cols()).normalized();
    double nrm = 0;
    for (int it = 0; it < 60; ++it) {
        Eigen::VectorXcd w = (S * v).eval();
        Eigen::VectorXcd u = S.adjoint() * w;
        double nn = std::sqrt(u.norm());
        if (it > 5 && std::abs(nn - nrm) < 1e-9 * std::max(1.0, nn)) { nrm = nn; break; }
        nrm = nn;
        v = u.normalized();
    }
    return nrm;
}

}  // namespace hpcx
