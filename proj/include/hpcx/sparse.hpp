#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace hpcx {

/// Column-major sparse matrix over an exact or floating scalar ring.
/// Sized for desk-scale complexes: clarity over raw speed, with enough
/// structure sharing that products of the bundled operators stay cheap.
template <class T>
class SparseMat {
  public:
    SparseMat() : rows_(0), cols_(0) {}
    SparseMat(int rows, int cols) : rows_(rows), cols_(cols), col_(cols) {}

    static SparseMat identity(int n) {
        SparseMat m(n, n);
        for (int i = 0; i < n; ++i) m.col_[i][i] = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int r, int c, const T& v) {
        check(r, c);
        if (scalar_is_zero(v)) col_[c].erase(r);
        else col_[c][r] = v;
    }

    void add(int r, int c, const T& v) {
        check(r, c);
        auto it = col_[c].find(r);
        if (it == col_[c].end()) {
            if (!scalar_is_zero(v)) col_[c][r] = v;
        } else {
            it->second += v;
            if (scalar_is_zero(it->second)) col_[c].erase(it);
        }
    }

    T get(int r, int c) const {
        check(r, c);
        auto it = col_[c].find(r);
        return it == col_[c].end() ? T(0) : it->second;
    }

    const std::map<int, T>& column(int c) const { return col_[c]; }
    std::map<int, T>& column_mut(int c) { return col_[c]; }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (auto& c : col_) n += c.size();
        return n;
    }

    bool is_zero() const { return nnz() == 0; }

    SparseMat operator+(const SparseMat& o) const {
        require_same_shape(o);
        SparseMat r = *this;
        for (int c = 0; c < cols_; ++c)
            for (auto& [i, v] : o.col_[c]) r.add(i, c, v);
        return r;
    }

    SparseMat operator-(const SparseMat& o) const {
        require_same_shape(o);
        SparseMat r = *this;
        for (int c = 0; c < cols_; ++c)
            for (auto& [i, v] : o.col_[c]) r.add(i, c, -v);
        return r;
    }

    SparseMat operator-() const { return scaled(T(-1)); }

    SparseMat scaled(const T& s) const {
        SparseMat r(rows_, cols_);
        if (scalar_is_zero(s)) return r;
        for (int c = 0; c < cols_; ++c)
            for (auto& [i, v] : col_[c]) r.col_[c][i] = s * v;
        return r;
    }

    SparseMat operator*(const SparseMat& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("SparseMat: shape mismatch in product");
        SparseMat r(rows_, o.cols_);
        for (int c = 0; c < o.cols_; ++c) {
            std::map<int, T>& out = r.col_[c];
            for (auto& [k, v] : o.col_[c]) {
                for (auto& [i, w] : col_[k]) {
                    auto it = out.find(i);
                    if (it == out.end()) out[i] = w * v;
                    else {
                        it->second += w * v;
                        if (scalar_is_zero(it->second)) out.erase(it);
                    }
                }
            }
        }
        return r;
    }

    /// Conjugate transpose (plain transpose over Rational).
    SparseMat adjoint() const {
        SparseMat r(cols_, rows_);
        for (int c = 0; c < cols_; ++c)
            for (auto& [i, v] : col_[c]) r.col_[i][c] = conj_scalar(v);
        return r;
    }

    std::vector<T> apply(const std::vector<T>& x) const {
        if ((int)x.size() != cols_) throw std::invalid_argument("SparseMat: vector length mismatch");
        std::vector<T> y(rows_, T(0));
        for (int c = 0; c < cols_; ++c) {
            if (scalar_is_zero(x[c])) continue;
            for (auto& [i, v] : col_[c]) y[i] += v * x[c];
        }
        return y;
    }

    /// Rows/cols restricted to index subsets (order preserved).
    SparseMat submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
        std::vector<int> rpos(rows_, -1);
        for (int i = 0; i < (int)rows.size(); ++i) rpos[rows[i]] = i;
        SparseMat r((int)rows.size(), (int)cols.size());
        for (int j = 0; j < (int)cols.size(); ++j)
            for (auto& [i, v] : col_[cols[j]])
                if (rpos[i] >= 0) r.col_[j][rpos[i]] = v;
        return r;
    }

    /// Writes this matrix into dst at the given offset.
    void place_into(SparseMat& dst, int row_off, int col_off, const T& scale = T(1)) const {
        for (int c = 0; c < cols_; ++c)
            for (auto& [i, v] : col_[c]) dst.add(row_off + i, col_off + c, scale * v);
    }

    template <class U, class F>
    SparseMat<U> map(F f) const {
        SparseMat<U> r(rows_, cols_);
        for (int c = 0; c < cols_; ++c)
            for (auto& [i, v] : col_[c]) r.set(i, c, f(v));
        return r;
    }

    SparseMat<std::complex<double>> to_complex() const {
        return map<std::complex<double>>([](const T& v) { return to_cd(v); });
    }

    Eigen::MatrixXcd to_dense() const {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows_, cols_);
        for (int c = 0; c < cols_; ++c)
            for (auto& [i, v] : col_[c]) m(i, c) = to_cd(v);
        return m;
    }

    Eigen::SparseMatrix<std::complex<double>> to_eigen_sparse() const {
        std::vector<Eigen::Triplet<std::complex<double>>> trips;
        trips.reserve(nnz());
        for (int c = 0; c < cols_; ++c)
            for (auto& [i, v] : col_[c]) trips.emplace_back(i, c, to_cd(v));
        Eigen::SparseMatrix<std::complex<double>> m(rows_, cols_);
        m.setFromTriplets(trips.begin(), trips.end());
        return m;
    }

    /// Largest |entry| as a double; exact-zero test is is_zero().
    double max_abs() const {
        double m = 0.0;
        for (int c = 0; c < cols_; ++c)
            for (auto& [i, v] : col_[c]) m = std::max(m, abs_cd(v));
        return m;
    }

    friend bool operator==(const SparseMat& a, const SparseMat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        return (a - b).is_zero();
    }

  private:
    void check(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("SparseMat index");
    }
    void require_same_shape(const SparseMat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("SparseMat: shape mismatch");
    }

    int rows_, cols_;
    std::vector<std::map<int, T>> col_;
};

using SparseQ = SparseMat<Rational>;
using SparseGQ = SparseMat<GaussQ>;
using SparseCD = SparseMat<std::complex<double>>;

inline SparseGQ to_gauss_mat(const SparseQ& m) {
    return m.map<GaussQ>([](const Rational& v) { return GaussQ(v); });
}

inline SparseGQ to_gauss_mat(const SparseGQ& m) { return m; }

}  // namespace hpcx
