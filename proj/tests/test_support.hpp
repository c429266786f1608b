#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <hpcx/io.hpp>
#include <hpcx/sparse.hpp>

#include <string>
#include <vector>

/// Matcher for hpcx::Error kinds.
class ErrorKindIs : public Catch::Matchers::MatcherBase<hpcx::Error> {
  public:
    explicit ErrorKindIs(hpcx::ErrorKind k) : kind_(k) {}
    bool match(const hpcx::Error& e) const override { return e.kind() == kind_; }
    std::string describe() const override {
        return std::string("has kind ") + hpcx::error_kind_name(kind_);
    }

  private:
    hpcx::ErrorKind kind_;
};

inline std::string data_path(const std::string& name) {
    return std::string(HPCX_DATA_DIR) + "/" + name;
}

inline hpcx::SimplicialComplex load_data(const std::string& name) {
    return hpcx::load_complex(data_path(name));
}

/// Independent rank oracle: dense fraction Gaussian elimination, written
/// separately from the library's sparse column reduction.
inline int dense_rank_oracle(const hpcx::SparseQ& A) {
    std::vector<std::vector<hpcx::Rational>> m(A.rows(),
                                               std::vector<hpcx::Rational>(A.cols(), hpcx::Rational(0)));
    for (int c = 0; c < A.cols(); ++c)
        for (auto& [r, v] : A.column(c)) m[r][c] = v;
    int rank = 0;
    int row = 0;
    for (int col = 0; col < A.cols() && row < A.rows(); ++col) {
        int piv = -1;
        for (int r = row; r < A.rows(); ++r)
            if (m[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(m[piv], m[row]);
        for (int r = 0; r < A.rows(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            hpcx::Rational f = m[r][col] / m[row][col];
            for (int c2 = col; c2 < A.cols(); ++c2) m[r][c2] -= f * m[row][c2];
        }
        ++row;
        ++rank;
    }
    return rank;
}
