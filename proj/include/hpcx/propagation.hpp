#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "sparse.hpp"

namespace hpcx {

/// Propagation of an operator: the largest control-map distance over its
/// support, with the realizing basis pair as witness.
struct PropagationMeasure {
    double value = 0.0;
    int witness_row = -1, witness_col = -1;
};

inline double control_distance(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    std::size_t d = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < d; ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
    // mismatched ambient dimensions: treat missing coordinates as zero
    for (std::size_t i = d; i < x.size(); ++i) s += x[i] * x[i];
    for (std::size_t i = d; i < y.size(); ++i) s += y[i] * y[i];
    return std::sqrt(s);
}

template <class T>
PropagationMeasure propagation(const SparseMat<T>& op,
                               const std::vector<std::vector<double>>& row_control,
                               const std::vector<std::vector<double>>& col_control) {
    PropagationMeasure m;
    for (int c = 0; c < op.cols(); ++c)
        for (auto& [r, v] : op.column(c)) {
            double d = control_distance(row_control[r], col_control[c]);
            if (d > m.value) {
                m.value = d;
                m.witness_row = r;
                m.witness_col = c;
            }
        }
    return m;
}

template <class T>
PropagationMeasure propagation(const SparseMat<T>& op,
                               const std::vector<std::vector<double>>& control) {
    return propagation(op, control, control);
}

}  // namespace hpcx
