#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sparse.hpp"

namespace hpcx {

/// One certified sample of a one-parameter operator family.
struct PathSample {
    double t = 0;
    std::string segment;
    bool invertible = false;     // odd family: operator certified invertible
    double min_singular = 0;     // odd: of the sampled operator; even: spectral gap of B +- S
    long rank_difference = 0;    // even family: n_+(B+S) - n_+(B-S) at this sample
    double propagation = 0;
    std::optional<SparseCD> op;  // kept when the path is small enough to store
};

/// Sampled one-parameter family of operators with per-sample certificates.
struct OperatorPath {
    bool even = false;  // even families track projection differences
    std::vector<PathSample> samples;
    std::optional<SparseGQ> endpoint0_exact, endpoint1_exact;
    std::string note;

    bool all_certified(double tol) const {
        for (auto& s : samples) {
            if (even) {
                if (s.min_singular <= tol) return false;
            } else if (!s.invertible || s.min_singular <= tol) {
                return false;
            }
        }
        return !samples.empty();
    }

    bool rank_difference_constant() const {
        for (auto& s : samples)
            if (s.rank_difference != samples.front().rank_difference) return false;
        return true;
    }

    double max_propagation() const {
        double m = 0;
        for (auto& s : samples) m = std::max(m, s.propagation);
        return m;
    }

    void append(const OperatorPath& other) {
        samples.insert(samples.end(), other.samples.begin(), other.samples.end());
        endpoint1_exact = other.endpoint1_exact;
    }
};

}  // namespace hpcx
