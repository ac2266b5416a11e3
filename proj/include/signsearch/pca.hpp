#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace signsearch {

// Top-2 principal components of a data matrix. Component rows are unit-norm,
// mutually orthogonal, and sign-fixed so each row's largest-magnitude entry
// is positive; explained variances are the matching covariance eigenvalues
// (sample covariance, divisor N-1) in descending order.
struct PcaModel {
    std::vector<double> mean;
    std::array<std::vector<double>, 2> components;
    std::array<double, 2> explained_variance{0.0, 0.0};

    std::size_t dim() const { return mean.size(); }
};

// Fit by deterministic power iteration with deflation (tolerance 1e-10,
// at most 10000 iterations per component; EigenConvergenceError beyond that).
// Rank-0 input raises DegenerateDataError; rank-1 input yields a zero second
// variance with an arbitrary-but-deterministic orthogonal second component.
PcaModel pca_fit(const double* data, std::size_t n, std::size_t d);

inline PcaModel pca_fit(const std::vector<double>& data, std::size_t n, std::size_t d) {
    return pca_fit(data.data(), n, d);
}

// components * (v - mean). ShapeError on dimension mismatch.
std::array<double, 2> pca_project(const PcaModel& model, std::span<const double> v);

} // namespace signsearch
