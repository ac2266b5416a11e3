#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "signsearch/distance.hpp"

namespace signsearch {

// Least-squares fit of the embedding curve 1/(1 + a*d^(2b)) to the ideal
// min_dist/spread membership profile (exp decay past min_dist).
std::pair<double, double> fit_rational_curve(double min_dist, double spread = 1.0);

struct UmapParams {
    int n_neighbors = 15;
    double min_dist = 0.1;
    int n_epochs = 200;
    double learning_rate = 1.0;
    int negative_samples = 5;
    std::uint64_t seed = 0;
    double curve_a = 0.0;
    double curve_b = 0.0;

    UmapParams() { rederive_curve(); }

    // Call after changing min_dist.
    void rederive_curve() { std::tie(curve_a, curve_b) = fit_rational_curve(min_dist); }
};

// Exact k nearest neighbors (Euclidean, self excluded, ties by lower point
// index). neighbors/distances are n*k row-major with distances ascending.
struct KnnGraph {
    std::size_t n = 0;
    int k = 0;
    std::vector<int> neighbors;
    std::vector<double> distances;

    std::span<const int> neighbor_row(std::size_t i) const {
        return {neighbors.data() + i * static_cast<std::size_t>(k), static_cast<std::size_t>(k)};
    }
    std::span<const double> distance_row(std::size_t i) const {
        return {distances.data() + i * static_cast<std::size_t>(k), static_cast<std::size_t>(k)};
    }
};

KnnGraph knn_graph(const double* data, std::size_t n, std::size_t d, int k);

// Per-point membership calibration: rho = nearest distance, sigma solved by
// 64-step bisection of sum_i exp(-max(0, d_i - rho)/sigma) = log2(k), with
// sigma confined to [1e-3, 1e3].
std::pair<double, double> smooth_knn(std::span<const double> ascending_distances);

// Directed membership weights w_ij over each point's neighbor list.
struct DirectedWeights {
    std::size_t n = 0;
    std::vector<std::vector<std::pair<int, double>>> rows;
};

DirectedWeights membership_weights(const KnnGraph& graph);

// Probabilistic union w_ij + w_ji - w_ij*w_ji, one record per unordered pair.
struct SymmetricWeights {
    struct Edge {
        int i;
        int j;
        double w;
    };
    std::size_t n = 0;
    std::vector<Edge> edges;
};

SymmetricWeights fuzzy_union(const DirectedWeights& directed);

// Seeded SGD layout in 2-D. Points start uniformly in [-10, 10]^2, each
// point draws from its own PRNG stream keyed by (seed, stream_id), edges are
// sampled proportionally to weight, and each attractive update is paired
// with negative_samples repulsive updates. Identical inputs and seed give
// bitwise identical coordinates; relabeling points via stream_ids permutes
// the output exactly.
std::vector<double> optimize_layout(const SymmetricWeights& weights, const UmapParams& params,
                                    std::span<const std::uint64_t> stream_ids = {});

struct EmbeddedSet {
    enum class Method { PCA, UMAP };
    std::vector<double> points; // n x 2
    std::vector<std::string> labels;
    Method method = Method::UMAP;
    std::uint64_t params_hash = 0;
};

// Whole pipeline: knn -> smooth_knn -> directed weights -> fuzzy union ->
// layout. Requires n > n_neighbors.
EmbeddedSet umap_embed(const double* data, std::size_t n, std::size_t d,
                       std::vector<std::string> labels, const UmapParams& params);

// 2-D Euclidean distances between named embedded points. Unknown labels
// raise LabelError.
DistanceMatrix embedded_distance_matrix(const EmbeddedSet& set,
                                        std::span<const std::string> query_labels,
                                        std::span<const std::string> ref_labels);

} // namespace signsearch
