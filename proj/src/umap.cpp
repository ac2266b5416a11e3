#include "signsearch/umap.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "signsearch/errors.hpp"
#include "signsearch/rng.hpp"
#include "signsearch/simd/kernels.hpp"

namespace signsearch {

namespace {

constexpr double kSigmaLo = 1e-3;
constexpr double kSigmaHi = 1e3;
constexpr double kGradClip = 4.0;
constexpr double kRepulseEps = 1e-3;

double clip(double x) { return std::clamp(x, -kGradClip, kGradClip); }

std::uint64_t fnv1a(std::uint64_t h, const void* bytes, std::size_t n) {
    const unsigned char* p = static_cast<const unsigned char*>(bytes);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ull;
    }
    return h;
}

} // namespace

std::pair<double, double> fit_rational_curve(double min_dist, double spread) {
    // Levenberg-Marquardt on (a, b) against 300 samples of the target profile.
    constexpr int kSamples = 300;
    constexpr int kMaxIter = 200;
    std::vector<double> xs(kSamples);
    std::vector<double> ys(kSamples);
    for (int i = 0; i < kSamples; ++i) {
        double x = 3.0 * spread * static_cast<double>(i) / (kSamples - 1);
        xs[i] = x;
        ys[i] = x < min_dist ? 1.0 : std::exp(-(x - min_dist) / spread);
    }

    double a = 1.0;
    double b = 1.0;
    double lambda = 1e-3;
    auto sum_sq_residual = [&](double aa, double bb) {
        double s = 0.0;
        for (int i = 0; i < kSamples; ++i) {
            double f = 1.0 / (1.0 + aa * std::pow(xs[i], 2.0 * bb));
            double r = f - ys[i];
            s += r * r;
        }
        return s;
    };

    double cost = sum_sq_residual(a, b);
    for (int it = 0; it < kMaxIter; ++it) {
        double jtj00 = 0.0;
        double jtj01 = 0.0;
        double jtj11 = 0.0;
        double jtr0 = 0.0;
        double jtr1 = 0.0;
        for (int i = 0; i < kSamples; ++i) {
            double x = xs[i];
            double p = x > 0.0 ? std::pow(x, 2.0 * b) : 0.0;
            double denom = 1.0 + a * p;
            double f = 1.0 / denom;
            double r = f - ys[i];
            double da = -p / (denom * denom);
            double db = x > 0.0 ? -2.0 * a * p * std::log(x) / (denom * denom) : 0.0;
            jtj00 += da * da;
            jtj01 += da * db;
            jtj11 += db * db;
            jtr0 += da * r;
            jtr1 += db * r;
        }
        double m00 = jtj00 * (1.0 + lambda);
        double m11 = jtj11 * (1.0 + lambda);
        double det = m00 * m11 - jtj01 * jtj01;
        if (std::abs(det) < 1e-300) {
            break;
        }
        double step_a = (-jtr0 * m11 + jtr1 * jtj01) / det;
        double step_b = (-jtr1 * m00 + jtr0 * jtj01) / det;
        double cand = sum_sq_residual(a + step_a, b + step_b);
        if (cand < cost) {
            a += step_a;
            b += step_b;
            cost = cand;
            lambda = std::max(lambda * 0.5, 1e-12);
            if (std::abs(step_a) + std::abs(step_b) < 1e-12) {
                break;
            }
        } else {
            lambda *= 4.0;
            if (lambda > 1e12) {
                break;
            }
        }
    }
    return {a, b};
}

KnnGraph knn_graph(const double* data, std::size_t n, std::size_t d, int k) {
    if (k < 1 || static_cast<std::size_t>(k) >= n) {
        throw ParamError("knn_graph: need 1 <= k < n");
    }
    KnnGraph g;
    g.n = n;
    g.k = k;
    g.neighbors.resize(n * static_cast<std::size_t>(k));
    g.distances.resize(n * static_cast<std::size_t>(k));

    std::vector<std::pair<double, int>> cands(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t c = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) {
                continue;
            }
            cands[c++] = {simd::sq_l2(data + i * d, data + j * d, d), static_cast<int>(j)};
        }
        std::partial_sort(cands.begin(), cands.begin() + k, cands.end());
        for (int s = 0; s < k; ++s) {
            g.neighbors[i * static_cast<std::size_t>(k) + s] = cands[s].second;
            g.distances[i * static_cast<std::size_t>(k) + s] = std::sqrt(cands[s].first);
        }
    }
    return g;
}

std::pair<double, double> smooth_knn(std::span<const double> ascending_distances) {
    if (ascending_distances.size() < 2) {
        throw ParamError("smooth_knn: need at least 2 distances");
    }
    const double rho = ascending_distances.front();
    const double target = std::log2(static_cast<double>(ascending_distances.size()));
    double lo = kSigmaLo;
    double hi = kSigmaHi;
    for (int it = 0; it < 64; ++it) {
        double mid = 0.5 * (lo + hi);
        double sum = 0.0;
        for (double dist : ascending_distances) {
            sum += std::exp(-std::max(0.0, dist - rho) / mid);
        }
        // >=: when the sum plateaus exactly at the target (tail terms
        // underflow), sigma must fall to the lower clamp.
        if (sum >= target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return {rho, 0.5 * (lo + hi)};
}

DirectedWeights membership_weights(const KnnGraph& graph) {
    DirectedWeights w;
    w.n = graph.n;
    w.rows.resize(graph.n);
    for (std::size_t i = 0; i < graph.n; ++i) {
        auto [rho, sigma] = smooth_knn(graph.distance_row(i));
        auto nbr = graph.neighbor_row(i);
        auto dist = graph.distance_row(i);
        w.rows[i].reserve(nbr.size());
        for (std::size_t s = 0; s < nbr.size(); ++s) {
            double weight = std::exp(-std::max(0.0, dist[s] - rho) / sigma);
            w.rows[i].emplace_back(nbr[s], weight);
        }
    }
    return w;
}

SymmetricWeights fuzzy_union(const DirectedWeights& directed) {
    std::map<std::pair<int, int>, std::pair<double, double>> pairs;
    for (std::size_t i = 0; i < directed.n; ++i) {
        for (const auto& [j, w] : directed.rows[i]) {
            bool forward = static_cast<int>(i) < j;
            auto key = forward ? std::make_pair(static_cast<int>(i), j)
                               : std::make_pair(j, static_cast<int>(i));
            auto& slot = pairs[key];
            (forward ? slot.first : slot.second) = w;
        }
    }
    SymmetricWeights out;
    out.n = directed.n;
    out.edges.reserve(pairs.size());
    for (const auto& [key, w] : pairs) {
        double u = w.first + w.second - w.first * w.second;
        if (u > 0.0) {
            out.edges.push_back({key.first, key.second, u});
        }
    }
    return out;
}

std::vector<double> optimize_layout(const SymmetricWeights& weights, const UmapParams& params,
                                    std::span<const std::uint64_t> stream_ids) {
    const std::size_t n = weights.n;
    std::vector<std::uint64_t> ids(n);
    if (stream_ids.empty()) {
        std::iota(ids.begin(), ids.end(), 0);
    } else {
        if (stream_ids.size() != n) {
            throw ParamError("optimize_layout: stream id count mismatch");
        }
        ids.assign(stream_ids.begin(), stream_ids.end());
    }

    std::vector<SplitMix64> rng;
    rng.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        rng.emplace_back(SplitMix64::derive(params.seed, ids[i]));
    }

    // id-rank order so negative draws name points by id, not by row position.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return ids[a] < ids[b]; });

    std::vector<double> pts(n * 2);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i * 2] = rng[i].uniform(-10.0, 10.0);
        pts[i * 2 + 1] = rng[i].uniform(-10.0, 10.0);
    }
    if (weights.edges.empty() || params.n_epochs <= 0) {
        return pts;
    }

    // Directed edges, processed in id order; each direction keeps its own
    // weight-proportional sampling schedule.
    struct DirEdge {
        int tail;
        int head;
        double eps; // epochs per sample
        double due;
    };
    double max_w = 0.0;
    for (const auto& e : weights.edges) {
        max_w = std::max(max_w, e.w);
    }
    std::vector<DirEdge> edges;
    edges.reserve(weights.edges.size() * 2);
    for (const auto& e : weights.edges) {
        double eps = max_w / e.w;
        edges.push_back({e.i, e.j, eps, eps});
        edges.push_back({e.j, e.i, eps, eps});
    }
    std::sort(edges.begin(), edges.end(), [&](const DirEdge& a, const DirEdge& b) {
        auto ka = std::make_pair(ids[a.tail], ids[a.head]);
        auto kb = std::make_pair(ids[b.tail], ids[b.head]);
        return ka < kb;
    });

    const double a = params.curve_a;
    const double b = params.curve_b;
    for (int epoch = 0; epoch < params.n_epochs; ++epoch) {
        double alpha =
            params.learning_rate * (1.0 - static_cast<double>(epoch) / params.n_epochs);
        for (DirEdge& e : edges) {
            if (e.due > static_cast<double>(epoch)) {
                continue;
            }
            e.due += e.eps;
            double* yi = pts.data() + static_cast<std::size_t>(e.tail) * 2;
            double* yj = pts.data() + static_cast<std::size_t>(e.head) * 2;
            double dx = yi[0] - yj[0];
            double dy = yi[1] - yj[1];
            double d2 = dx * dx + dy * dy;
            if (d2 > 0.0) {
                double coeff = -2.0 * a * b * std::pow(d2, b - 1.0) / (1.0 + a * std::pow(d2, b));
                double gx = clip(coeff * dx);
                double gy = clip(coeff * dy);
                yi[0] += alpha * gx;
                yi[1] += alpha * gy;
                yj[0] -= alpha * gx;
                yj[1] -= alpha * gy;
            }
            for (int s = 0; s < params.negative_samples; ++s) {
                int t = order[rng[static_cast<std::size_t>(e.tail)].next() % n];
                if (t == e.tail) {
                    continue;
                }
                double* yt = pts.data() + static_cast<std::size_t>(t) * 2;
                double rx = yi[0] - yt[0];
                double ry = yi[1] - yt[1];
                double r2 = rx * rx + ry * ry;
                if (r2 > 0.0) {
                    double coeff = 2.0 * b / ((kRepulseEps + r2) * (1.0 + a * std::pow(r2, b)));
                    yi[0] += alpha * clip(coeff * rx);
                    yi[1] += alpha * clip(coeff * ry);
                } else {
                    yi[0] += alpha * kGradClip;
                    yi[1] += alpha * kGradClip;
                }
            }
        }
    }
    return pts;
}

EmbeddedSet umap_embed(const double* data, std::size_t n, std::size_t d,
                       std::vector<std::string> labels, const UmapParams& params) {
    if (labels.size() != n) {
        throw ParamError("umap_embed: label count mismatch");
    }
    if (n <= static_cast<std::size_t>(params.n_neighbors)) {
        throw ParamError("umap_embed: need more points than n_neighbors");
    }
    KnnGraph graph = knn_graph(data, n, d, params.n_neighbors);
    SymmetricWeights sym = fuzzy_union(membership_weights(graph));

    EmbeddedSet set;
    set.points = optimize_layout(sym, params);
    set.labels = std::move(labels);
    set.method = EmbeddedSet::Method::UMAP;
    std::uint64_t h = 0xcbf29ce484222325ull;
    h = fnv1a(h, &params.n_neighbors, sizeof(params.n_neighbors));
    h = fnv1a(h, &params.min_dist, sizeof(params.min_dist));
    h = fnv1a(h, &params.n_epochs, sizeof(params.n_epochs));
    h = fnv1a(h, &params.learning_rate, sizeof(params.learning_rate));
    h = fnv1a(h, &params.negative_samples, sizeof(params.negative_samples));
    h = fnv1a(h, &params.seed, sizeof(params.seed));
    set.params_hash = h;
    return set;
}

DistanceMatrix embedded_distance_matrix(const EmbeddedSet& set,
                                        std::span<const std::string> query_labels,
                                        std::span<const std::string> ref_labels) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < set.labels.size(); ++i) {
        index.emplace(set.labels[i], i);
    }
    auto locate = [&](const std::string& label) {
        auto it = index.find(label);
        if (it == index.end()) {
            throw LabelError("embedded_distance_matrix: unknown label " + label);
        }
        return it->second;
    };

    DistanceMatrix m;
    m.rows = query_labels.size();
    m.cols = ref_labels.size();
    m.row_labels.assign(query_labels.begin(), query_labels.end());
    m.col_labels.assign(ref_labels.begin(), ref_labels.end());
    m.values.resize(m.rows * m.cols);
    std::vector<std::size_t> qi(m.rows);
    std::vector<std::size_t> ri(m.cols);
    for (std::size_t i = 0; i < m.rows; ++i) {
        qi[i] = locate(query_labels[i]);
    }
    for (std::size_t j = 0; j < m.cols; ++j) {
        ri[j] = locate(ref_labels[j]);
    }
    for (std::size_t i = 0; i < m.rows; ++i) {
        const double* p = set.points.data() + qi[i] * 2;
        for (std::size_t j = 0; j < m.cols; ++j) {
            const double* q = set.points.data() + ri[j] * 2;
            m.values[i * m.cols + j] = std::hypot(p[0] - q[0], p[1] - q[1]);
        }
    }
    return m;
}

} // namespace signsearch
