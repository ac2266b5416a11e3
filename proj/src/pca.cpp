#include "signsearch/pca.hpp"

#include <cmath>
#include <string>

#include "signsearch/errors.hpp"
#include "signsearch/rng.hpp"
#include "signsearch/simd/kernels.hpp"

namespace signsearch {

namespace {

constexpr double kTolerance = 1e-10;
constexpr int kMaxIterations = 10000;

double norm(const std::vector<double>& v) {
    return std::sqrt(simd::dot(v.data(), v.data(), v.size()));
}

void normalize(std::vector<double>& v) {
    double s = norm(v);
    for (double& x : v) {
        x /= s;
    }
}

// v -= (u . v) u for unit u
void project_out(std::vector<double>& v, const std::vector<double>& u) {
    double c = simd::dot(u.data(), v.data(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] -= c * u[i];
    }
}

void fix_sign(std::vector<double>& v) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (std::abs(v[i]) > std::abs(v[arg])) {
            arg = i;
        }
    }
    if (v[arg] < 0.0) {
        for (double& x : v) {
            x = -x;
        }
    }
}

// Deterministic fallback direction orthogonal to `against` (may be null).
std::vector<double> orthogonal_unit(std::size_t d, const std::vector<double>* against) {
    for (std::size_t q = 0; q < d; ++q) {
        std::vector<double> u(d, 0.0);
        u[q] = 1.0;
        if (against != nullptr) {
            project_out(u, *against);
        }
        if (norm(u) > 0.5) {
            normalize(u);
            return u;
        }
    }
    throw DegenerateDataError("pca: no orthogonal direction found");
}

// Covariance matvec without forming the D x D matrix:
// w = Xc^T (Xc v) / (n - 1), with deflation of already-found components.
class CovarianceOp {
public:
    CovarianceOp(std::vector<double> centered, std::size_t n, std::size_t d)
        : centered_(std::move(centered)), n_(n), d_(d) {}

    std::vector<double> apply(const std::vector<double>& v,
                              const std::vector<double>* deflate_vec, double deflate_val) const {
        std::vector<double> w(d_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            const double* row = centered_.data() + i * d_;
            double t = simd::dot(row, v.data(), d_);
            for (std::size_t j = 0; j < d_; ++j) {
                w[j] += t * row[j];
            }
        }
        double inv = 1.0 / static_cast<double>(n_ - 1);
        for (double& x : w) {
            x *= inv;
        }
        if (deflate_vec != nullptr) {
            double c = simd::dot(deflate_vec->data(), v.data(), d_);
            for (std::size_t j = 0; j < d_; ++j) {
                w[j] -= deflate_val * c * (*deflate_vec)[j];
            }
        }
        return w;
    }

private:
    std::vector<double> centered_;
    std::size_t n_;
    std::size_t d_;
};

std::pair<std::vector<double>, double> power_iterate(const CovarianceOp& op, std::size_t d,
                                                     double scale,
                                                     const std::vector<double>* deflate_vec,
                                                     double deflate_val, std::uint64_t stream) {
    SplitMix64 gen(SplitMix64::derive(0x5ca1ab1e, stream));
    std::vector<double> v(d);
    for (double& x : v) {
        x = gen.uniform(-1.0, 1.0);
    }
    if (deflate_vec != nullptr) {
        project_out(v, *deflate_vec);
    }
    normalize(v);

    double lambda = 0.0;
    for (int it = 0; it < kMaxIterations; ++it) {
        std::vector<double> w = op.apply(v, deflate_vec, deflate_val);
        if (deflate_vec != nullptr) {
            project_out(w, *deflate_vec);
        }
        lambda = norm(w);
        if (lambda <= 1e-14 * scale) {
            // Zero eigenvalue: any orthogonal direction completes the basis.
            return {orthogonal_unit(d, deflate_vec), 0.0};
        }
        double delta = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            double nv = w[j] / lambda;
            delta = std::max(delta, std::abs(nv - v[j]));
            v[j] = nv;
        }
        if (delta < kTolerance) {
            return {v, lambda};
        }
    }
    throw EigenConvergenceError("pca: power iteration did not converge in " +
                                std::to_string(kMaxIterations) + " iterations");
}

} // namespace

PcaModel pca_fit(const double* data, std::size_t n, std::size_t d) {
    if (n < 3 || d < 2) {
        throw ParamError("pca_fit: need n >= 3 and d >= 2");
    }

    PcaModel model;
    model.mean.assign(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            model.mean[j] += data[i * d + j];
        }
    }
    for (double& m : model.mean) {
        m /= static_cast<double>(n);
    }

    std::vector<double> centered(n * d);
    double total_var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            double c = data[i * d + j] - model.mean[j];
            centered[i * d + j] = c;
            total_var += c * c;
        }
    }
    total_var /= static_cast<double>(n - 1);
    if (total_var <= 1e-30) {
        throw DegenerateDataError("pca_fit: zero-variance data");
    }

    CovarianceOp op(std::move(centered), n, d);

    auto [v1, lambda1] = power_iterate(op, d, total_var, nullptr, 0.0, 1);
    if (lambda1 <= 0.0) {
        throw DegenerateDataError("pca_fit: zero-variance data");
    }
    auto [v2, lambda2] = power_iterate(op, d, total_var, &v1, lambda1, 2);

    fix_sign(v1);
    fix_sign(v2);
    model.components[0] = std::move(v1);
    model.components[1] = std::move(v2);
    model.explained_variance = {lambda1, lambda2};
    return model;
}

std::array<double, 2> pca_project(const PcaModel& model, std::span<const double> v) {
    if (v.size() != model.dim()) {
        throw ShapeError("pca_project: dimension mismatch");
    }
    std::vector<double> diff(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        diff[i] = v[i] - model.mean[i];
    }
    return {simd::dot(model.components[0].data(), diff.data(), diff.size()),
            simd::dot(model.components[1].data(), diff.data(), diff.size())};
}

} // namespace signsearch
