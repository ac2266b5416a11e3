#include "signsearch/simd/kernels.hpp"

namespace signsearch::simd {

namespace {

double sq_l2_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

} // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{"scalar", &sq_l2_scalar, &dot_scalar};
    return table;
}

} // namespace signsearch::simd
