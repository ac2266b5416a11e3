// AArch64 NEON variants. NEON is baseline on aarch64, so there is no cpuid
// gate; the dispatcher still lets SIGNSEARCH_KERNELS=scalar override.

#include "signsearch/simd/kernels.hpp"

#if defined(SIGNSEARCH_HAVE_NEON)

#include <arm_neon.h>

namespace signsearch::simd {

namespace {

double sq_l2_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        float64x2_t d0 = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        float64x2_t d1 = vsubq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
        acc0 = vaddq_f64(acc0, vmulq_f64(d0, d0));
        acc1 = vaddq_f64(acc1, vmulq_f64(d1, d1));
    }
    for (; i + 2 <= n; i += 2) {
        float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        acc0 = vaddq_f64(acc0, vmulq_f64(d, d));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) {
        double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vaddq_f64(acc0, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
        acc1 = vaddq_f64(acc1, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
    }
    for (; i + 2 <= n; i += 2) {
        acc0 = vaddq_f64(acc0, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

} // namespace

const KernelTable& neon_kernels() {
    static const KernelTable table{"neon", &sq_l2_neon, &dot_neon};
    return table;
}

} // namespace signsearch::simd

#endif // SIGNSEARCH_HAVE_NEON
