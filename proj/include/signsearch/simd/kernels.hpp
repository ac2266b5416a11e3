#pragma once

#include <cmath>
#include <cstddef>
#include <string_view>
#include <vector>

// Data-parallel inner loops shared by the distance backends: squared L2
// between coordinate blocks (DTW local cost, flat Euclidean, k-NN graph)
// and dot products (PCA matvecs). Scalar versions are the reference;
// AVX2/NEON variants are selected at runtime and equivalence-tested
// against scalar in tests/test_simd.cpp.

namespace signsearch::simd {

using ReduceFn = double (*)(const double*, const double*, std::size_t);

struct KernelTable {
    const char* name;
    ReduceFn sq_l2; // sum of squared differences
    ReduceFn dot;   // inner product
};

const KernelTable& scalar_kernels();

#if defined(SIGNSEARCH_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif
#if defined(SIGNSEARCH_HAVE_NEON)
const KernelTable& neon_kernels();
#endif

// All variants compiled into this binary (scalar first).
std::vector<const KernelTable*> available_kernels();

// The selected table. Defaults to the widest variant the CPU supports;
// SIGNSEARCH_KERNELS=scalar|avx2|neon overrides. Selection happens once.
const KernelTable& active_kernels();

// Force a variant by name ("auto" re-detects). Returns false if the variant
// is not compiled in or unsupported on this CPU. Intended for tests.
bool select_kernels(std::string_view name);

inline double sq_l2(const double* a, const double* b, std::size_t n) {
    return active_kernels().sq_l2(a, b, n);
}

inline double l2(const double* a, const double* b, std::size_t n) {
    return std::sqrt(sq_l2(a, b, n));
}

inline double dot(const double* a, const double* b, std::size_t n) {
    return active_kernels().dot(a, b, n);
}

} // namespace signsearch::simd
