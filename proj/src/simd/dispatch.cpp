#include "signsearch/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace signsearch::simd {

namespace {

bool cpu_has_avx2() {
#if defined(SIGNSEARCH_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const KernelTable* detect_best() {
#if defined(SIGNSEARCH_HAVE_NEON)
    return &neon_kernels();
#endif
#if defined(SIGNSEARCH_HAVE_AVX2)
    if (cpu_has_avx2()) {
        return &avx2_kernels();
    }
#endif
    return &scalar_kernels();
}

const KernelTable* lookup(std::string_view name) {
    if (name == "auto") {
        return detect_best();
    }
    if (name == "scalar") {
        return &scalar_kernels();
    }
#if defined(SIGNSEARCH_HAVE_AVX2)
    if (name == "avx2" && cpu_has_avx2()) {
        return &avx2_kernels();
    }
#endif
#if defined(SIGNSEARCH_HAVE_NEON)
    if (name == "neon") {
        return &neon_kernels();
    }
#endif
    return nullptr;
}

std::atomic<const KernelTable*>& active_slot() {
    static std::atomic<const KernelTable*> slot{[] {
        if (const char* env = std::getenv("SIGNSEARCH_KERNELS")) {
            if (const KernelTable* t = lookup(env)) {
                return t;
            }
        }
        return detect_best();
    }()};
    return slot;
}

} // namespace

std::vector<const KernelTable*> available_kernels() {
    std::vector<const KernelTable*> out{&scalar_kernels()};
#if defined(SIGNSEARCH_HAVE_AVX2)
    if (cpu_has_avx2()) {
        out.push_back(&avx2_kernels());
    }
#endif
#if defined(SIGNSEARCH_HAVE_NEON)
    out.push_back(&neon_kernels());
#endif
    return out;
}

const KernelTable& active_kernels() {
    return *active_slot().load(std::memory_order_relaxed);
}

bool select_kernels(std::string_view name) {
    const KernelTable* t = lookup(name);
    if (t == nullptr) {
        return false;
    }
    active_slot().store(t, std::memory_order_relaxed);
    return true;
}

} // namespace signsearch::simd
