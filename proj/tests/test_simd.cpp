#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "signsearch/rng.hpp"
#include "signsearch/simd/kernels.hpp"

using namespace signsearch;

TEST_SUITE("simd") {

TEST_CASE("scalar kernels match direct formulas") {
    const auto& k = simd::scalar_kernels();
    std::vector<double> a{1.0, 2.0, -3.0};
    std::vector<double> b{0.0, 4.0, 1.0};
    CHECK(k.sq_l2(a.data(), b.data(), 3) == doctest::Approx(1.0 + 4.0 + 16.0));
    CHECK(k.dot(a.data(), b.data(), 3) == doctest::Approx(0.0 + 8.0 - 3.0));
    CHECK(k.sq_l2(a.data(), b.data(), 0) == 0.0);
    CHECK(k.dot(a.data(), b.data(), 0) == 0.0);
}

TEST_CASE("every available variant agrees with scalar") {
    SplitMix64 rng(20240517);
    for (const simd::KernelTable* variant : simd::available_kernels()) {
        for (std::size_t n : {1u, 2u, 3u, 4u, 7u, 8u, 9u, 31u, 100u, 860u, 4988u}) {
            std::vector<double> a(n);
            std::vector<double> b(n);
            for (std::size_t i = 0; i < n; ++i) {
                a[i] = rng.uniform(-5.0, 5.0);
                b[i] = rng.uniform(-5.0, 5.0);
            }
            double ref_sq = simd::scalar_kernels().sq_l2(a.data(), b.data(), n);
            double ref_dot = simd::scalar_kernels().dot(a.data(), b.data(), n);
            CHECK(variant->sq_l2(a.data(), b.data(), n) ==
                  doctest::Approx(ref_sq).epsilon(1e-12));
            CHECK(variant->dot(a.data(), b.data(), n) ==
                  doctest::Approx(ref_dot).epsilon(1e-12));
        }
    }
}

TEST_CASE("runtime selection") {
    const auto& initial = simd::active_kernels();
    CHECK(initial.name != nullptr);

    REQUIRE(simd::select_kernels("scalar"));
    CHECK(std::string(simd::active_kernels().name) == "scalar");
    CHECK_FALSE(simd::select_kernels("not-a-kernel"));
    CHECK(std::string(simd::active_kernels().name) == "scalar");

    REQUIRE(simd::select_kernels("auto"));
    // auto must pick something available on this machine
    bool found = false;
    for (const simd::KernelTable* variant : simd::available_kernels()) {
        found = found || std::string(variant->name) == simd::active_kernels().name;
    }
    CHECK(found);
}

} // TEST_SUITE
