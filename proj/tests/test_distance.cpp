#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "signsearch/distance.hpp"
#include "signsearch/errors.hpp"
#include "signsearch/rng.hpp"

using namespace signsearch;

namespace {

SeriesView series(const std::vector<double>& v, std::size_t dim) {
    return {v.data(), v.size() / dim, dim};
}

NormalizedSign wrist_sign(const std::vector<double>& coords, std::string gloss,
                          std::string signer = "s") {
    NormalizedSign s;
    s.joint_set = JointSetId::Wrist1;
    s.gloss = std::move(gloss);
    s.signer = std::move(signer);
    s.data = coords;
    return s;
}

std::vector<double> random_series(SplitMix64& rng, std::size_t frames, std::size_t dim) {
    std::vector<double> out(frames * dim);
    for (double& v : out) {
        v = rng.uniform(-3.0, 3.0);
    }
    return out;
}

const DtwParams kRaw{false, false, StepPattern::SymmetricP0, false};
const DtwParams kOpenRaw{true, true, StepPattern::SymmetricP0, false};

} // namespace

TEST_SUITE("distance") {

TEST_CASE("frame_distance") {
    std::vector<double> a{0.0, 0.0};
    std::vector<double> b{3.0, 4.0};
    CHECK(frame_distance(a, b) == doctest::Approx(5.0)); // 3-4-5 triangle
    CHECK(frame_distance(a, a) == 0.0);
    CHECK_THROWS_AS(frame_distance(a, std::vector<double>{1.0}), ShapeError);

    SplitMix64 rng(5);
    std::vector<double> x(17);
    std::vector<double> y(17);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = rng.uniform(-2.0, 2.0);
        y[i] = rng.uniform(-2.0, 2.0);
        sum += (x[i] - y[i]) * (x[i] - y[i]);
    }
    CHECK(frame_distance(x, y) == doctest::Approx(std::sqrt(sum)).epsilon(1e-12));
}

TEST_CASE("dtw_full pinned examples") {
    std::vector<double> q{0.0, 1.0, 2.0};
    std::vector<double> r{0.0, 2.0};
    CHECK(dtw_full(series(q, 1), series(r, 1), kRaw) == doctest::Approx(1.0));

    CHECK(dtw_full(series(q, 1), series(q, 1), kRaw) == 0.0);

    std::vector<double> single_a{1.0, 2.0};
    std::vector<double> single_b{4.0, 6.0};
    CHECK(dtw_full(series(single_a, 2), series(single_b, 2), kRaw) ==
          doctest::Approx(5.0)); // degenerate DP = frame distance

    // normalization divides by query length
    DtwParams norm = kRaw;
    norm.normalize_by_query_length = true;
    CHECK(dtw_full(series(q, 1), series(r, 1), norm) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("dtw_obe pinned examples") {
    std::vector<double> q{5.0, 5.0};
    std::vector<double> r{0.0, 5.0, 5.0, 0.0};
    CHECK(dtw_obe(series(q, 1), series(r, 1), kOpenRaw) == doctest::Approx(0.0));

    SplitMix64 rng(6);
    for (int rep = 0; rep < 20; ++rep) {
        auto a = random_series(rng, 2 + rng.next() % 5, 1);
        auto b = random_series(rng, 2 + rng.next() % 5, 1);
        DtwParams closed = kRaw;
        CHECK(dtw_obe(series(a, 1), series(b, 1), closed) ==
              dtw_full(series(a, 1), series(b, 1), closed));
    }
}

TEST_CASE("dtw_full equals exhaustive path enumeration on short sequences") {
    SplitMix64 rng(7);
    for (int rep = 0; rep < 60; ++rep) {
        std::size_t dim = rep % 2 == 0 ? 1 : 3;
        std::size_t n = 2 + rng.next() % 5;
        std::size_t m = 2 + rng.next() % 5;
        auto a = random_series(rng, n, dim);
        auto b = random_series(rng, m, dim);
        double got = dtw_full(series(a, dim), series(b, dim), kRaw);
        double want = oracles::dtw_enumerate(a, b, dim);
        CHECK(got == doctest::Approx(want).epsilon(1e-12));

        double open_got = dtw_obe(series(a, dim), series(b, dim), kOpenRaw);
        double open_want = oracles::dtw_enumerate(a, b, dim, true, true);
        CHECK(open_got == doctest::Approx(open_want).epsilon(1e-12));
        CHECK(open_got <= got + 1e-12);
    }
}

TEST_CASE("dtw symmetry and nonnegativity") {
    SplitMix64 rng(8);
    for (int rep = 0; rep < 20; ++rep) {
        auto a = random_series(rng, 3 + rng.next() % 6, 2);
        auto b = random_series(rng, 3 + rng.next() % 6, 2);
        double ab = dtw_full(series(a, 2), series(b, 2), kRaw);
        double ba = dtw_full(series(b, 2), series(a, 2), kRaw);
        CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
        CHECK(ab >= 0.0);
    }
}

TEST_CASE("exact interior match stays zero under extra padding") {
    SplitMix64 rng(9);
    auto q = random_series(rng, 6, 2);
    std::vector<double> ref;
    for (int t = 0; t < 4; ++t) {
        ref.push_back(9.0);
        ref.push_back(-9.0);
    }
    ref.insert(ref.end(), q.begin(), q.end());
    for (int t = 0; t < 7; ++t) {
        ref.push_back(8.0);
        ref.push_back(8.0);
    }
    CHECK(dtw_obe(series(q, 2), series(ref, 2), kOpenRaw) == doctest::Approx(0.0));
}

TEST_CASE("euclidean_flat") {
    std::vector<double> a(10, 0.0);
    std::vector<double> b = a;
    CHECK(euclidean_flat(series(a, 2), series(b, 2)) == 0.0);
    b[3] += 3.0;
    CHECK(euclidean_flat(series(a, 2), series(b, 2)) == doctest::Approx(3.0));

    std::vector<double> c(8, 0.0);
    CHECK_THROWS_AS(euclidean_flat(series(a, 2), series(c, 2)), ShapeError);

    SplitMix64 rng(10);
    auto x = random_series(rng, 5, 4);
    auto y = random_series(rng, 5, 4);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += (x[i] - y[i]) * (x[i] - y[i]);
    }
    CHECK(euclidean_flat(series(x, 4), series(y, 4)) ==
          doctest::Approx(std::sqrt(sum)).epsilon(1e-12));
}

TEST_CASE("distance_matrix") {
    SplitMix64 rng(11);
    std::vector<NormalizedSign> refs;
    for (int i = 0; i < 3; ++i) {
        refs.push_back(wrist_sign(random_series(rng, 10, 2), "G" + std::to_string(i)));
    }
    std::vector<NormalizedSign> queries{refs[1]};
    queries[0].gloss = "Q";

    DistanceMatrix m = distance_matrix(queries, refs, SequenceBackend::Flat);
    REQUIRE(m.rows == 1);
    REQUIRE(m.cols == 3);
    CHECK(m.at(0, 1) == 0.0);
    CHECK(m.at(0, 0) > 0.0);

    DistanceMatrix e = distance_matrix(queries, refs, SequenceBackend::Elastic, kOpenRaw);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(e.at(0, j) ==
              doctest::Approx(dtw_obe(view(queries[0]), view(refs[j]), kOpenRaw)).epsilon(1e-12));
    }

    std::vector<NormalizedSign> wrong = refs;
    wrong[2].joint_set = JointSetId::Arm5;
    wrong[2].data.resize(10 * 5 * 2, 0.0);
    CHECK_THROWS_AS(distance_matrix(queries, wrong, SequenceBackend::Flat),
                    JointSetMismatchError);
}

TEST_CASE("distance_matrix 3x3 matches per-pair calls") {
    SplitMix64 rng(12);
    std::vector<NormalizedSign> qs;
    std::vector<NormalizedSign> rs;
    for (int i = 0; i < 3; ++i) {
        qs.push_back(wrist_sign(random_series(rng, 12, 2), "Q" + std::to_string(i)));
        rs.push_back(wrist_sign(random_series(rng, 12, 2), "R" + std::to_string(i)));
    }
    DtwParams p; // defaults: open both ends, normalized
    DistanceMatrix elastic = distance_matrix(qs, rs, SequenceBackend::Elastic, p);
    DistanceMatrix flat = distance_matrix(qs, rs, SequenceBackend::Flat, p);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(elastic.at(i, j) == dtw_obe(view(qs[i]), view(rs[j]), p));
            CHECK(flat.at(i, j) == euclidean_flat(view(qs[i]), view(rs[j])));
        }
    }
}

TEST_CASE("one-hot flat geometry") {
    // orthonormal one-hot signs: off-diagonal distances are all sqrt(2)
    std::vector<NormalizedSign> signs;
    for (int i = 0; i < 4; ++i) {
        std::vector<double> coords(8, 0.0);
        coords[static_cast<std::size_t>(i)] = 1.0;
        signs.push_back(wrist_sign(coords, "G" + std::to_string(i)));
    }
    DistanceMatrix m = distance_matrix(signs, signs, SequenceBackend::Flat);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(m.at(i, j) == doctest::Approx(i == j ? 0.0 : std::sqrt(2.0)));
        }
    }
}

} // TEST_SUITE
