#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "signsearch/sign.hpp"

namespace signsearch {

enum class StepPattern { SymmetricP0 };

struct DtwParams {
    bool open_begin = true;
    bool open_end = true;
    StepPattern step_pattern = StepPattern::SymmetricP0;
    bool normalize_by_query_length = true;
};

// Frames-major view over a T x dim series.
struct SeriesView {
    const double* data = nullptr;
    std::size_t length = 0;
    std::size_t dim = 0;

    const double* row(std::size_t t) const { return data + t * dim; }
};

inline SeriesView view(const NormalizedSign& sign) {
    return {sign.data.data(), static_cast<std::size_t>(sign.length()),
            static_cast<std::size_t>(sign.dim())};
}

// L2 between two flattened frames. ShapeError on size mismatch.
double frame_distance(std::span<const double> a, std::span<const double> b);

// Classic DTW anchored at both endpoints: three-predecessor recursion with
// unit weights over frame_distance local costs. Honors only
// p.normalize_by_query_length (divides by the query length).
double dtw_full(SeriesView q, SeriesView ref, const DtwParams& p = {});

// Open-begin/open-end DTW. Openness applies to the reference axis only:
// open_begin lets the alignment start anywhere in ref, open_end lets it end
// anywhere. With both flags off this reduces to dtw_full. Asymmetric by
// design (query and reference play different roles).
double dtw_obe(SeriesView q, SeriesView ref, const DtwParams& p = {});

// L2 over all T*J*2 coordinates of two equal-shape signs.
double euclidean_flat(SeriesView q, SeriesView ref);

struct DistanceMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;

    double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
};

enum class SequenceBackend { Elastic, Flat };

// All-pairs query x reference distances with the chosen sequence backend
// (Elastic = dtw_obe, Flat = euclidean_flat). All signs must share the same
// joint set (JointSetMismatchError) and length.
DistanceMatrix distance_matrix(std::span<const NormalizedSign> queries,
                               std::span<const NormalizedSign> refs, SequenceBackend backend,
                               const DtwParams& p = {});

} // namespace signsearch
