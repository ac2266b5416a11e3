#include "signsearch/distance.hpp"

#include <algorithm>
#include <cmath>

#include "signsearch/errors.hpp"
#include "signsearch/simd/kernels.hpp"

namespace signsearch {

namespace {

double dtw_engine(SeriesView q, SeriesView ref, bool open_begin, bool open_end, bool normalize) {
    if (q.length == 0 || ref.length == 0) {
        throw EmptySequenceError("dtw: empty sequence");
    }
    if (q.dim != ref.dim) {
        throw ShapeError("dtw: frame dimension mismatch");
    }
    const std::size_t nr = ref.length;
    std::vector<double> prev(nr);
    std::vector<double> cur(nr);

    // Query frame 0: the alignment may start at any reference frame when
    // open_begin, otherwise costs accumulate along the first row.
    for (std::size_t j = 0; j < nr; ++j) {
        double c = simd::l2(q.row(0), ref.row(j), q.dim);
        prev[j] = (j == 0 || open_begin) ? c : prev[j - 1] + c;
    }
    for (std::size_t i = 1; i < q.length; ++i) {
        const double* qi = q.row(i);
        cur[0] = prev[0] + simd::l2(qi, ref.row(0), q.dim);
        for (std::size_t j = 1; j < nr; ++j) {
            double best = std::min({prev[j], cur[j - 1], prev[j - 1]});
            cur[j] = best + simd::l2(qi, ref.row(j), q.dim);
        }
        std::swap(prev, cur);
    }

    double result = open_end ? *std::min_element(prev.begin(), prev.end()) : prev.back();
    if (normalize) {
        result /= static_cast<double>(q.length);
    }
    return result;
}

void check_homogeneous(std::span<const NormalizedSign> queries,
                       std::span<const NormalizedSign> refs) {
    if (queries.empty() || refs.empty()) {
        throw EmptySequenceError("distance_matrix: empty input");
    }
    const JointSetId js = queries.front().joint_set;
    const int len = queries.front().length();
    for (const NormalizedSign& s : queries) {
        if (s.joint_set != js) {
            throw JointSetMismatchError("distance_matrix: mixed joint sets");
        }
        if (s.length() != len) {
            throw ShapeError("distance_matrix: mixed sequence lengths");
        }
    }
    for (const NormalizedSign& s : refs) {
        if (s.joint_set != js) {
            throw JointSetMismatchError("distance_matrix: mixed joint sets");
        }
        if (s.length() != len) {
            throw ShapeError("distance_matrix: mixed sequence lengths");
        }
    }
}

std::string sign_label(const NormalizedSign& s) {
    return s.gloss + "__" + s.signer;
}

} // namespace

double frame_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ShapeError("frame_distance: size mismatch");
    }
    return simd::l2(a.data(), b.data(), a.size());
}

double dtw_full(SeriesView q, SeriesView ref, const DtwParams& p) {
    return dtw_engine(q, ref, false, false, p.normalize_by_query_length);
}

double dtw_obe(SeriesView q, SeriesView ref, const DtwParams& p) {
    return dtw_engine(q, ref, p.open_begin, p.open_end, p.normalize_by_query_length);
}

double euclidean_flat(SeriesView q, SeriesView ref) {
    if (q.length != ref.length || q.dim != ref.dim) {
        throw ShapeError("euclidean_flat: shape mismatch");
    }
    return std::sqrt(simd::sq_l2(q.data, ref.data, q.length * q.dim));
}

DistanceMatrix distance_matrix(std::span<const NormalizedSign> queries,
                               std::span<const NormalizedSign> refs, SequenceBackend backend,
                               const DtwParams& p) {
    check_homogeneous(queries, refs);
    DistanceMatrix m;
    m.rows = queries.size();
    m.cols = refs.size();
    m.values.resize(m.rows * m.cols);
    for (const NormalizedSign& s : queries) {
        m.row_labels.push_back(sign_label(s));
    }
    for (const NormalizedSign& s : refs) {
        m.col_labels.push_back(sign_label(s));
    }
    for (std::size_t i = 0; i < m.rows; ++i) {
        SeriesView qv = view(queries[i]);
        for (std::size_t j = 0; j < m.cols; ++j) {
            SeriesView rv = view(refs[j]);
            m.values[i * m.cols + j] =
                backend == SequenceBackend::Elastic ? dtw_obe(qv, rv, p) : euclidean_flat(qv, rv);
        }
    }
    return m;
}

} // namespace signsearch
