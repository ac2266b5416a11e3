#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "signsearch/keypoints.hpp"
#include "signsearch/sign.hpp"

namespace signsearch {

struct PreprocessConfig {
    int target_length = 86;
    int median_radius = 3;
    double max_missing_fraction = 0.5;
};

// Repair undetected keypoints by linear interpolation over time between the
// nearest detected frames (nearest-value extension at the edges). Repaired
// confidences are set to 1. A joint the pipeline relies on (body slots 0-7,
// either hand) missing in more than cfg.max_missing_fraction of the frames
// raises TooManyGapsError.
RawSequence fill_missing(const RawSequence& seq, const PreprocessConfig& cfg = {});

// Neck-center and shoulder-scale one frame: p -> (p - neck) / |Lsh - Rsh|.
// Requires detected neck and shoulders; near-coincident shoulders raise
// DegenerateSkeletonError.
FrameKeypoints center_scale(const FrameKeypoints& frame);

// The hand whose wrist moves more on average (normalized coordinates);
// ties go Right.
Handedness detect_handedness(const RawSequence& seq);

// Horizontal flip about x = 0 plus left/right slot swap (shoulders, elbows,
// wrists, hands) so the dominant side always lands in the right-side slots.
// Involution: mirror(mirror(seq)) == seq.
RawSequence mirror(const RawSequence& seq);

// Linear resampling of a frames-major T x dim series to target frames;
// output i samples source position i*(N-1)/(target-1). N < 2 raises
// EmptySequenceError.
std::vector<double> resample(const std::vector<double>& series, std::size_t dim,
                             std::size_t target);

// Per-dimension running median over [t-r, t+r] with edge replication.
std::vector<double> median_smooth(const std::vector<double>& series, std::size_t dim, int radius);

// Whole pipeline: fill_missing -> per-frame center_scale -> detect_handedness
// -> mirror (iff left) -> joint selection -> resample -> median_smooth.
NormalizedSign normalize_pipeline(const RawSequence& seq, JointSetId js,
                                  const PreprocessConfig& cfg = {}, std::string gloss = "",
                                  std::string signer = "");

} // namespace signsearch
