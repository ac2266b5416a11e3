#include "signsearch/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "signsearch/errors.hpp"

namespace signsearch {

namespace {

constexpr int kSlots = kBodyJoints + 2 * kHandJoints; // 67 keypoint slots per frame

Keypoint2D& slot(FrameKeypoints& f, int s) {
    if (s < kBodyJoints) {
        return f.body[s];
    }
    s -= kBodyJoints;
    if (s < kHandJoints) {
        return f.left_hand[s];
    }
    return f.right_hand[s - kHandJoints];
}

const Keypoint2D& slot(const FrameKeypoints& f, int s) {
    return slot(const_cast<FrameKeypoints&>(f), s);
}

// Every slot the pipeline can select or measure, under either handedness.
bool slot_required(int s) {
    return s >= kBodyJoints || s <= body::kLWrist;
}

void validate(const PreprocessConfig& cfg) {
    if (cfg.target_length < 2) {
        throw ParamError("target_length must be >= 2");
    }
    if (cfg.median_radius < 0) {
        throw ParamError("median_radius must be >= 0");
    }
}

double wrist_mean_speed(const RawSequence& seq, int wrist_slot) {
    if (seq.frames.size() < 2) {
        return 0.0;
    }
    double total = 0.0;
    for (std::size_t t = 0; t + 1 < seq.frames.size(); ++t) {
        const Keypoint2D& a = slot(seq.frames[t], wrist_slot);
        const Keypoint2D& b = slot(seq.frames[t + 1], wrist_slot);
        total += std::hypot(b.x - a.x, b.y - a.y);
    }
    return total / static_cast<double>(seq.frames.size() - 1);
}

} // namespace

RawSequence fill_missing(const RawSequence& seq, const PreprocessConfig& cfg) {
    if (seq.frames.empty()) {
        throw EmptySequenceError("fill_missing: empty sequence");
    }
    const std::size_t n = seq.frames.size();
    RawSequence out = seq;

    for (int s = 0; s < kSlots; ++s) {
        std::vector<std::size_t> detected;
        for (std::size_t t = 0; t < n; ++t) {
            if (slot(seq.frames[t], s).confidence > 0.0) {
                detected.push_back(t);
            }
        }
        const std::size_t missing = n - detected.size();
        if (slot_required(s) &&
            static_cast<double>(missing) > cfg.max_missing_fraction * static_cast<double>(n)) {
            throw TooManyGapsError("slot " + std::to_string(s) + " missing in " +
                                   std::to_string(missing) + "/" + std::to_string(n) + " frames");
        }
        if (detected.empty() || missing == 0) {
            continue;
        }
        std::size_t next_pos = 0; // index into detected[]
        for (std::size_t t = 0; t < n; ++t) {
            Keypoint2D& kp = slot(out.frames[t], s);
            if (kp.confidence > 0.0) {
                continue;
            }
            while (next_pos < detected.size() && detected[next_pos] < t) {
                ++next_pos;
            }
            if (next_pos == 0) {
                const Keypoint2D& src = slot(seq.frames[detected.front()], s);
                kp = {src.x, src.y, 1.0};
            } else if (next_pos == detected.size()) {
                const Keypoint2D& src = slot(seq.frames[detected.back()], s);
                kp = {src.x, src.y, 1.0};
            } else {
                std::size_t t0 = detected[next_pos - 1];
                std::size_t t1 = detected[next_pos];
                const Keypoint2D& a = slot(seq.frames[t0], s);
                const Keypoint2D& b = slot(seq.frames[t1], s);
                double w = static_cast<double>(t - t0) / static_cast<double>(t1 - t0);
                kp = {a.x + w * (b.x - a.x), a.y + w * (b.y - a.y), 1.0};
            }
        }
    }
    return out;
}

FrameKeypoints center_scale(const FrameKeypoints& frame) {
    const Keypoint2D& neck = frame.body[body::kNeck];
    const Keypoint2D& lsh = frame.body[body::kLShoulder];
    const Keypoint2D& rsh = frame.body[body::kRShoulder];
    if (neck.confidence <= 0.0 || lsh.confidence <= 0.0 || rsh.confidence <= 0.0) {
        throw DegenerateSkeletonError("neck or shoulder not detected");
    }
    double scale = std::hypot(lsh.x - rsh.x, lsh.y - rsh.y);
    if (scale < 1e-6) {
        throw DegenerateSkeletonError("coincident shoulders");
    }
    FrameKeypoints out = frame;
    for (int s = 0; s < kSlots; ++s) {
        Keypoint2D& kp = slot(out, s);
        kp.x = (kp.x - neck.x) / scale;
        kp.y = (kp.y - neck.y) / scale;
    }
    return out;
}

Handedness detect_handedness(const RawSequence& seq) {
    double right = wrist_mean_speed(seq, body::kRWrist);
    double left = wrist_mean_speed(seq, body::kLWrist);
    return left > right ? Handedness::Left : Handedness::Right;
}

RawSequence mirror(const RawSequence& seq) {
    RawSequence out = seq;
    for (FrameKeypoints& f : out.frames) {
        for (int s = 0; s < kSlots; ++s) {
            slot(f, s).x = -slot(f, s).x;
        }
        std::swap(f.body[body::kRShoulder], f.body[body::kLShoulder]);
        std::swap(f.body[body::kRElbow], f.body[body::kLElbow]);
        std::swap(f.body[body::kRWrist], f.body[body::kLWrist]);
        std::swap(f.left_hand, f.right_hand);
    }
    return out;
}

std::vector<double> resample(const std::vector<double>& series, std::size_t dim,
                             std::size_t target) {
    if (dim == 0 || series.size() % dim != 0) {
        throw ShapeError("resample: series size not a multiple of dim");
    }
    const std::size_t n = series.size() / dim;
    if (n < 2) {
        throw EmptySequenceError("resample: need at least 2 frames");
    }
    std::vector<double> out(target * dim);
    for (std::size_t i = 0; i < target; ++i) {
        double pos = static_cast<double>(i) * static_cast<double>(n - 1) /
                     static_cast<double>(target - 1);
        std::size_t t0 = static_cast<std::size_t>(pos);
        if (t0 >= n - 1) {
            t0 = n - 2;
        }
        double w = pos - static_cast<double>(t0);
        const double* a = series.data() + t0 * dim;
        const double* b = a + dim;
        double* dst = out.data() + i * dim;
        if (w == 0.0) {
            std::copy(a, a + dim, dst);
        } else {
            for (std::size_t d = 0; d < dim; ++d) {
                dst[d] = a[d] + w * (b[d] - a[d]);
            }
        }
    }
    return out;
}

std::vector<double> median_smooth(const std::vector<double>& series, std::size_t dim,
                                  int radius) {
    if (radius < 0) {
        throw ParamError("median radius must be >= 0");
    }
    if (radius == 0 || series.empty()) {
        return series;
    }
    if (dim == 0 || series.size() % dim != 0) {
        throw ShapeError("median_smooth: series size not a multiple of dim");
    }
    const long n = static_cast<long>(series.size() / dim);
    std::vector<double> out(series.size());
    std::vector<double> window(2 * static_cast<std::size_t>(radius) + 1);
    for (std::size_t d = 0; d < dim; ++d) {
        for (long t = 0; t < n; ++t) {
            for (long o = -radius; o <= radius; ++o) {
                long src = std::clamp(t + o, 0L, n - 1);
                window[static_cast<std::size_t>(o + radius)] =
                    series[static_cast<std::size_t>(src) * dim + d];
            }
            auto mid = window.begin() + radius;
            std::nth_element(window.begin(), mid, window.end());
            out[static_cast<std::size_t>(t) * dim + d] = *mid;
        }
    }
    return out;
}

NormalizedSign normalize_pipeline(const RawSequence& seq, JointSetId js,
                                  const PreprocessConfig& cfg, std::string gloss,
                                  std::string signer) {
    validate(cfg);
    if (seq.frames.empty()) {
        throw EmptySequenceError("normalize_pipeline: empty sequence");
    }

    RawSequence repaired = fill_missing(seq, cfg);
    for (FrameKeypoints& f : repaired.frames) {
        f = center_scale(f);
    }
    Handedness handedness = detect_handedness(repaired);
    if (handedness == Handedness::Left) {
        repaired = mirror(repaired);
    }

    const JointSet& set = JointSet::of(js);
    const std::size_t dim = static_cast<std::size_t>(set.joint_count) * 2;
    std::vector<double> series;
    series.reserve(repaired.frames.size() * dim);
    for (const FrameKeypoints& f : repaired.frames) {
        for (const JointRef& jr : set.joints) {
            const Keypoint2D& kp = jr.source == JointRef::Source::Body
                                       ? f.body[static_cast<std::size_t>(jr.index)]
                                       : f.right_hand[static_cast<std::size_t>(jr.index)];
            series.push_back(kp.x);
            series.push_back(kp.y);
        }
    }

    series = resample(series, dim, static_cast<std::size_t>(cfg.target_length));
    series = median_smooth(series, dim, cfg.median_radius);

    NormalizedSign sign;
    sign.joint_set = js;
    sign.handedness = handedness;
    sign.gloss = std::move(gloss);
    sign.signer = std::move(signer);
    sign.data = std::move(series);
    return sign;
}

} // namespace signsearch
