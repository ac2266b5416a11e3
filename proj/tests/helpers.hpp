#pragma once

// Shared builders for test input data.

#include <filesystem>
#include <string>
#include <vector>

#include <unistd.h>

#include "signsearch/keypoints.hpp"
#include "signsearch/rng.hpp"

namespace helpers {

using signsearch::FrameKeypoints;
using signsearch::RawSequence;
using signsearch::SplitMix64;

// A frame with every keypoint detected: neck at `neck`, shoulders offset
// horizontally by half a `shoulder_width` each, everything else placed near
// the neck; hands near the wrists.
inline FrameKeypoints full_frame(double neck_x, double neck_y, double shoulder_width,
                                 SplitMix64& rng) {
    namespace body = signsearch::body;
    FrameKeypoints f;
    for (auto& kp : f.body) {
        kp = {neck_x + rng.uniform(-40.0, 40.0), neck_y + rng.uniform(-40.0, 40.0), 1.0};
    }
    f.body[body::kNeck] = {neck_x, neck_y, 1.0};
    f.body[body::kRShoulder] = {neck_x - shoulder_width / 2, neck_y, 1.0};
    f.body[body::kLShoulder] = {neck_x + shoulder_width / 2, neck_y, 1.0};
    for (auto& kp : f.left_hand) {
        kp = {f.body[body::kLWrist].x + rng.uniform(-8.0, 8.0),
              f.body[body::kLWrist].y + rng.uniform(-8.0, 8.0), 1.0};
    }
    for (auto& kp : f.right_hand) {
        kp = {f.body[body::kRWrist].x + rng.uniform(-8.0, 8.0),
              f.body[body::kRWrist].y + rng.uniform(-8.0, 8.0), 1.0};
    }
    return f;
}

// Smooth random sequence with all joints detected in every frame. Joints
// follow per-joint random linear drifts so wrists genuinely move.
inline RawSequence random_raw_sequence(std::uint64_t seed, int n_frames) {
    SplitMix64 rng(seed);
    RawSequence seq;
    seq.source_id = "synthetic";
    double neck_x = rng.uniform(200.0, 400.0);
    double neck_y = rng.uniform(200.0, 400.0);
    double width = rng.uniform(60.0, 120.0);
    FrameKeypoints base = full_frame(neck_x, neck_y, width, rng);

    // Per-slot velocity, pixels per frame.
    std::vector<double> vel(67 * 2);
    for (double& v : vel) {
        v = rng.uniform(-3.0, 3.0);
    }
    auto slot_ref = [](FrameKeypoints& f, int s) -> signsearch::Keypoint2D& {
        if (s < signsearch::kBodyJoints) {
            return f.body[static_cast<std::size_t>(s)];
        }
        s -= signsearch::kBodyJoints;
        if (s < signsearch::kHandJoints) {
            return f.left_hand[static_cast<std::size_t>(s)];
        }
        return f.right_hand[static_cast<std::size_t>(s - signsearch::kHandJoints)];
    };

    for (int t = 0; t < n_frames; ++t) {
        FrameKeypoints f = base;
        f.frame_index = t;
        for (int s = 0; s < 67; ++s) {
            auto& kp = slot_ref(f, s);
            kp.x += vel[static_cast<std::size_t>(s) * 2] * t;
            kp.y += vel[static_cast<std::size_t>(s) * 2 + 1] * t;
        }
        // Keep the normalization anchors rigid.
        f.body[signsearch::body::kNeck] = base.body[signsearch::body::kNeck];
        f.body[signsearch::body::kRShoulder] = base.body[signsearch::body::kRShoulder];
        f.body[signsearch::body::kLShoulder] = base.body[signsearch::body::kLShoulder];
        seq.frames.push_back(f);
    }
    return seq;
}

struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("signsearch_test_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace helpers
