#pragma once

#include <array>
#include <string>
#include <vector>

namespace signsearch {

// Raw 2-D keypoint in pixel coordinates. confidence == 0 means
// "not detected": x and y are meaningless then.
struct Keypoint2D {
    double x = 0.0;
    double y = 0.0;
    double confidence = 0.0;
};

// BODY_25 slots used by the pipeline. The remaining body slots (hips, legs,
// face points) are parsed and carried along but never selected.
namespace body {
inline constexpr int kNose = 0;
inline constexpr int kNeck = 1;
inline constexpr int kRShoulder = 2;
inline constexpr int kRElbow = 3;
inline constexpr int kRWrist = 4;
inline constexpr int kLShoulder = 5;
inline constexpr int kLElbow = 6;
inline constexpr int kLWrist = 7;
} // namespace body

inline constexpr int kBodyJoints = 25;
inline constexpr int kHandJoints = 21;

// One video frame. Slots are always present; missing joints are encoded by
// confidence 0, never by absence.
struct FrameKeypoints {
    std::array<Keypoint2D, kBodyJoints> body{};
    std::array<Keypoint2D, kHandJoints> left_hand{};
    std::array<Keypoint2D, kHandJoints> right_hand{};
    int frame_index = 0;
};

struct RawSequence {
    std::vector<FrameKeypoints> frames;
    std::string source_id;
};

} // namespace signsearch
