#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "signsearch/keypoints.hpp"

namespace signsearch {

// Parse one pose-estimator frame file: a JSON object whose "people" array
// holds objects with "pose_keypoints_2d" (75 numbers), "hand_left_keypoints_2d"
// and "hand_right_keypoints_2d" (63 each), flat [x, y, confidence] triples.
// Multi-person frames yield the first listed person. Unknown keys are ignored.
// Throws ParseError on malformed input, EmptyFrameError when no person is listed.
FrameKeypoints parse_frame(std::string_view text, int frame_index);

// Inverse of parse_frame for a single person; round-trips values exactly.
std::string serialize_frame(const FrameKeypoints& frame);

// Assemble ordered frame files (caller sorts them) into a RawSequence.
// Files that fail to parse or contain no person become all-confidence-zero
// gap frames so the sequence length always matches the file count; the gaps
// are repaired later by fill_missing. Throws EmptySequenceError when not a
// single file yields a person.
RawSequence load_sequence(const std::vector<std::filesystem::path>& frame_files,
                          std::string source_id = "");

} // namespace signsearch
