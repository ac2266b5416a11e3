#include "signsearch/pose_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "signsearch/errors.hpp"

namespace signsearch {

namespace {

using nlohmann::json;

template <std::size_t N>
void read_triples(const json& person, const char* key, std::array<Keypoint2D, N>& out) {
    if (!person.contains(key)) {
        throw ParseError(std::string("missing key: ") + key);
    }
    const json& arr = person.at(key);
    if (!arr.is_array() || arr.size() != N * 3) {
        throw ParseError(std::string(key) + ": expected " + std::to_string(N * 3) + " numbers");
    }
    for (std::size_t i = 0; i < N; ++i) {
        const json& x = arr[3 * i];
        const json& y = arr[3 * i + 1];
        const json& c = arr[3 * i + 2];
        if (!x.is_number() || !y.is_number() || !c.is_number()) {
            throw ParseError(std::string(key) + ": non-numeric entry");
        }
        out[i] = {x.get<double>(), y.get<double>(), c.get<double>()};
    }
}

} // namespace

FrameKeypoints parse_frame(std::string_view text, int frame_index) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid frame json: ") + e.what());
    }
    if (!root.is_object() || !root.contains("people") || !root.at("people").is_array()) {
        throw ParseError("frame json lacks a \"people\" array");
    }
    const json& people = root.at("people");
    if (people.empty()) {
        throw EmptyFrameError("no person detected in frame");
    }

    FrameKeypoints frame;
    frame.frame_index = frame_index;
    const json& person = people[0];
    if (!person.is_object()) {
        throw ParseError("person entry is not an object");
    }
    read_triples(person, "pose_keypoints_2d", frame.body);
    read_triples(person, "hand_left_keypoints_2d", frame.left_hand);
    read_triples(person, "hand_right_keypoints_2d", frame.right_hand);
    return frame;
}

std::string serialize_frame(const FrameKeypoints& frame) {
    auto flat = [](const auto& joints) {
        json arr = json::array();
        for (const Keypoint2D& kp : joints) {
            arr.push_back(kp.x);
            arr.push_back(kp.y);
            arr.push_back(kp.confidence);
        }
        return arr;
    };
    json person;
    person["pose_keypoints_2d"] = flat(frame.body);
    person["hand_left_keypoints_2d"] = flat(frame.left_hand);
    person["hand_right_keypoints_2d"] = flat(frame.right_hand);
    json root;
    root["people"] = json::array({person});
    return root.dump();
}

RawSequence load_sequence(const std::vector<std::filesystem::path>& frame_files,
                          std::string source_id) {
    if (frame_files.empty()) {
        throw EmptySequenceError("no frame files");
    }
    RawSequence seq;
    seq.source_id = std::move(source_id);
    seq.frames.reserve(frame_files.size());
    std::size_t detected = 0;
    for (std::size_t i = 0; i < frame_files.size(); ++i) {
        FrameKeypoints frame;
        frame.frame_index = static_cast<int>(i);
        std::ifstream in(frame_files[i]);
        if (in) {
            std::ostringstream buf;
            buf << in.rdbuf();
            try {
                frame = parse_frame(buf.str(), static_cast<int>(i));
                ++detected;
            } catch (const ParseError&) {
                // gap frame
            } catch (const EmptyFrameError&) {
                // gap frame
            }
        }
        seq.frames.push_back(frame);
    }
    if (detected == 0) {
        throw EmptySequenceError("no parseable frames in " +
                                 frame_files.front().parent_path().string());
    }
    return seq;
}

} // namespace signsearch
