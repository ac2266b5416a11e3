#include "signsearch/joint_set.hpp"

#include "signsearch/keypoints.hpp"

namespace signsearch {

namespace {

using Source = JointRef::Source;

JointSet make_upper29() {
    JointSet js{JointSetId::Upper29, 29, {}};
    for (int b : {body::kNose, body::kNeck, body::kRShoulder, body::kRElbow, body::kRWrist,
                  body::kLShoulder, body::kLElbow, body::kLWrist}) {
        js.joints.push_back({Source::Body, b});
    }
    for (int h = 0; h < kHandJoints; ++h) {
        js.joints.push_back({Source::RightHand, h});
    }
    return js;
}

JointSet make_arm5() {
    JointSet js{JointSetId::Arm5, 5, {}};
    for (int b : {body::kNose, body::kNeck, body::kRShoulder, body::kRElbow, body::kRWrist}) {
        js.joints.push_back({Source::Body, b});
    }
    return js;
}

JointSet make_wrist1() {
    return {JointSetId::Wrist1, 1, {{Source::Body, body::kRWrist}}};
}

} // namespace

const JointSet& JointSet::of(JointSetId id) {
    static const JointSet upper29 = make_upper29();
    static const JointSet arm5 = make_arm5();
    static const JointSet wrist1 = make_wrist1();
    switch (id) {
    case JointSetId::Upper29:
        return upper29;
    case JointSetId::Arm5:
        return arm5;
    case JointSetId::Wrist1:
    default:
        return wrist1;
    }
}

const char* to_string(JointSetId id) {
    switch (id) {
    case JointSetId::Upper29:
        return "upper29";
    case JointSetId::Arm5:
        return "arm5";
    case JointSetId::Wrist1:
    default:
        return "wrist1";
    }
}

std::optional<JointSetId> joint_set_from_string(std::string_view name) {
    if (name == "upper29") {
        return JointSetId::Upper29;
    }
    if (name == "arm5") {
        return JointSetId::Arm5;
    }
    if (name == "wrist1") {
        return JointSetId::Wrist1;
    }
    return std::nullopt;
}

} // namespace signsearch
