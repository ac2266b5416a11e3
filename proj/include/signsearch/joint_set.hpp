#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace signsearch {

// The three skeletal conditions. Joint selection happens after the
// handedness mirror, so "dominant" always reads from the right-side slots.
enum class JointSetId { Upper29, Arm5, Wrist1 };

struct JointRef {
    enum class Source { Body, RightHand };
    Source source;
    int index;
};

struct JointSet {
    JointSetId id;
    int joint_count;
    std::vector<JointRef> joints;

    static const JointSet& of(JointSetId id);
};

const char* to_string(JointSetId id); // "upper29" | "arm5" | "wrist1"
std::optional<JointSetId> joint_set_from_string(std::string_view name);

inline int joint_count(JointSetId id) { return JointSet::of(id).joint_count; }

} // namespace signsearch
