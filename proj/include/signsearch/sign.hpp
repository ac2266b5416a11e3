#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "signsearch/joint_set.hpp"

namespace signsearch {

enum class Handedness { Left, Right };

inline const char* to_string(Handedness h) { return h == Handedness::Left ? "left" : "right"; }

// A fully preprocessed sign: T frames of J joints of (x, y), flattened
// row-major as data[t*J*2 + j*2 + c]. Coordinates are neck-relative in
// shoulder-width units; there is no confidence channel.
struct NormalizedSign {
    JointSetId joint_set = JointSetId::Arm5;
    Handedness handedness = Handedness::Right;
    std::string gloss;
    std::string signer;
    std::vector<double> data;

    int joints() const { return joint_count(joint_set); }
    int dim() const { return joints() * 2; }
    int length() const { return dim() == 0 ? 0 : static_cast<int>(data.size()) / dim(); }

    double& at(int t, int j, int c) { return data[static_cast<std::size_t>(t) * dim() + j * 2 + c]; }
    double at(int t, int j, int c) const {
        return data[static_cast<std::size_t>(t) * dim() + j * 2 + c];
    }

    std::span<const double> frame(int t) const {
        return {data.data() + static_cast<std::size_t>(t) * dim(), static_cast<std::size_t>(dim())};
    }
};

} // namespace signsearch
