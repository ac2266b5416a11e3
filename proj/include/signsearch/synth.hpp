#pragma once

#include <cstdint>
#include <vector>

#include "signsearch/evaluate.hpp"
#include "signsearch/sign.hpp"

namespace signsearch {

// Synthetic stand-in for the unavailable video lexicon. Each gloss is a
// prototype trajectory (two seeded random-phase/amplitude sinusoids per
// coordinate); every query/donor instance is the prototype plus Gaussian
// jitter scaled by the prototype amplitude, an optional monotone time warp
// (up to 15% local stretch) and optional lead-in/lead-out rest padding,
// resampled back to target_length.
struct SynthParams {
    int n_glosses = 50;
    int n_query_signers = 3;
    int n_donor_signers = 0;
    double jitter = 0.1;
    bool time_warp = true;
    bool rest_padding = true;
    JointSetId joint_set = JointSetId::Arm5;
    int target_length = 86;
    std::uint64_t seed = 0;
};

struct SynthData {
    std::vector<NormalizedSign> lexicon; // signer "lex", one prototype per gloss
    std::vector<ParticipantQueries> queries; // signers "p1".."pQ", ground truth = gloss label
    std::vector<ParticipantQueries> donors;  // signers "d1".."dD"
};

SynthData synth_lexicon(const SynthParams& params);

} // namespace signsearch
