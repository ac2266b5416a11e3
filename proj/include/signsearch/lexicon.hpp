#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "signsearch/sign.hpp"

namespace signsearch {

struct LexiconEntry {
    std::string gloss;
    std::string signer;
    int instance = 1; // per-(gloss, signer) ordinal, assigned at insertion
    NormalizedSign sign;
};

// Immutable collection of normalized signs. Queries run against a frozen
// snapshot; add_instances returns a new value and never touches the old one.
struct LexiconIndex {
    int format_version = 1;
    JointSetId joint_set = JointSetId::Arm5;
    int target_length = 86;
    std::vector<LexiconEntry> entries;
};

// Round a coordinate to its canonical 9-significant-digit decimal value.
// Index files store decimal text; canonicalizing at build time makes the
// save/load round trip bitwise lossless.
double canon_coord(double v);

// Build an index in input order. Signs carry their own gloss/signer labels.
// Heterogeneous joint sets raise JointSetMismatchError, an empty list
// EmptyLexiconError. Coordinates are canonicalized on the way in.
LexiconIndex build_index(const std::vector<NormalizedSign>& signs, JointSetId js);

// Persistent append: returns a new index with the extra signs, instance
// ordinals continuing per (gloss, signer).
LexiconIndex add_instances(const LexiconIndex& index, const std::vector<NormalizedSign>& signs);

// Text format, one record per line:
//   SIGNIDX <version> <joint_set> <target_length> <entry_count>
//   <gloss> <signer> <instance> <coord...>     (T*J*2 coords, 9 sig. digits)
void save_index(const LexiconIndex& index, const std::filesystem::path& path);
LexiconIndex load_index(const std::filesystem::path& path);

// Unique glosses in first-appearance order.
std::vector<std::string> glosses(const LexiconIndex& index);

} // namespace signsearch
