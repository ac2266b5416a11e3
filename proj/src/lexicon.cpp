#include "signsearch/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "signsearch/errors.hpp"

namespace signsearch {

namespace {

constexpr const char* kMagic = "SIGNIDX";
constexpr int kFormatVersion = 1;

std::string format_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void check_label(const std::string& label, const char* what) {
    if (label.empty()) {
        throw FormatError(std::string(what) + " must not be empty");
    }
    for (char c : label) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            throw FormatError(std::string(what) + " must not contain whitespace: " + label);
        }
    }
}

LexiconEntry make_entry(const NormalizedSign& sign, std::map<std::pair<std::string, std::string>,
                                                            int>& instance_counter) {
    check_label(sign.gloss, "gloss");
    check_label(sign.signer, "signer");
    LexiconEntry e;
    e.gloss = sign.gloss;
    e.signer = sign.signer;
    e.instance = ++instance_counter[{sign.gloss, sign.signer}];
    e.sign = sign;
    for (double& v : e.sign.data) {
        if (!std::isfinite(v)) {
            throw FormatError("non-finite coordinate in sign " + sign.gloss);
        }
        v = canon_coord(v);
    }
    return e;
}

} // namespace

double canon_coord(double v) {
    return std::strtod(format_coord(v).c_str(), nullptr);
}

LexiconIndex build_index(const std::vector<NormalizedSign>& signs, JointSetId js) {
    if (signs.empty()) {
        throw EmptyLexiconError("build_index: no signs");
    }
    LexiconIndex index;
    index.joint_set = js;
    index.target_length = signs.front().length();
    std::map<std::pair<std::string, std::string>, int> counter;
    for (const NormalizedSign& s : signs) {
        if (s.joint_set != js) {
            throw JointSetMismatchError("build_index: sign " + s.gloss +
                                        " has a different joint set");
        }
        if (s.length() != index.target_length) {
            throw ShapeError("build_index: sign " + s.gloss + " has a different length");
        }
        index.entries.push_back(make_entry(s, counter));
    }
    return index;
}

LexiconIndex add_instances(const LexiconIndex& index, const std::vector<NormalizedSign>& signs) {
    LexiconIndex out = index;
    std::map<std::pair<std::string, std::string>, int> counter;
    for (const LexiconEntry& e : index.entries) {
        int& c = counter[{e.gloss, e.signer}];
        c = std::max(c, e.instance);
    }
    for (const NormalizedSign& s : signs) {
        if (s.joint_set != index.joint_set) {
            throw JointSetMismatchError("add_instances: sign " + s.gloss +
                                        " has a different joint set");
        }
        if (s.length() != index.target_length) {
            throw ShapeError("add_instances: sign " + s.gloss + " has a different length");
        }
        out.entries.push_back(make_entry(s, counter));
    }
    return out;
}

void save_index(const LexiconIndex& index, const std::filesystem::path& path) {
    std::ostringstream out;
    out << kMagic << ' ' << index.format_version << ' ' << to_string(index.joint_set) << ' '
        << index.target_length << ' ' << index.entries.size() << '\n';
    for (const LexiconEntry& e : index.entries) {
        out << e.gloss << ' ' << e.signer << ' ' << e.instance;
        for (double v : e.sign.data) {
            out << ' ' << format_coord(v);
        }
        out << '\n';
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw FormatError("cannot open " + path.string() + " for writing");
    }
    file << out.str();
    if (!file) {
        throw FormatError("write failed: " + path.string());
    }
}

LexiconIndex load_index(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw FormatError("cannot open " + path.string());
    }
    std::string header;
    if (!std::getline(file, header)) {
        throw FormatError("empty index file: " + path.string());
    }
    std::istringstream hs(header);
    std::string magic;
    std::string js_name;
    int version = 0;
    int target_length = 0;
    std::size_t count = 0;
    if (!(hs >> magic >> version >> js_name >> target_length >> count) || magic != kMagic) {
        throw FormatError("bad index header: " + path.string());
    }
    if (version != kFormatVersion) {
        throw VersionError("unsupported index format_version " + std::to_string(version));
    }
    auto js = joint_set_from_string(js_name);
    if (!js || target_length < 2) {
        throw FormatError("bad index header fields: " + path.string());
    }

    LexiconIndex index;
    index.format_version = version;
    index.joint_set = *js;
    index.target_length = target_length;
    const std::size_t coords =
        static_cast<std::size_t>(target_length) * static_cast<std::size_t>(joint_count(*js)) * 2;

    std::string line;
    for (std::size_t i = 0; i < count; ++i) {
        if (!std::getline(file, line)) {
            throw FormatError("truncated index file: " + path.string());
        }
        std::istringstream ls(line);
        LexiconEntry e;
        if (!(ls >> e.gloss >> e.signer >> e.instance)) {
            throw FormatError("bad entry record at line " + std::to_string(i + 2));
        }
        e.sign.joint_set = *js;
        e.sign.gloss = e.gloss;
        e.sign.signer = e.signer;
        e.sign.data.resize(coords);
        std::string token;
        for (std::size_t c = 0; c < coords; ++c) {
            if (!(ls >> token)) {
                throw FormatError("bad coordinate at line " + std::to_string(i + 2));
            }
            char* end = nullptr;
            e.sign.data[c] = std::strtod(token.c_str(), &end); // strtod: correctly rounded
            if (end == token.c_str() || *end != '\0') {
                throw FormatError("bad coordinate at line " + std::to_string(i + 2));
            }
        }
        if (ls >> token) {
            throw FormatError("trailing data at line " + std::to_string(i + 2));
        }
        index.entries.push_back(std::move(e));
    }
    return index;
}

std::vector<std::string> glosses(const LexiconIndex& index) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const LexiconEntry& e : index.entries) {
        if (seen.insert(e.gloss).second) {
            out.push_back(e.gloss);
        }
    }
    return out;
}

} // namespace signsearch
