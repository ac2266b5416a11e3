#include <doctest.h>

#include <fstream>

#include "helpers.hpp"
#include "signsearch/errors.hpp"
#include "signsearch/lexicon.hpp"
#include "signsearch/synth.hpp"

using namespace signsearch;

namespace {

NormalizedSign tiny_sign(const std::string& gloss, const std::string& signer, double fill,
                         JointSetId js = JointSetId::Wrist1, int frames = 4) {
    NormalizedSign s;
    s.joint_set = js;
    s.gloss = gloss;
    s.signer = signer;
    s.data.assign(static_cast<std::size_t>(frames) * joint_count(js) * 2, fill);
    return s;
}

} // namespace

TEST_SUITE("lexicon") {

TEST_CASE("build_index basics") {
    std::vector<NormalizedSign> signs{tiny_sign("A", "s1", 0.0), tiny_sign("B", "s1", 1.0),
                                      tiny_sign("A", "s1", 2.0)};
    LexiconIndex index = build_index(signs, JointSetId::Wrist1);
    REQUIRE(index.entries.size() == 3);
    CHECK(index.entries[0].instance == 1);
    CHECK(index.entries[2].instance == 2); // second (A, s1)
    CHECK(index.target_length == 4);
    CHECK(glosses(index) == std::vector<std::string>{"A", "B"});

    CHECK_THROWS_AS(build_index({}, JointSetId::Wrist1), EmptyLexiconError);

    std::vector<NormalizedSign> mixed{tiny_sign("A", "s1", 0.0),
                                      tiny_sign("B", "s1", 0.0, JointSetId::Arm5)};
    CHECK_THROWS_AS(build_index(mixed, JointSetId::Wrist1), JointSetMismatchError);

    CHECK_THROWS_AS(build_index({tiny_sign("bad gloss", "s1", 0.0)}, JointSetId::Wrist1),
                    FormatError);
}

TEST_CASE("add_instances is persistent") {
    LexiconIndex base =
        build_index({tiny_sign("A", "s1", 0.0), tiny_sign("B", "s1", 1.0)}, JointSetId::Wrist1);
    LexiconIndex grown = add_instances(base, {tiny_sign("A", "s2", 5.0), tiny_sign("A", "s1", 6.0)});
    CHECK(base.entries.size() == 2); // old snapshot untouched
    REQUIRE(grown.entries.size() == 4);
    CHECK(grown.entries[2].instance == 1); // first (A, s2)
    CHECK(grown.entries[3].instance == 2); // second (A, s1)

    CHECK_THROWS_AS(add_instances(base, {tiny_sign("C", "s1", 0.0, JointSetId::Arm5)}),
                    JointSetMismatchError);
}

TEST_CASE("save/load round trip is bitwise on coordinates") {
    helpers::TempDir dir("lexicon");
    SplitMix64 rng(41);
    std::vector<NormalizedSign> signs;
    for (int i = 0; i < 3; ++i) {
        NormalizedSign s = tiny_sign("G" + std::to_string(i), "s" + std::to_string(i % 2), 0.0);
        for (double& v : s.data) {
            v = rng.uniform(-2.0, 2.0);
        }
        signs.push_back(std::move(s));
    }
    LexiconIndex index = build_index(signs, JointSetId::Wrist1);
    auto path = dir.path / "test.idx";
    save_index(index, path);
    LexiconIndex back = load_index(path);

    REQUIRE(back.entries.size() == index.entries.size());
    CHECK(back.joint_set == index.joint_set);
    CHECK(back.target_length == index.target_length);
    for (std::size_t i = 0; i < index.entries.size(); ++i) {
        CHECK(back.entries[i].gloss == index.entries[i].gloss);
        CHECK(back.entries[i].signer == index.entries[i].signer);
        CHECK(back.entries[i].instance == index.entries[i].instance);
        CHECK(back.entries[i].sign.data == index.entries[i].sign.data); // bitwise
    }

    // saving the loaded index reproduces the file byte for byte
    auto path2 = dir.path / "test2.idx";
    save_index(back, path2);
    std::ifstream f1(path, std::ios::binary);
    std::ifstream f2(path2, std::ios::binary);
    std::string c1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string c2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(c1 == c2);
}

TEST_CASE("load_index rejects bad files") {
    helpers::TempDir dir("lexicon_bad");

    auto write = [&](const std::string& name, const std::string& content) {
        auto p = dir.path / name;
        std::ofstream(p) << content;
        return p;
    };

    CHECK_THROWS_AS(load_index(write("v9", "SIGNIDX 9 wrist1 4 0\n")), VersionError);
    CHECK_THROWS_AS(load_index(write("magic", "NOPE 1 wrist1 4 0\n")), FormatError);
    CHECK_THROWS_AS(load_index(write("trunc", "SIGNIDX 1 wrist1 4 2\nA s1 1 0 0 0 0 0 0 0 0\n")),
                    FormatError);
    CHECK_THROWS_AS(load_index(write("short_row", "SIGNIDX 1 wrist1 4 1\nA s1 1 0 0 0\n")),
                    FormatError);
    CHECK_THROWS_AS(load_index(write("junk", "SIGNIDX 1 wrist1 4 1\nA s1 1 0 0 0 0 0 0 0 x\n")),
                    FormatError);
    CHECK_THROWS_AS(load_index(dir.path / "missing.idx"), FormatError);
}

TEST_CASE("round trip at scale with canonical formatting") {
    helpers::TempDir dir("lexicon_scale");
    SynthParams sp;
    sp.n_glosses = 40;
    sp.n_query_signers = 1;
    sp.seed = 99;
    SynthData data = synth_lexicon(sp);
    LexiconIndex index = build_index(data.lexicon, sp.joint_set);
    auto path = dir.path / "big.idx";
    save_index(index, path);
    LexiconIndex back = load_index(path);
    REQUIRE(back.entries.size() == index.entries.size());
    for (std::size_t i = 0; i < index.entries.size(); ++i) {
        CHECK(back.entries[i].sign.data == index.entries[i].sign.data);
    }
}

} // TEST_SUITE
