#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "signsearch/distance.hpp"
#include "signsearch/lexicon.hpp"
#include "signsearch/umap.hpp"

namespace signsearch {

enum class Backend { Dtw, Euclidean, Pca, Umap };

const char* to_string(Backend b);
std::optional<Backend> backend_from_string(std::string_view name);

// Distance backend plus everything it needs (DTW openness, UMAP
// hyperparameters and seed).
struct BackendConfig {
    Backend backend = Backend::Dtw;
    DtwParams dtw{};
    UmapParams umap{};
};

// Collapsed (default): one row per gloss at its minimum distance over
// instances, since a user searches glosses, not instances. Expanded keeps
// every instance, for diagnostics.
enum class RankMode { Collapsed, Expanded };

struct RankedItem {
    std::string gloss;
    std::string signer;
    int instance = 1;
    double distance = 0.0;
};

// Ascending by distance, ties by (gloss, signer, instance).
using RankedList = std::vector<RankedItem>;

// Rank every lexicon entry by distance to the query under the chosen
// backend. The embedding backends fit lexicon + query jointly, so a UMAP
// ranking refits the layout per query.
RankedList rank(const NormalizedSign& query, const LexiconIndex& index, const BackendConfig& cfg,
                RankMode mode = RankMode::Collapsed);

// True iff the target gloss appears within the first k distinct glosses.
bool topk_hit(const RankedList& ranked, const std::string& target_gloss, int k);

struct ParticipantQueries {
    std::string signer;
    std::vector<NormalizedSign> signs;
};

struct EvalCondition {
    LexiconIndex index;
    std::vector<ParticipantQueries> participants;
};

struct EvalOptions {
    std::vector<Backend> backends{Backend::Dtw, Backend::Euclidean, Backend::Pca, Backend::Umap};
    std::vector<int> ks{1, 10, 20, 50};
    bool noise_signer = false; // inject one random other participant per evaluation
    std::uint64_t seed = 0;
    DtwParams dtw{};
    UmapParams umap{};
};

struct EvalReport {
    struct Row {
        std::string backend;
        std::string joint_set;
        int k = 0;
        double accuracy = 0.0;
        std::size_t lexicon_size = 0;
        std::uint64_t seed = 0;
    };
    std::vector<Row> rows;
};

// Top-k accuracy pooled over all (participant, sign) pairs, one row per
// (backend, joint_set, k). With noise_signer, each participant's lexicon
// gains one seeded-random other participant's signs first.
EvalReport run_condition_eval(const std::vector<EvalCondition>& conditions,
                              const EvalOptions& options);

struct InstanceCurve {
    struct Row {
        std::string backend;
        std::string joint_set;
        int k = 0;
        int added_participants = 0;
        double accuracy = 0.0;
        std::size_t lexicon_size = 0;
        std::uint64_t seed = 0;
    };
    std::vector<Row> rows;
};

// Top-1/top-10 accuracy while donors' sign instances are appended one donor
// at a time (m = 0..donors.size(), seeded donor order). Donors must be
// disjoint from the query participants.
InstanceCurve incremental_instance_eval(const std::vector<ParticipantQueries>& queries,
                                        const LexiconIndex& base_index,
                                        const std::vector<ParticipantQueries>& donors,
                                        Backend backend, const EvalOptions& options);

void write_csv(const EvalReport& report, const std::filesystem::path& path);
void write_csv(const InstanceCurve& curve, const std::filesystem::path& path);

std::string to_csv(const EvalReport& report);
std::string to_csv(const InstanceCurve& curve);

} // namespace signsearch
