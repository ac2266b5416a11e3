#include "signsearch/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include "signsearch/errors.hpp"
#include "signsearch/pca.hpp"
#include "signsearch/rng.hpp"

namespace signsearch {

namespace {

bool item_less(const RankedItem& a, const RankedItem& b) {
    if (a.distance != b.distance) {
        return a.distance < b.distance;
    }
    if (a.gloss != b.gloss) {
        return a.gloss < b.gloss;
    }
    if (a.signer != b.signer) {
        return a.signer < b.signer;
    }
    return a.instance < b.instance;
}

RankedList rank_from_distances(const LexiconIndex& index, const std::vector<double>& distances,
                               RankMode mode) {
    RankedList items;
    items.reserve(index.entries.size());
    for (std::size_t i = 0; i < index.entries.size(); ++i) {
        const LexiconEntry& e = index.entries[i];
        items.push_back({e.gloss, e.signer, e.instance, distances[i]});
    }
    if (mode == RankMode::Collapsed) {
        std::map<std::string, RankedItem> best;
        for (const RankedItem& item : items) {
            auto [it, inserted] = best.emplace(item.gloss, item);
            if (!inserted && item_less(item, it->second)) {
                it->second = item;
            }
        }
        items.clear();
        for (auto& [gloss, item] : best) {
            items.push_back(std::move(item));
        }
    }
    std::sort(items.begin(), items.end(), item_less);
    return items;
}

std::vector<double> flatten_rows(const LexiconIndex& index,
                                 const std::vector<const NormalizedSign*>& extra,
                                 std::size_t& dim_out) {
    const std::size_t dim = index.entries.empty()
                                ? 0
                                : index.entries.front().sign.data.size();
    std::vector<double> rows;
    rows.reserve((index.entries.size() + extra.size()) * dim);
    for (const LexiconEntry& e : index.entries) {
        rows.insert(rows.end(), e.sign.data.begin(), e.sign.data.end());
    }
    for (const NormalizedSign* s : extra) {
        if (s->data.size() != dim) {
            throw ShapeError("embedding: sign length mismatch");
        }
        rows.insert(rows.end(), s->data.begin(), s->data.end());
    }
    dim_out = dim;
    return rows;
}

// Distances from each extra sign (queries) to every index entry under a
// joint 2-D embedding of entries + queries.
std::vector<std::vector<double>> embedded_query_distances(
    const LexiconIndex& index, const std::vector<const NormalizedSign*>& queries,
    const BackendConfig& cfg) {
    std::size_t dim = 0;
    std::vector<double> rows = flatten_rows(index, queries, dim);
    const std::size_t n_entries = index.entries.size();
    const std::size_t n = n_entries + queries.size();

    std::vector<std::vector<double>> out(queries.size(),
                                         std::vector<double>(n_entries, 0.0));
    if (cfg.backend == Backend::Pca) {
        PcaModel model = pca_fit(rows, n, dim);
        std::vector<std::array<double, 2>> pts(n);
        for (std::size_t i = 0; i < n; ++i) {
            pts[i] = pca_project(model, {rows.data() + i * dim, dim});
        }
        for (std::size_t q = 0; q < queries.size(); ++q) {
            const auto& qp = pts[n_entries + q];
            for (std::size_t e = 0; e < n_entries; ++e) {
                out[q][e] = std::hypot(qp[0] - pts[e][0], qp[1] - pts[e][1]);
            }
        }
        return out;
    }

    if (n_entries < static_cast<std::size_t>(cfg.umap.n_neighbors) + 1) {
        throw ParamError("umap backend: index needs at least n_neighbors + 1 entries");
    }
    if (n <= static_cast<std::size_t>(cfg.umap.n_neighbors)) {
        throw ParamError("umap backend: lexicon + queries must exceed n_neighbors");
    }
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = std::to_string(i);
    }
    EmbeddedSet set = umap_embed(rows.data(), n, dim, std::move(labels), cfg.umap);
    for (std::size_t q = 0; q < queries.size(); ++q) {
        const double* qp = set.points.data() + (n_entries + q) * 2;
        for (std::size_t e = 0; e < n_entries; ++e) {
            const double* ep = set.points.data() + e * 2;
            out[q][e] = std::hypot(qp[0] - ep[0], qp[1] - ep[1]);
        }
    }
    return out;
}

std::vector<double> sequence_distances(const NormalizedSign& query, const LexiconIndex& index,
                                       const BackendConfig& cfg) {
    std::vector<double> distances(index.entries.size());
    SeriesView qv = view(query);
    for (std::size_t i = 0; i < index.entries.size(); ++i) {
        SeriesView rv = view(index.entries[i].sign);
        distances[i] = cfg.backend == Backend::Dtw ? dtw_obe(qv, rv, cfg.dtw)
                                                   : euclidean_flat(qv, rv);
    }
    return distances;
}

// Per-query ranked lists for one participant against one index.
std::vector<RankedList> rank_batch(const std::vector<NormalizedSign>& queries,
                                   const LexiconIndex& index, const BackendConfig& cfg,
                                   RankMode mode) {
    std::vector<RankedList> out;
    out.reserve(queries.size());
    if (cfg.backend == Backend::Dtw || cfg.backend == Backend::Euclidean) {
        for (const NormalizedSign& q : queries) {
            if (q.joint_set != index.joint_set) {
                throw JointSetMismatchError("rank: query joint set differs from index");
            }
            out.push_back(rank_from_distances(index, sequence_distances(q, index, cfg), mode));
        }
        return out;
    }
    std::vector<const NormalizedSign*> ptrs;
    ptrs.reserve(queries.size());
    for (const NormalizedSign& q : queries) {
        if (q.joint_set != index.joint_set) {
            throw JointSetMismatchError("rank: query joint set differs from index");
        }
        ptrs.push_back(&q);
    }
    auto rows = embedded_query_distances(index, ptrs, cfg);
    for (std::size_t q = 0; q < queries.size(); ++q) {
        out.push_back(rank_from_distances(index, rows[q], mode));
    }
    return out;
}

std::string fmt_accuracy(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

void write_text(const std::string& text, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw ConfigError("cannot open " + path.string() + " for writing");
    }
    file << text;
    if (!file) {
        throw ConfigError("write failed: " + path.string());
    }
}

} // namespace

const char* to_string(Backend b) {
    switch (b) {
    case Backend::Dtw:
        return "dtw";
    case Backend::Euclidean:
        return "euclidean";
    case Backend::Pca:
        return "pca";
    case Backend::Umap:
    default:
        return "umap";
    }
}

std::optional<Backend> backend_from_string(std::string_view name) {
    if (name == "dtw") {
        return Backend::Dtw;
    }
    if (name == "euclidean") {
        return Backend::Euclidean;
    }
    if (name == "pca") {
        return Backend::Pca;
    }
    if (name == "umap") {
        return Backend::Umap;
    }
    return std::nullopt;
}

RankedList rank(const NormalizedSign& query, const LexiconIndex& index, const BackendConfig& cfg,
                RankMode mode) {
    std::vector<NormalizedSign> one{query};
    return rank_batch(one, index, cfg, mode).front();
}

bool topk_hit(const RankedList& ranked, const std::string& target_gloss, int k) {
    if (k < 1) {
        throw ParamError("topk_hit: k must be >= 1");
    }
    int seen = 0;
    std::unordered_set<std::string> glosses_seen;
    for (const RankedItem& item : ranked) {
        if (glosses_seen.insert(item.gloss).second) {
            ++seen;
            if (item.gloss == target_gloss) {
                return true;
            }
            if (seen == k) {
                return false;
            }
        }
    }
    return false;
}

EvalReport run_condition_eval(const std::vector<EvalCondition>& conditions,
                              const EvalOptions& options) {
    EvalReport report;
    for (const EvalCondition& cond : conditions) {
        if (cond.participants.empty()) {
            throw ConfigError("run_condition_eval: no participants to evaluate");
        }
        std::unordered_set<std::string> known;
        for (const std::string& g : glosses(cond.index)) {
            known.insert(g);
        }
        for (const ParticipantQueries& p : cond.participants) {
            for (const NormalizedSign& s : p.signs) {
                if (!known.contains(s.gloss)) {
                    throw ConfigError("query gloss not in lexicon: " + s.gloss);
                }
            }
        }

        const std::size_t n_participants = cond.participants.size();
        if (options.noise_signer && n_participants < 2) {
            throw ConfigError("noise_signer needs at least two participants");
        }

        std::map<std::pair<std::string, int>, std::size_t> hits; // (backend, k) -> hits
        std::size_t total_queries = 0;
        std::set<std::size_t> effective_sizes;

        for (std::size_t ip = 0; ip < n_participants; ++ip) {
            const ParticipantQueries& p = cond.participants[ip];
            LexiconIndex effective = cond.index;
            if (options.noise_signer) {
                SplitMix64 pick(SplitMix64::derive(options.seed, 0xA110 + ip));
                std::size_t other = pick.next() % (n_participants - 1);
                if (other >= ip) {
                    ++other;
                }
                effective = add_instances(cond.index, cond.participants[other].signs);
            }
            effective_sizes.insert(effective.entries.size());
            total_queries += p.signs.size();

            for (Backend backend : options.backends) {
                BackendConfig cfg{backend, options.dtw, options.umap};
                auto ranked = rank_batch(p.signs, effective, cfg, RankMode::Collapsed);
                for (std::size_t q = 0; q < p.signs.size(); ++q) {
                    for (int k : options.ks) {
                        if (topk_hit(ranked[q], p.signs[q].gloss, k)) {
                            ++hits[{to_string(backend), k}];
                        }
                    }
                }
            }
        }
        if (effective_sizes.size() > 1) {
            throw ConfigError("noise donors must contribute equal sign counts");
        }

        for (Backend backend : options.backends) {
            for (int k : options.ks) {
                EvalReport::Row row;
                row.backend = to_string(backend);
                row.joint_set = to_string(cond.index.joint_set);
                row.k = k;
                row.accuracy = total_queries == 0
                                   ? 0.0
                                   : static_cast<double>(hits[{row.backend, k}]) /
                                         static_cast<double>(total_queries);
                row.lexicon_size = *effective_sizes.begin();
                row.seed = options.seed;
                report.rows.push_back(std::move(row));
            }
        }
    }
    std::sort(report.rows.begin(), report.rows.end(), [](const auto& a, const auto& b) {
        return std::tie(a.backend, a.joint_set, a.k) < std::tie(b.backend, b.joint_set, b.k);
    });
    return report;
}

InstanceCurve incremental_instance_eval(const std::vector<ParticipantQueries>& queries,
                                        const LexiconIndex& base_index,
                                        const std::vector<ParticipantQueries>& donors,
                                        Backend backend, const EvalOptions& options) {
    if (donors.empty()) {
        throw ConfigError("incremental_instance_eval: need at least one donor");
    }
    if (queries.empty()) {
        throw ConfigError("incremental_instance_eval: no participants to evaluate");
    }
    std::unordered_set<std::string> query_signers;
    for (const ParticipantQueries& p : queries) {
        query_signers.insert(p.signer);
    }
    for (const ParticipantQueries& d : donors) {
        if (query_signers.contains(d.signer)) {
            throw ConfigError("donor overlaps a query participant: " + d.signer);
        }
    }

    // Fixed seeded donor order.
    std::vector<std::size_t> order(donors.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    SplitMix64 shuffle(SplitMix64::derive(options.seed, 0xD0AA));
    for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[shuffle.next() % i]);
    }

    const std::vector<int> ks{1, 10};
    InstanceCurve curve;
    LexiconIndex current = base_index;
    for (std::size_t m = 0; m <= donors.size(); ++m) {
        if (m > 0) {
            current = add_instances(current, donors[order[m - 1]].signs);
        }
        std::map<int, std::size_t> hits;
        std::size_t total = 0;
        BackendConfig cfg{backend, options.dtw, options.umap};
        for (const ParticipantQueries& p : queries) {
            auto ranked = rank_batch(p.signs, current, cfg, RankMode::Collapsed);
            for (std::size_t q = 0; q < p.signs.size(); ++q) {
                for (int k : ks) {
                    if (topk_hit(ranked[q], p.signs[q].gloss, k)) {
                        ++hits[k];
                    }
                }
            }
            total += p.signs.size();
        }
        for (int k : ks) {
            InstanceCurve::Row row;
            row.backend = to_string(backend);
            row.joint_set = to_string(base_index.joint_set);
            row.k = k;
            row.added_participants = static_cast<int>(m);
            row.accuracy =
                total == 0 ? 0.0 : static_cast<double>(hits[k]) / static_cast<double>(total);
            row.lexicon_size = current.entries.size();
            row.seed = options.seed;
            curve.rows.push_back(std::move(row));
        }
    }
    std::sort(curve.rows.begin(), curve.rows.end(), [](const auto& a, const auto& b) {
        return std::tie(a.backend, a.joint_set, a.k, a.added_participants) <
               std::tie(b.backend, b.joint_set, b.k, b.added_participants);
    });
    return curve;
}

std::string to_csv(const EvalReport& report) {
    std::ostringstream out;
    out << "backend,joint_set,k,accuracy,lexicon_size,seed\n";
    for (const auto& r : report.rows) {
        out << r.backend << ',' << r.joint_set << ',' << r.k << ',' << fmt_accuracy(r.accuracy)
            << ',' << r.lexicon_size << ',' << r.seed << '\n';
    }
    return out.str();
}

std::string to_csv(const InstanceCurve& curve) {
    std::ostringstream out;
    out << "backend,joint_set,k,added_participants,accuracy,lexicon_size,seed\n";
    for (const auto& r : curve.rows) {
        out << r.backend << ',' << r.joint_set << ',' << r.k << ',' << r.added_participants << ','
            << fmt_accuracy(r.accuracy) << ',' << r.lexicon_size << ',' << r.seed << '\n';
    }
    return out.str();
}

void write_csv(const EvalReport& report, const std::filesystem::path& path) {
    write_text(to_csv(report), path);
}

void write_csv(const InstanceCurve& curve, const std::filesystem::path& path) {
    write_text(to_csv(curve), path);
}

} // namespace signsearch
