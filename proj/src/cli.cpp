#include "signsearch/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "signsearch/errors.hpp"
#include "signsearch/evaluate.hpp"
#include "signsearch/lexicon.hpp"
#include "signsearch/pose_io.hpp"
#include "signsearch/preprocess.hpp"
#include "signsearch/synth.hpp"

namespace signsearch {

namespace fs = std::filesystem;

namespace {

std::string current_error_kind() {
    try {
        throw;
    } catch (const ParseError&) {
        return "ParseError";
    } catch (const EmptyFrameError&) {
        return "EmptyFrameError";
    } catch (const EmptySequenceError&) {
        return "EmptySequenceError";
    } catch (const TooManyGapsError&) {
        return "TooManyGapsError";
    } catch (const DegenerateSkeletonError&) {
        return "DegenerateSkeletonError";
    } catch (const ShapeError&) {
        return "ShapeError";
    } catch (const JointSetMismatchError&) {
        return "JointSetMismatchError";
    } catch (const EmptyLexiconError&) {
        return "EmptyLexiconError";
    } catch (const VersionError&) {
        return "VersionError";
    } catch (const FormatError&) {
        return "FormatError";
    } catch (const ParamError&) {
        return "ParamError";
    } catch (const LabelError&) {
        return "LabelError";
    } catch (const ConfigError&) {
        return "ConfigError";
    } catch (const EigenConvergenceError&) {
        return "EigenConvergenceError";
    } catch (const DegenerateDataError&) {
        return "DegenerateDataError";
    } catch (...) {
        return "Error";
    }
}

std::vector<fs::path> sorted_paths(const fs::path& dir, const char* extension) {
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() &&
            (extension == nullptr || entry.path().extension() == extension)) {
            out.push_back(entry.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

JointSetId parse_joint_set(const std::string& name) {
    auto js = joint_set_from_string(name);
    if (!js) {
        throw ConfigError("unknown joint set: " + name);
    }
    return *js;
}

NormalizedSign load_single_sign(const fs::path& path) {
    LexiconIndex idx = load_index(path);
    if (idx.entries.size() != 1) {
        throw FormatError(path.string() + ": expected a single-sign file");
    }
    return idx.entries.front().sign;
}

std::vector<NormalizedSign> load_sign_dir(const fs::path& dir) {
    std::vector<NormalizedSign> signs;
    for (const fs::path& p : sorted_paths(dir, ".sign")) {
        signs.push_back(load_single_sign(p));
    }
    if (signs.empty()) {
        throw EmptyLexiconError("no .sign files in " + dir.string());
    }
    return signs;
}

std::vector<ParticipantQueries> group_by_signer(const std::vector<NormalizedSign>& signs) {
    std::map<std::string, std::vector<NormalizedSign>> by_signer;
    for (const NormalizedSign& s : signs) {
        by_signer[s.signer].push_back(s);
    }
    std::vector<ParticipantQueries> out;
    for (auto& [signer, group] : by_signer) {
        out.push_back({signer, std::move(group)});
    }
    return out;
}

std::vector<Backend> parse_backends(const std::vector<std::string>& names) {
    std::vector<Backend> out;
    for (const std::string& n : names) {
        auto b = backend_from_string(n);
        if (!b) {
            throw ConfigError("unknown backend: " + n);
        }
        out.push_back(*b);
    }
    return out;
}

struct DtwFlags {
    bool open_begin = true;
    bool open_end = true;
    bool normalize = true;

    DtwParams params() const { return {open_begin, open_end, StepPattern::SymmetricP0, normalize}; }
};

struct UmapFlags {
    int n_neighbors = 15;
    double min_dist = 0.1;
    int n_epochs = 200;
    double learning_rate = 1.0;
    int negative_samples = 5;

    UmapParams params(std::uint64_t seed) const {
        UmapParams p;
        p.n_neighbors = n_neighbors;
        p.min_dist = min_dist;
        p.n_epochs = n_epochs;
        p.learning_rate = learning_rate;
        p.negative_samples = negative_samples;
        p.seed = seed;
        p.rederive_curve();
        return p;
    }
};

void add_dtw_flags(CLI::App* cmd, DtwFlags& f) {
    cmd->add_option("--open-begin", f.open_begin, "open-begin DTW alignment (default true)");
    cmd->add_option("--open-end", f.open_end, "open-end DTW alignment (default true)");
    cmd->add_option("--normalize", f.normalize, "divide DTW cost by query length (default true)");
}

void add_umap_flags(CLI::App* cmd, UmapFlags& f) {
    cmd->add_option("--n-neighbors", f.n_neighbors, "UMAP neighborhood size");
    cmd->add_option("--min-dist", f.min_dist, "UMAP minimum embedding distance");
    cmd->add_option("--n-epochs", f.n_epochs, "UMAP SGD epochs");
    cmd->add_option("--learning-rate", f.learning_rate, "UMAP initial learning rate");
    cmd->add_option("--negative-samples", f.negative_samples,
                    "repulsive samples per attractive update");
}

int cmd_ingest(const fs::path& input, const fs::path& out, JointSetId js,
               const PreprocessConfig& cfg) {
    if (!fs::is_directory(input)) {
        std::cerr << "error: input directory not found: " << input.string() << "\n";
        return 1;
    }
    std::vector<fs::path> sign_dirs;
    for (const auto& entry : fs::directory_iterator(input)) {
        if (entry.is_directory()) {
            sign_dirs.push_back(entry.path());
        }
    }
    std::sort(sign_dirs.begin(), sign_dirs.end());
    if (sign_dirs.empty()) {
        std::cerr << "error: no sign directories in " << input.string() << "\n";
        return 1;
    }
    fs::create_directories(out);

    std::size_t ok = 0;
    for (const fs::path& dir : sign_dirs) {
        const std::string name = dir.filename().string();
        try {
            auto sep = name.find("__");
            if (sep == std::string::npos || sep == 0 || sep + 2 >= name.size()) {
                throw ConfigError("directory name must be gloss__signer");
            }
            std::string gloss = name.substr(0, sep);
            std::string signer = name.substr(sep + 2);
            RawSequence seq = load_sequence(sorted_paths(dir, ".json"), name);
            NormalizedSign sign = normalize_pipeline(seq, js, cfg, gloss, signer);
            LexiconIndex one = build_index({sign}, js);
            save_index(one, out / (name + ".sign"));
            std::cout << "ok " << name << "\n";
            ++ok;
        } catch (const std::exception& e) {
            std::cout << "error " << current_error_kind() << " " << name << " (" << e.what()
                      << ")\n";
        }
    }
    return ok > 0 ? 0 : 1;
}

int cmd_query(const fs::path& index_path, const fs::path& query_path, const BackendConfig& cfg,
              int k, RankMode mode) {
    LexiconIndex index = load_index(index_path);
    NormalizedSign query = load_single_sign(query_path);
    RankedList ranked = rank(query, index, cfg, mode);
    char line[96];
    std::snprintf(line, sizeof(line), "%-6s%-24s%12s\n", "rank", "gloss", "distance");
    std::cout << line;
    int shown = 0;
    for (const RankedItem& item : ranked) {
        if (shown == k) {
            break;
        }
        ++shown;
        std::snprintf(line, sizeof(line), "%-6d%-24.24s%12.6f\n", shown, item.gloss.c_str(),
                      item.distance);
        std::cout << line;
    }
    return 0;
}

struct EvalArgs {
    std::string experiment;
    fs::path index_path;
    fs::path queries_dir;
    fs::path donors_dir;
    fs::path out;
    std::vector<std::string> backend_names;
    std::vector<int> ks{1, 10, 20, 50};
    bool noise_signer = false;
    std::uint64_t seed = 0;
    int donors = 6;
    int glosses = 0;
    int signers = 3;
    double jitter = 0.1;
    std::vector<std::string> joint_sets{"upper29", "arm5", "wrist1"};
    DtwFlags dtw;
    UmapFlags umap;
};

int cmd_eval(const EvalArgs& args) {
    EvalOptions options;
    options.ks = args.ks;
    options.noise_signer = args.noise_signer;
    options.seed = args.seed;
    options.dtw = args.dtw.params();
    options.umap = args.umap.params(args.seed);

    const bool synthetic = args.glosses > 0;
    auto synth_params = [&](JointSetId js, int donor_count) {
        SynthParams sp;
        sp.n_glosses = args.glosses;
        sp.n_query_signers = args.signers;
        sp.n_donor_signers = donor_count;
        sp.jitter = args.jitter;
        sp.joint_set = js;
        sp.seed = args.seed;
        return sp;
    };

    if (args.experiment == "table" || args.experiment == "synth") {
        options.backends = args.backend_names.empty()
                               ? std::vector<Backend>{Backend::Dtw, Backend::Euclidean,
                                                      Backend::Pca, Backend::Umap}
                               : parse_backends(args.backend_names);
        std::vector<EvalCondition> conditions;
        if (args.experiment == "synth" || synthetic) {
            if (args.glosses <= 0) {
                throw ConfigError("synth experiment needs --glosses");
            }
            for (const std::string& js_name : args.joint_sets) {
                JointSetId js = parse_joint_set(js_name);
                SynthData data = synth_lexicon(synth_params(js, 0));
                conditions.push_back({build_index(data.lexicon, js), std::move(data.queries)});
            }
        } else {
            if (args.index_path.empty() || args.queries_dir.empty()) {
                throw ConfigError("table experiment needs --index and --queries");
            }
            LexiconIndex index = load_index(args.index_path);
            auto participants = group_by_signer(load_sign_dir(args.queries_dir));
            conditions.push_back({std::move(index), std::move(participants)});
        }
        EvalReport report = run_condition_eval(conditions, options);
        write_csv(report, args.out);
        return 0;
    }

    if (args.experiment == "instances") {
        options.backends = args.backend_names.empty()
                               ? std::vector<Backend>{Backend::Dtw, Backend::Umap}
                               : parse_backends(args.backend_names);
        InstanceCurve merged;
        if (synthetic) {
            if (args.donors <= 0) {
                throw ConfigError("instances experiment needs --donors > 0");
            }
            for (const std::string& js_name : args.joint_sets) {
                JointSetId js = parse_joint_set(js_name);
                SynthData data = synth_lexicon(synth_params(js, args.donors));
                LexiconIndex base = build_index(data.lexicon, js);
                for (Backend b : options.backends) {
                    InstanceCurve c =
                        incremental_instance_eval(data.queries, base, data.donors, b, options);
                    merged.rows.insert(merged.rows.end(), c.rows.begin(), c.rows.end());
                }
            }
        } else {
            if (args.index_path.empty() || args.queries_dir.empty() || args.donors_dir.empty()) {
                throw ConfigError("instances experiment needs --index, --queries, --donors-dir");
            }
            LexiconIndex base = load_index(args.index_path);
            auto participants = group_by_signer(load_sign_dir(args.queries_dir));
            auto donors = group_by_signer(load_sign_dir(args.donors_dir));
            if (args.donors > 0 && static_cast<std::size_t>(args.donors) < donors.size()) {
                donors.resize(static_cast<std::size_t>(args.donors));
            }
            for (Backend b : options.backends) {
                InstanceCurve c = incremental_instance_eval(participants, base, donors, b, options);
                merged.rows.insert(merged.rows.end(), c.rows.begin(), c.rows.end());
            }
        }
        std::sort(merged.rows.begin(), merged.rows.end(), [](const auto& a, const auto& b) {
            return std::tie(a.backend, a.joint_set, a.k, a.added_participants) <
                   std::tie(b.backend, b.joint_set, b.k, b.added_participants);
        });
        write_csv(merged, args.out);
        return 0;
    }

    throw ConfigError("unknown experiment: " + args.experiment);
}

} // namespace

int cli_run(std::vector<std::string> args) {
    CLI::App app{"Training-free sign retrieval over pose-keypoint lexica"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "normalize raw keypoint sequences into sign files");
    fs::path ingest_input;
    fs::path ingest_out;
    std::string ingest_js;
    PreprocessConfig ingest_cfg;
    ingest->add_option("--input", ingest_input, "directory of gloss__signer frame-file dirs")
        ->required();
    ingest->add_option("--out", ingest_out, "output directory for .sign files")->required();
    ingest->add_option("--joint-set", ingest_js, "upper29 | arm5 | wrist1")
        ->required()
        ->check(CLI::IsMember({"upper29", "arm5", "wrist1"}));
    ingest->add_option("--target-length", ingest_cfg.target_length, "resampled frame count");
    ingest->add_option("--median-radius", ingest_cfg.median_radius, "median filter radius");
    ingest->add_option("--max-missing", ingest_cfg.max_missing_fraction,
                       "max tolerated missing fraction per joint");

    // index build/add/info
    auto* index_cmd = app.add_subcommand("index", "build and inspect lexicon indices");
    index_cmd->require_subcommand(1);
    auto* index_build = index_cmd->add_subcommand("build", "build an index from .sign files");
    fs::path build_signs;
    fs::path build_out;
    std::string build_js;
    index_build->add_option("--signs", build_signs, "directory of .sign files")->required();
    index_build->add_option("--out", build_out, "output index file")->required();
    index_build->add_option("--joint-set", build_js, "upper29 | arm5 | wrist1")
        ->required()
        ->check(CLI::IsMember({"upper29", "arm5", "wrist1"}));
    auto* index_add = index_cmd->add_subcommand("add", "append sign instances to an index");
    fs::path add_index;
    fs::path add_signs;
    fs::path add_out;
    index_add->add_option("--index", add_index, "existing index file")->required();
    index_add->add_option("--signs", add_signs, "directory of .sign files")->required();
    index_add->add_option("--out", add_out, "output index file")->required();
    auto* index_info = index_cmd->add_subcommand("info", "print index header");
    fs::path info_index;
    index_info->add_option("--index", info_index, "index file")->required();

    // query
    auto* query = app.add_subcommand("query", "rank lexicon signs against a query sign");
    fs::path query_index;
    fs::path query_sign;
    std::string query_backend = "dtw";
    int query_k = 20;
    bool query_expanded = false;
    std::uint64_t query_seed = 0;
    DtwFlags query_dtw;
    UmapFlags query_umap;
    query->add_option("--index", query_index, "index file")->required();
    query->add_option("--query", query_sign, "query .sign file")->required();
    query->add_option("--backend", query_backend, "dtw | euclidean | pca | umap")
        ->check(CLI::IsMember({"dtw", "euclidean", "pca", "umap"}));
    query->add_option("--k", query_k, "rows to print (default 20)");
    auto* query_seed_opt = query->add_option("--seed", query_seed, "PRNG seed (required for umap)");
    query->add_flag("--expanded", query_expanded, "rank every instance instead of best-per-gloss");
    add_dtw_flags(query, query_dtw);
    add_umap_flags(query, query_umap);

    // eval
    auto* eval = app.add_subcommand("eval", "run the retrieval evaluation protocols");
    EvalArgs eval_args;
    eval->add_option("--experiment", eval_args.experiment, "table | instances | synth")
        ->required()
        ->check(CLI::IsMember({"table", "instances", "synth"}));
    eval->add_option("--index", eval_args.index_path, "index file (file-based experiments)");
    eval->add_option("--queries", eval_args.queries_dir, "directory of query .sign files");
    eval->add_option("--donors-dir", eval_args.donors_dir, "directory of donor .sign files");
    eval->add_option("--out", eval_args.out, "output CSV path")->required();
    eval->add_option("--backends", eval_args.backend_names, "comma-separated backend list")
        ->delimiter(',');
    eval->add_option("--ks", eval_args.ks, "comma-separated top-k list")->delimiter(',');
    eval->add_flag("--noise-signer", eval_args.noise_signer,
                   "inject one random other participant per evaluation");
    eval->add_option("--seed", eval_args.seed, "PRNG seed")->required();
    eval->add_option("--donors", eval_args.donors, "donor participants for instances experiment");
    eval->add_option("--glosses", eval_args.glosses, "synthetic glosses (enables synthetic data)");
    eval->add_option("--signers", eval_args.signers, "synthetic query signers");
    eval->add_option("--jitter", eval_args.jitter, "synthetic jitter scale");
    eval->add_option("--joint-sets", eval_args.joint_sets, "joint sets for synthetic experiments")
        ->delimiter(',');
    add_dtw_flags(eval, eval_args.dtw);
    add_umap_flags(eval, eval_args.umap);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*ingest) {
            return cmd_ingest(ingest_input, ingest_out, parse_joint_set(ingest_js), ingest_cfg);
        }
        if (*index_build) {
            JointSetId js = parse_joint_set(build_js);
            LexiconIndex index = build_index(load_sign_dir(build_signs), js);
            save_index(index, build_out);
            std::cout << "indexed " << index.entries.size() << " signs\n";
            return 0;
        }
        if (*index_add) {
            LexiconIndex index = load_index(add_index);
            LexiconIndex grown = add_instances(index, load_sign_dir(add_signs));
            save_index(grown, add_out);
            std::cout << "indexed " << grown.entries.size() << " signs ("
                      << grown.entries.size() - index.entries.size() << " added)\n";
            return 0;
        }
        if (*index_info) {
            LexiconIndex index = load_index(info_index);
            std::cout << "format_version " << index.format_version << "\n"
                      << "joint_set " << to_string(index.joint_set) << "\n"
                      << "target_length " << index.target_length << "\n"
                      << "entries " << index.entries.size() << "\n"
                      << "glosses " << glosses(index).size() << "\n";
            return 0;
        }
        if (*query) {
            Backend backend = *backend_from_string(query_backend);
            if (backend == Backend::Umap && query_seed_opt->count() == 0) {
                std::cerr << "error: --backend umap requires --seed\n";
                return 2;
            }
            BackendConfig cfg;
            cfg.backend = backend;
            cfg.dtw = query_dtw.params();
            cfg.umap = query_umap.params(query_seed);
            return cmd_query(query_index, query_sign, cfg, query_k,
                             query_expanded ? RankMode::Expanded : RankMode::Collapsed);
        }
        if (*eval) {
            return cmd_eval(eval_args);
        }
    } catch (const std::exception& e) {
        std::cerr << "error (" << current_error_kind() << "): " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace signsearch
