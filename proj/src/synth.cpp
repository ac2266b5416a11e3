#include "signsearch/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "signsearch/errors.hpp"
#include "signsearch/preprocess.hpp"
#include "signsearch/rng.hpp"

namespace signsearch {

namespace {

constexpr double kTwoPi = 6.283185307179586;
constexpr double kWarpStretch = 0.15;   // max local speed deviation
constexpr double kMaxPadFraction = 0.22; // lead-in/lead-out rest frames per side

struct Prototype {
    std::vector<double> series;    // T x dim
    std::vector<double> amplitude; // per channel, jitter reference scale
};

Prototype make_prototype(int t_len, int dim, std::uint64_t stream_seed) {
    SplitMix64 rng(stream_seed);
    Prototype proto;
    proto.series.assign(static_cast<std::size_t>(t_len) * dim, 0.0);
    proto.amplitude.assign(dim, 0.0);
    for (int ch = 0; ch < dim; ++ch) {
        double amp[2];
        double freq[2];
        double phase[2];
        for (int h = 0; h < 2; ++h) {
            amp[h] = rng.uniform(0.15, 0.6);
            freq[h] = rng.uniform(0.5, 4.5);
            phase[h] = rng.uniform(0.0, kTwoPi);
        }
        proto.amplitude[ch] = amp[0] + amp[1];
        for (int t = 0; t < t_len; ++t) {
            double tau = static_cast<double>(t) / (t_len - 1);
            double v = 0.0;
            for (int h = 0; h < 2; ++h) {
                v += amp[h] * std::sin(kTwoPi * freq[h] * tau + phase[h]);
            }
            proto.series[static_cast<std::size_t>(t) * dim + ch] = v;
        }
    }
    return proto;
}

std::vector<double> interp_at(const std::vector<double>& series, int dim,
                              const std::vector<double>& positions) {
    const int n = static_cast<int>(series.size()) / dim;
    std::vector<double> out(positions.size() * static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < positions.size(); ++i) {
        double pos = std::clamp(positions[i], 0.0, static_cast<double>(n - 1));
        int t0 = std::min(static_cast<int>(pos), n - 2);
        double w = pos - t0;
        const double* a = series.data() + static_cast<std::size_t>(t0) * dim;
        const double* b = a + dim;
        for (int d = 0; d < dim; ++d) {
            out[i * dim + d] = a[d] + w * (b[d] - a[d]);
        }
    }
    return out;
}

std::vector<double> make_instance(const Prototype& proto, int t_len, int dim,
                                  const SynthParams& params, SplitMix64& rng) {
    std::vector<double> series(proto.series.size());
    for (int t = 0; t < t_len; ++t) {
        for (int ch = 0; ch < dim; ++ch) {
            std::size_t idx = static_cast<std::size_t>(t) * dim + ch;
            series[idx] = proto.series[idx] + params.jitter * proto.amplitude[ch] * rng.normal();
        }
    }

    if (params.time_warp) {
        // Monotone warp: cumulative sum of speeds in [1-s, 1+s], rescaled so
        // the endpoints stay fixed.
        std::vector<double> pos(t_len, 0.0);
        for (int t = 1; t < t_len; ++t) {
            pos[t] = pos[t - 1] + rng.uniform(1.0 - kWarpStretch, 1.0 + kWarpStretch);
        }
        double scale = static_cast<double>(t_len - 1) / pos.back();
        for (double& p : pos) {
            p *= scale;
        }
        series = interp_at(series, dim, pos);
    }

    if (params.rest_padding) {
        int front = static_cast<int>(rng.uniform(0.0, kMaxPadFraction) * t_len);
        int back = static_cast<int>(rng.uniform(0.0, kMaxPadFraction) * t_len);
        if (front > 0 || back > 0) {
            std::vector<double> padded;
            padded.reserve(static_cast<std::size_t>(front + t_len + back) * dim);
            for (int t = 0; t < front; ++t) {
                padded.insert(padded.end(), series.begin(), series.begin() + dim);
            }
            padded.insert(padded.end(), series.begin(), series.end());
            for (int t = 0; t < back; ++t) {
                padded.insert(padded.end(), series.end() - dim, series.end());
            }
            series = resample(padded, static_cast<std::size_t>(dim),
                              static_cast<std::size_t>(t_len));
        }
    }
    return series;
}

std::string gloss_name(int g) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "G%03d", g);
    return buf;
}

} // namespace

SynthData synth_lexicon(const SynthParams& params) {
    if (params.n_glosses < 2) {
        throw ParamError("synth_lexicon: need at least 2 glosses");
    }
    if (params.target_length < 2) {
        throw ParamError("synth_lexicon: target_length must be >= 2");
    }
    const int t_len = params.target_length;
    const int dim = joint_count(params.joint_set) * 2;

    std::vector<Prototype> protos;
    protos.reserve(params.n_glosses);
    for (int g = 0; g < params.n_glosses; ++g) {
        protos.push_back(make_prototype(t_len, dim, SplitMix64::derive(params.seed, g)));
    }

    SynthData data;
    for (int g = 0; g < params.n_glosses; ++g) {
        NormalizedSign sign;
        sign.joint_set = params.joint_set;
        sign.gloss = gloss_name(g);
        sign.signer = "lex";
        sign.data = protos[g].series;
        data.lexicon.push_back(std::move(sign));
    }

    auto make_signer = [&](const std::string& name, int signer_ordinal) {
        ParticipantQueries p;
        p.signer = name;
        for (int g = 0; g < params.n_glosses; ++g) {
            SplitMix64 rng(SplitMix64::derive(
                params.seed, 0x100000ull + static_cast<std::uint64_t>(g) * 4096 +
                                 static_cast<std::uint64_t>(signer_ordinal)));
            NormalizedSign sign;
            sign.joint_set = params.joint_set;
            sign.gloss = gloss_name(g);
            sign.signer = name;
            sign.data = make_instance(protos[g], t_len, dim, params, rng);
            p.signs.push_back(std::move(sign));
        }
        return p;
    };

    for (int s = 0; s < params.n_query_signers; ++s) {
        data.queries.push_back(make_signer("p" + std::to_string(s + 1), s + 1));
    }
    for (int s = 0; s < params.n_donor_signers; ++s) {
        data.donors.push_back(
            make_signer("d" + std::to_string(s + 1), params.n_query_signers + s + 1));
    }
    return data;
}

} // namespace signsearch
