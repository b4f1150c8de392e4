#include "wmh/sketch_quant.hpp"

#include <vector>

namespace wmh {

namespace detail {

void require_nonempty(const WeightedSet &s) {
    if (s.empty()) throw Error(ErrorCode::EmptySet, "cannot sketch an empty set");
}

} // namespace detail

std::uint64_t quantize_floor(double weight, std::uint32_t scale) {
    const double scaled = static_cast<double>(scale) * weight;
    if (!(scaled < 0x1.0p53)) {
        throw Error(ErrorCode::InvalidConfig, "quantized weight exceeds 2^53");
    }
    return static_cast<std::uint64_t>(std::floor(scaled));
}

namespace {

struct Quantized {
    ElementId k;
    std::uint64_t count;
    double frac;
};

std::vector<Quantized> quantize(const WeightedSet &s, std::uint32_t scale) {
    std::vector<Quantized> out;
    out.reserve(s.size());
    for (const auto &e : s.entries()) {
        const std::uint64_t count = quantize_floor(e.weight, scale);
        const double frac = static_cast<double>(scale) * e.weight - static_cast<double>(count);
        out.push_back({e.id, count, frac});
    }
    return out;
}

bool any_subelement(const std::vector<Quantized> &q) {
    for (const auto &e : q) {
        if (e.count > 0) return true;
    }
    return false;
}

Fingerprint start(const WeightedSet &s, const SketchConfig &cfg, Algorithm algo) {
    detail::require_nonempty(s);
    validate(cfg, s.universe_size());
    Fingerprint fp;
    fp.algo = algo;
    fp.seed = cfg.seed;
    fp.codes.reserve(cfg.num_hashes);
    return fp;
}

} // namespace

Fingerprint sketch_minhash(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx) {
    Fingerprint fp = start(s, cfg, Algorithm::MinHash);
    detail::with_source(ctx, [&](const auto &src) {
        for (std::uint32_t d = 0; d < cfg.num_hashes; ++d) {
            const auto pi = permutation_for(src, cfg.seed, d, cfg.prime);
            std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
            for (const auto &e : s.entries()) best = std::min(best, pi(e.id));
            fp.codes.emplace_back(MinValue{best});
        }
    });
    return fp;
}

Fingerprint sketch_haveliwala(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx) {
    Fingerprint fp = start(s, cfg, Algorithm::Haveliwala);
    const auto q = quantize(s, cfg.quant_scale);
    if (!any_subelement(q)) {
        throw Error(ErrorCode::EmptyQuantization, "every weight quantizes to zero subelements");
    }
    detail::with_source(ctx, [&](const auto &src) {
        for (std::uint32_t d = 0; d < cfg.num_hashes; ++d) {
            IndexSub best{kSentinelElement, 0};
            double best_value = std::numeric_limits<double>::infinity();
            for (const auto &e : q) {
                const auto m = subelement_min(src, cfg.seed, d, e.k, e.count);
                if (m.value < best_value) {
                    best_value = m.value;
                    best = {e.k, m.index};
                }
            }
            fp.codes.emplace_back(best);
        }
    });
    return fp;
}

Fingerprint sketch_haeupler(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx) {
    Fingerprint fp = start(s, cfg, Algorithm::Haeupler);
    const auto q = quantize(s, cfg.quant_scale);
    detail::with_source(ctx, [&](const auto &src) {
        for (std::uint32_t d = 0; d < cfg.num_hashes; ++d) {
            IndexSub best{kSentinelElement, 0};
            double best_value = std::numeric_limits<double>::infinity();
            for (const auto &e : q) {
                std::uint64_t count = e.count;
                // the coin is keyed by (d, k) only, so every set flips the same coin
                if (e.frac > 0.0 && src.uniform01(VariateKey{cfg.seed, d, e.k, Slot::Frac, 0}) < e.frac) {
                    ++count;
                }
                const auto m = subelement_min(src, cfg.seed, d, e.k, count);
                if (m.value < best_value) {
                    best_value = m.value;
                    best = {e.k, m.index};
                }
            }
            fp.codes.emplace_back(best);
        }
    });
    return fp;
}

Fingerprint sketch_gollapudi_int(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx) {
    Fingerprint fp = start(s, cfg, Algorithm::GollapudiInt);
    const auto q = quantize(s, cfg.quant_scale);
    if (!any_subelement(q)) {
        throw Error(ErrorCode::EmptyQuantization, "every weight quantizes to zero subelements");
    }
    std::uint64_t visits = 0, walks = 0;
    detail::with_source(ctx, [&](const auto &src) {
        for (std::uint32_t d = 0; d < cfg.num_hashes; ++d) {
            IndexSub best{kSentinelElement, 0};
            double best_value = std::numeric_limits<double>::infinity();
            for (const auto &e : q) {
                if (e.count == 0) continue;
                const auto w = gollapudi_walk(src, cfg.seed, d, e.k, e.count);
                visits += w.visits;
                ++walks;
                if (w.value < best_value) {
                    best_value = w.value;
                    best = {e.k, w.index};
                }
            }
            fp.codes.emplace_back(best);
        }
    });
    if (ctx.stats) {
        ctx.stats->active_indices += visits;
        ctx.stats->element_walks += walks;
    }
    return fp;
}

} // namespace wmh
