#include "wmh/sketch_cws.hpp"

namespace wmh {

namespace {

Fingerprint start(const WeightedSet &s, const SketchConfig &cfg, Algorithm algo) {
    detail::require_nonempty(s);
    validate(cfg, s.universe_size());
    Fingerprint fp;
    fp.algo = algo;
    fp.seed = cfg.seed;
    fp.codes.reserve(cfg.num_hashes);
    return fp;
}

// Arg-min over elements of `element(...).a`, emitting make_code(k, winner).
template <class ElementFn, class CodeFn>
Fingerprint argmin_sketch(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx,
                          Algorithm algo, ElementFn &&element, CodeFn &&make_code) {
    Fingerprint fp = start(s, cfg, algo);
    detail::with_source(ctx, [&](const auto &src) {
        for (std::uint32_t d = 0; d < cfg.num_hashes; ++d) {
            ElementId best_k = kSentinelElement;
            decltype(element(src, d, ElementId{}, 1.0)) best{};
            double best_a = std::numeric_limits<double>::infinity();
            for (const auto &e : s.entries()) {
                auto el = element(src, d, e.id, e.weight);
                if (el.a < best_a) {
                    best_a = el.a;
                    best_k = e.id;
                    best = el;
                }
            }
            fp.codes.emplace_back(make_code(best_k, best));
        }
    });
    return fp;
}

} // namespace

Fingerprint sketch_cws(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx) {
    return argmin_sketch(
        s, cfg, ctx, Algorithm::Cws,
        [&](const auto &src, std::uint32_t d, ElementId k, double w) {
            return cws_element(src, cfg.seed, d, k, w);
        },
        [](ElementId k, const CwsElement &e) { return SampleCode{IndexY{k, e.y}}; });
}

Fingerprint sketch_icws(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx) {
    return argmin_sketch(
        s, cfg, ctx, Algorithm::Icws,
        [&](const auto &src, std::uint32_t d, ElementId k, double w) {
            return icws_element(src, cfg.seed, d, k, w);
        },
        [](ElementId k, const IcwsElement &e) { return SampleCode{IndexY{k, e.y}}; });
}

Fingerprint sketch_0bit_cws(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx) {
    return argmin_sketch(
        s, cfg, ctx, Algorithm::ZeroBitCws,
        [&](const auto &src, std::uint32_t d, ElementId k, double w) {
            return icws_element(src, cfg.seed, d, k, w);
        },
        [](ElementId k, const IcwsElement &) { return SampleCode{IndexOnly{k}}; });
}

Fingerprint sketch_ccws(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx) {
    std::uint64_t degenerate = 0;
    auto fp = argmin_sketch(
        s, cfg, ctx, Algorithm::Ccws,
        [&](const auto &src, std::uint32_t d, ElementId k, double w) {
            auto e = ccws_element(src, cfg.seed, d, k, w);
            degenerate += e.degenerate ? 1 : 0;
            return e;
        },
        [](ElementId k, const CcwsElement &e) {
            if (k == kSentinelElement) return sentinel_code(CodeKind::IndexY);
            return SampleCode{IndexY{k, e.y}};
        });
    if (ctx.stats) ctx.stats->degenerate_z += degenerate;
    return fp;
}

Fingerprint sketch_pcws(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx) {
    return argmin_sketch(
        s, cfg, ctx, Algorithm::Pcws,
        [&](const auto &src, std::uint32_t d, ElementId k, double w) {
            return pcws_element(src, cfg.seed, d, k, w);
        },
        [](ElementId k, const PcwsElement &e) { return SampleCode{IndexY{k, e.y}}; });
}

Fingerprint sketch_i2cws(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx) {
    Fingerprint fp = start(s, cfg, Algorithm::I2Cws);
    detail::with_source(ctx, [&](const auto &src) {
        for (std::uint32_t d = 0; d < cfg.num_hashes; ++d) {
            const Entry *best = nullptr;
            double best_a = std::numeric_limits<double>::infinity();
            for (const auto &e : s.entries()) {
                const auto z = i2cws_z_element(src, cfg.seed, d, e.id, e.weight);
                if (z.a < best_a) {
                    best_a = z.a;
                    best = &e;
                }
            }
            // y is drawn once per hash, for the winner only
            const auto y = i2cws_y_element(src, cfg.seed, d, best->id, best->weight);
            fp.codes.emplace_back(IndexY{best->id, y.y});
        }
    });
    return fp;
}

} // namespace wmh
