#include "wmh/sketch_misc.hpp"

#include <algorithm>
#include <limits>
#include <map>

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

} // namespace

RedGreenLayout RedGreenLayout::from_bounds(std::uint64_t universe_size,
                                           std::vector<std::pair<ElementId, double>> bounds) {
    std::sort(bounds.begin(), bounds.end());
    RedGreenLayout layout;
    layout.universe_size = universe_size;
    layout.offsets.push_back(0.0);
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        const auto [id, bound] = bounds[i];
        if (id >= universe_size) throw Error(ErrorCode::IndexOutOfRange, "bound for element " + std::to_string(id));
        if (i > 0 && bounds[i - 1].first == id) throw Error(ErrorCode::DuplicateIndex, "bound for element " + std::to_string(id));
        if (!(bound > 0.0) || !std::isfinite(bound)) {
            throw Error(ErrorCode::InvalidParams, "bound for element " + std::to_string(id) + " must be positive");
        }
        layout.ids.push_back(id);
        layout.bounds.push_back(bound);
        layout.offsets.push_back(layout.offsets.back() + bound);
    }
    layout.total_mass = layout.offsets.back();
    if (!(layout.total_mass > 0.0)) throw Error(ErrorCode::EmptyDataset, "layout has no mass");
    return layout;
}

std::size_t RedGreenLayout::find(ElementId id) const noexcept {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    return (it != ids.end() && *it == id) ? static_cast<std::size_t>(it - ids.begin()) : npos;
}

RedGreenLayout build_layout(const Dataset &dataset) {
    if (dataset.empty()) throw Error(ErrorCode::EmptyDataset, "no sets to scan");
    const std::uint64_t universe = dataset.front().universe_size();
    std::map<ElementId, double> maxima;
    for (const auto &s : dataset) {
        if (s.universe_size() != universe) throw Error(ErrorCode::UniverseMismatch, "dataset mixes universes");
        for (const auto &e : s.entries()) {
            auto [it, inserted] = maxima.try_emplace(e.id, e.weight);
            if (!inserted) it->second = std::max(it->second, e.weight);
        }
    }
    if (maxima.empty()) throw Error(ErrorCode::EmptyDataset, "every set is empty");
    return RedGreenLayout::from_bounds(universe, {maxima.begin(), maxima.end()});
}

Fingerprint sketch_gollapudi_threshold(const WeightedSet &s, const SketchConfig &cfg,
                                       SketchContext ctx) {
    Fingerprint fp = start(s, cfg, Algorithm::GollapudiThreshold);
    const double max_w = s.max_weight();
    detail::with_source(ctx, [&](const auto &src) {
        for (std::uint32_t d = 0; d < cfg.num_hashes; ++d) {
            const auto pi = permutation_for(src, cfg.seed, d, cfg.prime);
            ElementId best = kSentinelElement;
            std::uint64_t best_pi = std::numeric_limits<std::uint64_t>::max();
            for (const auto &e : s.entries()) {
                const double normalized = e.weight / max_w;
                if (src.uniform01(VariateKey{cfg.seed, d, e.id, Slot::Frac, 0}) > normalized) continue;
                const std::uint64_t p = pi(e.id);
                if (p < best_pi) {
                    best_pi = p;
                    best = e.id;
                }
            }
            fp.codes.emplace_back(IndexOnly{best});
        }
    });
    return fp;
}

Fingerprint sketch_chum(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx) {
    Fingerprint fp = start(s, cfg, Algorithm::Chum);
    detail::with_source(ctx, [&](const auto &src) {
        for (std::uint32_t d = 0; d < cfg.num_hashes; ++d) {
            ElementId best = kSentinelElement;
            double best_a = std::numeric_limits<double>::infinity();
            for (const auto &e : s.entries()) {
                const double a = chum_hash(src, cfg.seed, d, e.id, e.weight);
                if (a < best_a) {
                    best_a = a;
                    best = e.id;
                }
            }
            fp.codes.emplace_back(IndexOnly{best});
        }
    });
    return fp;
}

Fingerprint sketch_shrivastava(const WeightedSet &s, const RedGreenLayout &layout,
                               const SketchConfig &cfg, SketchContext ctx) {
    Fingerprint fp = start(s, cfg, Algorithm::Shrivastava);
    if (layout.universe_size != s.universe_size()) {
        throw Error(ErrorCode::UniverseMismatch, "layout and set use different universes");
    }
    // green[i]: length of the green part of layout interval i for this set
    std::vector<double> green(layout.ids.size(), 0.0);
    for (const auto &e : s.entries()) {
        const std::size_t pos = layout.find(e.id);
        if (pos == RedGreenLayout::npos || e.weight > layout.bounds[pos]) {
            throw Error(ErrorCode::BoundExceeded,
                        "element " + std::to_string(e.id) + " weight " + std::to_string(e.weight) +
                            " exceeds its upper bound");
        }
        green[pos] = e.weight;
    }
    std::uint64_t steps = 0;
    detail::with_source(ctx, [&](const auto &src) {
        for (std::uint32_t d = 0; d < cfg.num_hashes; ++d) {
            VariateKey key{cfg.seed, d, 0, Slot::Geo, 0};
            std::uint64_t t = 1;
            for (;; ++t) {
                if (t > kMaxRejectionSteps) {
                    throw Error(ErrorCode::StepOverflow, "no green sample within " +
                                                             std::to_string(kMaxRejectionSteps) + " steps");
                }
                key.counter = t;
                const double m = layout.total_mass * src.uniform01(key);
                auto it = std::upper_bound(layout.offsets.begin() + 1, layout.offsets.end(), m);
                std::size_t pos = static_cast<std::size_t>(it - layout.offsets.begin()) - 1;
                pos = std::min(pos, green.size() - 1);
                if (m - layout.offsets[pos] < green[pos]) break;
            }
            steps += t;
            fp.codes.emplace_back(StepCount{t});
        }
    });
    if (ctx.stats) ctx.stats->rejection_steps += steps;
    return fp;
}

} // namespace wmh
