#pragma once

#include "wmh/sketch_common.hpp"

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace wmh {

/// Concatenation of per-element intervals [0, U_k) over the elements present in a dataset.
/// A point in element k's interval below the set's weight is "green", otherwise "red".
struct RedGreenLayout {
    std::uint64_t universe_size = 0;
    std::vector<ElementId> ids;   // strictly increasing
    std::vector<double> bounds;   // U_k, aligned with ids
    std::vector<double> offsets;  // offsets[i] = sum of bounds before i; size ids.size()+1
    double total_mass = 0.0;      // M

    /// Builds from explicit (id, bound) pairs; ids must be unique and bounds > 0.
    static RedGreenLayout from_bounds(std::uint64_t universe_size,
                                      std::vector<std::pair<ElementId, double>> bounds);

    /// Position of `id` in `ids`, or npos.
    std::size_t find(ElementId id) const noexcept;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// U_k = max weight of element k over the dataset; elements absent everywhere are excluded.
RedGreenLayout build_layout(const Dataset &dataset);

inline constexpr std::uint64_t kMaxRejectionSteps = 1'000'000;

/// Chum's element hash: Exp(1) / w.
template <class Source>
double chum_hash(const Source &src, std::uint64_t seed, std::uint32_t d, ElementId k, double weight) {
    return exp1(src, VariateKey{seed, d, k, Slot::X, 0}) / weight;
}

/// Thresholds per-set-max-normalized weights against keyed coins, then takes the
/// MinHash arg-min over the survivors. A hash with no survivor emits the sentinel.
Fingerprint sketch_gollapudi_threshold(const WeightedSet &s, const SketchConfig &cfg,
                                       SketchContext ctx = {});

Fingerprint sketch_chum(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx = {});

/// Red-green rejection sampling. The d-th proposal sequence depends only on (seed, d),
/// so all sets walk the same points; the code is the first accepted step.
Fingerprint sketch_shrivastava(const WeightedSet &s, const RedGreenLayout &layout,
                               const SketchConfig &cfg, SketchContext ctx = {});

} // namespace wmh
