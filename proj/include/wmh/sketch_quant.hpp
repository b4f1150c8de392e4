#pragma once

// Binary MinHash and the quantization family: subelements of unit weight after
// scaling by C, hashed individually (Haveliwala, Haeupler) or via geometric skipping
// over active indices (Gollapudi(1)).

#include "wmh/sketch_common.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

namespace wmh {

/// floor(C * w); throws InvalidConfig when the product leaves the exact-integer range.
std::uint64_t quantize_floor(double weight, std::uint32_t scale);

struct SubelementMin {
    std::uint64_t index = 0; // 0 when the element has no subelement
    double value = std::numeric_limits<double>::infinity();
};

/// Minimum hash over subelements 1..count of element k; the hash of (k, i) is keyed by i.
template <class Source>
SubelementMin subelement_min(const Source &src, std::uint64_t seed, std::uint32_t d, ElementId k,
                             std::uint64_t count) {
    SubelementMin best;
    VariateKey key{seed, d, k, Slot::Sub, 0};
    for (std::uint64_t i = 1; i <= count; ++i) {
        key.counter = i;
        const double v = src.uniform01(key);
        if (v < best.value) {
            best.value = v;
            best.index = i;
        }
    }
    return best;
}

struct ActiveIndexWalk {
    std::uint64_t index = 0; // largest active index <= W
    double value = 1.0;      // its hash value, the element minimum
    std::uint64_t visits = 0;
};

/// Gollapudi(1) traversal of one element with integer weight W >= 1. Starting from
/// subelement 1, the gap to the next smaller hash is Geometric(v), and the next
/// minimum is uniform on [0, v). Draws depend only on absolute indices, so two
/// weights share every active index below the smaller one.
template <class Source>
ActiveIndexWalk gollapudi_walk(const Source &src, std::uint64_t seed, std::uint32_t d, ElementId k,
                               std::uint64_t weight) {
    ActiveIndexWalk walk;
    VariateKey key{seed, d, k, Slot::Sub, 1};
    walk.index = 1;
    walk.value = src.uniform01(key);
    walk.visits = 1;
    for (;;) {
        key.slot = Slot::Geo;
        key.counter = walk.index;
        const double u = src.uniform01(key);
        std::uint64_t step = 1;
        if (walk.value < 1.0 - 1e-12) {
            const double g = std::ceil(std::log(u) / std::log1p(-walk.value));
            if (!(g <= static_cast<double>(weight - walk.index))) break;
            step = g < 1.0 ? 1 : static_cast<std::uint64_t>(g);
        }
        if (step > weight - walk.index) break;
        walk.index += step;
        key.slot = Slot::Chain;
        key.counter = walk.index;
        walk.value *= src.uniform01(key);
        ++walk.visits;
    }
    return walk;
}

/// Standard MinHash on the support; codes are the minimum permuted index.
Fingerprint sketch_minhash(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx = {});

/// Quantized subelements with the fractional part dropped. Codes are (k, i).
Fingerprint sketch_haveliwala(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx = {});

/// As Haveliwala, keeping subelement floor(C*w)+1 with probability frac(C*w). A hash
/// whose augmented set is empty emits the sentinel code.
Fingerprint sketch_haeupler(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx = {});

/// Integer-weight active-index skipping; same code law as Haveliwala.
Fingerprint sketch_gollapudi_int(const WeightedSet &s, const SketchConfig &cfg,
                                 SketchContext ctx = {});

} // namespace wmh
