#pragma once

#include "wmh/core.hpp"
#include "wmh/variates.hpp"

#include <cstdint>

namespace wmh {

/// Counters filled by sketchers when a SketchStats is supplied.
struct SketchStats {
    /// CCWS elements whose 1/y - 2r was non-positive (excluded from the arg-min).
    std::uint64_t degenerate_z = 0;
    /// Gollapudi(1): active indices visited, summed over (hash, element).
    std::uint64_t active_indices = 0;
    /// Gollapudi(1): number of (hash, element) walks.
    std::uint64_t element_walks = 0;
    /// Shrivastava: rejection-sampling steps, summed over hashes.
    std::uint64_t rejection_steps = 0;
};

/// Optional knobs for a sketch call. A null `variates` means the keyed generator.
struct SketchContext {
    const VariateSource *variates = nullptr;
    SketchStats *stats = nullptr;
};

/// pi(i) = (a*i + b) mod c with 0 < a, b < c.
struct LinearPermutation {
    std::uint64_t a;
    std::uint64_t b;
    std::uint64_t c;

    std::uint64_t operator()(std::uint64_t i) const noexcept {
        const unsigned __int128 v = static_cast<unsigned __int128>(a) * i + b;
        return static_cast<std::uint64_t>(v % c);
    }
};

/// The d-th permutation; coefficients come from keyed draws so every set shares them.
template <class Source>
LinearPermutation permutation_for(const Source &src, std::uint64_t seed, std::uint32_t d,
                                  std::uint64_t prime) {
    const std::uint64_t a = 1 + src.bits(VariateKey{seed, d, 0, Slot::PermA, 0}) % (prime - 1);
    const std::uint64_t b = 1 + src.bits(VariateKey{seed, d, 0, Slot::PermB, 0}) % (prime - 1);
    return {a, b, prime};
}

namespace detail {

/// Calls f with the concrete keyed generator when possible so the hot loops inline.
template <class F>
decltype(auto) with_source(const SketchContext &ctx, F &&f) {
    static const KeyedVariates keyed;
    if (ctx.variates == nullptr) return f(keyed);
    if (const auto *k = dynamic_cast<const KeyedVariates *>(ctx.variates)) return f(*k);
    return f(*ctx.variates);
}

void require_nonempty(const WeightedSet &s);

} // namespace detail

} // namespace wmh
