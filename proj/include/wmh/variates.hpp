#pragma once

#include "wmh/core.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <vector>

namespace wmh {

/// Named draw slots. A slot separates independent random variables that share (d, k).
enum class Slot : std::uint8_t {
    U1,
    U2,
    Beta,
    X,
    R1,
    R2,
    B1,
    B2,
    C1,
    C2,
    Frac,
    Geo,
    Chain,
    Sub,
    PermA,
    PermB,
    CwsGamma,
    GenIndex,
    GenWeight,
    PairSample,
};

inline constexpr std::size_t kNumSlots = 20;

/// Identifies one deterministic draw: (seed, hash index, element, slot, counter).
/// The variate depends on nothing else, so the same element sees the same draw in every set.
struct VariateKey {
    std::uint64_t seed = 0;
    std::uint32_t d = 0;
    ElementId k = 0;
    Slot slot = Slot::U1;
    std::uint64_t counter = 0;
};

namespace detail {

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

} // namespace detail

/// 64 uniformly mixed bits for `key`; a pure function.
constexpr std::uint64_t key_bits(const VariateKey &key) noexcept {
    constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;
    std::uint64_t h = detail::mix64(key.seed + golden);
    h = detail::mix64(h ^ ((std::uint64_t{key.d} << 32) | key.k) ^ golden);
    h = detail::mix64(h ^ (static_cast<std::uint64_t>(key.slot) << 56) ^ key.counter);
    return detail::mix64(h + golden);
}

/// Maps 64 bits into the open interval (0,1) using the top 52 bits. The result lies
/// in [2^-53, 1 - 2^-53] and every value is exactly representable.
constexpr double to_open_unit(std::uint64_t bits) noexcept {
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

/// Interface shared by the keyed generator and the materialized-matrix backend.
class VariateSource {
  public:
    virtual ~VariateSource() = default;
    virtual std::uint64_t bits(const VariateKey &key) const = 0;
    virtual double uniform01(const VariateKey &key) const = 0;
};

/// Counter-based generator: every draw is a bit-mix of the packed key. O(1) memory.
class KeyedVariates final : public VariateSource {
  public:
    std::uint64_t bits(const VariateKey &key) const override { return key_bits(key); }
    double uniform01(const VariateKey &key) const override { return to_open_unit(key_bits(key)); }
};

/// Pre-materialized table of draws generated sequentially from a std::mt19937_64 seeded
/// with `seed`, covering d < num_hashes, k < universe, counter < counters for every slot.
/// Mirrors the "generate all variates up front" style; used to cross-check the keyed backend.
class MatrixVariates final : public VariateSource {
  public:
    MatrixVariates(std::uint64_t seed, std::uint32_t num_hashes, std::uint32_t universe,
                   std::uint32_t counters = 2);

    std::uint64_t bits(const VariateKey &key) const override;
    double uniform01(const VariateKey &key) const override { return to_open_unit(bits(key)); }

  private:
    std::uint64_t seed_;
    std::uint32_t num_hashes_;
    std::uint32_t universe_;
    std::uint32_t counters_;
    std::vector<std::uint64_t> table_;
};

/// Forwards to another source and counts draws per slot. Used for draw-count audits.
class CountingVariates final : public VariateSource {
  public:
    explicit CountingVariates(const VariateSource &inner) : inner_(inner) {}

    std::uint64_t bits(const VariateKey &key) const override {
        bump(key.slot);
        return inner_.bits(key);
    }
    double uniform01(const VariateKey &key) const override {
        bump(key.slot);
        return inner_.uniform01(key);
    }

    std::uint64_t count(Slot slot) const noexcept {
        return counts_[static_cast<std::size_t>(slot)].load(std::memory_order_relaxed);
    }
    std::uint64_t total() const noexcept;
    void reset() noexcept;

  private:
    void bump(Slot slot) const noexcept {
        counts_[static_cast<std::size_t>(slot)].fetch_add(1, std::memory_order_relaxed);
    }

    const VariateSource &inner_;
    mutable std::array<std::atomic<std::uint64_t>, kNumSlots> counts_{};
};

// ---------------------------------------------------------------------------
// Derived distributions. Templated on the source so the keyed backend inlines.

template <class Source>
double uniform01(const Source &src, const VariateKey &key) {
    return src.uniform01(key);
}

/// Gamma(2,1) as -ln(u1 u2); u1, u2 use counters 2c and 2c+1 of the key's slot.
template <class Source>
double gamma21(const Source &src, VariateKey key) {
    const std::uint64_t base = key.counter * 2;
    key.counter = base;
    const double u1 = src.uniform01(key);
    key.counter = base + 1;
    const double u2 = src.uniform01(key);
    return -(std::log(u1) + std::log(u2));
}

/// Exp(1) as -ln(u).
template <class Source>
double exp1(const Source &src, const VariateKey &key) {
    return -std::log(src.uniform01(key));
}

/// Beta(2,1) by inverse CDF.
template <class Source>
double beta21(const Source &src, const VariateKey &key) {
    return std::sqrt(src.uniform01(key));
}

inline double uniform01(const VariateKey &key) { return to_open_unit(key_bits(key)); }
inline double gamma21(const VariateKey &key) { return gamma21(KeyedVariates{}, key); }
inline double exp1(const VariateKey &key) { return exp1(KeyedVariates{}, key); }
inline double beta21(const VariateKey &key) { return beta21(KeyedVariates{}, key); }

/// Derives an independent 64-bit seed from (seed, stream); used for repetitions and per-doc streams.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return detail::mix64(detail::mix64(seed ^ 0x5851f42d4c957f2dULL) + stream);
}

} // namespace wmh
