#include "wmh/variates.hpp"

#include <random>

namespace wmh {

MatrixVariates::MatrixVariates(std::uint64_t seed, std::uint32_t num_hashes, std::uint32_t universe,
                               std::uint32_t counters)
    : seed_(seed), num_hashes_(num_hashes), universe_(universe), counters_(counters) {
    const std::size_t cells =
        kNumSlots * std::size_t{counters} * std::size_t{num_hashes} * std::size_t{universe};
    table_.resize(cells);
    std::mt19937_64 rng(seed);
    for (auto &v : table_) v = rng();
}

std::uint64_t MatrixVariates::bits(const VariateKey &key) const {
    if (key.seed != seed_ || key.d >= num_hashes_ || key.k >= universe_ || key.counter >= counters_) {
        throw Error(ErrorCode::InvalidConfig, "variate key outside the materialized matrix");
    }
    const std::size_t slot = static_cast<std::size_t>(key.slot);
    const std::size_t idx =
        ((slot * counters_ + key.counter) * num_hashes_ + key.d) * std::size_t{universe_} + key.k;
    return table_[idx];
}

std::uint64_t CountingVariates::total() const noexcept {
    std::uint64_t sum = 0;
    for (const auto &c : counts_) sum += c.load(std::memory_order_relaxed);
    return sum;
}

void CountingVariates::reset() noexcept {
    for (auto &c : counts_) c.store(0, std::memory_order_relaxed);
}

} // namespace wmh
