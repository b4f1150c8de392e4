#include "wmh/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace wmh {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DuplicateIndex: return "DuplicateIndex";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::NonFiniteWeight: return "NonFiniteWeight";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::MalformedStream: return "MalformedStream";
    case ErrorCode::AlgorithmMismatch: return "AlgorithmMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SeedMismatch: return "SeedMismatch";
    case ErrorCode::UniverseMismatch: return "UniverseMismatch";
    case ErrorCode::BothEmpty: return "BothEmpty";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::EmptyQuantization: return "EmptyQuantization";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::MissingBounds: return "MissingBounds";
    case ErrorCode::StepOverflow: return "StepOverflow";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::UnknownAlgorithm: return "UnknownAlgorithm";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

// ---------------------------------------------------------------------------

WeightedSet WeightedSet::from_pairs(std::uint64_t universe_size,
                                    std::span<const std::pair<std::uint64_t, double>> pairs) {
    if (universe_size == 0 || universe_size > kMaxUniverse) {
        throw Error(ErrorCode::InvalidParams,
                    "universe size must be in [1, " + std::to_string(kMaxUniverse) + "]");
    }
    std::vector<Entry> entries;
    entries.reserve(pairs.size());
    std::vector<std::uint64_t> seen;
    seen.reserve(pairs.size());
    for (const auto &[index, weight] : pairs) {
        if (index >= universe_size) {
            throw Error(ErrorCode::IndexOutOfRange, "element " + std::to_string(index) +
                                                        " outside universe of size " +
                                                        std::to_string(universe_size));
        }
        if (!std::isfinite(weight)) {
            throw Error(ErrorCode::NonFiniteWeight, "element " + std::to_string(index));
        }
        if (weight < 0.0) {
            throw Error(ErrorCode::NegativeWeight, "element " + std::to_string(index));
        }
        seen.push_back(index);
        if (weight > 0.0) {
            entries.push_back({static_cast<ElementId>(index), weight});
        }
    }
    // duplicates are detected over all indices, zero-weight ones included
    std::sort(seen.begin(), seen.end());
    if (auto dup = std::adjacent_find(seen.begin(), seen.end()); dup != seen.end()) {
        throw Error(ErrorCode::DuplicateIndex, "element " + std::to_string(*dup));
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry &a, const Entry &b) { return a.id < b.id; });
    return WeightedSet(universe_size, std::move(entries));
}

double WeightedSet::weight(ElementId id) const noexcept {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                               [](const Entry &e, ElementId v) { return e.id < v; });
    return (it != entries_.end() && it->id == id) ? it->weight : 0.0;
}

double WeightedSet::total_weight() const noexcept {
    return std::accumulate(entries_.begin(), entries_.end(), 0.0,
                           [](double acc, const Entry &e) { return acc + e.weight; });
}

double WeightedSet::max_weight() const noexcept {
    double m = 0.0;
    for (const auto &e : entries_) m = std::max(m, e.weight);
    return m;
}

WeightedSet make_weighted_set(std::uint64_t universe_size,
                              std::span<const std::pair<std::uint64_t, double>> pairs) {
    return WeightedSet::from_pairs(universe_size, pairs);
}

WeightedSet make_weighted_set(std::uint64_t universe_size,
                              std::initializer_list<std::pair<std::uint64_t, double>> pairs) {
    return WeightedSet::from_pairs(universe_size, std::span(pairs.begin(), pairs.size()));
}

WeightedSet binarize(const WeightedSet &s) {
    std::vector<Entry> out(s.entries_.begin(), s.entries_.end());
    for (auto &e : out) e.weight = 1.0;
    return WeightedSet(s.universe_size_, std::move(out));
}

WeightedSet scale(const WeightedSet &s, double factor) {
    if (!(factor > 0.0) || !std::isfinite(factor)) {
        throw Error(ErrorCode::InvalidParams, "scale factor must be positive and finite");
    }
    std::vector<Entry> out(s.entries_.begin(), s.entries_.end());
    for (auto &e : out) e.weight *= factor;
    return WeightedSet(s.universe_size_, std::move(out));
}

// ---------------------------------------------------------------------------

bool operator==(const IndexY &a, const IndexY &b) noexcept {
    return a.k == b.k && std::bit_cast<std::uint64_t>(a.y) == std::bit_cast<std::uint64_t>(b.y);
}

bool is_sentinel(const SampleCode &c) noexcept {
    return std::visit(
        [](const auto &v) {
            if constexpr (requires { v.k; }) {
                return v.k == kSentinelElement;
            } else {
                (void)v;
                return false;
            }
        },
        c);
}

SampleCode sentinel_code(CodeKind kind) {
    switch (kind) {
    case CodeKind::IndexSub: return IndexSub{kSentinelElement, 0};
    case CodeKind::IndexY: return IndexY{kSentinelElement, 0.0};
    case CodeKind::IndexOnly: return IndexOnly{kSentinelElement};
    default: break;
    }
    throw Error(ErrorCode::Internal, "variant has no sentinel");
}

bool codes_collide(const SampleCode &a, const SampleCode &b) noexcept {
    if (is_sentinel(a) || is_sentinel(b)) return false;
    return a == b;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::array<std::string_view, kNumAlgorithms> kNames = {
    "minhash", "haveliwala", "haeupler", "gollapudi-int",       "cws",  "icws",       "0bit",
    "ccws",    "pcws",       "i2cws",    "gollapudi-threshold", "chum", "shrivastava",
};

} // namespace

std::string_view name_of(Algorithm algo) noexcept { return kNames[static_cast<std::size_t>(algo)]; }

std::string algorithm_names() {
    std::string out;
    for (auto n : kNames) {
        if (!out.empty()) out += ",";
        out += n;
    }
    return out;
}

Algorithm parse_algorithm(std::string_view name) {
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == name) return static_cast<Algorithm>(i);
    }
    throw Error(ErrorCode::UnknownAlgorithm,
                "'" + std::string(name) + "'; valid names: " + algorithm_names());
}

std::optional<Algorithm> algorithm_from_tag(std::uint8_t tag) noexcept {
    if (tag >= kNumAlgorithms) return std::nullopt;
    return static_cast<Algorithm>(tag);
}

CodeKind code_kind(Algorithm algo) noexcept {
    switch (algo) {
    case Algorithm::MinHash: return CodeKind::MinValue;
    case Algorithm::Haveliwala:
    case Algorithm::Haeupler:
    case Algorithm::GollapudiInt: return CodeKind::IndexSub;
    case Algorithm::Cws:
    case Algorithm::Icws:
    case Algorithm::Ccws:
    case Algorithm::Pcws:
    case Algorithm::I2Cws: return CodeKind::IndexY;
    case Algorithm::ZeroBitCws:
    case Algorithm::GollapudiThreshold:
    case Algorithm::Chum: return CodeKind::IndexOnly;
    case Algorithm::Shrivastava: return CodeKind::StepCount;
    }
    return CodeKind::MinValue;
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

} // namespace

// Deterministic Miller-Rabin; these bases are exact for all 64-bit n.
bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

void validate(const SketchConfig &cfg, std::uint64_t universe_size) {
    if (cfg.num_hashes == 0) throw Error(ErrorCode::InvalidConfig, "D must be positive");
    if (cfg.quant_scale == 0) throw Error(ErrorCode::InvalidConfig, "quantization scale must be >= 1");
    if (cfg.prime < universe_size || !is_prime(cfg.prime)) {
        throw Error(ErrorCode::InvalidConfig, "permutation modulus " + std::to_string(cfg.prime) +
                                                  " must be a prime >= universe size " +
                                                  std::to_string(universe_size));
    }
}

} // namespace wmh
