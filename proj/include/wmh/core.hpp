#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace wmh {

enum class ErrorCode {
    IndexOutOfRange,
    DuplicateIndex,
    NegativeWeight,
    NonFiniteWeight,
    NonPositiveWeight,
    MalformedStream,
    AlgorithmMismatch,
    LengthMismatch,
    SeedMismatch,
    UniverseMismatch,
    BothEmpty,
    Empty,
    EmptySet,
    EmptyQuantization,
    EmptyDataset,
    BoundExceeded,
    MissingBounds,
    StepOverflow,
    InvalidParams,
    InvalidConfig,
    UnknownAlgorithm,
    Io,
    Internal,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. `code()` identifies the failure class for callers
/// that need to branch on it (the CLI, the benchmark status column, bindings).
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

using ElementId = std::uint32_t;

/// Reserved element id marking a hash slot that produced no sample.
/// Valid ids are < universe_size <= kMaxUniverse, so this never names a real element.
inline constexpr ElementId kSentinelElement = std::numeric_limits<ElementId>::max();
inline constexpr std::uint64_t kMaxUniverse = kSentinelElement;

struct Entry {
    ElementId id;
    double weight;

    friend bool operator==(const Entry &, const Entry &) = default;
};

/// Sparse non-negative vector over a universe of `universe_size` elements.
/// Entries are sorted by id, unique, and carry strictly positive finite weights.
class WeightedSet {
  public:
    WeightedSet() = default;

    /// Validating constructor. Zero weights are dropped; the input order is irrelevant.
    static WeightedSet from_pairs(std::uint64_t universe_size,
                                  std::span<const std::pair<std::uint64_t, double>> pairs);

    std::uint64_t universe_size() const noexcept { return universe_size_; }
    std::span<const Entry> entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    /// Weight of element `id`, 0 when absent.
    double weight(ElementId id) const noexcept;
    double total_weight() const noexcept;
    double max_weight() const noexcept;

    friend bool operator==(const WeightedSet &, const WeightedSet &) = default;

  private:
    WeightedSet(std::uint64_t universe_size, std::vector<Entry> entries)
        : universe_size_(universe_size), entries_(std::move(entries)) {}

    std::uint64_t universe_size_ = 1;
    std::vector<Entry> entries_;

    friend WeightedSet binarize(const WeightedSet &s);
    friend WeightedSet scale(const WeightedSet &s, double factor);
};

WeightedSet make_weighted_set(std::uint64_t universe_size,
                              std::span<const std::pair<std::uint64_t, double>> pairs);
WeightedSet make_weighted_set(std::uint64_t universe_size,
                              std::initializer_list<std::pair<std::uint64_t, double>> pairs);

/// Every positive weight replaced by 1.0.
WeightedSet binarize(const WeightedSet &s);

/// Multiply all weights by `factor` (> 0).
WeightedSet scale(const WeightedSet &s, double factor);

using Dataset = std::vector<WeightedSet>;

// ---------------------------------------------------------------------------
// Sample codes

struct MinValue {
    std::uint64_t value;
    friend bool operator==(const MinValue &, const MinValue &) = default;
};

struct IndexSub {
    ElementId k;
    std::uint64_t i;
    friend bool operator==(const IndexSub &, const IndexSub &) = default;
};

/// Element plus the real-valued active index y. Equality compares the bit pattern of y.
struct IndexY {
    ElementId k;
    double y;
    friend bool operator==(const IndexY &a, const IndexY &b) noexcept;
};

struct IndexOnly {
    ElementId k;
    friend bool operator==(const IndexOnly &, const IndexOnly &) = default;
};

struct StepCount {
    std::uint64_t t;
    friend bool operator==(const StepCount &, const StepCount &) = default;
};

using SampleCode = std::variant<MinValue, IndexSub, IndexY, IndexOnly, StepCount>;

enum class CodeKind : std::uint8_t { MinValue, IndexSub, IndexY, IndexOnly, StepCount };

inline CodeKind kind_of(const SampleCode &c) noexcept { return static_cast<CodeKind>(c.index()); }

/// True for the reserved "no sample" code of the indexed variants.
bool is_sentinel(const SampleCode &c) noexcept;

SampleCode sentinel_code(CodeKind kind);

/// Collision test used by the estimator: variant-aware equality where sentinels never match.
bool codes_collide(const SampleCode &a, const SampleCode &b) noexcept;

// ---------------------------------------------------------------------------
// Algorithms

enum class Algorithm : std::uint8_t {
    MinHash = 0,
    Haveliwala,
    Haeupler,
    GollapudiInt,
    Cws,
    Icws,
    ZeroBitCws,
    Ccws,
    Pcws,
    I2Cws,
    GollapudiThreshold,
    Chum,
    Shrivastava,
};

inline constexpr std::size_t kNumAlgorithms = 13;

inline constexpr std::array<Algorithm, kNumAlgorithms> kAllAlgorithms = {
    Algorithm::MinHash,     Algorithm::Haveliwala, Algorithm::Haeupler,   Algorithm::GollapudiInt,
    Algorithm::Cws,         Algorithm::Icws,       Algorithm::ZeroBitCws, Algorithm::Ccws,
    Algorithm::Pcws,        Algorithm::I2Cws,      Algorithm::GollapudiThreshold,
    Algorithm::Chum,        Algorithm::Shrivastava,
};

std::string_view name_of(Algorithm algo) noexcept;

/// Parses a CLI name; throws UnknownAlgorithm listing every valid name.
Algorithm parse_algorithm(std::string_view name);

/// Comma-separated list of the valid algorithm names.
std::string algorithm_names();

CodeKind code_kind(Algorithm algo) noexcept;

std::optional<Algorithm> algorithm_from_tag(std::uint8_t tag) noexcept;

struct Fingerprint {
    Algorithm algo = Algorithm::MinHash;
    std::uint64_t seed = 0;
    std::vector<SampleCode> codes;

    std::size_t num_hashes() const noexcept { return codes.size(); }

    friend bool operator==(const Fingerprint &, const Fingerprint &) = default;
};

// ---------------------------------------------------------------------------
// Configuration

struct RedGreenLayout;

inline constexpr std::uint64_t kDefaultPrime = (std::uint64_t{1} << 61) - 1;
inline constexpr std::uint32_t kDefaultQuantScale = 1000;

struct SketchConfig {
    Algorithm algo = Algorithm::Icws;
    std::uint32_t num_hashes = 100;
    std::uint64_t seed = 0;
    /// Quantization constant C for the subelement-based algorithms.
    std::uint32_t quant_scale = kDefaultQuantScale;
    /// Modulus of the linear-congruential permutation. Must be prime and >= universe size.
    std::uint64_t prime = kDefaultPrime;
    /// Per-element upper bounds, required by Shrivastava only.
    std::shared_ptr<const RedGreenLayout> layout;
};

/// Throws InvalidConfig when `cfg` cannot be used for sets over `universe_size`.
void validate(const SketchConfig &cfg, std::uint64_t universe_size);

bool is_prime(std::uint64_t n) noexcept;

} // namespace wmh
