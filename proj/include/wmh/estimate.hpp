#pragma once

#include "wmh/core.hpp"
#include "wmh/sketch_misc.hpp"

#include <chrono>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wmh {

/// Fraction of hash positions whose codes collide. Sentinel codes never match.
/// Throws AlgorithmMismatch, LengthMismatch or SeedMismatch when the fingerprints
/// were not produced under the same configuration.
double collision_similarity(const Fingerprint &a, const Fingerprint &b);

/// Mean squared error. Throws LengthMismatch or Empty.
double mse(std::span<const double> estimates, std::span<const double> truths);

using IndexPair = std::pair<std::size_t, std::size_t>;

inline constexpr std::size_t kAllPairsLimit = 200;
inline constexpr std::size_t kSampledPairs = 5000;

/// All i<j pairs when m <= 200, otherwise 5000 distinct pairs drawn from `seed`.
/// The result is sorted. Throws EmptyDataset when m < 2.
std::vector<IndexPair> benchmark_pairs(std::size_t m, std::uint64_t seed);

/// Sketches every set with `cfg` on `threads` workers. Errors are rethrown with
/// the offending set index in the message.
std::vector<Fingerprint> sketch_dataset(const Dataset &dataset, const SketchConfig &cfg,
                                        unsigned threads = 1);

enum class RunStatus : std::uint8_t { Ok, Timeout, Error };

std::string_view to_string(RunStatus s) noexcept;

struct BenchOptions {
    unsigned threads = 1;
    /// Budget per (algorithm, D) group, covering all of its repetitions.
    std::chrono::duration<double> timeout = std::chrono::seconds(600);
    std::uint32_t quant_scale = kDefaultQuantScale;
    /// Bounds for Shrivastava; derived from the dataset when null.
    std::shared_ptr<const RedGreenLayout> layout;
};

struct BenchRun {
    Algorithm algo;
    std::uint32_t num_hashes;
    std::uint32_t repetition;
    double mse;            // NaN unless status == Ok
    double sketch_seconds; // wall-clock time spent sketching the dataset
    RunStatus status;
    std::string message;
};

struct BenchAggregate {
    Algorithm algo;
    std::uint32_t num_hashes;
    std::uint32_t completed; // repetitions with status Ok
    double mse_mean;
    double mse_std;
    double seconds_mean;
    double seconds_std;
    RunStatus status; // Ok only when every repetition completed
};

struct BenchReport {
    std::vector<IndexPair> pairs;
    std::vector<BenchRun> runs;
    std::vector<BenchAggregate> aggregates;
};

inline const std::vector<std::uint32_t> kDefaultDList = {10, 20, 50, 100, 120, 150, 200};
inline constexpr std::uint32_t kDefaultRepetitions = 10;

/// Sketches the dataset for every (algorithm, D, repetition) and scores the collision
/// estimates against generalized Jaccard. Repetition r uses seed derive_seed(seed, r).
/// Sketcher failures and budget overruns become status rows instead of exceptions.
BenchReport run_benchmark(const Dataset &dataset, std::span<const Algorithm> algos,
                          std::span<const std::uint32_t> d_list = kDefaultDList,
                          std::uint32_t repetitions = kDefaultRepetitions, std::uint64_t seed = 0,
                          const BenchOptions &options = {});

} // namespace wmh
