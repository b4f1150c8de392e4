#pragma once

// Flat-array entry points for foreign-language bindings. They forward to the same
// sketchers as the CLI, so results are identical for identical inputs.

#include "wmh/core.hpp"
#include "wmh/sketch_misc.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace wmh {

/// Two parallel columns describing a fingerprint's codes.
///   MinValue:  first = value,  second = 0
///   IndexSub:  first = k,      second = i
///   IndexY:    first = k,      second = bit pattern of y
///   IndexOnly: first = k,      second = 0
///   StepCount: first = t,      second = 0
struct CodeArrays {
    std::vector<std::uint64_t> first;
    std::vector<std::uint64_t> second;

    friend bool operator==(const CodeArrays &, const CodeArrays &) = default;
};

CodeArrays to_arrays(const Fingerprint &fp);

/// Builds a set from `indices`/`weights` and sketches it. Throws LengthMismatch when
/// the arrays differ in length, UnknownAlgorithm for a bad name, EmptySet when empty,
/// and MissingBounds for shrivastava without `layout`.
CodeArrays sketch_arrays(std::span<const std::uint64_t> indices, std::span<const double> weights,
                         std::uint64_t universe_size, std::string_view algo, std::uint32_t num_hashes,
                         std::uint64_t seed, const RedGreenLayout *layout = nullptr);

} // namespace wmh
