#pragma once

// Dataset text format
//
//   #universe <n>
//   <k>:<w> <k>:<w> ...     one set per line; an empty line is an empty set
//   #bounds                 optional; the following line holds <k>:<U_k> tokens
//
// Other lines starting with '#' are comments. Weights are written in shortest
// round-trip form, so write -> read reproduces every double exactly.
//
// Fingerprint binary layout (all integers little-endian)
//
//   file    := "WMHF" u8:version(=1) u32:count record*
//   record  := u8:algorithm-tag u32:D u64:seed code*D
//   code    := MinValue  u64:value
//            | IndexSub  u32:k u64:i
//            | IndexY    u32:k u64:bits-of-y (IEEE-754 binary64)
//            | IndexOnly u32:k
//            | StepCount u64:t
//
// The code variant is implied by the tag. k = 0xFFFFFFFF marks the sentinel
// "no sample" code, which never collides.

#include "wmh/core.hpp"
#include "wmh/sketch_misc.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace wmh {

struct DatasetFile {
    std::uint64_t universe_size = 1;
    Dataset sets;
    std::optional<RedGreenLayout> layout;
};

DatasetFile read_dataset(std::istream &in);
void write_dataset(std::ostream &out, std::uint64_t universe_size, const Dataset &sets,
                   const RedGreenLayout *layout = nullptr);

DatasetFile load_dataset(const std::filesystem::path &path);
void save_dataset(const std::filesystem::path &path, std::uint64_t universe_size, const Dataset &sets,
                  const RedGreenLayout *layout = nullptr);

void write_fingerprint(std::ostream &out, const Fingerprint &fp);

/// Reads one record. Throws MalformedStream on truncation or an unknown tag, and
/// AlgorithmMismatch when `expected` is set and the tag differs.
Fingerprint read_fingerprint(std::istream &in, std::optional<Algorithm> expected = std::nullopt);

void write_fingerprint_file(std::ostream &out, std::span<const Fingerprint> fps);
std::vector<Fingerprint> read_fingerprint_file(std::istream &in,
                                               std::optional<Algorithm> expected = std::nullopt);

void save_fingerprints(const std::filesystem::path &path, std::span<const Fingerprint> fps);
std::vector<Fingerprint> load_fingerprints(const std::filesystem::path &path,
                                           std::optional<Algorithm> expected = std::nullopt);

} // namespace wmh
