#pragma once

#include "wmh/core.hpp"

#include <cstdint>

namespace wmh {

/// Synthetic power-law documents: each document holds floor(density * num_features)
/// distinct uniformly chosen features, and every weight is Pareto with shape e-1 and
/// scale s, i.e. w = s * u^(-1/(e-1)).
struct GenParams {
    std::uint64_t num_docs = 100;
    std::uint64_t num_features = 1000;
    double density = 0.05;
    double exponent = 3.0;
    double scale = 0.2;
    std::uint64_t seed = 0;
};

/// floor(density * num_features), snapped to the nearest integer when the product is
/// within rounding error of it.
std::uint64_t nonzeros_per_doc(const GenParams &params);

/// Throws InvalidParams unless num_docs >= 1, 1 <= num_features <= kMaxUniverse,
/// density in (0,1], exponent > 2, scale > 0 and density * num_features >= 1.
void validate(const GenParams &params);

/// Deterministic in `params`; document n depends only on (seed, n), so the
/// result does not depend on `threads`.
Dataset generate(const GenParams &params, unsigned threads = 1);

struct DatasetStats {
    double avg_density = 0.0;
    double avg_mean_weight = 0.0;
    double avg_std_weight = 0.0;
};

/// Per-document density, weight mean and population weight std, each averaged over
/// documents. Empty documents count toward the density only. Throws EmptyDataset.
DatasetStats stats(const Dataset &dataset);

} // namespace wmh
