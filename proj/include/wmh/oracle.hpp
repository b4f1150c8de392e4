#pragma once

#include "wmh/core.hpp"

namespace wmh {

/// Jaccard similarity of the supports (weights ignored).
/// Throws UniverseMismatch, or BothEmpty when the ratio is 0/0.
double jaccard(const WeightedSet &a, const WeightedSet &b);

/// Generalized Jaccard: sum of per-element minima over sum of maxima.
double generalized_jaccard(const WeightedSet &a, const WeightedSet &b);

} // namespace wmh
