#pragma once

#include "wmh/sketch_common.hpp"
#include "wmh/sketch_cws.hpp"
#include "wmh/sketch_misc.hpp"
#include "wmh/sketch_quant.hpp"

namespace wmh {

/// Sketches `s` with the algorithm named in `cfg`. Shrivastava needs `cfg.layout`
/// (MissingBounds otherwise).
Fingerprint sketch(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx = {});

} // namespace wmh
