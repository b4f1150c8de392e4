#include "wmh/sketch.hpp"

namespace wmh {

Fingerprint sketch(const WeightedSet &s, const SketchConfig &cfg, SketchContext ctx) {
    switch (cfg.algo) {
    case Algorithm::MinHash: return sketch_minhash(s, cfg, ctx);
    case Algorithm::Haveliwala: return sketch_haveliwala(s, cfg, ctx);
    case Algorithm::Haeupler: return sketch_haeupler(s, cfg, ctx);
    case Algorithm::GollapudiInt: return sketch_gollapudi_int(s, cfg, ctx);
    case Algorithm::Cws: return sketch_cws(s, cfg, ctx);
    case Algorithm::Icws: return sketch_icws(s, cfg, ctx);
    case Algorithm::ZeroBitCws: return sketch_0bit_cws(s, cfg, ctx);
    case Algorithm::Ccws: return sketch_ccws(s, cfg, ctx);
    case Algorithm::Pcws: return sketch_pcws(s, cfg, ctx);
    case Algorithm::I2Cws: return sketch_i2cws(s, cfg, ctx);
    case Algorithm::GollapudiThreshold: return sketch_gollapudi_threshold(s, cfg, ctx);
    case Algorithm::Chum: return sketch_chum(s, cfg, ctx);
    case Algorithm::Shrivastava:
        if (!cfg.layout) throw Error(ErrorCode::MissingBounds, "shrivastava needs per-element upper bounds");
        return sketch_shrivastava(s, *cfg.layout, cfg, ctx);
    }
    throw Error(ErrorCode::UnknownAlgorithm, "tag " + std::to_string(static_cast<int>(cfg.algo)));
}

} // namespace wmh
