#include "wmh/api.hpp"

#include "wmh/sketch.hpp"

#include <bit>

namespace wmh {

CodeArrays to_arrays(const Fingerprint &fp) {
    CodeArrays out;
    out.first.reserve(fp.codes.size());
    out.second.reserve(fp.codes.size());
    for (const auto &code : fp.codes) {
        std::visit(
            [&](const auto &c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, MinValue>) {
                    out.first.push_back(c.value);
                    out.second.push_back(0);
                } else if constexpr (std::is_same_v<T, IndexSub>) {
                    out.first.push_back(c.k);
                    out.second.push_back(c.i);
                } else if constexpr (std::is_same_v<T, IndexY>) {
                    out.first.push_back(c.k);
                    out.second.push_back(std::bit_cast<std::uint64_t>(c.y));
                } else if constexpr (std::is_same_v<T, IndexOnly>) {
                    out.first.push_back(c.k);
                    out.second.push_back(0);
                } else {
                    out.first.push_back(c.t);
                    out.second.push_back(0);
                }
            },
            code);
    }
    return out;
}

CodeArrays sketch_arrays(std::span<const std::uint64_t> indices, std::span<const double> weights,
                         std::uint64_t universe_size, std::string_view algo, std::uint32_t num_hashes,
                         std::uint64_t seed, const RedGreenLayout *layout) {
    if (indices.size() != weights.size()) {
        throw Error(ErrorCode::LengthMismatch, std::to_string(indices.size()) + " indices vs " +
                                                   std::to_string(weights.size()) + " weights");
    }
    SketchConfig cfg;
    cfg.algo = parse_algorithm(algo);
    cfg.num_hashes = num_hashes;
    cfg.seed = seed;
    if (layout) cfg.layout = std::make_shared<const RedGreenLayout>(*layout);
    std::vector<std::pair<std::uint64_t, double>> pairs(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) pairs[i] = {indices[i], weights[i]};
    return to_arrays(sketch(make_weighted_set(universe_size, pairs), cfg));
}

} // namespace wmh
