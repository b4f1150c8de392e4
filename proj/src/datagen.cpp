#include "wmh/datagen.hpp"

#include "wmh/detail/parallel.hpp"
#include "wmh/variates.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace wmh {

std::uint64_t nonzeros_per_doc(const GenParams &p) {
    const double x = p.density * static_cast<double>(p.num_features);
    // products like 0.29 * 100 land a few ulps below the intended integer
    const double nearest = std::round(x);
    if (std::fabs(x - nearest) <= 1e-9 * std::max(1.0, nearest)) return static_cast<std::uint64_t>(nearest);
    return static_cast<std::uint64_t>(std::floor(x));
}

void validate(const GenParams &p) {
    auto fail = [](const std::string &what) { throw Error(ErrorCode::InvalidParams, what); };
    if (p.num_docs == 0) fail("num_docs must be at least 1");
    if (p.num_features == 0 || p.num_features > kMaxUniverse) fail("num_features out of range");
    if (!(p.density > 0.0 && p.density <= 1.0)) fail("density must lie in (0, 1]");
    if (!(p.exponent > 2.0) || !std::isfinite(p.exponent)) fail("exponent must be finite and > 2");
    if (!(p.scale > 0.0) || !std::isfinite(p.scale)) fail("scale must be finite and > 0");
    if (nonzeros_per_doc(p) < 1) {
        fail("density * num_features must be at least 1");
    }
}

namespace {

WeightedSet generate_doc(const GenParams &p, std::uint64_t doc) {
    const KeyedVariates src;
    const auto n = p.num_features;
    const auto m = nonzeros_per_doc(p);
    const double shape = p.exponent - 1.0;
    const auto d = static_cast<std::uint32_t>(doc & 0xffffffffu);
    const auto k = static_cast<std::uint32_t>(doc >> 32);

    // Partial Fisher-Yates over [0, n); only displaced slots are stored.
    std::unordered_map<std::uint64_t, std::uint64_t> moved;
    auto at = [&](std::uint64_t i) {
        auto it = moved.find(i);
        return it == moved.end() ? i : it->second;
    };
    std::vector<std::pair<std::uint64_t, double>> pairs;
    pairs.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        const std::uint64_t bits = src.bits(VariateKey{p.seed, d, k, Slot::GenIndex, i});
        const std::uint64_t j = i + bits % (n - i);
        const std::uint64_t picked = at(j);
        moved[j] = at(i);
        const double u = src.uniform01(VariateKey{p.seed, d, k, Slot::GenWeight, i});
        pairs.emplace_back(picked, p.scale * std::pow(u, -1.0 / shape));
    }
    return make_weighted_set(n, pairs);
}

} // namespace

Dataset generate(const GenParams &params, unsigned threads) {
    validate(params);
    Dataset out(params.num_docs);
    detail::parallel_for(out.size(), threads, [&](std::size_t n) { out[n] = generate_doc(params, n); });
    return out;
}

DatasetStats stats(const Dataset &dataset) {
    if (dataset.empty()) throw Error(ErrorCode::EmptyDataset, "no documents");
    DatasetStats st;
    std::size_t weighted_docs = 0;
    for (const auto &s : dataset) {
        st.avg_density += static_cast<double>(s.size()) / static_cast<double>(s.universe_size());
        if (s.empty()) continue;
        const double mean = s.total_weight() / static_cast<double>(s.size());
        double ss = 0.0;
        for (const auto &e : s.entries()) ss += (e.weight - mean) * (e.weight - mean);
        st.avg_mean_weight += mean;
        st.avg_std_weight += std::sqrt(ss / static_cast<double>(s.size()));
        ++weighted_docs;
    }
    st.avg_density /= static_cast<double>(dataset.size());
    if (weighted_docs > 0) {
        st.avg_mean_weight /= static_cast<double>(weighted_docs);
        st.avg_std_weight /= static_cast<double>(weighted_docs);
    }
    return st;
}

} // namespace wmh
