#include "wmh/sketch_misc.hpp"

#include "wmh/estimate.hpp"
#include "wmh/oracle.hpp"
#include "wmh/sketch.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <memory>

using namespace wmh;
using namespace wmh::testing;

namespace {

SketchConfig config(Algorithm algo, std::uint32_t d, std::uint64_t seed) {
    SketchConfig cfg;
    cfg.algo = algo;
    cfg.num_hashes = d;
    cfg.seed = seed;
    return cfg;
}

double collision(const WeightedSet &s, const WeightedSet &t, const SketchConfig &cfg) {
    return collision_similarity(sketch(s, cfg), sketch(t, cfg));
}

const auto kOne = make_weighted_set(1, {{0, 1.0}});
const auto kTwo = make_weighted_set(1, {{0, 2.0}});

ElementId element_of(const SampleCode &c) { return std::get<IndexOnly>(c).k; }

} // namespace

TEST_CASE("gollapudi threshold with equal weights matches minhash on the support") {
    const auto s = make_weighted_set(50, {{3, 0.7}, {11, 0.7}, {20, 0.7}, {42, 0.7}});
    const auto g = sketch_gollapudi_threshold(s, config(Algorithm::GollapudiThreshold, 500, 4));
    const auto m = sketch(s, config(Algorithm::MinHash, 500, 4));
    REQUIRE(g.codes.size() == 500);
    for (std::size_t d = 0; d < 500; ++d) {
        // the MinHash code is the minimum permuted value; recover the element through the same permutation
        const auto pi = permutation_for(KeyedVariates{}, 4, static_cast<std::uint32_t>(d), kDefaultPrime);
        const ElementId k = element_of(g.codes[d]);
        REQUIRE(k != kSentinelElement);
        CHECK(pi(k) == std::get<MinValue>(m.codes[d]).value);
    }
}

TEST_CASE("gollapudi threshold singleton keeps its element exactly when the coin succeeds") {
    const auto s = make_weighted_set(10, {{4, 0.3}, {6, 1.0}});
    const auto fp = sketch_gollapudi_threshold(s, config(Algorithm::GollapudiThreshold, 2000, 8));
    const auto single = make_weighted_set(10, {{4, 0.3}});
    // with a lone element the normalized weight is 1 so the coin always succeeds
    for (const auto &c : sketch_gollapudi_threshold(single, config(Algorithm::GollapudiThreshold, 200, 8)).codes) {
        CHECK(element_of(c) == 4);
    }
    std::size_t kept4 = 0;
    for (std::uint32_t d = 0; d < 2000; ++d) {
        const bool coin4 = uniform01(VariateKey{8, d, 4, Slot::Frac, 0}) <= 0.3;
        const ElementId k = element_of(fp.codes[d]);
        if (k == 4) {
            CHECK(coin4);
            ++kept4;
        }
        CHECK(k != kSentinelElement); // element 6 has w~ = 1 and is always retained
    }
    CHECK(kept4 > 0);
}

TEST_CASE("gollapudi threshold always retains a maximum-weight element") {
    // w~ = 1 for the heaviest element and coins lie in (0,1), so the sentinel cannot appear
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto [s, t] = random_pair(seed, 100, 8, 0.3);
        for (const auto &c : sketch_gollapudi_threshold(s, config(Algorithm::GollapudiThreshold, 200, seed)).codes) {
            REQUIRE_FALSE(is_sentinel(c));
            REQUIRE(s.weight(element_of(c)) > 0.0);
        }
    }
}

TEST_CASE("bias witnesses on {0:1} vs {0:2}") {
    CHECK(generalized_jaccard(kOne, kTwo) == 0.5);
    CHECK(collision(kOne, kTwo, config(Algorithm::GollapudiThreshold, 10'000, 3)) == 1.0);
    CHECK(collision(kOne, kTwo, config(Algorithm::Chum, 10'000, 3)) == 1.0);
}

TEST_CASE("gollapudi threshold is invariant to scaling the set") {
    const auto [s, t] = random_pair(21, 60, 10, 0.5);
    const auto cfg = config(Algorithm::GollapudiThreshold, 300, 2);
    CHECK(sketch(s, cfg) == sketch(scale(s, 7.5), cfg));
}

TEST_CASE("chum hash values are Exp(S_k)") {
    const KeyedVariates src;
    std::vector<double> xs;
    for (std::uint64_t seed = 0; seed < 100'000; ++seed) xs.push_back(chum_hash(src, seed, 0, 3, 1.7));
    CHECK(ks_statistic(xs, [](double x) { return 1.0 - std::exp(-1.7 * x); }) < ks_threshold(xs.size()));
}

TEST_CASE("chum selection frequencies follow the weights") {
    const auto s = make_weighted_set(8, {{0, 0.3}, {1, 1.0}, {2, 2.5}, {3, 0.7}, {4, 4.0}});
    const auto fp = sketch_chum(s, config(Algorithm::Chum, 10'000, 5));
    std::vector<std::uint64_t> counts(s.size(), 0);
    for (const auto &c : fp.codes) ++counts[element_of(c)];
    std::vector<double> probs;
    for (const auto &e : s.entries()) probs.push_back(e.weight / s.total_weight());
    CHECK(chi_square_pvalue(chi_square_stat(counts, probs), 4.0) > 0.001);
}

TEST_CASE("chum and gollapudi threshold reject the empty set") {
    const auto e = make_weighted_set(3, {});
    CHECK(error_of([&] { sketch_chum(e, config(Algorithm::Chum, 4, 1)); }) == ErrorCode::EmptySet);
    CHECK(error_of([&] { sketch_gollapudi_threshold(e, config(Algorithm::GollapudiThreshold, 4, 1)); }) ==
          ErrorCode::EmptySet);
}

TEST_CASE("build_layout takes per-element maxima") {
    const auto layout = build_layout({kOne, kTwo});
    REQUIRE(layout.ids.size() == 1);
    CHECK(layout.bounds[0] == 2.0);
    CHECK(layout.total_mass == 2.0);

    const auto wide = build_layout({make_weighted_set(10, {{1, 0.5}, {7, 3.0}}), make_weighted_set(10, {{1, 2.0}})});
    CHECK(wide.ids == std::vector<ElementId>{1, 7});
    CHECK(wide.bounds == std::vector<double>{2.0, 3.0});
    CHECK(wide.offsets == std::vector<double>{0.0, 2.0, 5.0});
    CHECK(wide.find(7) == 1);
    CHECK(wide.find(4) == RedGreenLayout::npos);

    CHECK(error_of([] { build_layout({}); }) == ErrorCode::EmptyDataset);
    CHECK(error_of([] { build_layout({make_weighted_set(3, {})}); }) == ErrorCode::EmptyDataset);
    CHECK(error_of([] { build_layout({kOne, make_weighted_set(2, {{0, 1.0}})}); }) == ErrorCode::UniverseMismatch);
    CHECK(error_of([] { RedGreenLayout::from_bounds(3, {{0, 1.0}, {0, 2.0}}); }) == ErrorCode::DuplicateIndex);
    CHECK(error_of([] { RedGreenLayout::from_bounds(3, {{5, 1.0}}); }) == ErrorCode::IndexOutOfRange);
    CHECK(error_of([] { RedGreenLayout::from_bounds(3, {{0, 0.0}}); }) == ErrorCode::InvalidParams);
}

TEST_CASE("shrivastava respects the bounds contract") {
    const auto layout = build_layout({kOne});
    const auto cfg = config(Algorithm::Shrivastava, 10, 1);
    CHECK(error_of([&] { sketch_shrivastava(kTwo, layout, cfg); }) == ErrorCode::BoundExceeded);
    const auto elsewhere = make_weighted_set(1, {});
    CHECK(error_of([&] { sketch_shrivastava(elsewhere, layout, cfg); }) == ErrorCode::EmptySet);
    CHECK(error_of([&] { sketch_shrivastava(make_weighted_set(4, {{2, 1.0}}), layout, cfg); }) ==
          ErrorCode::UniverseMismatch);
    const auto layout4 = RedGreenLayout::from_bounds(4, {{0, 1.0}});
    CHECK(error_of([&] { sketch_shrivastava(make_weighted_set(4, {{2, 0.5}}), layout4, cfg); }) ==
          ErrorCode::BoundExceeded);
}

TEST_CASE("shrivastava through the dispatcher needs a layout") {
    auto cfg = config(Algorithm::Shrivastava, 10, 1);
    CHECK(error_of([&] { sketch(kOne, cfg); }) == ErrorCode::MissingBounds);
    cfg.layout = std::make_shared<const RedGreenLayout>(build_layout({kOne, kTwo}));
    CHECK(sketch(kOne, cfg) == sketch_shrivastava(kOne, *cfg.layout, cfg));
}

TEST_CASE("shrivastava accepts the first step when everything is green") {
    const auto s = make_weighted_set(6, {{0, 1.5}, {3, 0.2}, {5, 4.0}});
    const auto layout = build_layout({s});
    for (const auto &c : sketch_shrivastava(s, layout, config(Algorithm::Shrivastava, 500, 2)).codes) {
        CHECK(std::get<StepCount>(c).t == 1);
    }
}

TEST_CASE("shrivastava disjoint green regions never collide") {
    const auto layout = RedGreenLayout::from_bounds(2, {{0, 1.0}, {1, 1.0}});
    const auto cfg = config(Algorithm::Shrivastava, 10'000, 6);
    const auto s = sketch_shrivastava(make_weighted_set(2, {{0, 1.0}}), layout, cfg);
    const auto t = sketch_shrivastava(make_weighted_set(2, {{1, 1.0}}), layout, cfg);
    CHECK(collision_similarity(s, t) == 0.0);
}

TEST_CASE("shrivastava on the 0.4 pair") {
    const auto s = make_weighted_set(2, {{0, 2}, {1, 1}});
    const auto t = make_weighted_set(2, {{0, 1}, {1, 3}});
    const auto layout = build_layout({s, t});
    const auto cfg = config(Algorithm::Shrivastava, 10'000, 1);
    const double c = collision_similarity(sketch_shrivastava(s, layout, cfg), sketch_shrivastava(t, layout, cfg));
    CHECK(std::fabs(c - 0.4) <= 0.02);
}

TEST_CASE("shrivastava mean step count follows the acceptance rate") {
    const auto s = make_weighted_set(2, {{0, 2}, {1, 1}});
    const auto t = make_weighted_set(2, {{0, 1}, {1, 3}});
    const auto layout = build_layout({s, t});
    SketchStats stats;
    SketchContext ctx;
    ctx.stats = &stats;
    sketch_shrivastava(s, layout, config(Algorithm::Shrivastava, 10'000, 3), ctx);
    const double expected = layout.total_mass / s.total_weight();
    const double mean = static_cast<double>(stats.rejection_steps) / 10'000.0;
    CHECK(std::fabs(mean - expected) <= 0.05 * expected);
}

TEST_CASE("shrivastava unbiased on random pairs within 4 sigma") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto [s, t] = random_pair(seed + 100, 80, 10, static_cast<double>(seed % 5) / 4.0);
        const auto layout = build_layout({s, t});
        const auto cfg = config(Algorithm::Shrivastava, 4000, seed);
        const double c = collision_similarity(sketch_shrivastava(s, layout, cfg), sketch_shrivastava(t, layout, cfg));
        const double g = generalized_jaccard(s, t);
        CHECK(std::fabs(c - g) <= 4.0 * std::sqrt(g * (1.0 - g) / 4000.0) + 1e-12);
    }
}

TEST_CASE("shrivastava step overflow surfaces as an error") {
    const auto layout = RedGreenLayout::from_bounds(2, {{0, 1e12}, {1, 1.0}});
    const auto s = make_weighted_set(2, {{1, 1.0}});
    CHECK(error_of([&] { sketch_shrivastava(s, layout, config(Algorithm::Shrivastava, 1, 0)); }) ==
          ErrorCode::StepOverflow);
}
