#include "wmh/sketch_quant.hpp"

#include "wmh/estimate.hpp"
#include "wmh/oracle.hpp"
#include "wmh/sketch.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <random>

using namespace wmh;
using namespace wmh::testing;

namespace {

SketchConfig config(Algorithm algo, std::uint32_t d, std::uint64_t seed, std::uint32_t scale = kDefaultQuantScale) {
    SketchConfig cfg;
    cfg.algo = algo;
    cfg.num_hashes = d;
    cfg.seed = seed;
    cfg.quant_scale = scale;
    return cfg;
}

double collision(Algorithm algo, const WeightedSet &s, const WeightedSet &t, std::uint32_t d, std::uint64_t seed,
                 std::uint32_t scale = kDefaultQuantScale) {
    const auto cfg = config(algo, d, seed, scale);
    return collision_similarity(sketch(s, cfg), sketch(t, cfg));
}

// Random integer-weight set over `universe` with weights in [1, max_w].
WeightedSet integer_set(std::mt19937_64 &rng, std::uint64_t universe, std::size_t nnz, int max_w) {
    std::uniform_int_distribution<std::uint64_t> idx(0, universe - 1);
    std::uniform_int_distribution<int> w(1, max_w);
    std::vector<std::pair<std::uint64_t, double>> pairs;
    std::set<std::uint64_t> used;
    while (pairs.size() < nnz) {
        const auto k = idx(rng);
        if (used.insert(k).second) pairs.emplace_back(k, w(rng));
    }
    return make_weighted_set(universe, pairs);
}

const auto kPairS = make_weighted_set(2, {{0, 2}, {1, 1}});
const auto kPairT = make_weighted_set(2, {{0, 1}, {1, 3}});

} // namespace

TEST_CASE("quantize_floor") {
    CHECK(quantize_floor(0.0004, 1000) == 0);
    CHECK(quantize_floor(2.5, 1) == 2);
    CHECK(quantize_floor(0.25, 1000) == 250);
    CHECK(error_of([] { quantize_floor(1e300, 1000); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("minhash: singleton support hashes to the permuted index") {
    const auto s = make_weighted_set(100, {{42, 3.5}});
    const auto cfg = config(Algorithm::MinHash, 64, 9);
    const auto fp = sketch_minhash(s, cfg);
    REQUIRE(fp.num_hashes() == 64);
    for (std::uint32_t d = 0; d < 64; ++d) {
        const auto pi = permutation_for(KeyedVariates{}, 9, d, cfg.prime);
        CHECK(pi.a > 0);
        CHECK(pi.a < cfg.prime);
        CHECK(pi.b > 0);
        CHECK(pi.b < cfg.prime);
        CHECK(fp.codes[d] == SampleCode{MinValue{pi(42)}});
    }
}

TEST_CASE("minhash ignores weights and is deterministic") {
    const auto s = make_weighted_set(50, {{1, 0.2}, {7, 9.0}, {30, 1.0}});
    const auto cfg = config(Algorithm::MinHash, 32, 4);
    CHECK(sketch_minhash(s, cfg) == sketch_minhash(s, cfg));
    CHECK(sketch_minhash(s, cfg) == sketch_minhash(binarize(s), cfg));
    auto other = cfg;
    other.seed = 5;
    CHECK_FALSE(sketch_minhash(s, cfg) == sketch_minhash(s, other));
}

// Linear maps a*i+b are not min-wise independent on arithmetic progressions: for
// {0,1,2} vs {1,2,3} the arg-min over {0..3} lands on an inner point with
// probability 5/12, not 1/2 (Monte Carlo over the integer family gives 0.4175).
TEST_CASE("minhash collision law on the Jaccard 0.5 progression pair" * doctest::should_fail()) {
    const auto s = make_weighted_set(10, {{0, 1}, {1, 1}, {2, 1}});
    const auto t = make_weighted_set(10, {{1, 1}, {2, 1}, {3, 1}});
    CHECK(collision(Algorithm::MinHash, s, t, 10'000, 1) == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("minhash on the progression pair matches the linear-family law") {
    const auto s = make_weighted_set(10, {{0, 1}, {1, 1}, {2, 1}});
    const auto t = make_weighted_set(10, {{1, 1}, {2, 1}, {3, 1}});
    CHECK(std::fabs(collision(Algorithm::MinHash, s, t, 10'000, 1) - 5.0 / 12.0) <= 0.02);
}

TEST_CASE("minhash collision law on scattered supports") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto [s, t] = random_pair(seed, 100'000, 30, 0.6);
        CHECK(std::fabs(collision(Algorithm::MinHash, s, t, 10'000, seed) - jaccard(s, t)) <= 0.02);
    }
}

TEST_CASE("minhash permutations work with a small explicit prime") {
    auto cfg = config(Algorithm::MinHash, 16, 2);
    cfg.prime = 101;
    const auto fp = sketch_minhash(make_weighted_set(100, {{3, 1}, {99, 1}}), cfg);
    for (const auto &c : fp.codes) CHECK(std::get<MinValue>(c).value < 101);
}

TEST_CASE("every sketcher rejects the empty set") {
    const auto empty = make_weighted_set(10, {});
    for (Algorithm a : kAllAlgorithms) {
        auto cfg = config(a, 8, 1);
        cfg.layout = std::make_shared<const RedGreenLayout>(RedGreenLayout::from_bounds(10, {{0, 1.0}}));
        CHECK(error_of([&] { sketch(empty, cfg); }) == ErrorCode::EmptySet);
    }
}

TEST_CASE("haveliwala examples") {
    CHECK(error_of([] { sketch_haveliwala(make_weighted_set(10, {{3, 0.0004}}), config(Algorithm::Haveliwala, 4, 1)); }) ==
          ErrorCode::EmptyQuantization);
    const auto fp = sketch_haveliwala(make_weighted_set(5, {{0, 1}}), config(Algorithm::Haveliwala, 100, 3, 1));
    for (const auto &c : fp.codes) CHECK(c == SampleCode{IndexSub{0, 1}});
    CHECK(collision(Algorithm::Haveliwala, kPairS, kPairT, 10'000, 2, 1) == doctest::Approx(0.4).epsilon(0.05));
}

TEST_CASE("haveliwala codes stay within the quantized range") {
    const auto s = make_weighted_set(10, {{0, 0.0126}, {4, 0.0031}, {9, 0.0007}});
    const auto fp = sketch_haveliwala(s, config(Algorithm::Haveliwala, 500, 8));
    for (const auto &c : fp.codes) {
        const auto code = std::get<IndexSub>(c);
        REQUIRE(code.k != 9); // floor(0.7) = 0 subelements
        CHECK(code.i >= 1);
        CHECK(code.i <= quantize_floor(s.weight(code.k), 1000));
    }
}

TEST_CASE("haeupler reduces to haveliwala when fractions vanish") {
    const auto s = make_weighted_set(10, {{0, 2}, {3, 3}, {7, 1}});
    CHECK(sketch_haeupler(s, config(Algorithm::Haeupler, 200, 6, 1)) ==
          [&] {
              auto fp = sketch_haveliwala(s, config(Algorithm::Haveliwala, 200, 6, 1));
              fp.algo = Algorithm::Haeupler;
              return fp;
          }());
}

TEST_CASE("haeupler keeps a half-weight element about half the time") {
    const auto fp = sketch_haeupler(make_weighted_set(10, {{4, 0.5}}), config(Algorithm::Haeupler, 10'000, 12, 1));
    std::size_t present = 0;
    for (const auto &c : fp.codes) {
        if (is_sentinel(c)) continue;
        CHECK(c == SampleCode{IndexSub{4, 1}});
        ++present;
    }
    CHECK(static_cast<double>(present) / 10'000.0 == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("haeupler is deterministic and consistent on the fractional coin") {
    const auto s = make_weighted_set(10, {{1, 1.7}, {2, 0.4}});
    const auto cfg = config(Algorithm::Haeupler, 300, 21, 1);
    CHECK(sketch_haeupler(s, cfg) == sketch_haeupler(s, cfg));
    // Same element weight in another set: whenever S picks the fractional subelement of
    // element 1, T (which has the same weight there and less elsewhere) picks it too.
    const auto t = make_weighted_set(10, {{1, 1.7}});
    const auto fs = sketch_haeupler(s, cfg);
    const auto ft = sketch_haeupler(t, cfg);
    for (std::uint32_t d = 0; d < 300; ++d) {
        if (is_sentinel(fs.codes[d])) continue;
        if (std::get<IndexSub>(fs.codes[d]).k == 1) CHECK(fs.codes[d] == ft.codes[d]);
    }
}

TEST_CASE("gollapudi walk with W = 1 is the first subelement hash") {
    const KeyedVariates src;
    for (std::uint32_t d = 0; d < 50; ++d) {
        const auto w = gollapudi_walk(src, 5, d, 3, 1);
        CHECK(w.index == 1);
        CHECK(w.value == uniform01(VariateKey{5, d, 3, Slot::Sub, 1}));
        CHECK(w.visits == 1);
    }
    const auto s = make_weighted_set(10, {{0, 1}, {5, 1}, {9, 1}});
    auto fp = sketch_gollapudi_int(s, config(Algorithm::GollapudiInt, 200, 5, 1));
    fp.algo = Algorithm::Haveliwala;
    CHECK(fp == sketch_haveliwala(s, config(Algorithm::Haveliwala, 200, 5, 1)));
}

TEST_CASE("gollapudi walk prefixes are shared across weights") {
    const KeyedVariates src;
    for (std::uint32_t d = 0; d < 300; ++d) {
        const auto w3 = gollapudi_walk(src, 8, d, 2, 3);
        const auto w7 = gollapudi_walk(src, 8, d, 2, 7);
        CHECK(w3.index <= 3);
        CHECK(w7.index <= 7);
        CHECK(w7.value <= w3.value);
        if (w7.index <= 3) {
            CHECK(w7.index == w3.index);
            CHECK(w7.value == w3.value);
        }
        for (std::uint64_t small = 1; small < 40; ++small) {
            const auto a = gollapudi_walk(src, 8, d, 2, small);
            const auto b = gollapudi_walk(src, 8, d, 2, small + 1);
            REQUIRE(b.value <= a.value);
            if (b.index <= small) REQUIRE(b.index == a.index);
        }
    }
}

TEST_CASE("gollapudi walk realizes the minimum of W uniforms at a uniform position") {
    const KeyedVariates src;
    constexpr std::uint64_t W = 10;
    constexpr std::uint32_t N = 20'000;
    std::vector<double> values;
    std::vector<std::uint64_t> counts(W, 0);
    for (std::uint32_t d = 0; d < N; ++d) {
        const auto w = gollapudi_walk(src, 77, d, 0, W);
        values.push_back(w.value);
        ++counts[w.index - 1];
    }
    CHECK(ks_statistic(values, [](double t) { return 1.0 - std::pow(1.0 - t, double(W)); }) < ks_threshold(N));
    const std::vector<double> probs(W, 1.0 / W);
    CHECK(chi_square_pvalue(chi_square_stat(counts, probs), W - 1) > 0.001);
}

TEST_CASE("gollapudi visits grow logarithmically") {
    for (double w : {10.0, 100.0, 1000.0, 10000.0}) {
        SketchStats stats;
        SketchContext ctx;
        ctx.stats = &stats;
        sketch_gollapudi_int(make_weighted_set(4, {{0, w}, {1, w}}), config(Algorithm::GollapudiInt, 2000, 3, 1), ctx);
        REQUIRE(stats.element_walks == 4000);
        const double mean = static_cast<double>(stats.active_indices) / static_cast<double>(stats.element_walks);
        CHECK(mean <= 2.0 * (1.0 + std::log(w)));
        // Expected count of records among W uniforms is the harmonic number H_W.
        double harmonic = 0.0;
        for (int i = 1; i <= static_cast<int>(w); ++i) harmonic += 1.0 / i;
        CHECK(mean == doctest::Approx(harmonic).epsilon(0.05));
    }
}

TEST_CASE("gollapudi-int agrees with haveliwala on integer data") {
    std::mt19937_64 rng(314);
    for (int trial = 0; trial < 5; ++trial) {
        const auto s = integer_set(rng, 40, 8, 12);
        auto t = integer_set(rng, 40, 8, 12);
        const double g = collision(Algorithm::GollapudiInt, s, t, 5000, 40 + trial, 1);
        const double h = collision(Algorithm::Haveliwala, s, t, 5000, 40 + trial, 1);
        CHECK(std::fabs(g - h) <= 0.02);
    }
    CHECK(collision(Algorithm::GollapudiInt, kPairS, kPairT, 10'000, 2, 1) == doctest::Approx(0.4).epsilon(0.05));
}

TEST_CASE("quantization family collision fraction tracks generalized Jaccard on integer data") {
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 4; ++trial) {
        const auto s = integer_set(rng, 12, 6, 9);
        const auto t = integer_set(rng, 12, 6, 9);
        const double truth = generalized_jaccard(s, t);
        for (Algorithm a : {Algorithm::Haveliwala, Algorithm::Haeupler, Algorithm::GollapudiInt}) {
            CHECK(std::fabs(collision(a, s, t, 10'000, 90 + trial, 1) - truth) <= 0.02);
        }
    }
}

TEST_CASE("monotone consistency of the quantization family") {
    // T <= S elementwise. When S's winning subelement (k, i) also exists in T, T must
    // report the same code at that hash.
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = integer_set(rng, 30, 10, 20);
        std::vector<std::pair<std::uint64_t, double>> smaller;
        std::uniform_int_distribution<int> keep(0, 3);
        for (const auto &e : s.entries()) {
            const int drop = keep(rng);
            if (drop == 0) continue;
            smaller.emplace_back(e.id, std::max(1.0, e.weight - drop));
        }
        if (smaller.empty()) continue;
        const auto t = make_weighted_set(30, smaller);
        for (Algorithm a : {Algorithm::Haveliwala, Algorithm::Haeupler, Algorithm::GollapudiInt}) {
            const auto cfg = config(a, 200, 1000 + trial, 1);
            const auto fs = sketch(s, cfg);
            const auto ft = sketch(t, cfg);
            for (std::uint32_t d = 0; d < 200; ++d) {
                const auto cs = std::get<IndexSub>(fs.codes[d]);
                if (cs.k == kSentinelElement) continue;
                if (static_cast<double>(cs.i) <= t.weight(cs.k)) REQUIRE(fs.codes[d] == ft.codes[d]);
            }
        }
    }
}
