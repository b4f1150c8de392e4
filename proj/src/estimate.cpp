#include "wmh/estimate.hpp"

#include "wmh/detail/parallel.hpp"
#include "wmh/oracle.hpp"
#include "wmh/sketch.hpp"
#include "wmh/variates.hpp"

#include <cmath>
#include <limits>
#include <set>

namespace wmh {

double collision_similarity(const Fingerprint &a, const Fingerprint &b) {
    if (a.algo != b.algo) {
        throw Error(ErrorCode::AlgorithmMismatch,
                    std::string(name_of(a.algo)) + " vs " + std::string(name_of(b.algo)));
    }
    if (a.codes.size() != b.codes.size()) {
        throw Error(ErrorCode::LengthMismatch,
                    std::to_string(a.codes.size()) + " vs " + std::to_string(b.codes.size()) + " hashes");
    }
    if (a.seed != b.seed) {
        throw Error(ErrorCode::SeedMismatch, std::to_string(a.seed) + " vs " + std::to_string(b.seed));
    }
    if (a.codes.empty()) throw Error(ErrorCode::Empty, "fingerprints have no hashes");
    std::size_t hits = 0;
    for (std::size_t d = 0; d < a.codes.size(); ++d) hits += codes_collide(a.codes[d], b.codes[d]) ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(a.codes.size());
}

double mse(std::span<const double> estimates, std::span<const double> truths) {
    if (estimates.size() != truths.size()) {
        throw Error(ErrorCode::LengthMismatch, std::to_string(estimates.size()) + " estimates vs " +
                                                   std::to_string(truths.size()) + " truths");
    }
    if (estimates.empty()) throw Error(ErrorCode::Empty, "no estimates");
    double sum = 0.0;
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        const double e = estimates[i] - truths[i];
        sum += e * e;
    }
    return sum / static_cast<double>(estimates.size());
}

std::vector<IndexPair> benchmark_pairs(std::size_t m, std::uint64_t seed) {
    if (m < 2) throw Error(ErrorCode::EmptyDataset, "need at least two sets to form a pair");
    std::vector<IndexPair> pairs;
    if (m <= kAllPairsLimit) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
        }
        return pairs;
    }
    std::set<IndexPair> chosen;
    const KeyedVariates src;
    for (std::uint64_t draw = 0; chosen.size() < kSampledPairs; ++draw) {
        const std::uint64_t bits = src.bits(VariateKey{seed, 0, 0, Slot::PairSample, draw});
        const std::size_t i = static_cast<std::size_t>((bits >> 32) % m);
        const std::size_t j = static_cast<std::size_t>((bits & 0xffffffffu) % m);
        if (i == j) continue;
        chosen.emplace(std::min(i, j), std::max(i, j));
    }
    return {chosen.begin(), chosen.end()};
}

std::vector<Fingerprint> sketch_dataset(const Dataset &dataset, const SketchConfig &cfg, unsigned threads) {
    std::vector<Fingerprint> out(dataset.size());
    detail::parallel_for(dataset.size(), threads, [&](std::size_t i) {
        try {
            out[i] = sketch(dataset[i], cfg);
        } catch (const Error &e) {
            throw Error(e.code(), "set " + std::to_string(i) + ": " + e.what());
        }
    });
    return out;
}

std::string_view to_string(RunStatus s) noexcept {
    switch (s) {
    case RunStatus::Ok: return "ok";
    case RunStatus::Timeout: return "timeout";
    case RunStatus::Error: return "error";
    }
    return "error";
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::pair<double, double> mean_std(const std::vector<double> &xs) {
    if (xs.empty()) return {kNaN, kNaN};
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

} // namespace

BenchReport run_benchmark(const Dataset &dataset, std::span<const Algorithm> algos,
                          std::span<const std::uint32_t> d_list, std::uint32_t repetitions,
                          std::uint64_t seed, const BenchOptions &options) {
    if (algos.empty() || d_list.empty() || repetitions == 0) {
        throw Error(ErrorCode::InvalidParams, "benchmark needs algorithms, a D list and repetitions >= 1");
    }
    BenchReport report;
    report.pairs = benchmark_pairs(dataset.size(), seed);
    const auto &pairs = report.pairs;

    std::vector<double> truths(pairs.size());
    detail::parallel_for(pairs.size(), options.threads, [&](std::size_t p) {
        truths[p] = generalized_jaccard(dataset[pairs[p].first], dataset[pairs[p].second]);
    });

    std::shared_ptr<const RedGreenLayout> layout = options.layout;
    const bool wants_layout =
        std::find(algos.begin(), algos.end(), Algorithm::Shrivastava) != algos.end();
    if (wants_layout && !layout) layout = std::make_shared<const RedGreenLayout>(build_layout(dataset));

    for (Algorithm algo : algos) {
        for (std::uint32_t d : d_list) {
            const auto deadline = detail::Clock::now() +
                                  std::chrono::duration_cast<detail::Clock::duration>(options.timeout);
            std::vector<double> mses;
            std::vector<double> seconds;
            RunStatus group_status = RunStatus::Ok;
            for (std::uint32_t rep = 0; rep < repetitions; ++rep) {
                BenchRun run{algo, d, rep, kNaN, kNaN, RunStatus::Ok, {}};
                SketchConfig cfg;
                cfg.algo = algo;
                cfg.num_hashes = d;
                cfg.seed = derive_seed(seed, rep);
                cfg.quant_scale = options.quant_scale;
                cfg.layout = layout;
                if (detail::Clock::now() > deadline) {
                    run.status = RunStatus::Timeout;
                    run.message = "time budget exhausted before this repetition";
                } else {
                    try {
                        std::vector<Fingerprint> fps(dataset.size());
                        const auto t0 = detail::Clock::now();
                        const bool finished = detail::parallel_for(
                            dataset.size(), options.threads,
                            [&](std::size_t i) {
                                try {
                                    fps[i] = sketch(dataset[i], cfg);
                                } catch (const Error &e) {
                                    throw Error(e.code(), "set " + std::to_string(i) + ": " + e.what());
                                }
                            },
                            deadline);
                        run.sketch_seconds = std::chrono::duration<double>(detail::Clock::now() - t0).count();
                        if (!finished) {
                            run.status = RunStatus::Timeout;
                            run.message = "time budget exhausted while sketching";
                        } else {
                            std::vector<double> estimates(pairs.size());
                            detail::parallel_for(pairs.size(), options.threads, [&](std::size_t p) {
                                estimates[p] = collision_similarity(fps[pairs[p].first], fps[pairs[p].second]);
                            });
                            run.mse = mse(estimates, truths);
                            mses.push_back(run.mse);
                            seconds.push_back(run.sketch_seconds);
                        }
                    } catch (const std::exception &e) {
                        run.status = RunStatus::Error;
                        run.message = e.what();
                    }
                }
                if (group_status == RunStatus::Ok) group_status = run.status;
                report.runs.push_back(std::move(run));
            }
            const auto [m_mean, m_std] = mean_std(mses);
            const auto [s_mean, s_std] = mean_std(seconds);
            report.aggregates.push_back(BenchAggregate{algo, d, static_cast<std::uint32_t>(mses.size()), m_mean,
                                                       m_std, s_mean, s_std, group_status});
        }
    }
    return report;
}

} // namespace wmh
