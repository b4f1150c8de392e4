#include "wmh/cli.hpp"

#include "wmh/datagen.hpp"
#include "wmh/io.hpp"
#include "wmh/oracle.hpp"
#include "wmh/sketch.hpp"

#include <CLI11.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace wmh::cli {

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

void write_runs_csv(std::ostream &out, const BenchReport &report) {
    out << "algo,D,repetition,mse,sketch_seconds,status\n";
    for (const auto &r : report.runs) {
        out << name_of(r.algo) << ',' << r.num_hashes << ',' << r.repetition << ',' << format_real(r.mse) << ','
            << format_real(r.sketch_seconds) << ',' << to_string(r.status) << '\n';
    }
}

void write_mse_csv(std::ostream &out, const BenchReport &report) {
    out << "algo,D,reps_ok,mse_mean,mse_std,status\n";
    for (const auto &a : report.aggregates) {
        out << name_of(a.algo) << ',' << a.num_hashes << ',' << a.completed << ',' << format_real(a.mse_mean) << ','
            << format_real(a.mse_std) << ',' << to_string(a.status) << '\n';
    }
}

void write_runtime_csv(std::ostream &out, const BenchReport &report) {
    out << "algo,D,reps_ok,seconds_mean,seconds_std,status\n";
    for (const auto &a : report.aggregates) {
        out << name_of(a.algo) << ',' << a.num_hashes << ',' << a.completed << ','
            << format_real(a.seconds_mean) << ',' << format_real(a.seconds_std) << ',' << to_string(a.status)
            << '\n';
    }
}

namespace {

std::ofstream open_output(const std::filesystem::path &path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::Io, "cannot write " + path.string());
    return f;
}

IndexPair parse_pair(const std::string &text) {
    const auto colon = text.find(':');
    std::size_t i = 0, j = 0;
    if (colon != std::string::npos) {
        const char *b = text.data();
        const char *e = b + text.size();
        auto r1 = std::from_chars(b, b + colon, i);
        auto r2 = std::from_chars(b + colon + 1, e, j);
        if (r1.ec == std::errc{} && r1.ptr == b + colon && r2.ec == std::errc{} && r2.ptr == e) return {i, j};
    }
    throw Error(ErrorCode::InvalidParams, "--pair expects i:j, got '" + text + "'");
}

struct GenArgs {
    GenParams params;
    unsigned threads = 1;
    std::string output = "dataset.ws";
};

struct SketchArgs {
    std::string algo;
    std::uint32_t d = 100;
    std::uint64_t seed = 0;
    std::uint32_t scale_c = kDefaultQuantScale;
    unsigned threads = 1;
    std::string input;
    std::string output;
};

struct EstimateArgs {
    std::string dataset;
    std::string fingerprints;
    std::vector<std::string> pairs;
    std::string out;
};

struct BenchArgs {
    std::string dataset;
    std::vector<std::string> algos;
    std::vector<std::uint32_t> d_list = kDefaultDList;
    std::uint32_t reps = kDefaultRepetitions;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    double timeout_seconds = 600.0;
    std::uint32_t scale_c = kDefaultQuantScale;
    std::string out_dir = ".";
};

void cmd_gen(const GenArgs &a, std::ostream &out) {
    validate(a.params);
    const Dataset data = generate(a.params, a.threads);
    const RedGreenLayout layout = build_layout(data);
    save_dataset(a.output, a.params.num_features, data, &layout);
    const DatasetStats st = stats(data);
    std::ostringstream line;
    line.precision(6);
    line << "docs=" << data.size() << " features=" << a.params.num_features << " avg_density=" << st.avg_density
         << " avg_mean_weight=" << st.avg_mean_weight << " avg_std_weight=" << st.avg_std_weight << " -> "
         << a.output << '\n';
    out << line.str();
}

void cmd_sketch(const SketchArgs &a, std::ostream &out) {
    SketchConfig cfg;
    cfg.algo = parse_algorithm(a.algo);
    cfg.num_hashes = a.d;
    cfg.seed = a.seed;
    cfg.quant_scale = a.scale_c;
    DatasetFile file = load_dataset(a.input);
    validate(cfg, file.universe_size);
    if (cfg.algo == Algorithm::Shrivastava) {
        if (!file.layout) throw Error(ErrorCode::MissingBounds, a.input + " has no #bounds section");
        cfg.layout = std::make_shared<const RedGreenLayout>(std::move(*file.layout));
    }
    const auto fps = sketch_dataset(file.sets, cfg, a.threads);
    save_fingerprints(a.output, fps);
    out << "sketched " << fps.size() << " sets with " << name_of(cfg.algo) << " (D=" << cfg.num_hashes
        << ", seed=" << cfg.seed << ") -> " << a.output << '\n';
}

void cmd_estimate(const EstimateArgs &a, std::ostream &out) {
    std::vector<IndexPair> pairs;
    for (const auto &p : a.pairs) pairs.push_back(parse_pair(p));
    const DatasetFile file = load_dataset(a.dataset);
    const auto fps = load_fingerprints(a.fingerprints);
    if (fps.size() != file.sets.size()) {
        throw Error(ErrorCode::LengthMismatch, std::to_string(fps.size()) + " fingerprints for " +
                                                   std::to_string(file.sets.size()) + " sets");
    }
    if (pairs.empty()) {
        for (std::size_t i = 0; i < fps.size(); ++i) {
            for (std::size_t j = i + 1; j < fps.size(); ++j) pairs.emplace_back(i, j);
        }
    }
    std::ofstream file_out;
    if (!a.out.empty()) file_out = open_output(a.out);
    std::ostream &csv = a.out.empty() ? out : file_out;
    csv << "i,j,estimate,truth,sq_error\n";
    for (const auto &[i, j] : pairs) {
        if (i >= fps.size() || j >= fps.size()) {
            throw Error(ErrorCode::IndexOutOfRange,
                        "pair " + std::to_string(i) + ":" + std::to_string(j) + " outside the dataset");
        }
        const double est = collision_similarity(fps[i], fps[j]);
        const double truth = generalized_jaccard(file.sets[i], file.sets[j]);
        csv << i << ',' << j << ',' << format_real(est) << ',' << format_real(truth) << ','
            << format_real((est - truth) * (est - truth)) << '\n';
    }
}

void cmd_bench(const BenchArgs &a, std::ostream &out) {
    std::vector<Algorithm> algos;
    if (a.algos.empty()) {
        algos.assign(kAllAlgorithms.begin(), kAllAlgorithms.end());
    } else {
        for (const auto &name : a.algos) algos.push_back(parse_algorithm(name));
    }
    if (!(a.timeout_seconds > 0.0)) throw Error(ErrorCode::InvalidParams, "--timeout-seconds must be positive");
    DatasetFile file = load_dataset(a.dataset);
    BenchOptions opts;
    opts.threads = a.threads;
    opts.timeout = std::chrono::duration<double>(a.timeout_seconds);
    opts.quant_scale = a.scale_c;
    if (file.layout) opts.layout = std::make_shared<const RedGreenLayout>(std::move(*file.layout));
    const BenchReport report = run_benchmark(file.sets, algos, a.d_list, a.reps, a.seed, opts);

    const std::filesystem::path dir(a.out_dir);
    std::filesystem::create_directories(dir);
    {
        auto f = open_output(dir / "mse.csv");
        write_mse_csv(f, report);
    }
    {
        auto f = open_output(dir / "runtime.csv");
        write_runtime_csv(f, report);
    }
    {
        auto f = open_output(dir / "runs.csv");
        write_runs_csv(f, report);
    }
    for (const auto &agg : report.aggregates) {
        out << name_of(agg.algo) << " D=" << agg.num_hashes << " mse=" << format_real(agg.mse_mean)
            << " status=" << to_string(agg.status) << '\n';
    }
    out << "wrote mse.csv, runtime.csv, runs.csv to " << dir.string() << '\n';
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Weighted MinHash sketching, estimation and benchmarking", "wmh"};
    app.require_subcommand(1);

    GenArgs gen;
    auto *g = app.add_subcommand("gen", "Generate a synthetic power-law dataset");
    g->add_option("--docs", gen.params.num_docs, "Number of documents")->required();
    g->add_option("--features", gen.params.num_features, "Universe size")->required();
    g->add_option("--density", gen.params.density, "Fraction of nonzero features per document")->required();
    g->add_option("--exponent", gen.params.exponent, "Power-law exponent e (> 2)")->required();
    g->add_option("--scale", gen.params.scale, "Power-law scale s (> 0)")->required();
    g->add_option("--seed", gen.params.seed, "Random seed")->capture_default_str();
    g->add_option("--threads", gen.threads, "Worker threads")->capture_default_str();
    g->add_option("output", gen.output, "Output dataset file")->capture_default_str();

    SketchArgs sk;
    auto *s = app.add_subcommand("sketch", "Sketch every set of a dataset into a fingerprint file");
    s->add_option("--algo", sk.algo, "Algorithm: " + algorithm_names())->required();
    s->add_option("--d", sk.d, "Number of hashes D")->capture_default_str();
    s->add_option("--seed", sk.seed, "Random seed")->capture_default_str();
    s->add_option("--scale-c", sk.scale_c, "Quantization constant C")->capture_default_str();
    s->add_option("--threads", sk.threads, "Worker threads")->capture_default_str();
    s->add_option("input", sk.input, "Dataset file")->required();
    s->add_option("output", sk.output, "Fingerprint file")->required();

    EstimateArgs est;
    auto *e = app.add_subcommand("estimate", "Estimate pairwise similarities from fingerprints");
    e->add_option("dataset", est.dataset, "Dataset file (for the exact similarity)")->required();
    e->add_option("fingerprints", est.fingerprints, "Fingerprint file")->required();
    e->add_option("--pair", est.pairs, "Pair i:j to estimate (repeatable; default all pairs)");
    e->add_option("--out", est.out, "CSV output path (default stdout)");
    e->footer("CSV columns: i,j,estimate,truth,sq_error");

    BenchArgs bench;
    auto *b = app.add_subcommand("bench", "Run the MSE/runtime benchmark");
    b->add_option("dataset", bench.dataset, "Dataset file")->required();
    b->add_option("--algos", bench.algos, "Comma-separated algorithms (default all)")->delimiter(',');
    b->add_option("--d-list", bench.d_list, "Comma-separated D values")->delimiter(',')->capture_default_str();
    b->add_option("--reps", bench.reps, "Repetitions per (algo, D)")->capture_default_str();
    b->add_option("--seed", bench.seed, "Random seed")->capture_default_str();
    b->add_option("--threads", bench.threads, "Worker threads")->capture_default_str();
    b->add_option("--timeout-seconds", bench.timeout_seconds, "Budget per (algo, D)")->capture_default_str();
    b->add_option("--scale-c", bench.scale_c, "Quantization constant C")->capture_default_str();
    b->add_option("--out-dir", bench.out_dir, "Directory for the CSV files")->capture_default_str();
    b->footer("mse.csv: algo,D,reps_ok,mse_mean,mse_std,status\n"
              "runtime.csv: algo,D,reps_ok,seconds_mean,seconds_std,status\n"
              "runs.csv: algo,D,repetition,mse,sketch_seconds,status");

    std::vector<const char *> argv{"wmh"};
    for (const auto &arg : args) argv.push_back(arg.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &ex) {
        return app.exit(ex, out, err);
    }

    try {
        if (*g) cmd_gen(gen, out);
        else if (*s) cmd_sketch(sk, out);
        else if (*e) cmd_estimate(est, out);
        else if (*b) cmd_bench(bench, out);
    } catch (const std::exception &ex) {
        err << "error: " << ex.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace wmh::cli
