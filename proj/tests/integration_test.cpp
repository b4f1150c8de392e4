// End-to-end runs of the wmh executable, checked against the library.

#include "wmh/datagen.hpp"
#include "wmh/estimate.hpp"
#include "wmh/io.hpp"
#include "wmh/oracle.hpp"
#include "wmh/sketch.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cstdlib>
#include <sys/wait.h>
#include <map>
#include <sstream>

using namespace wmh;
using namespace wmh::testing;

namespace {

int wmh_exe(const std::string &args, const ScratchDir &dir) {
    const std::string cmd = std::string("\"") + WMH_EXE + "\" " + args + " > \"" + (dir / "stdout.txt").string() +
                            "\" 2> \"" + (dir / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string q(const std::filesystem::path &p) { return "\"" + p.string() + "\""; }

std::vector<std::vector<std::string>> csv(const std::string &text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

} // namespace

TEST_CASE("gen, sketch and estimate agree with the library") {
    const ScratchDir dir("integration");
    const auto data = dir / "d.ws";
    REQUIRE(wmh_exe("gen --docs 20 --features 400 --density 0.05 --exponent 3 --scale 0.2 --seed 11 " + q(data),
                    dir) == 0);
    CHECK(slurp(dir / "stdout.txt").find("docs=20") != std::string::npos);

    // the file matches an in-process generation with the same parameters
    GenParams p;
    p.num_docs = 20;
    p.num_features = 400;
    p.density = 0.05;
    p.seed = 11;
    const DatasetFile file = load_dataset(data);
    CHECK(file.sets == generate(p));
    REQUIRE(file.layout.has_value());

    for (Algorithm algo : kAllAlgorithms) {
        const std::string name(name_of(algo));
        CAPTURE(name);
        const auto fp = dir / (name + ".fp");
        REQUIRE(wmh_exe("sketch --algo " + name + " --d 80 --seed 4 --threads 2 " + q(data) + " " + q(fp), dir) == 0);

        SketchConfig cfg;
        cfg.algo = algo;
        cfg.num_hashes = 80;
        cfg.seed = 4;
        cfg.layout = std::make_shared<const RedGreenLayout>(*file.layout);
        const auto fps = load_fingerprints(fp, algo);
        CHECK(fps == sketch_dataset(file.sets, cfg));

        const auto out = dir / (name + ".csv");
        REQUIRE(wmh_exe("estimate " + q(data) + " " + q(fp) + " --out " + q(out), dir) == 0);
        const auto rows = csv(slurp(out));
        REQUIRE(rows.size() == 1 + 190);
        for (std::size_t r = 1; r < rows.size(); ++r) {
            const auto i = std::stoul(rows[r][0]);
            const auto j = std::stoul(rows[r][1]);
            const double est = std::stod(rows[r][2]);
            const double truth = std::stod(rows[r][3]);
            REQUIRE(est == collision_similarity(fps[i], fps[j]));
            REQUIRE(truth == generalized_jaccard(file.sets[i], file.sets[j]));
            REQUIRE(std::stod(rows[r][4]) == (est - truth) * (est - truth));
        }
    }
}

TEST_CASE("bench over the pipeline dataset") {
    const ScratchDir dir("integration_bench");
    const auto data = dir / "d.ws";
    REQUIRE(wmh_exe("gen --docs 30 --features 500 --density 0.04 --exponent 3 --scale 0.2 --seed 3 " + q(data), dir) ==
            0);
    const auto out = dir / "bench";
    REQUIRE(wmh_exe("bench " + q(data) +
                        " --algos minhash,icws,shrivastava,gollapudi-int --d-list 20,200 --reps 4 --threads 4"
                        " --scale-c 100 --out-dir " +
                        q(out),
                    dir) == 0);
    const auto rows = csv(slurp(out / "mse.csv"));
    REQUIRE(rows.size() == 1 + 8);
    std::map<std::pair<std::string, std::string>, double> mse;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        CHECK(rows[r][2] == "4");
        CHECK(rows[r][5] == "ok");
        mse[{rows[r][0], rows[r][1]}] = std::stod(rows[r][3]);
    }
    // more hashes shrink the error of every unbiased estimator
    for (const char *algo : {"icws", "shrivastava", "gollapudi-int"}) {
        CAPTURE(algo);
        CHECK(mse[{algo, "200"}] < mse[{algo, "20"}]);
    }
    // MinHash ignores weights, so its error against the weighted truth stays high
    CHECK(mse[{"minhash", "200"}] > mse[{"icws", "200"}]);

    const auto runtime = csv(slurp(out / "runtime.csv"));
    REQUIRE(runtime.size() == 9);
    for (std::size_t r = 1; r < runtime.size(); ++r) CHECK(std::stod(runtime[r][3]) >= 0.0);
}

TEST_CASE("errors reach the exit code") {
    const ScratchDir dir("integration_err");
    CHECK(wmh_exe("sketch --algo nosuch " + q(dir / "a.ws") + " " + q(dir / "b.fp"), dir) == 1);
    CHECK(slurp(dir / "stderr.txt").find("UnknownAlgorithm") != std::string::npos);
    CHECK(wmh_exe("gen --docs 5", dir) != 0);
    CHECK(wmh_exe("--help", dir) == 0);
    CHECK(slurp(dir / "stdout.txt").find("bench") != std::string::npos);
}
