#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bait/harness.hpp"
#include "bait/io.hpp"
#include "bait/rng.hpp"
#include "support/oracles.hpp"

// End-to-end checks of the command-line surface: subcommands, file formats
// and exit codes (0 ok, 2 config error).

namespace {

namespace fs = std::filesystem;

struct CliFixture {
    fs::path dir;

    CliFixture() {
        dir = fs::temp_directory_path() /
              ("bait_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        bait::Rng rng(1);
        bait::Matrix x(12, 3);
        std::ofstream labels(file("labels.txt"));
        for (int i = 0; i < 12; ++i) {
            const int cls = i % 2;
            x(i, 0) = (cls == 0 ? -2.0 : 2.0) + 0.2 * rng.next_gaussian();
            x(i, 1) = 0.2 * rng.next_gaussian();
            x(i, 2) = 0.2 * rng.next_gaussian();
            labels << cls << "\n";
        }
        labels.close();
        bait::write_bait_f32(file("pool.bin"), x);
        std::ofstream test(file("test.txt"));
        test << "10\n11\n";
    }
    ~CliFixture() { fs::remove_all(dir); }

    std::string file(const std::string& name) const {
        return (dir / name).string();
    }

    int run(const std::string& args, const std::string& out_name = "out.txt") const {
        const std::string cmd = std::string(BAIT_CLI_PATH) + " " + args +
                                " > " + file(out_name) + " 2>" +
                                file("err.txt");
        const int status = std::system(cmd.c_str());
        return WEXITSTATUS(status);
    }

    std::string slurp(const std::string& name) const {
        std::ifstream in(file(name));
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
};

}  // namespace

TEST_CASE("select prints a newline-separated id list") {
    CliFixture fx;
    const int code = fx.run("select --embeddings " + fx.file("pool.bin") +
                            " --strategy coreset --batch-size 3"
                            " --mode regression");
    CHECK(code == 0);
    const std::string out = fx.slurp("out.txt");
    int ids = 0;
    std::stringstream ss(out);
    std::string line;
    while (std::getline(ss, line)) {
        if (!line.empty()) ++ids;
    }
    CHECK(ids == 3);
}

TEST_CASE("config errors exit with code 2") {
    CliFixture fx;
    CHECK(fx.run("select --embeddings " + fx.file("pool.bin") +
                 " --strategy nonsense --batch-size 2 --mode regression") == 2);
    CHECK(fx.run("select --embeddings " + fx.file("missing.bin") +
                 " --strategy random --batch-size 2 --mode regression") == 2);
    CHECK(fx.run("simulate --config " + fx.file("missing.cfg")) == 2);
    // classification selection without probabilities
    CHECK(fx.run("select --embeddings " + fx.file("pool.bin") +
                 " --strategy bait --batch-size 2") == 2);
}

TEST_CASE("simulate then analyze produces the penalty matrix") {
    CliFixture fx;
    for (const std::string strategy : {"random", "coreset"}) {
        std::ofstream cfg(fx.file("cfg_" + strategy + ".txt"));
        cfg << "strategy = " << strategy << "\n"
            << "batch_size = 2\nseed_size = 2\nrounds = 3\n"
            << "seeds = 1,2,3\nmode = classification\n"
            << "embeddings = " << fx.file("pool.bin") << "\n"
            << "labels = " << fx.file("labels.txt") << "\n"
            << "test_indices = " << fx.file("test.txt") << "\n"
            << "out_dir = " << fx.file("runs") << "\n";
        cfg.close();
        CHECK(fx.run("simulate --config " + fx.file("cfg_" + strategy + ".txt")) ==
              0);
    }
    CHECK(fs::exists(fx.file("runs/run_random_seed1.csv")));
    CHECK(fs::exists(fx.file("runs/run_coreset_seed3.ids.txt")));

    const int code = fx.run("analyze --runs " + fx.file("runs") + " --out " +
                            fx.file("penalty.csv"));
    CHECK(code == 0);
    const std::string penalty = fx.slurp("penalty.csv");
    CHECK(penalty.rfind("strategy,", 0) == 0);
    CHECK(penalty.find("column_mean") != std::string::npos);
}

TEST_CASE("bayes-sim emits the B,strategy,bayes_risk table") {
    CliFixture fx;
    const int code = fx.run(
        "bayes-sim --kind orthonormal-decay --d 10 --n 200 --b-max 5");
    CHECK(code == 0);
    const std::string out = fx.slurp("out.txt");
    CHECK(out.rfind("B,strategy,bayes_risk\n", 0) == 0);
    CHECK(out.find("1,trace-fisher,") != std::string::npos);
    CHECK(out.find("5,log-det,") != std::string::npos);
}

TEST_CASE("project writes a BAIT-F32 file of the requested width") {
    CliFixture fx;
    const int code = fx.run("project --in " + fx.file("pool.bin") + " --out " +
                            fx.file("proj.bin") + " --dim 2 --seed 5");
    CHECK(code == 0);
    const bait::Matrix m = bait::read_bait_f32(fx.file("proj.bin"));
    CHECK(m.rows() == 12);
    CHECK(m.cols() == 2);
}
