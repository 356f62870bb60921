#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "bait/io.hpp"
#include "support/oracles.hpp"

using bait::Matrix;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("bait_io_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const {
        return (path / name).string();
    }
};

}  // namespace

TEST_CASE("BAIT-F32 round trip preserves float32 payloads") {
    TempDir tmp;
    bait::Rng rng(42);
    Matrix m = oracle::random_matrix(rng, 7, 3);
    // Quantize to float32 so the round trip is exact.
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            m(i, j) = static_cast<double>(static_cast<float>(m(i, j)));
        }
    }
    const std::string path = tmp.file("pool.bin");
    bait::write_bait_f32(path, m);
    const Matrix back = bait::read_bait_f32(path);
    CHECK(back.rows() == 7);
    CHECK(back.cols() == 3);
    CHECK((back - m).norm() == 0.0);

    // Header layout is pinned: magic, version, n, d as little-endian u32.
    std::ifstream in(path, std::ios::binary);
    char head[16];
    in.read(head, 16);
    CHECK(std::string(head, 4) == "BAIT");
    const auto u32at = [&](int off) {
        return static_cast<unsigned>(static_cast<unsigned char>(head[off])) |
               static_cast<unsigned>(static_cast<unsigned char>(head[off + 1])) << 8 |
               static_cast<unsigned>(static_cast<unsigned char>(head[off + 2])) << 16 |
               static_cast<unsigned>(static_cast<unsigned char>(head[off + 3])) << 24;
    };
    CHECK(u32at(4) == 1u);
    CHECK(u32at(8) == 7u);
    CHECK(u32at(12) == 3u);
}

TEST_CASE("malformed binary files are rejected") {
    TempDir tmp;
    const std::string path = tmp.file("bad.bin");
    {
        std::ofstream out(path, std::ios::binary);
        out << "NOPE";
    }
    CHECK_THROWS_AS(bait::read_bait_f32(path), bait::ConfigError);
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << "BAIT";
        const unsigned v = 1, n = 5, d = 4;
        out.write(reinterpret_cast<const char*>(&v), 4);
        out.write(reinterpret_cast<const char*>(&n), 4);
        out.write(reinterpret_cast<const char*>(&d), 4);
        const float one = 1.0f;  // payload far too short
        out.write(reinterpret_cast<const char*>(&one), 4);
    }
    CHECK_THROWS_AS(bait::read_bait_f32(path), bait::ConfigError);
    CHECK_THROWS_AS(bait::read_bait_f32(tmp.file("missing.bin")),
                    bait::ConfigError);
}

TEST_CASE("CSV ingestion expects the canonical header") {
    TempDir tmp;
    const std::string good = tmp.file("ok.csv");
    {
        std::ofstream out(good);
        out << "f0,f1,f2\n1.5,2.0,-3.25\n0.0,0.125,4.5\n";
    }
    const Matrix m = bait::read_csv_features(good);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(m(0, 2) == -3.25);
    CHECK(m(1, 1) == 0.125);

    const std::string bad_header = tmp.file("bad_header.csv");
    {
        std::ofstream out(bad_header);
        out << "a,b,c\n1,2,3\n";
    }
    CHECK_THROWS_AS(bait::read_csv_features(bad_header), bait::ConfigError);

    const std::string ragged = tmp.file("ragged.csv");
    {
        std::ofstream out(ragged);
        out << "f0,f1\n1,2\n3\n";
    }
    CHECK_THROWS_AS(bait::read_csv_features(ragged), bait::ConfigError);

    const std::string junk = tmp.file("junk.csv");
    {
        std::ofstream out(junk);
        out << "f0,f1\n1,two\n";
    }
    CHECK_THROWS_AS(bait::read_csv_features(junk), bait::ConfigError);
}

TEST_CASE("auto reader sniffs the magic bytes") {
    TempDir tmp;
    Matrix m(2, 2);
    m << 1.0, 2.0, 3.0, 4.0;
    const std::string bin = tmp.file("auto.bin");
    bait::write_bait_f32(bin, m);
    CHECK((bait::read_matrix_auto(bin) - m).norm() == 0.0);

    const std::string csv = tmp.file("auto.csv");
    {
        std::ofstream out(csv);
        out << "f0,f1\n1,2\n3,4\n";
    }
    CHECK((bait::read_matrix_auto(csv) - m).norm() == 0.0);
}

TEST_CASE("labels and index files") {
    TempDir tmp;
    const std::string labels = tmp.file("labels.txt");
    {
        std::ofstream out(labels);
        out << "0\n2\n1.5\n";
    }
    const auto v = bait::read_labels(labels);
    CHECK(v == std::vector<double>{0.0, 2.0, 1.5});

    const std::string idx = tmp.file("idx.txt");
    {
        std::ofstream out(idx);
        out << "3\n0\n12\n";
    }
    CHECK(bait::read_index_file(idx) == std::vector<int>{3, 0, 12});

    const std::string neg = tmp.file("neg.txt");
    {
        std::ofstream out(neg);
        out << "-1\n";
    }
    CHECK_THROWS_AS(bait::read_index_file(neg), bait::ConfigError);

    const std::string ids_out = tmp.file("ids.txt");
    bait::write_id_list(ids_out, {5, 2, 9});
    CHECK(bait::read_index_file(ids_out) == std::vector<int>{5, 2, 9});
}
