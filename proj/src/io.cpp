#include "bait/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace bait {

namespace {

constexpr char kMagic[4] = {'B', 'A', 'I', 'T'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "BAIT-F32 I/O assumes a little-endian host");

std::uint32_t read_u32(std::istream& in, const std::string& path) {
    std::uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!in) throw ConfigError(path + ": truncated header");
    return v;
}

}  // namespace

Matrix read_bait_f32(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open");
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) {
        throw ConfigError(path + ": not a BAIT-F32 file");
    }
    const std::uint32_t version = read_u32(in, path);
    if (version != kVersion) {
        throw ConfigError(path + ": unsupported version " +
                          std::to_string(version));
    }
    const std::uint32_t rows = read_u32(in, path);
    const std::uint32_t cols = read_u32(in, path);
    if (rows == 0 || cols == 0) {
        throw ConfigError(path + ": empty matrix");
    }
    std::vector<float> buf(static_cast<std::size_t>(rows) * cols);
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (!in) throw ConfigError(path + ": truncated payload");
    Matrix m(rows, cols);
    for (std::uint32_t r = 0; r < rows; ++r) {
        for (std::uint32_t c = 0; c < cols; ++c) {
            m(r, c) = static_cast<double>(buf[static_cast<std::size_t>(r) * cols + c]);
        }
    }
    if (!m.allFinite()) throw ConfigError(path + ": non-finite entries");
    return m;
}

void write_bait_f32(const std::string& path, const Matrix& m) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError(path + ": cannot open for writing");
    out.write(kMagic, 4);
    const std::uint32_t version = kVersion;
    const std::uint32_t rows = static_cast<std::uint32_t>(m.rows());
    const std::uint32_t cols = static_cast<std::uint32_t>(m.cols());
    out.write(reinterpret_cast<const char*>(&version), sizeof version);
    out.write(reinterpret_cast<const char*>(&rows), sizeof rows);
    out.write(reinterpret_cast<const char*>(&cols), sizeof cols);
    std::vector<float> buf(static_cast<std::size_t>(rows) * cols);
    for (std::uint32_t r = 0; r < rows; ++r) {
        for (std::uint32_t c = 0; c < cols; ++c) {
            buf[static_cast<std::size_t>(r) * cols + c] =
                static_cast<float>(m(r, c));
        }
    }
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (!out) throw ConfigError(path + ": write failed");
}

Matrix read_csv_features(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open");
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) header.push_back(tok);
    }
    const int d = static_cast<int>(header.size());
    if (d == 0) throw ConfigError(path + ": missing header");
    for (int j = 0; j < d; ++j) {
        if (header[static_cast<std::size_t>(j)] != "f" + std::to_string(j)) {
            throw ConfigError(path + ": header must be f0,...,f" +
                              std::to_string(d - 1));
        }
    }

    std::vector<double> values;
    int rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        int got = 0;
        while (std::getline(ss, tok, ',')) {
            std::size_t pos = 0;
            double v;
            try {
                v = std::stod(tok, &pos);
            } catch (const std::exception&) {
                throw ConfigError(path + ": bad value '" + tok + "' at row " +
                                  std::to_string(rows));
            }
            if (pos != tok.size()) {
                throw ConfigError(path + ": bad value '" + tok + "' at row " +
                                  std::to_string(rows));
            }
            values.push_back(v);
            ++got;
        }
        if (got != d) {
            throw ConfigError(path + ": row " + std::to_string(rows) + " has " +
                              std::to_string(got) + " fields, expected " +
                              std::to_string(d));
        }
        ++rows;
    }
    if (rows == 0) throw ConfigError(path + ": no data rows");
    Matrix m(rows, d);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < d; ++c) {
            m(r, c) = values[static_cast<std::size_t>(r) * d + c];
        }
    }
    if (!m.allFinite()) throw ConfigError(path + ": non-finite entries");
    return m;
}

Matrix read_matrix_auto(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open");
    char magic[4] = {0, 0, 0, 0};
    in.read(magic, 4);
    in.close();
    if (std::memcmp(magic, kMagic, 4) == 0) return read_bait_f32(path);
    return read_csv_features(path);
}

std::vector<double> read_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open");
    std::vector<double> out;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            out.push_back(std::stod(line));
        } catch (const std::exception&) {
            throw ConfigError(path + ": bad label '" + line + "' at line " +
                              std::to_string(row));
        }
        ++row;
    }
    if (out.empty()) throw ConfigError(path + ": no labels");
    return out;
}

std::vector<int> read_index_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open");
    std::vector<int> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            const long v = std::stol(line);
            if (v < 0) throw ConfigError(path + ": negative index " + line);
            out.push_back(static_cast<int>(v));
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError(path + ": bad index '" + line + "'");
        }
    }
    return out;
}

void write_id_list(const std::string& path, const std::vector<int>& ids) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ConfigError(path + ": cannot open for writing");
    for (int id : ids) out << id << "\n";
    if (!out) throw ConfigError(path + ": write failed");
}

}  // namespace bait
