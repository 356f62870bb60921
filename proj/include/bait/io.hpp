#pragma once

#include <string>
#include <vector>

#include "bait/embedding.hpp"

namespace bait {

// BAIT-F32 container: magic "BAIT", u32 little-endian version (=1), u32 row
// count, u32 column count, then rows*cols IEEE-754 binary32 little-endian
// values in row-major order. Used for embeddings (cols = d) and predictive
// probabilities (cols = k) alike.

Matrix read_bait_f32(const std::string& path);
void write_bait_f32(const std::string& path, const Matrix& m);

// CSV alternative: header "f0,...,f{d-1}", one candidate per line,
// '.' decimal separator, UTF-8.
Matrix read_csv_features(const std::string& path);

// Sniffs the magic bytes and dispatches to the binary or CSV reader.
Matrix read_matrix_auto(const std::string& path);

// One numeric label per line: integer class index or real-valued target.
std::vector<double> read_labels(const std::string& path);

// One non-negative integer id per line.
std::vector<int> read_index_file(const std::string& path);

void write_id_list(const std::string& path, const std::vector<int>& ids);

}  // namespace bait
