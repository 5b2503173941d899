#ifndef SCRAM_TESTS_HELPERS_HPP
#define SCRAM_TESTS_HELPERS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "scram/ldpc.hpp"
#include "scram/rng.hpp"

namespace scram::testing {

inline std::string data_path(const std::string& name) {
  return std::string(SCRAM_TEST_DATA_DIR) + "/" + name;
}

inline LdpcCode hamming74() {
  return make_code(SparseBinaryMatrix::from_rows(
      3, 7, {{0, 2, 4, 6}, {1, 2, 5, 6}, {3, 4, 5, 6}}));
}

// 5x6 chain-plus-triangle matrix; all-ones is not a codeword (odd last row).
inline LdpcCode bench_5x6() {
  return make_code(SparseBinaryMatrix::from_rows(
      5, 6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {3, 4, 5}}));
}

// Random sparse parity matrix with col degree `col_deg` and no duplicate
// edges; empty rows are repaired with one extra edge each.
inline LdpcCode random_code(int m, int n, int col_deg, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<int>> rows(m);
  std::vector<std::vector<int>> cols(n);
  for (int c = 0; c < n; ++c) {
    while (static_cast<int>(cols[c].size()) < col_deg) {
      const int r = static_cast<int>(rng.uniform_below(m));
      bool dup = false;
      for (int p : cols[c]) dup = dup || p == r;
      if (!dup) {
        cols[c].push_back(r);
        rows[r].push_back(c);
      }
    }
  }
  for (int r = 0; r < m; ++r) {
    while (rows[r].empty()) {
      const int c = static_cast<int>(rng.uniform_below(n));
      bool dup = false;
      for (int p : cols[c]) dup = dup || p == r;
      if (!dup) {
        cols[c].push_back(r);
        rows[r].push_back(c);
      }
    }
  }
  return make_code(SparseBinaryMatrix::from_rows(m, n, std::move(rows)));
}

// All 2^k codewords of a small code, via its encoder.
inline std::vector<std::vector<std::uint8_t>> all_codewords(const LdpcCode& code) {
  const Encoder enc = build_encoder(code);
  std::vector<std::vector<std::uint8_t>> words;
  const int k = enc.k();
  for (std::uint32_t v = 0; v < (1u << k); ++v) {
    std::vector<std::uint8_t> info(k);
    for (int j = 0; j < k; ++j) info[j] = (v >> j) & 1;
    words.push_back(enc.encode(info));
  }
  return words;
}

// Exhaustive max-likelihood decision over all codewords: maximizes
// sum llr[i] * (2 b_i - 1).
inline std::vector<std::uint8_t> ml_decode(const LdpcCode& code,
                                           const std::vector<double>& llrs) {
  const auto words = all_codewords(code);
  double best = -1e300;
  std::vector<std::uint8_t> best_word;
  for (const auto& w : words) {
    double score = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) score += llrs[i] * (w[i] ? 1.0 : -1.0);
    if (score > best) {
      best = score;
      best_word = w;
    }
  }
  return best_word;
}

}  // namespace scram::testing

#endif
