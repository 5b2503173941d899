#include "scram/gf2.hpp"

#include <algorithm>
#include <utility>

namespace scram {

Gf2Matrix::Gf2Matrix(int rows, int cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64),
      data_(static_cast<std::size_t>(rows) * words_, 0) {}

void Gf2Matrix::xor_rows(int dst, int src) {
  std::uint64_t* d = data_.data() + static_cast<std::size_t>(dst) * words_;
  const std::uint64_t* s = data_.data() + static_cast<std::size_t>(src) * words_;
  for (int w = 0; w < words_; ++w) d[w] ^= s[w];
}

void Gf2Matrix::swap_rows(int a, int b) {
  if (a == b) return;
  std::uint64_t* pa = data_.data() + static_cast<std::size_t>(a) * words_;
  std::uint64_t* pb = data_.data() + static_cast<std::size_t>(b) * words_;
  for (int w = 0; w < words_; ++w) std::swap(pa[w], pb[w]);
}

Gf2Rref gf2_rref(Gf2Matrix m) {
  const int rows = m.rows();
  const int cols = m.cols();
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i) {
      if (m.get(i, c)) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    m.swap_rows(r, pivot);
    for (int i = 0; i < rows; ++i) {
      if (i != r && m.get(i, c)) m.xor_rows(i, r);
    }
    pivots.push_back(c);
    ++r;
  }
  Gf2Rref out{std::move(m), std::move(pivots), r};
  return out;
}

int gf2_rank(const Gf2Matrix& m) { return gf2_rref(m).rank; }

}  // namespace scram
