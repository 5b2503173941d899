#ifndef SCRAM_GF2_HPP
#define SCRAM_GF2_HPP

#include <cstdint>
#include <vector>

namespace scram {

// Dense GF(2) matrix, rows packed into 64-bit words. Used for rank
// computation and for solving the encoding system; the sparse code
// representation stays in adjacency lists.
class Gf2Matrix {
 public:
  Gf2Matrix(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool get(int r, int c) const {
    return (data_[static_cast<std::size_t>(r) * words_ + (c >> 6)] >> (c & 63)) & 1u;
  }
  void set(int r, int c) {
    data_[static_cast<std::size_t>(r) * words_ + (c >> 6)] |= std::uint64_t{1} << (c & 63);
  }
  void flip(int r, int c) {
    data_[static_cast<std::size_t>(r) * words_ + (c >> 6)] ^= std::uint64_t{1} << (c & 63);
  }

  // row dst ^= row src
  void xor_rows(int dst, int src);
  void swap_rows(int a, int b);

 private:
  int rows_;
  int cols_;
  int words_;
  std::vector<std::uint64_t> data_;
};

struct Gf2Rref {
  Gf2Matrix mat;               // reduced row echelon form
  std::vector<int> pivot_cols; // one entry per nonzero row, ascending
  int rank = 0;
};

// Gauss-Jordan elimination with column pivoting (first nonzero column wins).
Gf2Rref gf2_rref(Gf2Matrix m);

int gf2_rank(const Gf2Matrix& m);

}  // namespace scram

#endif
