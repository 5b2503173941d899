#include "doctest.h"
#include "scram/gf2.hpp"

using namespace scram;

namespace {

Gf2Matrix hamming_h() {
  Gf2Matrix h(3, 7);
  const int rows[3][4] = {{0, 2, 4, 6}, {1, 2, 5, 6}, {3, 4, 5, 6}};
  for (int r = 0; r < 3; ++r) {
    for (int c : rows[r]) h.set(r, c);
  }
  return h;
}

}  // namespace

TEST_CASE("rank of the Hamming(7,4) check matrix is 3") {
  CHECK(gf2_rank(hamming_h()) == 3);
}

TEST_CASE("rref pivots are ascending and rank-consistent") {
  const Gf2Rref rref = gf2_rref(hamming_h());
  REQUIRE(rref.rank == 3);
  REQUIRE(rref.pivot_cols.size() == 3);
  CHECK(rref.pivot_cols[0] < rref.pivot_cols[1]);
  CHECK(rref.pivot_cols[1] < rref.pivot_cols[2]);
  // Pivot columns are unit vectors after Gauss-Jordan.
  for (int r = 0; r < rref.rank; ++r) {
    for (int rr = 0; rr < rref.rank; ++rr) {
      CHECK(rref.mat.get(rr, rref.pivot_cols[r]) == (rr == r));
    }
  }
}

TEST_CASE("duplicated rows lose rank") {
  Gf2Matrix m(4, 7);
  const int rows[3][4] = {{0, 2, 4, 6}, {1, 2, 5, 6}, {3, 4, 5, 6}};
  for (int r = 0; r < 3; ++r) {
    for (int c : rows[r]) m.set(r, c);
  }
  for (int c : rows[0]) m.set(3, c);
  CHECK(gf2_rank(m) == 3);
}

TEST_CASE("xor_rows flips membership") {
  Gf2Matrix m(2, 130);  // spans multiple words
  m.set(0, 0);
  m.set(0, 129);
  m.set(1, 129);
  m.xor_rows(1, 0);
  CHECK(m.get(1, 0));
  CHECK(!m.get(1, 129));
}
