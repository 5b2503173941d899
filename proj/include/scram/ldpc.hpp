#ifndef SCRAM_LDPC_HPP
#define SCRAM_LDPC_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "scram/gf2.hpp"

namespace scram {

// Generic sparse binary incidence matrix held as mutually consistent
// row and column adjacency lists (sorted ascending, 0-based).
struct SparseBinaryMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<int>> row_adj;
  std::vector<std::vector<int>> col_adj;

  static SparseBinaryMatrix from_rows(int rows, int cols,
                                      std::vector<std::vector<int>> row_lists);

  std::size_t edge_count() const;
  Gf2Matrix to_dense() const;
};

// Parity-check code: H is m x n, k = n - rank(H).
struct LdpcCode {
  SparseBinaryMatrix h;
  int n = 0;
  int m = 0;
  int k = 0;

  double rate() const { return static_cast<double>(k) / n; }
  bool syndrome_ok(const std::vector<std::uint8_t>& bits) const;
};

LdpcCode make_code(SparseBinaryMatrix h);

// alist interchange format (1-based indices, zero padding tolerated).
// Parse errors carry the offending line number.
LdpcCode load_alist(std::istream& in);
LdpcCode load_alist_file(const std::string& path);
void save_alist(const SparseBinaryMatrix& m, std::ostream& out);
void save_alist_file(const SparseBinaryMatrix& m, const std::string& path);

// Systematic encoder obtained by Gauss-Jordan elimination of H. Info bits
// sit at the non-pivot columns; each pivot column is a parity bit computed
// as an XOR over a subset of the info bits. Output is in H's original
// column order.
class Encoder {
 public:
  int n() const { return n_; }
  int k() const { return k_; }
  const std::vector<int>& info_positions() const { return info_positions_; }

  std::vector<std::uint8_t> encode(const std::vector<std::uint8_t>& info) const;
  std::vector<std::uint8_t> extract_info(const std::vector<std::uint8_t>& codeword) const;

 private:
  friend Encoder build_encoder(const LdpcCode& code);
  int n_ = 0;
  int k_ = 0;
  std::vector<int> info_positions_;    // ascending, size k
  std::vector<int> parity_positions_;  // ascending pivot columns, size n - k
  int mask_words_ = 0;
  std::vector<std::uint64_t> parity_masks_;  // per parity bit, packed over info bits
};

Encoder build_encoder(const LdpcCode& code);

// Message clipping shared by the classical and joint decoders.
constexpr double kLlrClip = 50.0;
constexpr double kAtanhClamp = 1.0 - 1e-12;

double clip_llr(double v);

// Check-to-variable LLR for one check node: -2 atanh( prod tanh(-V/2) )
// over the extrinsic neighbors, evaluated with prefix/suffix products in
// adjacency order. Both decoders use this exact routine so that the
// single-user reduction is bit-identical.
void check_node_messages(const std::vector<double>& incoming, std::vector<double>& outgoing);

struct BpResult {
  std::vector<std::uint8_t> bits;  // hard decisions, symbol +1 -> bit 1
  bool converged = false;
  int iterations = 0;
};

// Observer for per-iteration message traces (test instrumentation).
// Edges are indexed check-major in adjacency order.
class BpObserver {
 public:
  virtual ~BpObserver() = default;
  virtual void on_iteration(int iter, const std::vector<double>& check_msgs,
                            const std::vector<double>& var_msgs,
                            const std::vector<std::uint8_t>& hard) = 0;
};

// Flooding sum-product decoder over symbol-domain LLRs
// (positive = symbol +1 = bit 1). Schedule per iteration: all checks in
// index order, then all variables in index order; variable-to-check
// messages start at zero, so iteration 1 decides from the channel alone.
BpResult classical_bp_decode(const LdpcCode& code, const std::vector<double>& channel_llrs,
                             int max_iters, BpObserver* observer = nullptr);

}  // namespace scram

#endif
