#include "scram/ldpc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace scram {

SparseBinaryMatrix SparseBinaryMatrix::from_rows(int rows, int cols,
                                                 std::vector<std::vector<int>> row_lists) {
  if (static_cast<int>(row_lists.size()) != rows) {
    throw std::invalid_argument("row list count does not match row dimension");
  }
  SparseBinaryMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.row_adj = std::move(row_lists);
  m.col_adj.assign(cols, {});
  for (int r = 0; r < rows; ++r) {
    auto& list = m.row_adj[r];
    std::sort(list.begin(), list.end());
    for (std::size_t i = 0; i < list.size(); ++i) {
      const int c = list[i];
      if (c < 0 || c >= cols) throw std::out_of_range("column index out of range");
      if (i > 0 && list[i - 1] == c) throw std::invalid_argument("duplicate entry in row");
      m.col_adj[c].push_back(r);
    }
  }
  return m;
}

std::size_t SparseBinaryMatrix::edge_count() const {
  std::size_t e = 0;
  for (const auto& r : row_adj) e += r.size();
  return e;
}

Gf2Matrix SparseBinaryMatrix::to_dense() const {
  Gf2Matrix d(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c : row_adj[r]) d.set(r, c);
  }
  return d;
}

bool LdpcCode::syndrome_ok(const std::vector<std::uint8_t>& bits) const {
  for (const auto& row : h.row_adj) {
    int parity = 0;
    for (int c : row) parity ^= bits[c] & 1;
    if (parity) return false;
  }
  return true;
}

LdpcCode make_code(SparseBinaryMatrix h) {
  for (int r = 0; r < h.rows; ++r) {
    if (h.row_adj[r].empty()) {
      throw std::invalid_argument("all-zero row " + std::to_string(r + 1) + " in parity matrix");
    }
  }
  for (int c = 0; c < h.cols; ++c) {
    if (h.col_adj[c].empty()) {
      throw std::invalid_argument("all-zero column " + std::to_string(c + 1) + " in parity matrix");
    }
  }
  LdpcCode code;
  code.n = h.cols;
  code.m = h.rows;
  code.k = h.cols - gf2_rank(h.to_dense());
  code.h = std::move(h);
  return code;
}

namespace {

// Line-oriented reader with line numbers for alist diagnostics. The index
// lists are one line per node (zero padding tolerated); header and degree
// lists may wrap across lines.
class AlistReader {
 public:
  explicit AlistReader(std::istream& in) : in_(in) {}

  // Collects exactly `count` integers, spanning lines if needed.
  std::vector<long long> read_ints(std::size_t count, const char* what) {
    std::vector<long long> out;
    out.reserve(count);
    while (out.size() < count) {
      if (queue_pos_ >= queue_.size() && !refill(what)) {
        fail(std::string("unexpected end of file while reading ") + what);
      }
      while (queue_pos_ < queue_.size() && out.size() < count) out.push_back(queue_[queue_pos_++]);
    }
    return out;
  }

  // All integers on the next non-blank line (for per-node index lists).
  std::vector<long long> read_line_ints(const char* what) {
    if (queue_pos_ < queue_.size()) {
      fail(std::string("stray tokens before ") + what);
    }
    if (!refill(what)) fail(std::string("unexpected end of file while reading ") + what);
    std::vector<long long> out(queue_.begin() + queue_pos_, queue_.end());
    queue_pos_ = queue_.size();
    return out;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error("alist line " + std::to_string(line_no_) + ": " + msg);
  }

 private:
  bool refill(const char* what) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      queue_.clear();
      queue_pos_ = 0;
      std::istringstream ss(line);
      std::string tok;
      while (ss >> tok) {
        try {
          std::size_t used = 0;
          queue_.push_back(std::stoll(tok, &used));
          if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
          fail("invalid integer token '" + tok + "' while reading " + what);
        }
      }
      if (!queue_.empty()) return true;
    }
    return false;
  }

  std::istream& in_;
  std::vector<long long> queue_;
  std::size_t queue_pos_ = 0;
  int line_no_ = 0;
};

}  // namespace

LdpcCode load_alist(std::istream& in) {
  AlistReader tok(in);
  const auto dims = tok.read_ints(2, "matrix dimensions");
  const long long n = dims[0], m = dims[1];
  if (n <= 0 || m <= 0) tok.fail("dimensions must be positive");
  const auto maxima = tok.read_ints(2, "maximum degrees");
  if (maxima[0] < 0 || maxima[1] < 0) tok.fail("maximum degrees must be nonnegative");

  std::vector<int> col_deg(n), row_deg(m);
  {
    const auto degs = tok.read_ints(static_cast<std::size_t>(n), "column degrees");
    for (long long c = 0; c < n; ++c) {
      if (degs[c] < 0 || degs[c] > m) tok.fail("column degree out of range");
      col_deg[c] = static_cast<int>(degs[c]);
    }
  }
  {
    const auto degs = tok.read_ints(static_cast<std::size_t>(m), "row degrees");
    for (long long r = 0; r < m; ++r) {
      if (degs[r] < 0 || degs[r] > n) tok.fail("row degree out of range");
      row_deg[r] = static_cast<int>(degs[r]);
    }
  }

  std::vector<std::vector<int>> cols(n);
  for (long long c = 0; c < n; ++c) {
    const auto entries = tok.read_line_ints("column index lists");
    for (const long long v : entries) {
      if (v == 0) continue;  // padding
      if (v < 1 || v > m) {
        tok.fail("row index " + std::to_string(v) + " out of range in column " +
                 std::to_string(c + 1));
      }
      cols[c].push_back(static_cast<int>(v - 1));
    }
    if (static_cast<int>(cols[c].size()) != col_deg[c]) {
      tok.fail("column " + std::to_string(c + 1) + " lists " + std::to_string(cols[c].size()) +
               " entries, degree says " + std::to_string(col_deg[c]));
    }
  }
  std::vector<std::vector<int>> rows(m);
  for (long long r = 0; r < m; ++r) {
    const auto entries = tok.read_line_ints("row index lists");
    for (const long long v : entries) {
      if (v == 0) continue;
      if (v < 1 || v > n) {
        tok.fail("column index " + std::to_string(v) + " out of range in row " +
                 std::to_string(r + 1));
      }
      rows[r].push_back(static_cast<int>(v - 1));
    }
    if (static_cast<int>(rows[r].size()) != row_deg[r]) {
      tok.fail("row " + std::to_string(r + 1) + " lists " + std::to_string(rows[r].size()) +
               " entries, degree says " + std::to_string(row_deg[r]));
    }
  }

  // Cross-check: every (row, col) edge must appear in both lists.
  SparseBinaryMatrix from_cols;
  from_cols.rows = static_cast<int>(m);
  from_cols.cols = static_cast<int>(n);
  from_cols.col_adj = cols;
  for (auto& list : from_cols.col_adj) std::sort(list.begin(), list.end());

  SparseBinaryMatrix mat = SparseBinaryMatrix::from_rows(static_cast<int>(m),
                                                         static_cast<int>(n), std::move(rows));
  for (int c = 0; c < mat.cols; ++c) {
    if (mat.col_adj[c] != from_cols.col_adj[c]) {
      // Name the first edge present on one side only.
      const auto& a = from_cols.col_adj[c];
      const auto& b = mat.col_adj[c];
      for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        const bool in_a = i < a.size();
        const bool in_b = i < b.size();
        if (!in_a || !in_b || a[i] != b[i]) {
          const int row_1b = (in_a ? a[i] : b[i]) + 1;
          throw std::runtime_error(
              "alist row/column lists disagree at edge (row " + std::to_string(row_1b) +
              ", col " + std::to_string(c + 1) + ")");
        }
      }
    }
  }
  return make_code(std::move(mat));
}

LdpcCode load_alist_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open alist file: " + path);
  return load_alist(in);
}

void save_alist(const SparseBinaryMatrix& m, std::ostream& out) {
  std::size_t max_col = 0, max_row = 0;
  for (const auto& c : m.col_adj) max_col = std::max(max_col, c.size());
  for (const auto& r : m.row_adj) max_row = std::max(max_row, r.size());
  out << m.cols << ' ' << m.rows << '\n';
  out << max_col << ' ' << max_row << '\n';
  for (int c = 0; c < m.cols; ++c) out << m.col_adj[c].size() << (c + 1 < m.cols ? ' ' : '\n');
  for (int r = 0; r < m.rows; ++r) out << m.row_adj[r].size() << (r + 1 < m.rows ? ' ' : '\n');
  for (const auto& list : m.col_adj) {
    for (std::size_t j = 0; j < max_col; ++j) {
      out << (j < list.size() ? list[j] + 1 : 0) << (j + 1 < max_col ? ' ' : '\n');
    }
  }
  for (const auto& list : m.row_adj) {
    for (std::size_t j = 0; j < max_row; ++j) {
      out << (j < list.size() ? list[j] + 1 : 0) << (j + 1 < max_row ? ' ' : '\n');
    }
  }
}

void save_alist_file(const SparseBinaryMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  save_alist(m, out);
}

Encoder build_encoder(const LdpcCode& code) {
  const Gf2Rref rref = gf2_rref(code.h.to_dense());
  if (rref.rank == code.n) {
    throw std::invalid_argument("parity matrix has rank n: code space is trivial");
  }
  Encoder enc;
  enc.n_ = code.n;
  enc.k_ = code.n - rref.rank;
  enc.parity_positions_ = rref.pivot_cols;
  std::vector<bool> is_pivot(code.n, false);
  for (int c : rref.pivot_cols) is_pivot[c] = true;
  for (int c = 0; c < code.n; ++c) {
    if (!is_pivot[c]) enc.info_positions_.push_back(c);
  }
  enc.mask_words_ = (enc.k_ + 63) / 64;
  enc.parity_masks_.assign(static_cast<std::size_t>(rref.rank) * enc.mask_words_, 0);
  // RREF row r: pivot bit = XOR of the row's free-column bits.
  for (int r = 0; r < rref.rank; ++r) {
    std::uint64_t* mask = enc.parity_masks_.data() + static_cast<std::size_t>(r) * enc.mask_words_;
    for (int j = 0; j < enc.k_; ++j) {
      if (rref.mat.get(r, enc.info_positions_[j])) mask[j >> 6] |= std::uint64_t{1} << (j & 63);
    }
  }
  return enc;
}

std::vector<std::uint8_t> Encoder::encode(const std::vector<std::uint8_t>& info) const {
  if (static_cast<int>(info.size()) != k_) {
    throw std::invalid_argument("info word length mismatch: expected " + std::to_string(k_));
  }
  std::vector<std::uint64_t> packed(mask_words_, 0);
  for (int j = 0; j < k_; ++j) {
    if (info[j] & 1) packed[j >> 6] |= std::uint64_t{1} << (j & 63);
  }
  std::vector<std::uint8_t> cw(n_, 0);
  for (int j = 0; j < k_; ++j) cw[info_positions_[j]] = info[j] & 1;
  for (std::size_t r = 0; r < parity_positions_.size(); ++r) {
    const std::uint64_t* mask = parity_masks_.data() + r * mask_words_;
    int parity = 0;
    for (int w = 0; w < mask_words_; ++w) parity ^= __builtin_parityll(mask[w] & packed[w]);
    cw[parity_positions_[r]] = static_cast<std::uint8_t>(parity);
  }
  return cw;
}

std::vector<std::uint8_t> Encoder::extract_info(const std::vector<std::uint8_t>& codeword) const {
  if (static_cast<int>(codeword.size()) != n_) {
    throw std::invalid_argument("codeword length mismatch");
  }
  std::vector<std::uint8_t> info(k_);
  for (int j = 0; j < k_; ++j) info[j] = codeword[info_positions_[j]] & 1;
  return info;
}

double clip_llr(double v) {
  if (v > kLlrClip) return kLlrClip;
  if (v < -kLlrClip) return -kLlrClip;
  return v;
}

void check_node_messages(const std::vector<double>& incoming, std::vector<double>& outgoing) {
  // A degree-1 check falls out of the general path: its empty extrinsic
  // product is 1, so the message saturates toward symbol -1 (bit 0).
  const std::size_t d = incoming.size();
  outgoing.resize(d);
  static thread_local std::vector<double> tanhs, prefix, suffix;
  tanhs.resize(d);
  prefix.resize(d + 1);
  suffix.resize(d + 1);
  for (std::size_t i = 0; i < d; ++i) tanhs[i] = std::tanh(-0.5 * incoming[i]);
  prefix[0] = 1.0;
  for (std::size_t i = 0; i < d; ++i) prefix[i + 1] = prefix[i] * tanhs[i];
  suffix[d] = 1.0;
  for (std::size_t i = d; i-- > 0;) suffix[i] = suffix[i + 1] * tanhs[i];
  for (std::size_t i = 0; i < d; ++i) {
    double prod = prefix[i] * suffix[i + 1];
    if (prod > kAtanhClamp) prod = kAtanhClamp;
    if (prod < -kAtanhClamp) prod = -kAtanhClamp;
    outgoing[i] = clip_llr(-2.0 * std::atanh(prod));
  }
}

BpResult classical_bp_decode(const LdpcCode& code, const std::vector<double>& channel_llrs,
                             int max_iters, BpObserver* observer) {
  if (static_cast<int>(channel_llrs.size()) != code.n) {
    throw std::invalid_argument("channel LLR length mismatch: expected " + std::to_string(code.n));
  }
  if (max_iters <= 0) throw std::invalid_argument("max_iters must be positive");

  const auto& h = code.h;
  std::vector<std::size_t> check_off(h.rows + 1, 0);
  for (int r = 0; r < h.rows; ++r) check_off[r + 1] = check_off[r] + h.row_adj[r].size();
  const std::size_t n_edges = check_off[h.rows];

  // var_edges[v] lists this variable's edge ids in check-index order.
  std::vector<std::vector<std::size_t>> var_edges(h.cols);
  for (int r = 0; r < h.rows; ++r) {
    for (std::size_t j = 0; j < h.row_adj[r].size(); ++j) {
      var_edges[h.row_adj[r][j]].push_back(check_off[r] + j);
    }
  }

  std::vector<double> ch(code.n);
  for (int v = 0; v < code.n; ++v) ch[v] = clip_llr(channel_llrs[v]);

  std::vector<double> check_msgs(n_edges, 0.0);  // L, check -> variable
  std::vector<double> var_msgs(n_edges, 0.0);    // V, variable -> check
  std::vector<double> scratch_in, scratch_out;
  std::vector<std::uint8_t> hard(code.n, 0);

  BpResult result;
  for (int iter = 1; iter <= max_iters; ++iter) {
    // Check phase.
    for (int r = 0; r < h.rows; ++r) {
      const std::size_t off = check_off[r];
      const std::size_t d = h.row_adj[r].size();
      scratch_in.assign(var_msgs.begin() + off, var_msgs.begin() + off + d);
      check_node_messages(scratch_in, scratch_out);
      std::copy(scratch_out.begin(), scratch_out.end(), check_msgs.begin() + off);
    }
    // Variable phase: extrinsic sums by prefix/suffix in edge order.
    for (int v = 0; v < code.n; ++v) {
      const auto& edges = var_edges[v];
      const std::size_t d = edges.size();
      double total = ch[v];
      for (std::size_t j = 0; j < d; ++j) total += check_msgs[edges[j]];
      static thread_local std::vector<double> pre, suf;
      pre.resize(d + 1);
      suf.resize(d + 1);
      pre[0] = 0.0;
      for (std::size_t j = 0; j < d; ++j) pre[j + 1] = pre[j] + check_msgs[edges[j]];
      suf[d] = 0.0;
      for (std::size_t j = d; j-- > 0;) suf[j] = suf[j + 1] + check_msgs[edges[j]];
      for (std::size_t j = 0; j < d; ++j) {
        var_msgs[edges[j]] = clip_llr(ch[v] + (pre[j] + suf[j + 1]));
      }
      hard[v] = total >= 0.0 ? 1 : 0;  // symbol +1 <-> bit 1, ties to +1
    }
    result.iterations = iter;
    if (observer) observer->on_iteration(iter, check_msgs, var_msgs, hard);
    if (code.syndrome_ok(hard)) {
      result.converged = true;
      break;
    }
  }
  result.bits = hard;
  return result;
}

}  // namespace scram
