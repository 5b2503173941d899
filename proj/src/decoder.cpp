#include "scram/decoder.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace scram {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

// Streaming log-sum-exp accumulator.
struct LseAcc {
  double max = kNegInf;
  double sum = 0.0;

  void add(double term) {
    if (term <= max) {
      sum += std::exp(term - max);
    } else {
      sum = sum * std::exp(max - term) + 1.0;
      max = term;
    }
  }
  double value() const { return max + std::log(sum); }
};

}  // namespace

DecoderState init_state(const ThreeLayerGraph& graph) {
  DecoderState st;
  st.sa_off.assign(graph.n_sa + 1, 0);
  for (int s = 0; s < graph.n_sa; ++s) {
    st.sa_off[s + 1] = st.sa_off[s] + graph.sa_adj[s].size();
  }
  st.ldpc_off.assign(graph.n_ldpc + 1, 0);
  for (int l = 0; l < graph.n_ldpc; ++l) {
    st.ldpc_off[l + 1] = st.ldpc_off[l] + graph.ldpc_adj[l].size();
  }
  st.sa_msgs.assign(st.sa_off[graph.n_sa], 0.0);
  st.var_to_sa.assign(st.sa_off[graph.n_sa], 0.0);
  st.ldpc_msgs.assign(st.ldpc_off[graph.n_ldpc], 0.0);
  st.var_to_ldpc.assign(st.ldpc_off[graph.n_ldpc], 0.0);
  st.var_sa_edge.assign(graph.n_vars, 0);
  st.var_ldpc_edges.assign(graph.n_vars, {});
  for (int s = 0; s < graph.n_sa; ++s) {
    for (std::size_t j = 0; j < graph.sa_adj[s].size(); ++j) {
      st.var_sa_edge[graph.sa_adj[s][j]] = st.sa_off[s] + j;
    }
  }
  for (int l = 0; l < graph.n_ldpc; ++l) {
    for (std::size_t j = 0; j < graph.ldpc_adj[l].size(); ++j) {
      st.var_ldpc_edges[graph.ldpc_adj[l][j]].push_back(st.ldpc_off[l] + j);
    }
  }
  st.iteration = 0;
  return st;
}

void sa_check_update(DecoderState& state, const ThreeLayerGraph& graph,
                     const FrameRealization& frame, int max_slot_degree) {
  static thread_local std::vector<double> hs, lp_plus, lp_minus, prefix, suffix;
  static thread_local std::vector<LseAcc> acc;
  for (int s = 0; s < graph.n_sa; ++s) {
    const auto& vars = graph.sa_adj[s];
    const int d = static_cast<int>(vars.size());
    if (d == 0) continue;
    const std::complex<double> y = frame.received[s];
    const double sigma2 = frame.sigma2;
    if (d == 1) {
      const int v = vars[0];
      const double h = frame.fading[graph.var_user[v]][graph.var_symbol[v]];
      state.sa_msgs[state.sa_off[s]] = clip_llr(4.0 * h * y.real() / sigma2);
      continue;
    }
    if (d > max_slot_degree || d > 24) {
      throw std::runtime_error("slot degree " + std::to_string(d) +
                               " exceeds the configured maximum of " +
                               std::to_string(std::min(max_slot_degree, 24)));
    }
    hs.resize(d);
    lp_plus.resize(d);
    lp_minus.resize(d);
    prefix.resize(d + 1);
    suffix.resize(d + 1);
    for (int t = 0; t < d; ++t) {
      const int v = vars[t];
      hs[t] = frame.fading[graph.var_user[v]][graph.var_symbol[v]];
      const double vmsg = state.var_to_sa[state.sa_off[s] + t];
      lp_plus[t] = -softplus(-vmsg);  // ln P(+1)
      lp_minus[t] = -softplus(vmsg);  // ln P(-1)
    }
    acc.assign(static_cast<std::size_t>(2) * d, LseAcc{});
    const std::uint32_t n_masks = 1u << d;
    for (std::uint32_t mask = 0; mask < n_masks; ++mask) {
      double signal = 0.0;
      for (int t = 0; t < d; ++t) signal += (mask >> t) & 1u ? hs[t] : -hs[t];
      const double dre = y.real() - signal;
      const double dim = y.imag();
      const double lik = -(dre * dre + dim * dim) / sigma2;
      prefix[0] = 0.0;
      for (int t = 0; t < d; ++t) {
        prefix[t + 1] = prefix[t] + ((mask >> t) & 1u ? lp_plus[t] : lp_minus[t]);
      }
      suffix[d] = 0.0;
      for (int t = d; t-- > 0;) {
        suffix[t] = suffix[t + 1] + ((mask >> t) & 1u ? lp_plus[t] : lp_minus[t]);
      }
      // Extrinsic prior excludes the target symbol itself, so the message
      // is exactly independent of the target's incoming LLR.
      for (int t = 0; t < d; ++t) {
        const double term = lik + (prefix[t] + suffix[t + 1]);
        acc[2 * t + ((mask >> t) & 1u)].add(term);
      }
    }
    for (int t = 0; t < d; ++t) {
      state.sa_msgs[state.sa_off[s] + t] = clip_llr(acc[2 * t + 1].value() - acc[2 * t].value());
    }
  }
}

void ldpc_check_update(DecoderState& state, const ThreeLayerGraph& graph) {
  // Same evaluation order as classical_bp_decode so the single-user
  // reduction matches bitwise.
  static thread_local std::vector<double> tanhs, prefix, suffix;
  for (int l = 0; l < graph.n_ldpc; ++l) {
    const std::size_t off = state.ldpc_off[l];
    const std::size_t d = graph.ldpc_adj[l].size();
    tanhs.resize(d);
    prefix.resize(d + 1);
    suffix.resize(d + 1);
    for (std::size_t j = 0; j < d; ++j) tanhs[j] = std::tanh(-0.5 * state.var_to_ldpc[off + j]);
    prefix[0] = 1.0;
    for (std::size_t j = 0; j < d; ++j) prefix[j + 1] = prefix[j] * tanhs[j];
    suffix[d] = 1.0;
    for (std::size_t j = d; j-- > 0;) suffix[j] = suffix[j + 1] * tanhs[j];
    for (std::size_t j = 0; j < d; ++j) {
      double prod = prefix[j] * suffix[j + 1];
      if (prod > kAtanhClamp) prod = kAtanhClamp;
      if (prod < -kAtanhClamp) prod = -kAtanhClamp;
      state.ldpc_msgs[off + j] = clip_llr(-2.0 * std::atanh(prod));
    }
  }
}

void variable_update(DecoderState& state, const ThreeLayerGraph& graph) {
  static thread_local std::vector<double> pre, suf;
  for (int v = 0; v < graph.n_vars; ++v) {
    const auto& edges = state.var_ldpc_edges[v];
    const std::size_t d = edges.size();
    pre.resize(d + 1);
    suf.resize(d + 1);
    pre[0] = 0.0;
    for (std::size_t j = 0; j < d; ++j) pre[j + 1] = pre[j] + state.ldpc_msgs[edges[j]];
    suf[d] = 0.0;
    for (std::size_t j = d; j-- > 0;) suf[j] = suf[j + 1] + state.ldpc_msgs[edges[j]];
    // To the SA check: LDPC sum only (the variable has no other SA edge).
    state.var_to_sa[state.var_sa_edge[v]] = clip_llr(pre[d]);
    const double s_msg = state.sa_msgs[state.var_sa_edge[v]];
    for (std::size_t j = 0; j < d; ++j) {
      state.var_to_ldpc[edges[j]] = clip_llr(s_msg + (pre[j] + suf[j + 1]));
    }
  }
}

std::vector<double> total_llrs(const DecoderState& state, const ThreeLayerGraph& graph) {
  std::vector<double> total(graph.n_vars);
  for (int v = 0; v < graph.n_vars; ++v) {
    double t = state.sa_msgs[state.var_sa_edge[v]];
    for (std::size_t e : state.var_ldpc_edges[v]) t += state.ldpc_msgs[e];
    total[v] = t;
  }
  return total;
}

DecodeResult decode(const ThreeLayerGraph& graph, const std::vector<const LdpcCode*>& codes,
                    const std::vector<const Encoder*>& encoders, const FrameRealization& frame,
                    const DecodeOptions& options, JointObserver* observer) {
  if (options.max_iters <= 0) throw std::invalid_argument("max_iters must be positive");
  if (static_cast<int>(codes.size()) != graph.n_users ||
      static_cast<int>(encoders.size()) != graph.n_users) {
    throw std::invalid_argument("need one code and encoder per user");
  }
  if (static_cast<int>(frame.received.size()) != graph.n_sa) {
    throw std::invalid_argument("frame does not match graph slot count");
  }
  if (!(frame.sigma2 > 0.0)) {
    throw std::invalid_argument("noise variance must be positive");
  }

  DecoderState state = init_state(graph);
  std::vector<std::uint8_t> hard(graph.n_vars, 0);
  std::vector<std::uint8_t> user_bits;
  DecodeResult result;
  result.syndrome_ok.assign(graph.n_users, false);

  for (int iter = 1; iter <= options.max_iters; ++iter) {
    sa_check_update(state, graph, frame, options.max_slot_degree);
    ldpc_check_update(state, graph);
    variable_update(state, graph);
    state.iteration = iter;
    const std::vector<double> total = total_llrs(state, graph);
    for (int v = 0; v < graph.n_vars; ++v) hard[v] = total[v] >= 0.0 ? 1 : 0;

    bool all_ok = true;
    int base = 0;
    for (int u = 0; u < graph.n_users; ++u) {
      user_bits.assign(hard.begin() + base, hard.begin() + base + codes[u]->n);
      result.syndrome_ok[u] = codes[u]->syndrome_ok(user_bits);
      all_ok = all_ok && result.syndrome_ok[u];
      base += codes[u]->n;
    }
    result.iterations = iter;
    result.all_syndromes_ok = all_ok;
    if (observer) observer->on_iteration(iter, state, hard);
    if (all_ok && options.early_stop) break;
  }

  result.codeword_bits.resize(graph.n_users);
  result.info_bits.resize(graph.n_users);
  int base = 0;
  for (int u = 0; u < graph.n_users; ++u) {
    result.codeword_bits[u].assign(hard.begin() + base, hard.begin() + base + codes[u]->n);
    result.info_bits[u] = encoders[u]->extract_info(result.codeword_bits[u]);
    base += codes[u]->n;
  }
  return result;
}

}  // namespace scram
