#ifndef SCRAM_DECODER_HPP
#define SCRAM_DECODER_HPP

#include <cstdint>
#include <vector>

#include "scram/channel.hpp"
#include "scram/graph.hpp"
#include "scram/ldpc.hpp"

namespace scram {

struct DecodeOptions {
  int max_iters = 50;
  bool early_stop = true;
  int max_slot_degree = 12;  // SA update enumerates 2^d hypotheses
};

// Message state of the joint decoder. SA-side messages are indexed by the
// SA edge CSR (check-major, adjacency order), LDPC-side messages by the
// LDPC edge CSR. Everything is clipped to +-kLlrClip.
struct DecoderState {
  std::vector<std::size_t> sa_off;    // size n_sa + 1
  std::vector<std::size_t> ldpc_off;  // size n_ldpc + 1
  std::vector<double> sa_msgs;        // S, SA check -> variable
  std::vector<double> ldpc_msgs;      // L, LDPC check -> variable
  std::vector<double> var_to_sa;      // V(S), variable -> its SA check
  std::vector<double> var_to_ldpc;    // V(L), variable -> LDPC check
  std::vector<std::size_t> var_sa_edge;              // variable -> SA edge id
  std::vector<std::vector<std::size_t>> var_ldpc_edges;  // variable -> LDPC edge ids
  int iteration = 0;
};

DecoderState init_state(const ThreeLayerGraph& graph);

// Eq-for-eq SA check update: per slot, the 2^d symbol hypotheses are scored
// by the fading-aware Gaussian likelihood and the extrinsic product of
// per-symbol priors sigma(+-V); accumulation is streaming log-sum-exp.
// Degree-1 slots short-circuit to 4*h*Re(y)/sigma^2.
void sa_check_update(DecoderState& state, const ThreeLayerGraph& graph,
                     const FrameRealization& frame, int max_slot_degree);

// Classical tanh-rule update on the LDPC layer (same evaluation order as
// the standalone decoder in ldpc.hpp, so the single-user reduction is
// bit-identical).
void ldpc_check_update(DecoderState& state, const ThreeLayerGraph& graph);

// Extrinsic LLR sums back to both check layers.
void variable_update(DecoderState& state, const ThreeLayerGraph& graph);

// Total per-variable LLR (SA message plus all LDPC messages).
std::vector<double> total_llrs(const DecoderState& state, const ThreeLayerGraph& graph);

struct DecodeResult {
  std::vector<std::vector<std::uint8_t>> info_bits;      // per user
  std::vector<std::vector<std::uint8_t>> codeword_bits;  // per user hard decisions
  std::vector<bool> syndrome_ok;                         // per user
  bool all_syndromes_ok = false;
  int iterations = 0;
};

class JointObserver {
 public:
  virtual ~JointObserver() = default;
  virtual void on_iteration(int iter, const DecoderState& state,
                            const std::vector<std::uint8_t>& hard) = 0;
};

// Full joint decode: per iteration all SA checks, then all LDPC checks,
// then all variables, in index order; first iteration sees zero-valued
// variable messages (uniform priors). Hard decisions and per-user syndrome
// tests follow each iteration; early stop once every user checks out.
DecodeResult decode(const ThreeLayerGraph& graph, const std::vector<const LdpcCode*>& codes,
                    const std::vector<const Encoder*>& encoders, const FrameRealization& frame,
                    const DecodeOptions& options = {}, JointObserver* observer = nullptr);

}  // namespace scram

#endif
