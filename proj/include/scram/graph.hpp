#ifndef SCRAM_GRAPH_HPP
#define SCRAM_GRAPH_HPP

#include <vector>

#include "scram/access.hpp"
#include "scram/ldpc.hpp"

namespace scram {

// Three-layer Tanner graph: variable nodes (one per transmitted symbol)
// flanked by SA check nodes (slots) and per-user LDPC check nodes.
// Variable i of user u (both 1-based) is node (u-1)*n + i - 1; LDPC checks
// are stacked user by user. All adjacency lists are sorted.
struct ThreeLayerGraph {
  int n_users = 0;
  int symbols_per_user = 0;
  int n_vars = 0;
  int n_sa = 0;
  int n_ldpc = 0;

  std::vector<std::vector<int>> sa_adj;    // [sa check] -> variable ids
  std::vector<std::vector<int>> ldpc_adj;  // [ldpc check] -> variable ids
  std::vector<int> var_sa;                 // variable -> its single SA check
  std::vector<std::vector<int>> var_ldpc;  // variable -> ldpc checks
  std::vector<int> var_user;               // variable -> owner user (0-based)
  std::vector<int> var_symbol;             // variable -> within-user index (0-based)
  std::vector<int> ldpc_user;              // ldpc check -> owner user (0-based)
  std::vector<int> user_ldpc_offset;       // first ldpc check of each user, plus total
};

ThreeLayerGraph build_graph(const std::vector<const LdpcCode*>& codes,
                            const SlotAssignment& assignment, int total_slots);

// Flattened (N_s + N_l) x N_v binary matrix; SA checks first.
struct JointMatrix {
  SparseBinaryMatrix mat;
  int n_sa_rows = 0;
};

JointMatrix to_joint_matrix(const ThreeLayerGraph& graph);

}  // namespace scram

#endif
