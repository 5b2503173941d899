#include "scram/graph.hpp"

#include <stdexcept>
#include <string>

namespace scram {

ThreeLayerGraph build_graph(const std::vector<const LdpcCode*>& codes,
                            const SlotAssignment& assignment, int total_slots) {
  const int n_users = assignment.n_users();
  if (static_cast<int>(codes.size()) != n_users) {
    throw std::invalid_argument("need one code per user");
  }
  ThreeLayerGraph g;
  g.n_users = n_users;
  g.n_sa = total_slots;
  g.symbols_per_user = n_users > 0 ? static_cast<int>(assignment.slot_of[0].size()) : 0;

  int n_vars = 0;
  int n_ldpc = 0;
  for (int u = 0; u < n_users; ++u) {
    const int nu = static_cast<int>(assignment.slot_of[u].size());
    if (codes[u]->n != nu) {
      throw std::invalid_argument("code length of user " + std::to_string(u + 1) +
                                  " does not match its assignment row");
    }
    if (nu != g.symbols_per_user) {
      throw std::invalid_argument("all users must transmit the same number of symbols");
    }
    n_vars += nu;
    n_ldpc += codes[u]->m;
  }
  g.n_vars = n_vars;
  g.n_ldpc = n_ldpc;
  g.sa_adj.assign(total_slots, {});
  g.ldpc_adj.assign(n_ldpc, {});
  g.var_sa.assign(n_vars, -1);
  g.var_ldpc.assign(n_vars, {});
  g.var_user.assign(n_vars, 0);
  g.var_symbol.assign(n_vars, 0);
  g.ldpc_user.assign(n_ldpc, 0);
  g.user_ldpc_offset.assign(n_users + 1, 0);

  int var_base = 0;
  int check_base = 0;
  for (int u = 0; u < n_users; ++u) {
    const auto& slots = assignment.slot_of[u];
    const LdpcCode& code = *codes[u];
    g.user_ldpc_offset[u] = check_base;
    for (int i = 0; i < static_cast<int>(slots.size()); ++i) {
      const int s = slots[i];
      if (s < 1 || s > total_slots) {
        throw std::invalid_argument("slot index out of range for user " + std::to_string(u + 1));
      }
      const int v = var_base + i;
      g.sa_adj[s - 1].push_back(v);
      g.var_sa[v] = s - 1;
      g.var_user[v] = u;
      g.var_symbol[v] = i;
    }
    for (int r = 0; r < code.m; ++r) {
      const int l = check_base + r;
      g.ldpc_user[l] = u;
      for (int c : code.h.row_adj[r]) {
        g.ldpc_adj[l].push_back(var_base + c);
        g.var_ldpc[var_base + c].push_back(l);
      }
    }
    var_base += code.n;
    check_base += code.m;
  }
  g.user_ldpc_offset[n_users] = check_base;
  // Adjacency built in ascending order already: slots iterate users in
  // order, and within a user variable ids ascend.
  return g;
}

JointMatrix to_joint_matrix(const ThreeLayerGraph& graph) {
  std::vector<std::vector<int>> rows;
  rows.reserve(graph.n_sa + graph.n_ldpc);
  for (const auto& adj : graph.sa_adj) rows.push_back(adj);
  for (const auto& adj : graph.ldpc_adj) rows.push_back(adj);
  JointMatrix jm;
  jm.n_sa_rows = graph.n_sa;
  jm.mat = SparseBinaryMatrix::from_rows(graph.n_sa + graph.n_ldpc, graph.n_vars,
                                         std::move(rows));
  return jm;
}

}  // namespace scram
