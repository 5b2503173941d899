#ifndef SCRAM_CYCLES_HPP
#define SCRAM_CYCLES_HPP

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "scram/graph.hpp"
#include "scram/ldpc.hpp"

namespace scram {

// Cycle machinery for bipartite check/variable graphs. Node numbering in
// cycle callbacks: 0..rows-1 are check nodes (matrix rows), rows..rows+cols-1
// are variable nodes. A cycle is a set of edges forming a closed simple
// path; each cycle is counted once regardless of direction or start.

// Exhaustive enumeration oracle; refuses graphs with more than 200 nodes.
long long count_cycles_bruteforce(const SparseBinaryMatrix& m, int length);

// Same enumeration, invoking `match` once per cycle (node list in traversal
// order) and counting only matches. Used to cross-check structural claims.
long long count_cycles_bruteforce_matching(
    const SparseBinaryMatrix& m, int length,
    const std::function<bool(const std::vector<int>&)>& match);

// Exact cycle count for L in {4, 6, 8}; anchored depth-first search with
// distance and parity pruning, scales to >= 10^4 columns.
long long count_cycles(const SparseBinaryMatrix& m, int length);

// Shortest cycle length via BFS from every node; nullopt when acyclic.
std::optional<int> girth(const SparseBinaryMatrix& m);

// Exact count of global 8-cycles: two users sharing two slots, with each
// user's two symbols joined by an LDPC check. Every cycle through an SA
// check node has this shape (one SA edge per variable), so this equals the
// number of joint 8-cycles that are not local to a single user.
long long count_global8(const ThreeLayerGraph& graph);

struct CycleProfile {
  std::optional<int> girth;
  long long c4 = 0;
  long long c6 = 0;
  long long c8 = 0;
};

struct ScramCycleReport {
  std::vector<CycleProfile> per_user;
  CycleProfile joint;
  long long global8 = 0;
  long long local_c4_sum = 0;
  long long local_c6_sum = 0;
  long long local_c8_sum = 0;
  bool c4_identity_ok = false;  // C4(joint) == sum of local C4
  bool c6_identity_ok = false;  // C6(joint) == sum of local C6
  bool c8_identity_ok = false;  // C8(joint) == sum of local C8 + global8
};

CycleProfile cycle_profile(const SparseBinaryMatrix& m);

ScramCycleReport scram_cycle_report(const std::vector<const LdpcCode*>& codes,
                                    const SlotAssignment& assignment, int total_slots);

}  // namespace scram

#endif
