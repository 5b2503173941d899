#include "scram/cycles.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace scram {

namespace {

// Unified node adjacency: checks 0..rows-1, variables rows..rows+cols-1.
std::vector<std::vector<int>> node_adjacency(const SparseBinaryMatrix& m) {
  std::vector<std::vector<int>> adj(m.rows + m.cols);
  for (int r = 0; r < m.rows; ++r) {
    for (int c : m.row_adj[r]) {
      adj[r].push_back(m.rows + c);
      adj[m.rows + c].push_back(r);
    }
  }
  return adj;
}

struct BruteForce {
  const std::vector<std::vector<int>>& adj;
  int length;
  const std::function<bool(const std::vector<int>&)>* match;
  long long walks = 0;
  std::vector<char> on_path;
  std::vector<int> path;
  int anchor = 0;

  void dfs(int u, int depth) {
    for (int w : adj[u]) {
      if (depth + 1 == length) {
        if (w == anchor) {
          if (match == nullptr || (*match)(path)) ++walks;
        }
        continue;
      }
      if (w <= anchor || on_path[w]) continue;
      on_path[w] = 1;
      path.push_back(w);
      dfs(w, depth + 1);
      path.pop_back();
      on_path[w] = 0;
    }
  }
};

}  // namespace

long long count_cycles_bruteforce_matching(
    const SparseBinaryMatrix& m, int length,
    const std::function<bool(const std::vector<int>&)>& match) {
  if (length < 4 || length % 2 != 0) {
    throw std::invalid_argument("cycle length must be even and >= 4");
  }
  const int n_nodes = m.rows + m.cols;
  if (n_nodes > 200) {
    throw std::invalid_argument("brute-force cycle counting is limited to 200 nodes");
  }
  const auto adj = node_adjacency(m);
  BruteForce bf{adj, length, match ? &match : nullptr};
  bf.on_path.assign(n_nodes, 0);
  for (int a = 0; a < n_nodes; ++a) {
    bf.anchor = a;
    bf.path.assign(1, a);
    bf.dfs(a, 0);
  }
  // Every cycle is met at its minimum node, once per direction.
  return bf.walks / 2;
}

long long count_cycles_bruteforce(const SparseBinaryMatrix& m, int length) {
  return count_cycles_bruteforce_matching(m, length, nullptr);
}

namespace {

// Anchored counter: each cycle is counted at its minimum node, in the
// direction whose first step is the smaller neighbor. Distance-to-anchor
// (restricted to nodes above the anchor) and bipartite parity prune the
// search.
class CycleCounter {
 public:
  CycleCounter(const SparseBinaryMatrix& m, int length)
      : length_(length), n_rows_(m.rows), adj_(node_adjacency(m)) {
    const int n = static_cast<int>(adj_.size());
    dist_.assign(n, 0);
    dist_stamp_.assign(n, -1);
    on_path_.assign(n, 0);
  }

  long long run() {
    long long total = 0;
    const int n = static_cast<int>(adj_.size());
    for (int a = 0; a < n; ++a) {
      if (adj_[a].size() < 2) continue;
      anchor_ = a;
      bfs_ball(a);
      // A length-L cycle has at least L-1 of its nodes within distance 3.
      if (ball_size_ < length_ - 1) continue;
      total += count_from_anchor();
    }
    return total;
  }

 private:
  int restricted_dist(int u) const { return dist_stamp_[u] == anchor_ ? dist_[u] : kFar; }

  // BFS to depth 3 over nodes > anchor; dist 1..3, absent = far.
  void bfs_ball(int a) {
    queue_.clear();
    queue_.push_back(a);
    dist_[a] = 0;
    dist_stamp_[a] = a;
    ball_size_ = 1;
    std::size_t head = 0;
    while (head < queue_.size()) {
      const int u = queue_[head++];
      if (dist_[u] == 3) break;
      for (int w : adj_[u]) {
        if (w <= a || dist_stamp_[w] == a) continue;
        dist_stamp_[w] = a;
        dist_[w] = dist_[u] + 1;
        ++ball_size_;
        queue_.push_back(w);
      }
    }
  }

  long long count_from_anchor() {
    long long found = 0;
    path_.assign(1, anchor_);
    on_path_[anchor_] = 1;
    found = dfs(anchor_, 0);
    on_path_[anchor_] = 0;
    return found;
  }

  long long dfs(int u, int depth) {
    long long found = 0;
    const int remaining = length_ - depth - 1;  // edges left after stepping
    for (int w : adj_[u]) {
      if (w <= anchor_ || on_path_[w]) continue;
      if (remaining == 0) continue;  // closing handled below via dist==1
      if (remaining == 1) {
        // w must be the last node: adjacent to anchor, canonical direction.
        if (restricted_dist(w) == 1 && path_[1] < w) ++found;
        continue;
      }
      // Outside the depth-3 ball only means distance >= 4 (an 8-cycle's
      // antipode sits there), so the prune must respect that bound.
      const int d = restricted_dist(w);
      const int bound = d == kFar ? 4 : d;
      if (bound > remaining) continue;
      on_path_[w] = 1;
      path_.push_back(w);
      found += dfs(w, depth + 1);
      path_.pop_back();
      on_path_[w] = 0;
    }
    return found;
  }

  static constexpr int kFar = 1 << 20;
  int length_;
  int n_rows_;
  std::vector<std::vector<int>> adj_;
  int anchor_ = 0;
  std::vector<int> dist_;
  std::vector<int> dist_stamp_;
  std::vector<char> on_path_;
  std::vector<int> path_;
  std::vector<int> queue_;
  int ball_size_ = 0;
};

}  // namespace

long long count_cycles(const SparseBinaryMatrix& m, int length) {
  if (length != 4 && length != 6 && length != 8) {
    throw std::invalid_argument("supported cycle lengths are 4, 6 and 8");
  }
  return CycleCounter(m, length).run();
}

std::optional<int> girth(const SparseBinaryMatrix& m) {
  constexpr int kNoCycle = 1 << 29;
  const auto adj = node_adjacency(m);
  const int n = static_cast<int>(adj.size());
  // Forest pre-check: per component, edges == nodes - 1 means no cycle.
  {
    std::vector<int> comp(n, -1);
    long long edges2 = 0;
    bool has_cycle = false;
    std::vector<int> stack;
    for (int s = 0; s < n && !has_cycle; ++s) {
      if (comp[s] >= 0) continue;
      long long nodes = 0;
      edges2 = 0;
      stack.assign(1, s);
      comp[s] = s;
      while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        ++nodes;
        edges2 += static_cast<long long>(adj[u].size());
        for (int w : adj[u]) {
          if (comp[w] < 0) {
            comp[w] = s;
            stack.push_back(w);
          }
        }
      }
      if (edges2 / 2 > nodes - 1) has_cycle = true;
    }
    if (!has_cycle) return std::nullopt;
  }

  int best = kNoCycle;
  std::vector<int> dist(n, -1), parent(n, -1), version(n, -1);
  std::deque<int> queue;
  for (int root = 0; root < n; ++root) {
    if (best == 4) break;  // bipartite minimum
    queue.clear();
    queue.push_back(root);
    dist[root] = 0;
    parent[root] = -1;
    version[root] = root;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      if (2 * dist[u] >= best) break;
      for (int w : adj[u]) {
        if (w == parent[u]) continue;
        if (version[w] != root) {
          version[w] = root;
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  if (best == kNoCycle) return std::nullopt;
  return best;
}

namespace {

// Per-user table of "checks joining variable pair (i, j)", i < j in
// within-user symbol indices.
std::unordered_map<std::uint64_t, int> pair_check_counts(const ThreeLayerGraph& g, int user,
                                                         int var_base) {
  std::size_t pair_budget = 0;
  for (int l = g.user_ldpc_offset[user]; l < g.user_ldpc_offset[user + 1]; ++l) {
    const std::size_t d = g.ldpc_adj[l].size();
    pair_budget += d * (d - 1) / 2;
  }
  std::unordered_map<std::uint64_t, int> counts;
  counts.reserve(pair_budget);
  for (int l = g.user_ldpc_offset[user]; l < g.user_ldpc_offset[user + 1]; ++l) {
    const auto& vars = g.ldpc_adj[l];
    for (std::size_t x = 0; x < vars.size(); ++x) {
      for (std::size_t y = x + 1; y < vars.size(); ++y) {
        const std::uint64_t key =
            (static_cast<std::uint64_t>(vars[x] - var_base) << 32) |
            static_cast<std::uint32_t>(vars[y] - var_base);
        ++counts[key];
      }
    }
  }
  return counts;
}

inline int lookup_pair(const std::unordered_map<std::uint64_t, int>& counts, int i, int j) {
  if (i > j) std::swap(i, j);
  const std::uint64_t key = (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint32_t>(j);
  const auto it = counts.find(key);
  return it == counts.end() ? 0 : it->second;
}

}  // namespace

long long count_global8(const ThreeLayerGraph& g) {
  const int n_users = g.n_users;
  std::vector<int> var_base(n_users + 1, 0);
  for (int v = 0; v < g.n_vars; ++v) {
    // var ids are contiguous per user in user order
    var_base[g.var_user[v] + 1] = v + 1;
  }
  std::vector<std::unordered_map<std::uint64_t, int>> tables;
  tables.reserve(n_users);
  for (int u = 0; u < n_users; ++u) tables.push_back(pair_check_counts(g, u, var_base[u]));

  // slot -> symbol index per user, built once per user.
  std::vector<std::vector<int>> slot_symbol(n_users, std::vector<int>(g.n_sa, -1));
  for (int v = 0; v < g.n_vars; ++v) {
    slot_symbol[g.var_user[v]][g.var_sa[v]] = g.var_symbol[v];
  }

  long long total = 0;
  std::vector<std::pair<int, int>> shared;  // (symbol of a, symbol of b)
  for (int a = 0; a < n_users; ++a) {
    for (int b = a + 1; b < n_users; ++b) {
      shared.clear();
      for (int s = 0; s < g.n_sa; ++s) {
        const int ia = slot_symbol[a][s];
        const int ib = slot_symbol[b][s];
        if (ia >= 0 && ib >= 0) shared.emplace_back(ia, ib);
      }
      for (std::size_t x = 0; x < shared.size(); ++x) {
        for (std::size_t y = x + 1; y < shared.size(); ++y) {
          const int ca = lookup_pair(tables[a], shared[x].first, shared[y].first);
          if (ca == 0) continue;
          const int cb = lookup_pair(tables[b], shared[x].second, shared[y].second);
          total += static_cast<long long>(ca) * cb;
        }
      }
    }
  }
  return total;
}

CycleProfile cycle_profile(const SparseBinaryMatrix& m) {
  CycleProfile p;
  p.girth = girth(m);
  p.c4 = count_cycles(m, 4);
  p.c6 = count_cycles(m, 6);
  p.c8 = count_cycles(m, 8);
  return p;
}

ScramCycleReport scram_cycle_report(const std::vector<const LdpcCode*>& codes,
                                    const SlotAssignment& assignment, int total_slots) {
  ScramCycleReport report;
  std::unordered_map<const LdpcCode*, CycleProfile> cache;
  for (const LdpcCode* code : codes) {
    if (!cache.count(code)) cache[code] = cycle_profile(code->h);
    report.per_user.push_back(cache[code]);
    report.local_c4_sum += cache[code].c4;
    report.local_c6_sum += cache[code].c6;
    report.local_c8_sum += cache[code].c8;
  }
  const ThreeLayerGraph graph = build_graph(codes, assignment, total_slots);
  report.joint = cycle_profile(to_joint_matrix(graph).mat);
  report.global8 = count_global8(graph);
  report.c4_identity_ok = report.joint.c4 == report.local_c4_sum;
  report.c6_identity_ok = report.joint.c6 == report.local_c6_sum;
  report.c8_identity_ok = report.joint.c8 == report.local_c8_sum + report.global8;
  return report;
}

}  // namespace scram
