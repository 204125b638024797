#include "redunet/steiner.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace redunet {

namespace {

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

std::vector<int> dedup_sorted(std::vector<int> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

// Minimum spanning forest of the given edge subset, Kruskal with
// (cost, edge id) order.
std::vector<int> spanning_forest(const WeightedGraph& g, std::vector<int> edge_ids) {
  std::sort(edge_ids.begin(), edge_ids.end(), [&](int a, int b) {
    if (g.edges[a].cost != g.edges[b].cost) return g.edges[a].cost < g.edges[b].cost;
    return a < b;
  });
  DisjointSet ds(g.node_count);
  std::vector<int> kept;
  for (int e : edge_ids) {
    if (ds.unite(g.edges[e].u, g.edges[e].v)) kept.push_back(e);
  }
  return kept;
}

// Iteratively removes leaves that are not required.
std::vector<int> prune_leaves(const WeightedGraph& g, std::vector<int> edge_ids,
                              const std::vector<int>& required) {
  std::vector<char> is_required(g.node_count, 0);
  for (int v : required) is_required[v] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> degree(g.node_count, 0);
    for (int e : edge_ids) {
      ++degree[g.edges[e].u];
      ++degree[g.edges[e].v];
    }
    std::vector<int> kept;
    for (int e : edge_ids) {
      int u = g.edges[e].u, v = g.edges[e].v;
      if ((degree[u] == 1 && !is_required[u]) || (degree[v] == 1 && !is_required[v])) {
        changed = true;
      } else {
        kept.push_back(e);
      }
    }
    edge_ids = std::move(kept);
  }
  return edge_ids;
}

Rat total_cost(const WeightedGraph& g, const std::vector<int>& edge_ids) {
  Rat c = 0;
  for (int e : edge_ids) c += g.edges[e].cost;
  return c;
}

}  // namespace

SteinerTree approx_steiner(const WeightedGraph& g, const std::vector<int>& required_in) {
  std::vector<int> required = dedup_sorted(required_in);
  if (required.size() <= 1) return {{}, Rat(0)};

  const int k = static_cast<int>(required.size());
  std::vector<DijkstraResult> sssp;
  sssp.reserve(k);
  for (int r : required) {
    sssp.push_back(dijkstra(g, r));
    for (int other : required) {
      if (!sssp.back().reached[other]) {
        throw ValidationError("required nodes " + std::to_string(r) + " and " +
                              std::to_string(other) + " are disconnected");
      }
    }
  }

  // MST of the metric closure over the required nodes.
  struct ClosureEdge {
    int i, j;  // indices into `required`
  };
  std::vector<ClosureEdge> closure;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) closure.push_back({i, j});
  }
  std::sort(closure.begin(), closure.end(), [&](const ClosureEdge& a, const ClosureEdge& b) {
    const Rat& da = sssp[a.i].dist[required[a.j]];
    const Rat& db = sssp[b.i].dist[required[b.j]];
    if (da != db) return da < db;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  DisjointSet ds(k);
  std::set<int> edge_union;
  int taken = 0;
  for (const ClosureEdge& ce : closure) {
    if (!ds.unite(ce.i, ce.j)) continue;
    // Expand to the underlying shortest path from required[ce.i].
    int v = required[ce.j];
    while (sssp[ce.i].parent_node[v] != -1) {
      edge_union.insert(sssp[ce.i].parent_edge[v]);
      v = sssp[ce.i].parent_node[v];
    }
    if (++taken == k - 1) break;
  }

  std::vector<int> edges(edge_union.begin(), edge_union.end());
  edges = spanning_forest(g, edges);  // break any cycles, dropping heavy edges
  edges = prune_leaves(g, edges, required);
  return {edges, total_cost(g, edges)};
}

SteinerTree exact_steiner(const WeightedGraph& g, const std::vector<int>& required_in,
                          int node_cap) {
  if (g.node_count > node_cap) {
    throw CapExceededError("exact Steiner refused: " + std::to_string(g.node_count) +
                           " nodes exceeds cap " + std::to_string(node_cap));
  }
  std::vector<int> required = dedup_sorted(required_in);
  if (required.size() <= 1) return {{}, Rat(0)};

  std::vector<char> is_required(g.node_count, 0);
  for (int v : required) is_required[v] = 1;
  std::vector<int> optional;
  for (int v = 0; v < g.node_count; ++v) {
    if (!is_required[v]) optional.push_back(v);
  }

  bool found = false;
  SteinerTree best;
  std::vector<char> in_use(g.node_count, 0);
  for (uint32_t mask = 0; mask < (uint32_t{1} << optional.size()); ++mask) {
    std::fill(in_use.begin(), in_use.end(), 0);
    for (int v : required) in_use[v] = 1;
    int node_total = static_cast<int>(required.size());
    for (size_t i = 0; i < optional.size(); ++i) {
      if (mask >> i & 1) {
        in_use[optional[i]] = 1;
        ++node_total;
      }
    }
    std::vector<int> edge_ids;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
      if (in_use[g.edges[e].u] && in_use[g.edges[e].v]) edge_ids.push_back(e);
    }
    auto forest = spanning_forest(g, edge_ids);
    if (static_cast<int>(forest.size()) != node_total - 1) continue;  // disconnected choice
    forest = prune_leaves(g, forest, required);
    Rat cost = total_cost(g, forest);
    if (!found || cost < best.edge_cost) {
      found = true;
      best = {forest, cost};
    }
  }
  if (!found) throw ValidationError("required nodes are disconnected");
  return best;
}

bool steiner_tree_is_valid(const WeightedGraph& g, const SteinerTree& tree,
                           const std::vector<int>& required_in) {
  std::vector<int> required = dedup_sorted(required_in);
  std::set<int> nodes;
  DisjointSet ds(g.node_count);
  for (int e : tree.edge_ids) {
    nodes.insert(g.edges[e].u);
    nodes.insert(g.edges[e].v);
    if (!ds.unite(g.edges[e].u, g.edges[e].v)) return false;  // cycle
  }
  if (required.size() <= 1) return tree.edge_ids.empty();
  for (int v : required) {
    if (!nodes.count(v)) return false;
  }
  // |edges| = |nodes| - 1 and acyclic => connected tree, but the required
  // nodes must all share one component.
  for (int v : required) {
    if (ds.find(v) != ds.find(required[0])) return false;
  }
  return total_cost(g, tree.edge_ids) == tree.edge_cost;
}

}  // namespace redunet
