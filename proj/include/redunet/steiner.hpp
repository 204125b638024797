#pragma once

#include <vector>

#include "redunet/model.hpp"

namespace redunet {

struct SteinerTree {
  std::vector<int> edge_ids;  // acyclic, connects all required nodes
  Rat edge_cost;              // sum of c_e over edge_ids
};

// Metric-closure MST heuristic: complete graph on the required nodes under
// shortest-path distances, MST, expansion to shortest paths, cycle breaking,
// pruning of non-required leaves. Cost at most twice the optimum.
SteinerTree approx_steiner(const WeightedGraph& g, const std::vector<int>& required);

// Exact minimum Steiner tree by enumerating subsets of optional nodes and
// taking the cheapest induced MST. Refuses graphs above node_cap.
SteinerTree exact_steiner(const WeightedGraph& g, const std::vector<int>& required,
                          int node_cap = 12);

// Test/diagnostic helpers.
bool steiner_tree_is_valid(const WeightedGraph& g, const SteinerTree& tree,
                           const std::vector<int>& required);

}  // namespace redunet
