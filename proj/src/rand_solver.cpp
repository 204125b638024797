#include "redunet/rand_solver.hpp"

#include <algorithm>
#include <map>

namespace redunet {

TerminalRelations terminal_relations(const DemandTree& tree) {
  const int nt = static_cast<int>(tree.terminal_node.size());
  TerminalRelations rel;
  rel.anc.assign(nt, {});
  rel.peer.assign(nt, {});
  for (int t = 0; t < nt; ++t) {
    int node = tree.terminal_node[t];
    rel.peer[t] = tree.nodes[node].terminals;
    for (int v = tree.nodes[node].parent; v != -1; v = tree.nodes[v].parent) {
      for (int u : tree.nodes[v].terminals) rel.anc[t].push_back(u);
    }
    std::sort(rel.anc[t].begin(), rel.anc[t].end());
  }
  return rel;
}

namespace {

DemandTree checked_tree(const RandInstance& inst) {
  inst.validate_basic();
  DemandTree tree = build_tree(inst);
  if (!satisfies_halving(tree)) {
    throw ValidationError(
        "instance does not satisfy the parent/child weight halving property; run preprocess "
        "before solving");
  }
  return tree;
}

SteinerTree build_steiner(const WeightedGraph& g, const std::vector<int>& required,
                          const RandSolverConfig& config) {
  if (config.steiner == SteinerKind::exact_capped) {
    return exact_steiner(g, required, config.steiner_cap);
  }
  return approx_steiner(g, required);
}

// Unique tree paths to the source, for every terminal of the node.
void assign_tree_paths(const WeightedGraph& g, const SteinerTree& st,
                       const std::vector<int>& terminal_ids, const RandInstance& inst,
                       RandSolution& sol) {
  std::vector<int> parent(g.node_count, -1);
  std::vector<char> seen(g.node_count, 0);
  std::vector<std::vector<int>> nbr(g.node_count);
  for (int e : st.edge_ids) {
    nbr[g.edges[e].u].push_back(g.edges[e].v);
    nbr[g.edges[e].v].push_back(g.edges[e].u);
  }
  std::vector<int> stack = {g.source};
  seen[g.source] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : nbr[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        parent[v] = u;
        stack.push_back(v);
      }
    }
  }
  for (int t : terminal_ids) {
    int node = inst.terminals[t].node;
    if (!seen[node]) {
      throw ValidationError("terminal '" + inst.terminals[t].id +
                            "' missing from its Steiner tree");
    }
    std::vector<int> path = {node};
    while (path.back() != g.source) path.push_back(parent[path.back()]);
    sol.paths[t] = std::move(path);
  }
}

// Removes loops introduced by concatenating connector paths: keep the first
// occurrence of every node and cut the detour in between.
std::vector<int> erase_loops(const std::vector<int>& path) {
  std::vector<int> out;
  std::map<int, size_t> position;
  for (int node : path) {
    auto it = position.find(node);
    if (it != position.end()) {
      while (out.size() > it->second + 1) {
        position.erase(out.back());
        out.pop_back();
      }
    } else {
      position[node] = out.size();
      out.push_back(node);
    }
  }
  return out;
}

}  // namespace

RandSolution solve_rand(const RandInstance& inst, const RandSolverConfig& config) {
  DemandTree tree = checked_tree(inst);
  RandSolution sol;
  sol.paths.assign(inst.terminals.size(), {});

  // Preorder over the tree; children ascend by node id. Nodes without
  // terminals get no Steiner tree.
  std::vector<int> order = {0};
  for (size_t i = 0; i < order.size(); ++i) {
    for (int c : tree.nodes[order[i]].children) order.push_back(c);
  }
  for (int v : order) {
    if (tree.nodes[v].terminals.empty()) continue;
    std::vector<int> required = {inst.graph.source};
    for (int t : tree.nodes[v].terminals) required.push_back(inst.terminals[t].node);
    SteinerTree st = build_steiner(inst.graph, required, config);
    assign_tree_paths(inst.graph, st, tree.nodes[v].terminals, inst, sol);
  }
  return sol;
}

RandSolution solve_rand_prim(const RandInstance& inst) {
  DemandTree tree = checked_tree(inst);
  TerminalRelations rel = terminal_relations(tree);
  const int nt = static_cast<int>(inst.terminals.size());

  std::vector<DijkstraResult> sssp;
  sssp.reserve(nt);
  for (int t = 0; t < nt; ++t) sssp.push_back(dijkstra(inst.graph, inst.terminals[t].node));

  RandSolution sol;
  sol.paths.assign(nt, {});
  std::vector<char> connected(nt, 0);
  std::vector<int> missing_anc(nt, 0);
  for (int t = 0; t < nt; ++t) missing_anc[t] = static_cast<int>(rel.anc[t].size());

  // delta[t]: distance to the nearest connected ancestor/peer, the source
  // included; updated whenever a terminal joins. Strict improvement keeps
  // the earliest candidate on ties.
  std::vector<Rat> delta(nt);
  std::vector<int> attach(nt, -1);  // -1 = the source
  for (int t = 0; t < nt; ++t) delta[t] = sssp[t].dist[inst.graph.source];

  for (int step = 0; step < nt; ++step) {
    int pick = -1;
    for (int t = 0; t < nt; ++t) {
      if (connected[t] || missing_anc[t] > 0) continue;
      if (pick == -1 || delta[t] < delta[pick]) pick = t;
    }
    if (pick == -1) {
      throw ValidationError("no eligible terminal found (internal error)");
    }
    int pick_attach = attach[pick];

    // walk_to_start yields attach..location in the terminal's own Dijkstra
    // tree; reversed it runs from the terminal's location to the attachment.
    std::vector<int> path;
    if (pick_attach == -1) {
      path = walk_to_start(sssp[pick], inst.graph.source);
    } else {
      path = walk_to_start(sssp[pick], inst.terminals[pick_attach].node);
    }
    std::reverse(path.begin(), path.end());
    if (pick_attach != -1) {
      const auto& carrier = sol.paths[pick_attach];
      path.insert(path.end(), carrier.begin() + 1, carrier.end());
    }
    sol.paths[pick] = erase_loops(path);

    connected[pick] = 1;
    for (int t = 0; t < nt; ++t) {
      if (connected[t]) continue;
      bool is_anc = std::binary_search(rel.anc[t].begin(), rel.anc[t].end(), pick);
      bool is_peer = tree.terminal_node[t] == tree.terminal_node[pick];
      if (is_anc) --missing_anc[t];
      if (is_anc || is_peer) {
        const Rat& d = sssp[t].dist[inst.terminals[pick].node];
        if (d < delta[t]) {
          delta[t] = d;
          attach[t] = pick;
        }
      }
    }
  }
  return sol;
}

RandResult solve_rand_end_to_end(const RandInstance& raw, const RandSolverConfig& config) {
  RandInstance prepared = preprocess(raw);
  RandSolution sol = config.variant == RandVariant::prim ? solve_rand_prim(prepared)
                                                         : solve_rand(prepared, config);

  RandResult result;
  result.stats.cost_preprocessed = eval_rand_cost(sol, prepared);
  result.cost = eval_rand_cost(sol, raw);
  result.stats.cost_original = result.cost;

  DemandTree tree = build_tree(prepared);
  result.stats.node_count = tree.node_count();
  result.stats.depth = tree.depth();
  auto collections = decompose_chains(tree);
  for (const auto& collection : collections) {
    Rat total = 0;
    for (const Chain& chain : collection.chains) {
      for (int v : chain.nodes) {
        if (tree.nodes[v].terminals.empty()) continue;
        std::vector<int> required = {prepared.graph.source};
        for (int t : tree.nodes[v].terminals) required.push_back(prepared.terminals[t].node);
        SteinerTree st = build_steiner(prepared.graph, required, config);
        total += Rat(static_cast<long>(tree.nodes[v].weight)) * st.edge_cost;
      }
    }
    result.stats.collection_costs.push_back(total);
  }
  result.solution = std::move(sol);
  return result;
}

}  // namespace redunet
