#include "redunet/oracle.hpp"

#include <algorithm>

#include "redunet/laminar.hpp"

namespace redunet {

RaflOracleResult oracle_rafl(const RaflInstance& inst, long long cap) {
  validate_rafl_instance(inst);
  const int nt = static_cast<int>(inst.terminals.size());
  const int nf = static_cast<int>(inst.facilities.size());

  long long combos = 1;
  for (int t = 0; t < nt; ++t) {
    if (combos > cap / nf + 1) combos = cap + 1;  // saturate
    combos *= nf;
    if (combos > cap) {
      throw CapExceededError("RAFL oracle refused: |F|^|T| exceeds cap " + std::to_string(cap));
    }
  }

  RaflOracleResult result;
  Assignment a;
  a.facility_of.assign(nt, 0);
  bool first = true;
  while (true) {
    Rat cost = eval_rafl_cost(a, inst).total();
    ++result.explored;
    if (first || cost < result.cost) {
      first = false;
      result.cost = cost;
      result.assignment = a;
    }
    int k = nt - 1;
    while (k >= 0 && a.facility_of[k] == nf - 1) a.facility_of[k--] = 0;
    if (k < 0) break;
    ++a.facility_of[k];
  }
  if (first) {  // no terminals: the empty assignment costs nothing
    result.cost = 0;
    result.assignment = a;
  }
  return result;
}

namespace {

void enumerate_paths(const WeightedGraph& g, int node, int target, std::vector<int>& current,
                     std::vector<char>& used, std::vector<std::vector<int>>& out) {
  if (node == target) {
    out.push_back(current);
    return;
  }
  for (const auto& [next, e] : g.adj[node]) {
    if (used[next]) continue;
    used[next] = 1;
    current.push_back(next);
    enumerate_paths(g, next, target, current, used, out);
    current.pop_back();
    used[next] = 0;
  }
}

struct RandSearch {
  const RandInstance& inst;
  const std::vector<std::vector<std::vector<int>>>& paths;  // per terminal (reordered)
  const std::vector<int>& order;                            // search order -> terminal index
  std::vector<PacketSet> load;                              // per edge
  std::vector<int> choice;
  Rat current_cost = 0;
  Rat best_cost;
  std::vector<int> best_choice;
  bool found = false;
  long long explored = 0;

  void run(size_t depth) {
    ++explored;
    if (found && current_cost >= best_cost) return;  // cost only grows
    if (depth == order.size()) {
      found = true;
      best_cost = current_cost;
      best_choice = choice;
      return;
    }
    int t = order[depth];
    const PacketSet& demand = inst.terminals[t].demand;
    for (size_t i = 0; i < paths[depth].size(); ++i) {
      const std::vector<int>& path = paths[depth][i];
      // Apply: add this terminal's demand to every edge on the path.
      std::vector<std::pair<int, PacketSet>> undo;
      Rat delta = 0;
      for (size_t k = 0; k + 1 < path.size(); ++k) {
        int e = inst.graph.edge_between(path[k], path[k + 1]);
        PacketSet fresh = demand.minus(load[e]);
        if (!fresh.empty()) {
          undo.push_back({e, load[e]});
          delta += inst.graph.edges[e].cost *
                   Rat(static_cast<long>(inst.universe.weight_of(fresh)));
          load[e].unite(demand);
        }
      }
      current_cost += delta;
      choice[depth] = static_cast<int>(i);
      run(depth + 1);
      current_cost -= delta;
      for (auto& [e, old] : undo) load[e] = old;
    }
  }
};

}  // namespace

RandOracleResult oracle_rand(const RandInstance& inst, long long cap) {
  validate_rand_instance(inst);
  const int nt = static_cast<int>(inst.terminals.size());

  std::vector<std::vector<std::vector<int>>> all_paths(nt);
  long long combos = 1;
  for (int t = 0; t < nt; ++t) {
    std::vector<int> current = {inst.terminals[t].node};
    std::vector<char> used(inst.graph.node_count, 0);
    used[inst.terminals[t].node] = 1;
    enumerate_paths(inst.graph, inst.terminals[t].node, inst.graph.source, current, used,
                    all_paths[t]);
    long long count = static_cast<long long>(all_paths[t].size());
    if (count == 0) {
      throw ValidationError("terminal '" + inst.terminals[t].id + "' cannot reach the source");
    }
    if (combos > cap / count + 1) combos = cap + 1;  // saturate
    else combos *= count;
    if (combos > cap) {
      throw CapExceededError("RAND oracle refused: path combination count exceeds cap " +
                             std::to_string(cap));
    }
  }

  // Heaviest demands first tightens the pruning bound early.
  std::vector<int> order(nt);
  for (int t = 0; t < nt; ++t) order[t] = t;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return inst.universe.weight_of(inst.terminals[a].demand) >
           inst.universe.weight_of(inst.terminals[b].demand);
  });
  std::vector<std::vector<std::vector<int>>> ordered(nt);
  for (int i = 0; i < nt; ++i) ordered[i] = std::move(all_paths[order[i]]);

  RandSearch search{inst, ordered, order};
  search.load.assign(inst.graph.edges.size(), PacketSet(inst.universe.size()));
  search.choice.assign(nt, -1);
  search.run(0);

  RandOracleResult result;
  result.cost = nt == 0 ? Rat(0) : search.best_cost;
  result.explored = search.explored;
  result.solution.paths.assign(nt, {});
  for (int i = 0; i < nt; ++i) {
    if (nt > 0) result.solution.paths[order[i]] = ordered[i][search.best_choice[i]];
  }
  return result;
}

}  // namespace redunet
