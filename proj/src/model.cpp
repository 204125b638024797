#include "redunet/model.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <set>

namespace redunet {

bool PacketSet::empty() const {
  for (uint64_t w : words_) {
    if (w) return false;
  }
  return true;
}

int PacketSet::count() const {
  int c = 0;
  for (uint64_t w : words_) c += std::popcount(w);
  return c;
}

bool PacketSet::intersects(const PacketSet& other) const {
  size_t n = std::min(words_.size(), other.words_.size());
  for (size_t i = 0; i < n; ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

bool PacketSet::subset_of(const PacketSet& other) const {
  for (size_t i = 0; i < words_.size(); ++i) {
    uint64_t theirs = i < other.words_.size() ? other.words_[i] : 0;
    if (words_[i] & ~theirs) return false;
  }
  return true;
}

void PacketSet::unite(const PacketSet& other) {
  for (size_t i = 0; i < words_.size() && i < other.words_.size(); ++i) {
    words_[i] |= other.words_[i];
  }
}

PacketSet PacketSet::minus(const PacketSet& other) const {
  PacketSet out = *this;
  for (size_t i = 0; i < out.words_.size() && i < other.words_.size(); ++i) {
    out.words_[i] &= ~other.words_[i];
  }
  return out;
}

std::vector<int> PacketSet::members() const {
  std::vector<int> out;
  for (int p = 0; p < universe_; ++p) {
    if (test(p)) out.push_back(p);
  }
  return out;
}

long long PacketUniverse::weight_of(const PacketSet& s) const {
  long long total = 0;
  for (int p = 0; p < size(); ++p) {
    if (s.test(p)) total += weights[p];
  }
  return total;
}

long long PacketUniverse::total_weight() const {
  long long total = 0;
  for (long long w : weights) total += w;
  return total;
}

int PacketUniverse::index_of(const std::string& id) const {
  for (int p = 0; p < size(); ++p) {
    if (ids[p] == id) return p;
  }
  return -1;
}

PacketSet PacketUniverse::full_set() const {
  PacketSet s(size());
  for (int p = 0; p < size(); ++p) s.set(p);
  return s;
}

void PacketUniverse::validate() const {
  if (ids.size() != weights.size()) throw ValidationError("packet id/weight count mismatch");
  std::set<std::string> seen;
  for (int p = 0; p < size(); ++p) {
    if (weights[p] < 1) {
      throw ValidationError("packet '" + ids[p] + "' has weight < 1");
    }
    if (!seen.insert(ids[p]).second) {
      throw ValidationError("duplicate packet id '" + ids[p] + "'");
    }
  }
}

void WeightedGraph::finalize() {
  adj.assign(node_count, {});
  std::set<std::pair<int, int>> seen;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    const Edge& ed = edges[e];
    if (ed.u < 0 || ed.u >= node_count || ed.v < 0 || ed.v >= node_count) {
      throw ValidationError("edge endpoint out of range");
    }
    if (ed.u == ed.v) throw ValidationError("self-loop on node " + std::to_string(ed.u));
    if (ed.cost < 0) throw ValidationError("negative edge cost");
    auto key = std::minmax(ed.u, ed.v);
    if (!seen.insert(key).second) {
      throw ValidationError("duplicate edge " + std::to_string(key.first) + "-" +
                            std::to_string(key.second));
    }
    adj[ed.u].push_back({ed.v, e});
    adj[ed.v].push_back({ed.u, e});
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
}

int WeightedGraph::edge_between(int u, int v) const {
  for (const auto& [nbr, e] : adj[u]) {
    if (nbr == v) return e;
  }
  return -1;
}

namespace {

void validate_terminals(const PacketUniverse& universe, const WeightedGraph& graph,
                        const std::vector<Terminal>& terminals) {
  std::set<std::string> seen;
  for (const Terminal& t : terminals) {
    if (!seen.insert(t.id).second) throw ValidationError("duplicate terminal id '" + t.id + "'");
    if (t.node < 0 || t.node >= graph.node_count) {
      throw ValidationError("terminal '" + t.id + "' at unknown node");
    }
    if (t.demand.empty()) throw ValidationError("terminal '" + t.id + "' has empty demand");
    if (!t.demand.subset_of(universe.full_set())) {
      throw ValidationError("terminal '" + t.id + "' demands unknown packets");
    }
  }
}

std::vector<char> reachable_from(const WeightedGraph& g, int start) {
  std::vector<char> seen(g.node_count, 0);
  std::vector<int> stack = {start};
  seen[start] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (const auto& [v, e] : g.adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace

int RandInstance::terminal_index(const std::string& id) const {
  for (int t = 0; t < static_cast<int>(terminals.size()); ++t) {
    if (terminals[t].id == id) return t;
  }
  return -1;
}

void RandInstance::validate_basic() const {
  universe.validate();
  if (!graph.finalized()) throw ValidationError("graph not finalized");
  if (graph.source < 0 || graph.source >= graph.node_count) {
    throw ValidationError("missing or out-of-range source node");
  }
  validate_terminals(universe, graph, terminals);
  auto seen = reachable_from(graph, graph.source);
  for (const Terminal& t : terminals) {
    if (!seen[t.node]) {
      throw ValidationError("terminal '" + t.id + "' is disconnected from the source");
    }
  }
}

int RaflInstance::terminal_index(const std::string& id) const {
  for (int t = 0; t < static_cast<int>(terminals.size()); ++t) {
    if (terminals[t].id == id) return t;
  }
  return -1;
}

int RaflInstance::facility_index(const std::string& id) const {
  for (int f = 0; f < static_cast<int>(facilities.size()); ++f) {
    if (facilities[f].id == id) return f;
  }
  return -1;
}

Rat RaflInstance::lambda_scale() const {
  Rat scale = facilities.front().lambda;
  for (const Facility& f : facilities) scale = std::min(scale, f.lambda);
  return scale;
}

Rat RaflInstance::normalized_lambda(int f) const {
  return Rat(facilities[f].lambda / lambda_scale());
}

void RaflInstance::validate_basic() const {
  universe.validate();
  if (!graph.finalized()) throw ValidationError("graph not finalized");
  if (facilities.empty()) throw ValidationError("instance has no facilities");
  validate_terminals(universe, graph, terminals);
  std::set<std::string> seen;
  for (const Facility& f : facilities) {
    if (!seen.insert(f.id).second) throw ValidationError("duplicate facility id '" + f.id + "'");
    if (f.node < 0 || f.node >= graph.node_count) {
      throw ValidationError("facility '" + f.id + "' at unknown node");
    }
    if (f.lambda <= 0) throw ValidationError("facility '" + f.id + "' has nonpositive lambda");
  }
  auto seen_nodes = reachable_from(graph, facilities.front().node);
  for (const Facility& f : facilities) {
    if (!seen_nodes[f.node]) {
      throw ValidationError("facility '" + f.id + "' disconnected from facility '" +
                            facilities.front().id + "'");
    }
  }
  for (const Terminal& t : terminals) {
    if (!seen_nodes[t.node]) {
      throw ValidationError("terminal '" + t.id + "' disconnected from the facilities");
    }
  }
}

Rat eval_rand_cost(const RandSolution& sol, const RandInstance& inst) {
  const int nt = static_cast<int>(inst.terminals.size());
  if (static_cast<int>(sol.paths.size()) != nt) {
    throw ValidationError("solution has " + std::to_string(sol.paths.size()) + " paths for " +
                          std::to_string(nt) + " terminals");
  }
  std::map<int, PacketSet> load;  // edge id -> packet union
  for (int t = 0; t < nt; ++t) {
    const Terminal& term = inst.terminals[t];
    const std::vector<int>& path = sol.paths[t];
    if (path.empty() || path.front() != term.node) {
      throw ValidationError("terminal '" + term.id + "': path does not start at its location");
    }
    if (path.back() != inst.graph.source) {
      throw ValidationError("terminal '" + term.id + "': path does not end at the source");
    }
    std::set<int> visited;
    for (int node : path) {
      if (!visited.insert(node).second) {
        throw ValidationError("terminal '" + term.id + "': path is not simple");
      }
    }
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      int e = inst.graph.edge_between(path[i], path[i + 1]);
      if (e < 0) {
        throw ValidationError("terminal '" + term.id + "': no edge " + std::to_string(path[i]) +
                              "-" + std::to_string(path[i + 1]));
      }
      auto [it, fresh] = load.try_emplace(e, PacketSet(inst.universe.size()));
      it->second.unite(term.demand);
    }
  }
  Rat cost = 0;
  for (const auto& [e, packets] : load) {
    cost += inst.graph.edges[e].cost * Rat(static_cast<long>(inst.universe.weight_of(packets)));
  }
  return cost;
}

RaflCost eval_rafl_cost(const Assignment& a, const RaflInstance& inst) {
  const int nt = static_cast<int>(inst.terminals.size());
  const int nf = static_cast<int>(inst.facilities.size());
  if (static_cast<int>(a.facility_of.size()) != nt) {
    throw ValidationError("assignment is not total over the terminals");
  }
  for (int t = 0; t < nt; ++t) {
    if (a.facility_of[t] < 0 || a.facility_of[t] >= nf) {
      throw ValidationError("terminal '" + inst.terminals[t].id + "' assigned to unknown facility");
    }
  }
  std::vector<int> needed;
  for (const Terminal& t : inst.terminals) needed.push_back(t.node);
  for (const Facility& f : inst.facilities) needed.push_back(f.node);
  auto metric = ShortestPathMetric::compute(inst.graph, needed);

  std::vector<PacketSet> produced(nf, PacketSet(inst.universe.size()));
  RaflCost cost{Rat(0), Rat(0)};
  for (int t = 0; t < nt; ++t) {
    int f = a.facility_of[t];
    produced[f].unite(inst.terminals[t].demand);
    cost.routing += Rat(static_cast<long>(inst.universe.weight_of(inst.terminals[t].demand))) *
                    metric.dist(inst.terminals[t].node, inst.facilities[f].node);
  }
  for (int f = 0; f < nf; ++f) {
    if (!produced[f].empty()) {
      cost.facility +=
          inst.facilities[f].lambda * Rat(static_cast<long>(inst.universe.weight_of(produced[f])));
    }
  }
  return cost;
}

DijkstraResult dijkstra(const WeightedGraph& g, int start) {
  DijkstraResult r;
  r.dist.assign(g.node_count, Rat(0));
  r.reached.assign(g.node_count, 0);
  r.parent_node.assign(g.node_count, -1);
  r.parent_edge.assign(g.node_count, -1);

  using Item = std::pair<Rat, int>;
  auto cmp = [](const Item& a, const Item& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> queue(cmp);
  std::vector<char> done(g.node_count, 0);
  r.dist[start] = 0;
  r.reached[start] = 1;
  queue.push({Rat(0), start});
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (const auto& [v, e] : g.adj[u]) {
      Rat nd = d + g.edges[e].cost;
      if (!r.reached[v] || nd < r.dist[v]) {
        r.reached[v] = 1;
        r.dist[v] = nd;
        r.parent_node[v] = u;
        r.parent_edge[v] = e;
        queue.push({nd, v});
      }
    }
  }
  return r;
}

std::vector<int> walk_to_start(const DijkstraResult& d, int node) {
  std::vector<int> path = {node};
  while (d.parent_node[path.back()] != -1) path.push_back(d.parent_node[path.back()]);
  return path;
}

ShortestPathMetric ShortestPathMetric::compute(const WeightedGraph& g, std::vector<int> needed) {
  std::sort(needed.begin(), needed.end());
  needed.erase(std::unique(needed.begin(), needed.end()), needed.end());
  ShortestPathMetric m;
  for (size_t i = 0; i < needed.size(); ++i) m.index_[needed[i]] = static_cast<int>(i);
  m.table_.assign(needed.size(), std::vector<Rat>(needed.size(), Rat(0)));
  for (size_t i = 0; i < needed.size(); ++i) {
    auto d = dijkstra(g, needed[i]);
    for (size_t j = 0; j < needed.size(); ++j) {
      if (!d.reached[needed[j]]) {
        throw ValidationError("no path between node " + std::to_string(needed[i]) +
                              " and node " + std::to_string(needed[j]));
      }
      m.table_[i][j] = d.dist[needed[j]];
    }
  }
  return m;
}

const Rat& ShortestPathMetric::dist(int u, int v) const {
  return table_[index_.at(u)][index_.at(v)];
}

}  // namespace redunet
