#include "redunet/laminar.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace redunet {

LaminarReport validate_laminar(const std::vector<PacketSet>& demands) {
  for (size_t i = 0; i < demands.size(); ++i) {
    for (size_t j = i + 1; j < demands.size(); ++j) {
      if (!demands[i].intersects(demands[j])) continue;
      if (demands[i].subset_of(demands[j]) || demands[j].subset_of(demands[i])) continue;
      LaminarReport r;
      r.ok = false;
      r.first = static_cast<int>(i);
      r.second = static_cast<int>(j);
      r.message = "demand sets " + std::to_string(i) + " and " + std::to_string(j) +
                  " overlap without nesting";
      return r;
    }
  }
  return {};
}

namespace {

std::vector<PacketSet> demand_sets(const std::vector<Terminal>& terminals) {
  std::vector<PacketSet> out;
  out.reserve(terminals.size());
  for (const Terminal& t : terminals) out.push_back(t.demand);
  return out;
}

}  // namespace

void validate_rand_instance(const RandInstance& inst) {
  inst.validate_basic();
  auto report = validate_laminar(demand_sets(inst.terminals));
  if (!report.ok) {
    throw ValidationError("demands of terminals '" + inst.terminals[report.first].id + "' and '" +
                          inst.terminals[report.second].id + "' violate laminarity");
  }
}

void validate_rafl_instance(const RaflInstance& inst) {
  inst.validate_basic();
  auto report = validate_laminar(demand_sets(inst.terminals));
  if (!report.ok) {
    throw ValidationError("demands of terminals '" + inst.terminals[report.first].id + "' and '" +
                          inst.terminals[report.second].id + "' violate laminarity");
  }
}

int DemandTree::depth() const {
  int best = 0;
  for (int v = 0; v < node_count(); ++v) {
    int d = 0;
    for (int u = v; nodes[u].parent != -1; u = nodes[u].parent) ++d;
    best = std::max(best, d);
  }
  return best;
}

int DemandTree::demanded_class_count() const {
  int count = 0;
  for (const auto& cls : packet_classes) {
    // A class is demanded iff some node on the chain from its minimal
    // containing node to the root has terminals; non-root nodes always do.
    int p = cls.front();
    int node = -1;
    for (int v = 0; v < node_count(); ++v) {
      if (nodes[v].packets.test(p) && (node == -1 || nodes[v].weight < nodes[node].weight)) {
        node = v;
      }
    }
    bool demanded = false;
    for (int v = node; v != -1; v = nodes[v].parent) {
      if (!nodes[v].terminals.empty()) {
        demanded = true;
        break;
      }
    }
    if (demanded) ++count;
  }
  return count;
}

DemandTree build_tree(const PacketUniverse& universe, const std::vector<Terminal>& terminals) {
  auto report = validate_laminar(demand_sets(terminals));
  if (!report.ok) throw ValidationError(report.message);

  DemandTree tree;
  tree.terminal_node.assign(terminals.size(), -1);

  // Node 0 is the universe; remaining nodes are distinct demand sets in
  // first-occurrence order.
  TreeNode root;
  root.packets = universe.full_set();
  root.weight = universe.total_weight();
  tree.nodes.push_back(root);

  std::map<PacketSet, int> node_of;
  node_of[root.packets] = 0;
  for (int t = 0; t < static_cast<int>(terminals.size()); ++t) {
    auto it = node_of.find(terminals[t].demand);
    int v;
    if (it == node_of.end()) {
      TreeNode node;
      node.packets = terminals[t].demand;
      node.weight = universe.weight_of(node.packets);
      v = tree.node_count();
      tree.nodes.push_back(node);
      node_of[node.packets] = v;
    } else {
      v = it->second;
    }
    tree.nodes[v].terminals.push_back(t);
    tree.terminal_node[t] = v;
  }

  // Parent of X = the minimal strict superset; uniqueness follows from
  // laminarity (supersets of X form a chain).
  for (int v = 1; v < tree.node_count(); ++v) {
    int parent = 0;
    for (int u = 0; u < tree.node_count(); ++u) {
      if (u == v) continue;
      if (tree.nodes[v].packets.subset_of(tree.nodes[u].packets) &&
          !(tree.nodes[u].packets == tree.nodes[v].packets) &&
          tree.nodes[u].weight < tree.nodes[parent].weight) {
        parent = u;
      }
    }
    tree.nodes[v].parent = parent;
    tree.nodes[parent].children.push_back(v);
  }
  for (auto& node : tree.nodes) std::sort(node.children.begin(), node.children.end());

  // Canonical packet classes: group by the minimal containing node, ordered
  // by the first member so a merged universe keeps the original packet order.
  std::map<int, std::vector<int>> classes;
  for (int p = 0; p < universe.size(); ++p) {
    int best = 0;
    for (int v = 1; v < tree.node_count(); ++v) {
      if (tree.nodes[v].packets.test(p) && tree.nodes[v].weight < tree.nodes[best].weight) {
        best = v;
      }
    }
    classes[best].push_back(p);
  }
  for (auto& [node, packets] : classes) tree.packet_classes.push_back(packets);
  std::sort(tree.packet_classes.begin(), tree.packet_classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  return tree;
}

DemandTree build_tree(const RandInstance& inst) {
  return build_tree(inst.universe, inst.terminals);
}

bool satisfies_halving(const DemandTree& tree) {
  for (int v = 1; v < tree.node_count(); ++v) {
    if (tree.nodes[tree.nodes[v].parent].weight < 2 * tree.nodes[v].weight) return false;
  }
  return true;
}

RandInstance canonical_merge(const RandInstance& inst) {
  DemandTree tree = build_tree(inst);
  RandInstance out;
  out.graph = inst.graph;

  const int nc = static_cast<int>(tree.packet_classes.size());
  std::vector<int> class_of(inst.universe.size(), -1);
  for (int c = 0; c < nc; ++c) {
    const auto& cls = tree.packet_classes[c];
    long long weight = 0;
    for (int p : cls) {
      class_of[p] = c;
      weight += inst.universe.weights[p];
    }
    out.universe.ids.push_back(inst.universe.ids[cls.front()]);
    out.universe.weights.push_back(weight);
  }

  for (const Terminal& t : inst.terminals) {
    Terminal nt;
    nt.id = t.id;
    nt.node = t.node;
    nt.demand = PacketSet(nc);
    // Classes refine demand sets, so membership of any one packet decides
    // the whole class.
    for (int c = 0; c < nc; ++c) {
      if (t.demand.test(tree.packet_classes[c].front())) nt.demand.set(c);
    }
    out.terminals.push_back(std::move(nt));
  }
  return out;
}

RandInstance preprocess(const RandInstance& inst) {
  DemandTree tree = build_tree(inst);
  std::vector<PacketSet> new_demand;
  new_demand.reserve(inst.terminals.size());
  for (const Terminal& t : inst.terminals) new_demand.push_back(t.demand);

  // Preorder DFS; pending children are taken smallest-id first, and a merged
  // child's children rejoin the pending set of the surviving parent.
  std::vector<int> stack = {0};
  while (!stack.empty()) {
    int y = stack.back();
    stack.pop_back();
    std::priority_queue<int, std::vector<int>, std::greater<int>> pending(
        tree.nodes[y].children.begin(), tree.nodes[y].children.end());
    std::vector<int> kept;
    while (!pending.empty()) {
      int x = pending.top();
      pending.pop();
      if (2 * tree.nodes[x].weight > tree.nodes[y].weight) {
        for (int t : tree.nodes[x].terminals) {
          new_demand[t] = tree.nodes[y].packets;
          tree.nodes[y].terminals.push_back(t);
        }
        for (int c : tree.nodes[x].children) {
          tree.nodes[c].parent = y;
          pending.push(c);
        }
        tree.nodes[x].children.clear();
        tree.nodes[x].terminals.clear();
      } else {
        kept.push_back(x);
      }
    }
    tree.nodes[y].children = kept;
    for (auto it = kept.rbegin(); it != kept.rend(); ++it) stack.push_back(*it);
  }

  RandInstance out;
  out.universe = inst.universe;
  out.graph = inst.graph;
  out.terminals = inst.terminals;
  for (size_t t = 0; t < out.terminals.size(); ++t) out.terminals[t].demand = new_demand[t];
  return out;
}

namespace {

// Chains at recursion level j over the component rooted at `root`,
// restricted to `alive` nodes.
void decompose_component(const DemandTree& tree, int root, std::vector<char>& alive,
                         std::vector<std::vector<Chain>>& levels, int level) {
  // Subtree node counts within the component.
  std::map<int, int> size;
  auto count = [&](auto&& self, int v) -> int {
    int s = 1;
    for (int c : tree.nodes[v].children) {
      if (alive[c]) s += self(self, c);
    }
    size[v] = s;
    return s;
  };
  count(count, root);

  // Heavy path: descend to the child with the largest subtree, smallest id
  // on ties.
  Chain chain;
  int v = root;
  while (true) {
    chain.nodes.push_back(v);
    alive[v] = 0;
    int next = -1;
    for (int c : tree.nodes[v].children) {
      if (alive[c] && (next == -1 || size[c] > size[next])) next = c;
    }
    if (next == -1) break;
    v = next;
  }
  if (static_cast<int>(levels.size()) <= level) levels.resize(level + 1);
  levels[level].push_back(chain);

  for (int u : chain.nodes) {
    for (int c : tree.nodes[u].children) {
      if (alive[c]) decompose_component(tree, c, alive, levels, level + 1);
    }
  }
}

}  // namespace

std::vector<ChainCollection> decompose_chains(const DemandTree& tree) {
  if (!satisfies_halving(tree)) {
    throw ValidationError("demand tree violates the parent/child weight halving property; "
                          "preprocess the instance first");
  }
  std::vector<std::vector<Chain>> levels;
  std::vector<char> alive(tree.node_count(), 1);
  decompose_component(tree, 0, alive, levels, 0);
  std::vector<ChainCollection> out;
  for (auto& chains : levels) out.push_back({std::move(chains)});
  return out;
}

}  // namespace redunet
