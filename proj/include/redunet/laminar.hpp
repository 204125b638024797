#pragma once

#include <string>
#include <vector>

#include "redunet/model.hpp"

namespace redunet {

struct LaminarReport {
  bool ok = true;
  int first = -1;   // indices of an offending pair when !ok
  int second = -1;
  std::string message;
};

// ok iff every pair of demand sets is disjoint or nested.
LaminarReport validate_laminar(const std::vector<PacketSet>& demands);

// Full instance validation, including demand laminarity.
void validate_rand_instance(const RandInstance& inst);
void validate_rafl_instance(const RaflInstance& inst);

struct TreeNode {
  PacketSet packets;
  long long weight = 0;
  int parent = -1;
  std::vector<int> children;   // ascending node ids
  std::vector<int> terminals;  // terminal indices with demand == packets
};

// Containment tree over the distinct demand sets, rooted at the universe.
// packet_classes groups packets demanded by identical terminal sets (the
// canonical merge); each class is keyed by its minimal containing node.
struct DemandTree {
  std::vector<TreeNode> nodes;  // node 0 is the root
  std::vector<int> terminal_node;
  std::vector<std::vector<int>> packet_classes;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int depth() const;
  // Number of canonical packet classes demanded by at least one terminal.
  int demanded_class_count() const;
  bool is_root_demanded() const { return !nodes.empty() && !nodes[0].terminals.empty(); }
};

DemandTree build_tree(const PacketUniverse& universe, const std::vector<Terminal>& terminals);
DemandTree build_tree(const RandInstance& inst);

// Property 3 of the preprocessed tree: every parent weighs at least twice
// its child.
bool satisfies_halving(const DemandTree& tree);

// Rewrites the instance over the canonically merged universe: packets
// demanded by exactly the same terminals become one packet of combined
// weight (a merged packet keeps the id of its first member).
RandInstance canonical_merge(const RandInstance& inst);

// Algorithm: preorder DFS over the demand tree; a node whose weight exceeds
// half of its parent's is merged into the parent, promoting its terminals
// and reattaching its children. Demands only ever grow, by less than 2x.
RandInstance preprocess(const RandInstance& inst);

struct Chain {
  std::vector<int> nodes;  // root-to-descendant order
};

struct ChainCollection {
  std::vector<Chain> chains;
};

// Heavy-path decomposition of the tree into at most floor(log2 P) + 1
// collections of mutually packet-disjoint chains; every node lands in
// exactly one chain. Requires the halving property.
std::vector<ChainCollection> decompose_chains(const DemandTree& tree);

}  // namespace redunet
