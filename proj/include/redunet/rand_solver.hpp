#pragma once

#include <vector>

#include "redunet/laminar.hpp"
#include "redunet/model.hpp"
#include "redunet/steiner.hpp"

namespace redunet {

enum class RandVariant { per_node_steiner, prim };
enum class SteinerKind { mst_approx, exact_capped };

struct RandSolverConfig {
  RandVariant variant = RandVariant::per_node_steiner;
  SteinerKind steiner = SteinerKind::mst_approx;
  int steiner_cap = 12;  // node cap for SteinerKind::exact_capped
};

// anc(t): terminals whose demand strictly contains D(t); peer(t): terminals
// with demand equal to D(t), including t itself.
struct TerminalRelations {
  std::vector<std::vector<int>> anc;
  std::vector<std::vector<int>> peer;
};

TerminalRelations terminal_relations(const DemandTree& tree);

// Top-down pass over the demand tree: one approximate Steiner tree per tree
// node, each terminal routed along its unique tree path to the source.
// Requires a preprocessed instance (parent weights at least twice the
// child's); throws otherwise.
RandSolution solve_rand(const RandInstance& inst, const RandSolverConfig& config = {});

// Prim-style variant: grow a connected terminal set from the source,
// repeatedly attaching the eligible terminal (all ancestors connected) that
// is closest to a connected ancestor, peer, or the source.
RandSolution solve_rand_prim(const RandInstance& inst);

struct RandStats {
  int node_count = 0;  // P of the preprocessed tree
  int depth = 0;
  Rat cost_preprocessed;            // solution cost on the preprocessed instance
  Rat cost_original;                // solution cost on the raw instance
  std::vector<Rat> collection_costs;  // per chain collection: sum of w(X) * steiner edge cost
};

struct RandResult {
  RandSolution solution;
  Rat cost;  // on the raw instance
  RandStats stats;
};

// preprocess + solve, with the cost evaluated on the original instance.
RandResult solve_rand_end_to_end(const RandInstance& raw, const RandSolverConfig& config = {});

}  // namespace redunet
