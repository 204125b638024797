#pragma once

#include <cstdint>

#include "redunet/model.hpp"

namespace redunet {

// Deterministic in `seed`. Demands are laminar by construction (recursive
// packet-set splitting); the graph is a random spanning tree plus extra
// edges, so required connectivity always holds.
struct GeneratorConfig {
  uint64_t seed = 1;
  int nodes = 8;
  Rat edge_density = Rat(1, 2);  // extra edges beyond the tree, as a fraction of nodes
  int terminals = 3;
  int packets = 4;
  int facilities = 2;  // RAFL only
  int branching = 2;   // laminar split arity; 1 yields a chain
  int weight_max = 4;  // packet weights in 1..weight_max
  int cost_max = 10;   // integral edge costs in 1..cost_max
  int lambda_max = 4;  // integral lambdas in 1..lambda_max (RAFL only)
};

RandInstance generate_rand(const GeneratorConfig& config);
RaflInstance generate_rafl(const GeneratorConfig& config);

}  // namespace redunet
