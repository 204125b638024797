#pragma once

#include <cstdint>
#include <vector>

#include "redunet/model.hpp"

namespace redunet {

struct RaflOracleResult {
  Rat cost;
  Assignment assignment;
  long long explored = 0;  // assignments evaluated
};

struct RandOracleResult {
  Rat cost;
  RandSolution solution;
  long long explored = 0;  // search nodes visited
};

// Enumerates every terminal -> facility assignment. Refuses when
// |F|^|T| > cap.
RaflOracleResult oracle_rafl(const RaflInstance& inst, long long cap = 10'000'000);

// Enumerates every combination of simple terminal -> source paths, pruning
// on the monotone partial cost. Refuses when the product of per-terminal
// simple path counts exceeds cap.
RandOracleResult oracle_rand(const RandInstance& inst, long long cap = 10'000'000);

}  // namespace redunet
