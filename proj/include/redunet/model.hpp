#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "redunet/rational.hpp"

namespace redunet {

// Thrown when an instance or a solution violates a structural precondition.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown by exact solvers when an instance exceeds their configured size cap.
struct CapExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fixed-universe bitset over packet indices.
class PacketSet {
 public:
  PacketSet() = default;
  explicit PacketSet(int universe_size)
      : universe_(universe_size), words_((universe_size + 63) / 64, 0) {}

  int universe_size() const { return universe_; }
  bool test(int p) const { return (words_[p >> 6] >> (p & 63)) & 1; }
  void set(int p) { words_[p >> 6] |= uint64_t{1} << (p & 63); }
  void reset(int p) { words_[p >> 6] &= ~(uint64_t{1} << (p & 63)); }

  bool empty() const;
  int count() const;
  bool intersects(const PacketSet& other) const;
  bool subset_of(const PacketSet& other) const;
  void unite(const PacketSet& other);
  PacketSet minus(const PacketSet& other) const;
  std::vector<int> members() const;

  bool operator==(const PacketSet& other) const {
    return universe_ == other.universe_ && words_ == other.words_;
  }
  bool operator<(const PacketSet& other) const { return words_ < other.words_; }

 private:
  int universe_ = 0;
  std::vector<uint64_t> words_;
};

// The packet universe Pi with integral positive weights.
struct PacketUniverse {
  std::vector<std::string> ids;
  std::vector<long long> weights;

  int size() const { return static_cast<int>(ids.size()); }
  long long weight_of(int p) const { return weights[p]; }
  long long weight_of(const PacketSet& s) const;
  long long total_weight() const;
  int index_of(const std::string& id) const;
  PacketSet full_set() const;
  void validate() const;
};

struct Edge {
  int u = -1;
  int v = -1;
  Rat cost;
};

// Undirected graph with nonnegative rational edge costs. `finalize()` builds
// the adjacency index and must be called after the edge list is complete.
struct WeightedGraph {
  int node_count = 0;
  std::vector<Edge> edges;
  int source = -1;  // RAND source node; -1 when not applicable
  std::vector<std::vector<std::pair<int, int>>> adj;  // node -> (neighbor, edge id)

  void finalize();
  bool finalized() const { return static_cast<int>(adj.size()) == node_count; }
  int edge_between(int u, int v) const;
};

struct Terminal {
  std::string id;
  int node = -1;
  PacketSet demand;
};

struct Facility {
  std::string id;
  int node = -1;
  Rat lambda;
};

struct RandInstance {
  PacketUniverse universe;
  WeightedGraph graph;
  std::vector<Terminal> terminals;

  int terminal_index(const std::string& id) const;
  // Structural checks; demand laminarity is checked by laminar::validate_rand_instance.
  void validate_basic() const;
};

struct RaflInstance {
  PacketUniverse universe;
  WeightedGraph graph;  // over terminal and facility nodes, no source
  std::vector<Terminal> terminals;
  std::vector<Facility> facilities;

  int terminal_index(const std::string& id) const;
  int facility_index(const std::string& id) const;
  // min_f lambda_f; the normalization scale factor (original units = scale * normalized units).
  Rat lambda_scale() const;
  Rat normalized_lambda(int f) const;
  void validate_basic() const;
};

// One source path per terminal, stored as the node sequence from the
// terminal's location to the source.
struct RandSolution {
  std::vector<std::vector<int>> paths;  // indexed by terminal
};

// Total terminal -> facility mapping, by facility index.
struct Assignment {
  std::vector<int> facility_of;  // indexed by terminal
};

// cost(P) = sum_e c_e * w(union of demands routed through e).
// Packets are counted once per edge regardless of multiplicity.
Rat eval_rand_cost(const RandSolution& sol, const RandInstance& inst);

struct RaflCost {
  Rat facility;
  Rat routing;
  Rat total() const { return facility + routing; }
};

// facility = sum_f lambda_f * w(union of assigned demands); routing uses the
// shortest-path metric. Facilities with no assigned terminals contribute 0.
RaflCost eval_rafl_cost(const Assignment& a, const RaflInstance& inst);

struct DijkstraResult {
  std::vector<Rat> dist;
  std::vector<char> reached;
  std::vector<int> parent_node;  // predecessor toward the start node
  std::vector<int> parent_edge;
};

DijkstraResult dijkstra(const WeightedGraph& g, int start);

// Node sequence from `node` to the Dijkstra start, following parents.
std::vector<int> walk_to_start(const DijkstraResult& d, int node);

// All-pairs shortest-path table restricted to the nodes that need it.
class ShortestPathMetric {
 public:
  static ShortestPathMetric compute(const WeightedGraph& g, std::vector<int> needed);
  const Rat& dist(int u, int v) const;

 private:
  std::map<int, int> index_;
  std::vector<std::vector<Rat>> table_;
};

}  // namespace redunet
