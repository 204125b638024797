#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>

#include "redunet/generator.hpp"
#include "redunet/steiner.hpp"
#include "testutil.hpp"

using namespace redunet;
using namespace redunet::testutil;

namespace {

bool leaves_are_required(const WeightedGraph& g, const SteinerTree& tree,
                         const std::vector<int>& required) {
  std::vector<int> degree(g.node_count, 0);
  std::vector<char> is_required(g.node_count, 0);
  for (int v : required) is_required[v] = 1;
  for (int e : tree.edge_ids) {
    ++degree[g.edges[e].u];
    ++degree[g.edges[e].v];
  }
  for (int v = 0; v < g.node_count; ++v) {
    if (degree[v] == 1 && !is_required[v]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("approx: a single required node is the empty tree") {
  auto g = make_graph(3, {{0, 1, "1"}, {1, 2, "1"}});
  auto tree = approx_steiner(g, {1});
  CHECK(tree.edge_ids.empty());
  CHECK(tree.edge_cost == 0);
}

TEST_CASE("approx: two required nodes give the shortest path") {
  auto g = make_graph(4, {{0, 1, "1"}, {1, 2, "1"}, {2, 3, "1"}, {0, 3, "5"}});
  auto tree = approx_steiner(g, {0, 3});
  CHECK(tree.edge_cost == 3);
  CHECK(tree.edge_ids.size() == 3);
  CHECK(steiner_tree_is_valid(g, tree, {0, 3}));
}

TEST_CASE("approx: disconnected required set raises") {
  auto g = make_graph(3, {{0, 1, "1"}});
  CHECK_THROWS_AS(approx_steiner(g, {0, 2}), ValidationError);
}

TEST_CASE("exact: unit 4-cycle with three required nodes") {
  auto g = make_graph(4, {{0, 1, "1"}, {1, 2, "1"}, {2, 3, "1"}, {3, 0, "1"}});
  auto tree = exact_steiner(g, {0, 1, 2});
  CHECK(tree.edge_cost == 2);
}

TEST_CASE("exact: spanning all nodes equals the MST") {
  auto g = make_graph(5, {{0, 1, "2"}, {1, 2, "3"}, {2, 3, "1"}, {3, 4, "4"},
                          {0, 4, "10"}, {1, 3, "2"}});
  auto tree = exact_steiner(g, {0, 1, 2, 3, 4});
  // Kruskal by hand: 1 + 2 + 2 + 4 = 9.
  CHECK(tree.edge_cost == 9);
  CHECK(tree.edge_ids.size() == 4);
}

TEST_CASE("exact: star graph required leaves take every spoke") {
  auto g = make_graph(4, {{0, 1, "1"}, {0, 2, "2"}, {0, 3, "3"}});
  auto tree = exact_steiner(g, {1, 2, 3});
  CHECK(tree.edge_cost == 6);
  CHECK(tree.edge_ids.size() == 3);
}

TEST_CASE("exact: node cap refusal") {
  GeneratorConfig config;
  config.nodes = 14;
  config.terminals = 2;
  auto inst = generate_rand(config);
  CHECK_THROWS_AS(exact_steiner(inst.graph, {0, 1}, 12), CapExceededError);
}

TEST_CASE("approx is within a factor two of exact on random graphs") {
  std::mt19937_64 rng(67);
  for (int round = 0; round < 60; ++round) {
    GeneratorConfig config;
    config.seed = rng();
    config.nodes = 4 + static_cast<int>(rng() % 5);  // 4..8
    config.terminals = 1;
    auto inst = generate_rand(config);
    int k = 2 + static_cast<int>(rng() % (config.nodes - 1));
    std::vector<int> nodes(inst.graph.node_count);
    std::iota(nodes.begin(), nodes.end(), 0);
    std::shuffle(nodes.begin(), nodes.end(), rng);
    std::vector<int> required(nodes.begin(), nodes.begin() + std::min<size_t>(k, nodes.size()));

    auto approx = approx_steiner(inst.graph, required);
    auto exact = exact_steiner(inst.graph, required);
    CHECK(steiner_tree_is_valid(inst.graph, approx, required));
    CHECK(steiner_tree_is_valid(inst.graph, exact, required));
    CHECK(leaves_are_required(inst.graph, approx, required));
    CHECK(leaves_are_required(inst.graph, exact, required));
    CHECK(exact.edge_cost <= approx.edge_cost);
    CHECK(approx.edge_cost <= 2 * exact.edge_cost);
  }
}

TEST_CASE("approx output is deterministic") {
  GeneratorConfig config;
  config.seed = 99;
  config.nodes = 8;
  config.terminals = 1;
  auto inst = generate_rand(config);
  auto a = approx_steiner(inst.graph, {0, 3, 5, 7});
  auto b = approx_steiner(inst.graph, {0, 3, 5, 7});
  CHECK(a.edge_ids == b.edge_ids);
  CHECK(a.edge_cost == b.edge_cost);
}
