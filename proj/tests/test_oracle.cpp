#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "redunet/generator.hpp"
#include "redunet/lp.hpp"
#include "redunet/oracle.hpp"
#include "redunet/rand_solver.hpp"
#include "testutil.hpp"

using namespace redunet;
using namespace redunet::testutil;

TEST_CASE("oracle_rafl: the 1x1 instance has a single assignment") {
  RaflInstance inst;
  inst.universe = make_universe({{"p1", 2}});
  inst.graph = make_graph(2, {{0, 1, "3"}});
  inst.terminals = {make_terminal("t1", 1, {0}, 1)};
  inst.facilities = {{"f1", 0, Rat(1)}};
  auto result = oracle_rafl(inst);
  CHECK(result.explored == 1);
  CHECK(result.cost == 1 * 2 + 2 * 3);
  CHECK(eval_rafl_cost(result.assignment, inst).total() == result.cost);
}

TEST_CASE("oracle_rafl: everyone picks the cheap facility when equidistant") {
  RaflInstance inst;
  inst.universe = make_universe({{"p1", 1}, {"p2", 1}});
  inst.graph = make_graph(2, {{0, 1, "2"}});
  inst.terminals = {make_terminal("t1", 0, {0}, 2), make_terminal("t2", 0, {0, 1}, 2)};
  inst.facilities = {{"f1", 1, Rat(1)}, {"f2", 1, Rat(10)}};
  auto result = oracle_rafl(inst);
  CHECK(result.assignment.facility_of == std::vector<int>{0, 0});
  CHECK(eval_rafl_cost(result.assignment, inst).total() == result.cost);
}

TEST_CASE("oracle_rafl: cap refusal") {
  GeneratorConfig config;
  config.seed = 2;
  config.nodes = 5;
  config.terminals = 5;
  config.packets = 2;
  config.facilities = 3;
  auto inst = generate_rafl(config);
  CHECK_THROWS_AS(oracle_rafl(inst, 10), CapExceededError);
}

TEST_CASE("oracle_rafl equals the LP value when the LP optimum is integral") {
  std::mt19937_64 rng(157);
  int integral_seen = 0;
  for (int round = 0; round < 40; ++round) {
    GeneratorConfig config;
    config.seed = rng();
    config.nodes = 5;
    config.terminals = 3;
    config.packets = 3;
    config.facilities = 2;
    auto inst = generate_rafl(config);
    auto sol = solve_rafl_lp(inst);
    bool integral = true;
    for (const auto& row : sol.x) {
      for (const Rat& v : row) {
        if (v != 0 && v != 1) integral = false;
      }
    }
    for (const auto& row : sol.y) {
      for (const Rat& v : row) {
        if (v != 0 && v != 1) integral = false;
      }
    }
    if (!integral) continue;
    ++integral_seen;
    CHECK(oracle_rafl(inst).cost == sol.objective);
  }
  CHECK(integral_seen > 5);
}

TEST_CASE("oracle_rand: tree-shaped graphs have unique paths") {
  RandInstance inst;
  inst.universe = make_universe({{"p1", 2}, {"p2", 1}});
  inst.graph = make_graph(4, {{0, 1, "1"}, {1, 2, "3"}, {1, 3, "2"}}, 0);
  inst.terminals = {make_terminal("t1", 2, {0}, 2), make_terminal("t2", 3, {0, 1}, 2)};
  auto result = oracle_rand(inst);
  RandSolution expected{{{2, 1, 0}, {3, 1, 0}}};
  CHECK(result.cost == eval_rand_cost(expected, inst));
  CHECK(result.solution.paths == expected.paths);
}

TEST_CASE("oracle_rand: the three-node path example costs 4") {
  RandInstance inst;
  inst.universe = make_universe({{"p1", 1}, {"p2", 1}});
  inst.graph = make_graph(3, {{0, 1, "1"}, {1, 2, "1"}}, 0);
  inst.terminals = {make_terminal("t1", 1, {0}, 2), make_terminal("t2", 2, {0, 1}, 2)};
  auto result = oracle_rand(inst);
  CHECK(result.cost == 4);
}

TEST_CASE("oracle_rand: disjoint demands decompose into shortest paths") {
  std::mt19937_64 rng(163);
  int rounds = 0;
  while (rounds < 15) {
    GeneratorConfig config;
    config.seed = rng();
    config.nodes = 6;
    config.terminals = 3;
    config.packets = 6;
    config.branching = 6;
    auto inst = generate_rand(config);
    // Keep only instances whose demands are pairwise disjoint.
    bool disjoint = true;
    for (size_t i = 0; i < inst.terminals.size(); ++i) {
      for (size_t j = i + 1; j < inst.terminals.size(); ++j) {
        if (inst.terminals[i].demand.intersects(inst.terminals[j].demand)) disjoint = false;
      }
    }
    if (!disjoint) continue;
    ++rounds;
    auto result = oracle_rand(inst, 500'000);
    auto metric = ShortestPathMetric::compute(
        inst.graph, [&] {
          std::vector<int> needed = {inst.graph.source};
          for (const Terminal& t : inst.terminals) needed.push_back(t.node);
          return needed;
        }());
    Rat expected = 0;
    for (const Terminal& t : inst.terminals) {
      expected += Rat(static_cast<long>(inst.universe.weight_of(t.demand))) *
                  metric.dist(t.node, inst.graph.source);
    }
    CHECK(result.cost == expected);
  }
}

TEST_CASE("oracle_rand lower-bounds every solver output") {
  std::mt19937_64 rng(167);
  int rounds = 0;
  while (rounds < 20) {
    GeneratorConfig config;
    config.seed = rng();
    config.nodes = 6;
    config.terminals = 3;
    config.packets = 3;
    config.edge_density = rat_from_string("1/3");
    auto inst = generate_rand(config);
    RandOracleResult opt;
    try {
      opt = oracle_rand(inst, 500'000);
    } catch (const CapExceededError&) {
      continue;
    }
    ++rounds;
    CHECK(opt.cost <= solve_rand_end_to_end(inst, {RandVariant::per_node_steiner}).cost);
    CHECK(opt.cost <= solve_rand_end_to_end(inst, {RandVariant::prim}).cost);
    CHECK(eval_rand_cost(opt.solution, inst) == opt.cost);
  }
}

TEST_CASE("oracle_rand: cap refusal") {
  GeneratorConfig config;
  config.seed = 9;
  config.nodes = 8;
  config.terminals = 4;
  config.packets = 2;
  config.edge_density = Rat(3);
  auto inst = generate_rand(config);
  CHECK_THROWS_AS(oracle_rand(inst, 5), CapExceededError);
}
