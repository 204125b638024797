#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "redunet/generator.hpp"
#include "redunet/io.hpp"
#include "redunet/laminar.hpp"
#include "redunet/rand_solver.hpp"
#include "redunet/rafl_solver.hpp"
#include "testutil.hpp"

using namespace redunet;
using namespace redunet::testutil;

TEST_CASE("round trip: canonical single-terminal file") {
  std::string text =
      "redunet instance v1\n"
      "problem rand\n"
      "packets 2\n"
      "p1 2\n"
      "p2 1\n"
      "nodes 2\n"
      "edges 1\n"
      "0 1 3/2\n"
      "source 0\n"
      "terminals 1\n"
      "t1 1 1 p1\n";
  auto any = parse_instance(text);
  REQUIRE(std::holds_alternative<RandInstance>(any));
  CHECK(serialize(std::get<RandInstance>(any)) == text);
}

TEST_CASE("round trip: serialize-parse-serialize is the identity on generated instances") {
  std::mt19937_64 rng(173);
  for (int round = 0; round < 250; ++round) {
    GeneratorConfig config;
    config.seed = rng();
    config.nodes = 3 + static_cast<int>(rng() % 8);
    config.terminals = 1 + static_cast<int>(rng() % 6);
    config.packets = 1 + static_cast<int>(rng() % 8);
    config.facilities = 1 + static_cast<int>(rng() % 4);
    if (round % 2 == 0) {
      auto inst = generate_rand(config);
      std::string text = serialize(inst);
      CHECK(serialize(std::get<RandInstance>(parse_instance(text))) == text);
    } else {
      auto inst = generate_rafl(config);
      std::string text = serialize(inst);
      CHECK(serialize(std::get<RaflInstance>(parse_instance(text))) == text);
    }
  }
}

TEST_CASE("parser: unknown packet reference names the packet") {
  std::string text =
      "redunet instance v1\n"
      "problem rand\n"
      "packets 1\n"
      "p1 2\n"
      "nodes 2\n"
      "edges 1\n"
      "0 1 1\n"
      "source 0\n"
      "terminals 1\n"
      "t1 1 1 p9\n";
  CHECK_THROWS_WITH_AS(parse_instance(text), doctest::Contains("p9"), ParseError);
}

TEST_CASE("parser: malformed input reports the line") {
  std::string text =
      "redunet instance v1\n"
      "problem rand\n"
      "packets 1\n"
      "p1 two\n";
  CHECK_THROWS_WITH_AS(parse_instance(text), doctest::Contains("line 4"), ParseError);
}

TEST_CASE("parser: non-laminar demands are rejected") {
  std::string text =
      "redunet instance v1\n"
      "problem rand\n"
      "packets 3\n"
      "p1 1\n"
      "p2 1\n"
      "p3 1\n"
      "nodes 2\n"
      "edges 1\n"
      "0 1 1\n"
      "source 0\n"
      "terminals 2\n"
      "t1 1 2 p1 p2\n"
      "t2 1 2 p2 p3\n";
  CHECK_THROWS_WITH_AS(parse_instance(text), doctest::Contains("laminarity"), ValidationError);
}

TEST_CASE("parser: comments and blank lines are tolerated") {
  std::string text =
      "# generated for a test\n"
      "redunet instance v1\n"
      "problem rand\n\n"
      "packets 1\n"
      "p1 2   # heavy packet\n"
      "nodes 2\n"
      "edges 1\n"
      "0 1 1\n"
      "source 0\n"
      "terminals 1\n"
      "t1 1 1 p1\n";
  CHECK_NOTHROW(parse_instance(text));
}

TEST_CASE("generator: identical seeds give identical instances") {
  GeneratorConfig config;
  config.seed = 424242;
  config.nodes = 10;
  config.terminals = 5;
  config.packets = 6;
  CHECK(serialize(generate_rand(config)) == serialize(generate_rand(config)));
  CHECK(serialize(generate_rafl(config)) == serialize(generate_rafl(config)));
}

TEST_CASE("generator: branching factor one yields a chain tree") {
  std::mt19937_64 rng(179);
  for (int round = 0; round < 30; ++round) {
    GeneratorConfig config;
    config.seed = rng();
    config.nodes = 5;
    config.terminals = 6;
    config.packets = 6;
    config.branching = 1;
    auto inst = generate_rand(config);
    auto tree = build_tree(inst);
    for (const auto& node : tree.nodes) CHECK(node.children.size() <= 1);
    CHECK(tree.depth() == tree.node_count() - 1);
  }
}

TEST_CASE("generator: demands are always laminar and the instance validates") {
  std::mt19937_64 rng(181);
  for (int round = 0; round < 200; ++round) {
    GeneratorConfig config;
    config.seed = rng();
    config.nodes = 3 + static_cast<int>(rng() % 10);
    config.terminals = 1 + static_cast<int>(rng() % 8);
    config.packets = 1 + static_cast<int>(rng() % 10);
    config.branching = 1 + static_cast<int>(rng() % 4);
    auto inst = generate_rand(config);
    CHECK_NOTHROW(validate_rand_instance(inst));
  }
}

TEST_CASE("solution files: rand round trip and eval consistency") {
  GeneratorConfig config;
  config.seed = 31337;
  config.nodes = 7;
  config.terminals = 4;
  config.packets = 4;
  auto inst = generate_rand(config);
  auto result = solve_rand_end_to_end(inst);
  std::string text = serialize_solution(result.solution, inst);
  auto parsed = parse_rand_solution(text, inst);
  CHECK(parsed.paths == result.solution.paths);
  CHECK(eval_rand_cost(parsed, inst) == result.cost);
  CHECK(serialize_solution(parsed, inst) == text);
}

TEST_CASE("solution files: rafl round trip and eval consistency") {
  GeneratorConfig config;
  config.seed = 31338;
  config.nodes = 6;
  config.terminals = 4;
  config.packets = 4;
  config.facilities = 3;
  auto inst = generate_rafl(config);
  auto result = solve_rafl(inst);
  std::string text = serialize_solution(result.assignment, inst);
  auto parsed = parse_rafl_solution(text, inst);
  CHECK(parsed.facility_of == result.assignment.facility_of);
  CHECK(eval_rafl_cost(parsed, inst).total() == result.certificate.total_cost);
}

TEST_CASE("solution files: missing terminals are rejected") {
  GeneratorConfig config;
  config.seed = 77;
  config.nodes = 5;
  config.terminals = 2;
  config.packets = 2;
  auto inst = generate_rand(config);
  std::string text =
      "redunet solution v1\n"
      "problem rand\n"
      "paths 0\n";
  CHECK_THROWS_WITH_AS(parse_rand_solution(text, inst), doctest::Contains("t1"), ParseError);
}
