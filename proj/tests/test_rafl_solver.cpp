#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "redunet/generator.hpp"
#include "redunet/oracle.hpp"
#include "redunet/rafl_solver.hpp"
#include "testutil.hpp"

using namespace redunet;
using namespace redunet::testutil;

namespace {

// Line graph with the terminal at node 0 and facilities strung out at the
// given distances.
RaflInstance two_facility_line(const char* d1, const char* d2) {
  RaflInstance inst;
  inst.universe = make_universe({{"p1", 1}});
  inst.graph = make_graph(3, {{0, 1, d1}, {0, 2, d2}});
  inst.terminals = {make_terminal("t1", 0, {0}, 1)};
  inst.facilities = {{"f1", 1, Rat(1)}, {"f2", 2, Rat(1)}};
  return inst;
}

FractionalSolution even_split(const RaflInstance& inst) {
  FractionalSolution star;
  size_t nf = inst.facilities.size();
  star.x.assign(inst.terminals.size(), std::vector<Rat>(nf, Rat(1, static_cast<long>(nf))));
  star.y.assign(nf, std::vector<Rat>(inst.universe.size(), Rat(1, static_cast<long>(nf))));
  star.objective = 0;
  return star;
}

GeneratorConfig rafl_config(uint64_t seed) {
  GeneratorConfig config;
  config.seed = seed;
  config.nodes = 6;
  config.terminals = 5;
  config.packets = 5;
  config.facilities = 4;
  config.branching = 3;
  return config;
}

}  // namespace

TEST_CASE("filter: a concentrated solution is unchanged") {
  auto inst = two_facility_line("1", "9");
  FractionalSolution star;
  star.x = {{Rat(1), Rat(0)}};
  star.y = {{Rat(1)}, {Rat(0)}};
  auto fs = filter(star, inst, Rat(3));
  CHECK(fs.x[0][0] == 1);
  CHECK(fs.x[0][1] == 0);
  CHECK(fs.candidates[0] == std::vector<int>{0});
  CHECK(fs.cr_star[0] == 1);
}

TEST_CASE("filter: both facilities within the threshold survive") {
  auto inst = two_facility_line("1", "9");
  auto fs = filter(even_split(inst), inst, Rat(3));
  // C_r^* = 5, threshold 15: both kept.
  CHECK(fs.cr_star[0] == 5);
  CHECK(fs.candidates[0] == std::vector<int>{0, 1});
  CHECK(fs.x[0][0] == rat_from_string("1/2"));
}

TEST_CASE("filter: distant facilities are dropped and mass renormalizes") {
  auto inst = two_facility_line("1", "100");
  FractionalSolution star;
  star.x = {{rat_from_string("9/10"), rat_from_string("1/10")}};
  star.y = {{rat_from_string("9/10")}, {rat_from_string("1/10")}};
  auto fs = filter(star, inst, Rat(3));
  // C_r^* = 10.9, threshold 32.7: the facility at distance 100 is dropped.
  CHECK(fs.cr_star[0] == rat_from_string("109/10"));
  CHECK(fs.candidates[0] == std::vector<int>{0});
  CHECK(fs.x[0][0] == 1);
  CHECK(fs.x[0][1] == 0);
  CHECK(fs.y[0][0] == 1);
}

TEST_CASE("filter requires alpha above one") {
  auto inst = two_facility_line("1", "9");
  CHECK_THROWS_AS(filter(even_split(inst), inst, Rat(1)), ValidationError);
}

TEST_CASE("covers: weighted strict-half semantics") {
  auto universe = make_universe({{"p1", 2}, {"p2", 2}, {"p3", 1}});
  PacketSet demand = make_set(3, {0, 1});  // w = 4
  SUBCASE("a superset covers") {
    CHECK(covers(universe, make_set(3, {0, 1, 2}), demand));
  }
  SUBCASE("the empty union does not cover") {
    CHECK(!covers(universe, make_set(3, {}), demand));
  }
  SUBCASE("exactly half remaining does not cover (strict)") {
    CHECK(!covers(universe, make_set(3, {0}), demand));  // residual w = 2, half = 2
  }
}

TEST_CASE("classify: the first terminal processed is always paying") {
  std::mt19937_64 rng(131);
  for (int round = 0; round < 20; ++round) {
    auto inst = generate_rafl(rafl_config(rng()));
    auto fs = filter(solve_rafl_lp(inst), inst, Rat(3));
    auto cs = classify(fs, inst);
    CHECK(!cs.is_free[cs.processing_order.front()]);
  }
}

TEST_CASE("classify: an identical twin becomes free with the payer as cover") {
  RaflInstance inst;
  inst.universe = make_universe({{"p1", 1}});
  inst.graph = make_graph(2, {{0, 1, "1"}});
  inst.terminals = {make_terminal("t1", 0, {0}, 1), make_terminal("t2", 0, {0}, 1)};
  inst.facilities = {{"f1", 1, Rat(2)}};
  auto fs = filter(solve_rafl_lp(inst), inst, Rat(3));
  auto cs = classify(fs, inst);
  CHECK(!cs.is_free[0]);
  CHECK(cs.is_free[1]);
  CHECK(cs.temp_assign[1] == 0);
  CHECK(cs.cov[1] == std::vector<int>{0});
  CHECK(cs.pay[0] == std::vector<int>{0});
}

TEST_CASE("classify: every free terminal is covered by its cover set") {
  std::mt19937_64 rng(137);
  for (int round = 0; round < 40; ++round) {
    auto inst = generate_rafl(rafl_config(rng()));
    auto fs = filter(solve_rafl_lp(inst), inst, Rat(3));
    auto cs = classify(fs, inst);
    for (size_t t = 0; t < inst.terminals.size(); ++t) {
      if (cs.is_free[t]) {
        CHECK(covers(inst, cs.cov[t], static_cast<int>(t)));
        CHECK(cs.temp_assign[t] >= 0);
      } else {
        CHECK(cs.level[t] >= 0);
      }
    }
  }
}

TEST_CASE("open: a lone free terminal lands on the cheapest covering facility") {
  // Payer t1 reaches f1 (expensive) and f2 (cheap); the free twin opens the
  // cheapest facility in the payer's candidate set, and both land there.
  RaflInstance inst;
  inst.universe = make_universe({{"p1", 1}});
  inst.graph = make_graph(3, {{0, 1, "1"}, {0, 2, "1"}});
  inst.terminals = {make_terminal("t1", 0, {0}, 1), make_terminal("t2", 0, {0}, 1)};
  inst.facilities = {{"f1", 1, Rat(5)}, {"f2", 2, Rat(1)}};
  auto fs = filter(solve_rafl_lp(inst), inst, Rat(3));
  FilteredSolution wide = fs;
  // Force both facilities into the candidate sets regardless of the LP tilt.
  wide.x = {{rat_from_string("1/2"), rat_from_string("1/2")},
            {rat_from_string("1/2"), rat_from_string("1/2")}};
  wide.candidates = {{0, 1}, {0, 1}};
  wide.cr_star = {Rat(1), Rat(1)};
  wide.cf = {Rat(3), Rat(3)};
  auto cs = classify(wide, inst);
  REQUIRE(!cs.is_free[0]);
  REQUIRE(cs.is_free[1]);
  std::vector<FacilityCopy> copies;
  auto a = open_facilities(cs, wide, inst, &copies);
  CHECK(a.facility_of[0] == 1);
  CHECK(a.facility_of[1] == 1);
  REQUIRE(copies.size() == 2);  // one free opening + one paying copy
  CHECK(copies[0].opener == 1);
  CHECK(copies[0].fpay == std::vector<int>{0});
}

TEST_CASE("open: with no free terminals everyone takes their cheapest candidate") {
  RaflInstance inst;
  inst.universe = make_universe({{"p1", 1}, {"p2", 1}});
  inst.graph = make_graph(3, {{0, 1, "1"}, {0, 2, "1"}});
  inst.terminals = {make_terminal("t1", 1, {0}, 2), make_terminal("t2", 2, {1}, 2)};
  inst.facilities = {{"f1", 0, Rat(2)}, {"f2", 0, Rat(3)}};
  auto fs = filter(solve_rafl_lp(inst), inst, Rat(3));
  auto cs = classify(fs, inst);
  CHECK(!cs.is_free[0]);
  CHECK(!cs.is_free[1]);
  auto a = open_facilities(cs, fs, inst);
  for (size_t t = 0; t < inst.terminals.size(); ++t) {
    int cheapest = fs.candidates[t].front();
    for (int f : fs.candidates[t]) {
      if (inst.facilities[f].lambda < inst.facilities[cheapest].lambda) cheapest = f;
    }
    CHECK(a.facility_of[t] == cheapest);
  }
}

TEST_CASE("solve_rafl: a 1x1 instance meets the LP value exactly") {
  RaflInstance inst;
  inst.universe = make_universe({{"p1", 2}});
  inst.graph = make_graph(2, {{0, 1, "3"}});
  inst.terminals = {make_terminal("t1", 1, {0}, 1)};
  inst.facilities = {{"f1", 0, Rat(2)}};
  auto result = solve_rafl(inst);
  CHECK(result.certificate.total_cost == result.certificate.lp_value);
  CHECK(result.certificate.total_cost == 2 * 2 + 2 * 3);
  CHECK(result.certificate.all_ok());
}

TEST_CASE("solve_rafl: co-located twins pay the facility once") {
  RaflInstance inst;
  inst.universe = make_universe({{"p1", 1}, {"p2", 2}});
  inst.graph = make_graph(1, {});
  inst.terminals = {make_terminal("t1", 0, {0, 1}, 2), make_terminal("t2", 0, {0, 1}, 2)};
  inst.facilities = {{"f1", 0, Rat(3)}};
  auto result = solve_rafl(inst);
  CHECK(result.certificate.total_cost == 9);  // lambda * w(D), no routing
  CHECK(result.certificate.all_ok());
}

TEST_CASE("solve_rafl: certificate bounds hold across random instances and alphas") {
  std::mt19937_64 rng(139);
  for (int round = 0; round < 40; ++round) {
    auto inst = generate_rafl(rafl_config(rng()));
    Rat alpha = round % 3 == 0 ? Rat(2) : round % 3 == 1 ? Rat(3) : Rat(4);
    auto result = solve_rafl(inst, alpha);
    const RaflCertificate& cert = result.certificate;
    CHECK(cert.routing_ok);
    CHECK(cert.filter_mass_ok);
    CHECK(cert.paying_bound_ok);
    CHECK(cert.copy_structure_ok);
    CHECK(cert.level_discipline_ok);
    CHECK(cert.copy_cost_ok);
    CHECK(cert.total_ok);
    // Merging copies into physical facilities never costs more than the
    // copy accounting.
    CHECK(cert.facility_cost <= cert.copy_facility_cost);
    // The assignment is total.
    for (int f : result.assignment.facility_of) CHECK(f >= 0);
  }
}

TEST_CASE("solve_rafl: 27x guarantee against the brute-force optimum") {
  std::mt19937_64 rng(149);
  for (int round = 0; round < 25; ++round) {
    GeneratorConfig config = rafl_config(rng());
    config.terminals = 4;
    config.facilities = 3;
    auto inst = generate_rafl(config);
    auto result = solve_rafl(inst, Rat(3));
    auto opt = oracle_rafl(inst);
    CHECK(result.certificate.lp_value <= opt.cost);
    CHECK(result.certificate.total_cost <= 27 * opt.cost);
  }
}

TEST_CASE("solve_rafl: fractional LP optimum still rounds within the bounds") {
  // Triangle gadget: each terminal sits one hop from two facilities and
  // three hops from the third; all demand the same packet. The LP splits
  // every terminal 1/2-1/2 (value 6), while the best integral solution
  // costs 7, so the rounding phase really does round here.
  RaflInstance inst;
  inst.universe = make_universe({{"p1", 1}});
  inst.graph = make_graph(6, {{0, 3, "1"}, {1, 3, "1"}, {1, 4, "1"}, {2, 4, "1"},
                              {2, 5, "1"}, {0, 5, "1"}});
  inst.terminals = {make_terminal("t12", 3, {0}, 1), make_terminal("t23", 4, {0}, 1),
                    make_terminal("t13", 5, {0}, 1)};
  inst.facilities = {{"f1", 0, Rat(2)}, {"f2", 1, Rat(2)}, {"f3", 2, Rat(2)}};
  auto lp = solve_rafl_lp(inst);
  CHECK(lp.objective == 6);
  bool fractional = false;
  for (const auto& row : lp.x) {
    for (const Rat& v : row) {
      if (v != 0 && v != 1) fractional = true;
    }
  }
  CHECK(fractional);
  auto opt = oracle_rafl(inst);
  CHECK(opt.cost == 7);
  auto result = solve_rafl(inst, Rat(3));
  CHECK(result.certificate.all_ok());
  CHECK(result.certificate.total_cost <= 27 * lp.objective);
  CHECK(opt.cost <= result.certificate.total_cost);
}

TEST_CASE("solve_rafl: float LP mode stays within the certified bounds") {
  std::mt19937_64 rng(151);
  for (int round = 0; round < 10; ++round) {
    auto inst = generate_rafl(rafl_config(rng()));
    auto result = solve_rafl(inst, Rat(3), LpMode::floating);
    CHECK(result.certificate.routing_ok);
    CHECK(result.certificate.total_ok);
  }
}
