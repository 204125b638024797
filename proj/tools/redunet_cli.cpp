// Command-line front end: instance generation, solving, oracles, evaluation
// and the ratio/bench harnesses. Machine-readable records go to stdout (one
// JSON object per line, deterministic for a fixed seed); human summaries and
// timings go to stderr.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"

#include "redunet/generator.hpp"
#include "redunet/io.hpp"
#include "redunet/laminar.hpp"
#include "redunet/oracle.hpp"
#include "redunet/rafl_solver.hpp"
#include "redunet/rand_solver.hpp"

using json = nlohmann::ordered_json;
using namespace redunet;

namespace {

struct SolveFlags {
  std::string problem;  // optional; consistency check against the file
  std::string variant = "steiner";
  std::string steiner = "mst";
  std::string alpha = "3";
  std::string lp_mode = "exact";
};

long long env_cap(const char* name, long long fallback) {
  const char* v = std::getenv(name);
  if (!v) return fallback;
  return std::atoll(v);
}

RandSolverConfig rand_config(const SolveFlags& flags) {
  RandSolverConfig config;
  config.variant = flags.variant == "prim" ? RandVariant::prim : RandVariant::per_node_steiner;
  config.steiner =
      flags.steiner == "exact" ? SteinerKind::exact_capped : SteinerKind::mst_approx;
  config.steiner_cap = static_cast<int>(env_cap("REDUNET_STEINER_CAP", 12));
  return config;
}

void check_problem(const SolveFlags& flags, const std::string& actual) {
  if (!flags.problem.empty() && flags.problem != actual) {
    throw std::runtime_error("--problem " + flags.problem + " does not match the " + actual +
                             " instance file");
  }
}

int steiner_alpha(const SolveFlags& flags) { return flags.steiner == "exact" ? 1 : 2; }

// 2 * steiner factor * (floor(log2 P) + 1) on a preprocessed instance,
// doubled again by preprocessing; the Prim variant carries its own constant.
Rat rand_bound(const SolveFlags& flags, int node_count) {
  int logs = floor_log2(static_cast<uint64_t>(node_count)) + 1;
  if (flags.variant == "prim") return Rat(8 * logs);
  return Rat(4 * steiner_alpha(flags) * logs);
}

Rat rafl_bound(const Rat& alpha) {
  return std::max(Rat(9 * alpha), Rat(18 * alpha / (alpha - 1)));
}

json solve_rand_record(const RandInstance& inst, const SolveFlags& flags,
                       const std::string& out_path, RandResult* result_out = nullptr) {
  RandResult result = solve_rand_end_to_end(inst, rand_config(flags));
  json record;
  record["record"] = "solve";
  record["problem"] = "rand";
  record["variant"] = flags.variant;
  record["steiner"] = flags.steiner;
  record["cost"] = rat_to_string(result.cost);
  record["cost_approx"] = rat_to_double(result.cost);
  record["tree_nodes"] = result.stats.node_count;
  record["tree_depth"] = result.stats.depth;
  json collections = json::array();
  for (const Rat& c : result.stats.collection_costs) collections.push_back(rat_to_string(c));
  record["collection_costs"] = collections;
  if (!out_path.empty()) {
    write_file(out_path, serialize_solution(result.solution, inst));
    record["solution_file"] = out_path;
  }
  if (result_out) *result_out = std::move(result);
  return record;
}

json solve_rafl_record(const RaflInstance& inst, const SolveFlags& flags,
                       const std::string& out_path, RaflResult* result_out = nullptr) {
  Rat alpha = rat_from_string(flags.alpha);
  LpMode mode = flags.lp_mode == "float" ? LpMode::floating : LpMode::exact;
  RaflResult result = solve_rafl(inst, alpha, mode);
  const RaflCertificate& cert = result.certificate;
  json record;
  record["record"] = "solve";
  record["problem"] = "rafl";
  record["alpha"] = rat_to_string(alpha);
  record["lp_mode"] = flags.lp_mode;
  record["lp_value"] = rat_to_string(cert.lp_value);
  record["cost"] = rat_to_string(cert.total_cost);
  record["cost_approx"] = rat_to_double(cert.total_cost);
  record["facility_cost"] = rat_to_string(cert.facility_cost);
  record["routing_cost"] = rat_to_string(cert.routing_cost);
  record["copy_facility_cost"] = rat_to_string(cert.copy_facility_cost);
  record["opened_copies"] = cert.copies.size();
  json checks;
  checks["routing"] = cert.routing_ok;
  checks["filter_mass"] = cert.filter_mass_ok;
  checks["paying_bound"] = cert.paying_bound_ok;
  checks["copy_structure"] = cert.copy_structure_ok;
  checks["level_discipline"] = cert.level_discipline_ok;
  checks["copy_cost"] = cert.copy_cost_ok;
  checks["total_vs_lp"] = cert.total_ok;
  record["certificate"] = checks;
  record["certificate_ok"] = cert.all_ok();
  if (!out_path.empty()) {
    write_file(out_path, serialize_solution(result.assignment, inst));
    record["solution_file"] = out_path;
  }
  if (result_out) *result_out = std::move(result);
  return record;
}

void emit(const json& record, const std::string& summary) {
  std::cout << record.dump() << "\n";
  if (!summary.empty()) std::cerr << summary << "\n";
}

GeneratorConfig make_config(uint64_t seed, const std::string& problem, int nodes, int terminals,
                            int packets, int facilities, const std::string& density,
                            int branching, int weight_max, int cost_max, int lambda_max) {
  GeneratorConfig config;
  config.seed = seed;
  config.nodes = nodes;
  config.terminals = terminals;
  config.packets = packets;
  config.facilities = facilities;
  config.edge_density = rat_from_string(density);
  config.branching = branching;
  config.weight_max = weight_max;
  config.cost_max = cost_max;
  config.lambda_max = lambda_max;
  (void)problem;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"redunet: redundancy-aware network design and facility location solvers"};
  app.require_subcommand(1);

  // Shared generator flags.
  std::string problem = "rand";
  uint64_t seed = 1;
  int nodes = 8, terminals = 3, packets = 4, facilities = 2, branching = 2;
  int weight_max = 4, cost_max = 10, lambda_max = 4;
  std::string density = "1/2";
  auto add_gen_flags = [&](CLI::App* cmd) {
    cmd->add_option("--problem", problem, "rand or rafl");
    cmd->add_option("--seed", seed, "generator seed");
    cmd->add_option("--nodes", nodes, "graph node count");
    cmd->add_option("--terminals", terminals, "terminal count");
    cmd->add_option("--packets", packets, "packet count");
    cmd->add_option("--facilities", facilities, "facility count (rafl)");
    cmd->add_option("--density", density, "extra edges as a fraction of nodes");
    cmd->add_option("--branching", branching, "laminar split arity (1 = chain)");
    cmd->add_option("--weight-max", weight_max, "max packet weight");
    cmd->add_option("--cost-max", cost_max, "max edge cost");
    cmd->add_option("--lambda-max", lambda_max, "max facility lambda (rafl)");
  };

  SolveFlags solve_flags;
  auto add_solve_flags = [&](CLI::App* cmd) {
    cmd->add_option("--variant", solve_flags.variant, "rand variant: steiner or prim")
        ->check(CLI::IsMember({"steiner", "prim"}));
    cmd->add_option("--steiner", solve_flags.steiner, "steiner subroutine: mst or exact")
        ->check(CLI::IsMember({"mst", "exact"}));
    cmd->add_option("--alpha", solve_flags.alpha, "rafl filtering parameter (> 1)");
    cmd->add_option("--lp-mode", solve_flags.lp_mode, "lp solve mode: exact or float")
        ->check(CLI::IsMember({"exact", "float"}));
  };

  std::string in_path, out_path, solution_path;
  long long cap = env_cap("REDUNET_ORACLE_CAP", 10'000'000);
  int bench_count = 10;
  bool with_oracle = false;

  auto* gen = app.add_subcommand("gen", "generate a random instance");
  add_gen_flags(gen);
  gen->add_option("--out", out_path, "write the instance here instead of stdout");

  auto* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("--in", in_path, "instance file")->required();
  solve->add_option("--problem", solve_flags.problem, "expected problem kind (checked)");
  add_solve_flags(solve);
  solve->add_option("--out", out_path, "write the solution file here");

  auto* oracle = app.add_subcommand("oracle", "exact optimum by brute force");
  oracle->add_option("--in", in_path, "instance file")->required();
  oracle->add_option("--cap", cap, "enumeration cap");
  oracle->add_option("--out", out_path, "write the optimal solution file here");

  auto* eval = app.add_subcommand("eval", "re-cost a solution file");
  eval->add_option("--in", in_path, "instance file")->required();
  eval->add_option("--solution", solution_path, "solution file")->required();

  auto* ratio = app.add_subcommand("ratio", "solve + oracle + approximation ratio");
  ratio->add_option("--in", in_path, "instance file")->required();
  ratio->add_option("--problem", solve_flags.problem, "expected problem kind (checked)");
  add_solve_flags(ratio);
  ratio->add_option("--cap", cap, "oracle enumeration cap");

  auto* bench = app.add_subcommand("bench", "sweep generated instances");
  add_gen_flags(bench);
  add_solve_flags(bench);
  bench->add_option("--count", bench_count, "number of seeds (seed, seed+1, ...)");
  bench->add_flag("--with-oracle", with_oracle, "also run the oracle and report ratios");
  bench->add_option("--cap", cap, "oracle enumeration cap");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      std::string text;
      if (problem == "rafl") {
        text = serialize(generate_rafl(make_config(seed, problem, nodes, terminals, packets,
                                                   facilities, density, branching, weight_max,
                                                   cost_max, lambda_max)));
      } else if (problem == "rand") {
        text = serialize(generate_rand(make_config(seed, problem, nodes, terminals, packets,
                                                   facilities, density, branching, weight_max,
                                                   cost_max, lambda_max)));
      } else {
        throw std::runtime_error("unknown problem '" + problem + "'");
      }
      if (out_path.empty()) {
        std::cout << text;
      } else {
        write_file(out_path, text);
        json record;
        record["record"] = "gen";
        record["problem"] = problem;
        record["seed"] = seed;
        record["file"] = out_path;
        emit(record, "wrote " + out_path);
      }
      return 0;
    }

    if (solve->parsed()) {
      AnyInstance any = load_instance(in_path);
      if (std::holds_alternative<RandInstance>(any)) {
        check_problem(solve_flags, "rand");
        json record = solve_rand_record(std::get<RandInstance>(any), solve_flags, out_path);
        emit(record, "rand cost " + record["cost"].get<std::string>());
      } else {
        check_problem(solve_flags, "rafl");
        json record = solve_rafl_record(std::get<RaflInstance>(any), solve_flags, out_path);
        emit(record, "rafl cost " + record["cost"].get<std::string>() +
                         (record["certificate_ok"].get<bool>() ? " (certificate ok)"
                                                               : " (CERTIFICATE VIOLATED)"));
      }
      return 0;
    }

    if (oracle->parsed()) {
      AnyInstance any = load_instance(in_path);
      json record;
      record["record"] = "oracle";
      if (std::holds_alternative<RandInstance>(any)) {
        const auto& inst = std::get<RandInstance>(any);
        auto result = oracle_rand(inst, cap);
        record["problem"] = "rand";
        record["cost"] = rat_to_string(result.cost);
        record["cost_approx"] = rat_to_double(result.cost);
        record["explored"] = result.explored;
        if (!out_path.empty()) {
          write_file(out_path, serialize_solution(result.solution, inst));
          record["solution_file"] = out_path;
        }
      } else {
        const auto& inst = std::get<RaflInstance>(any);
        auto result = oracle_rafl(inst, cap);
        record["problem"] = "rafl";
        record["cost"] = rat_to_string(result.cost);
        record["cost_approx"] = rat_to_double(result.cost);
        record["explored"] = result.explored;
        if (!out_path.empty()) {
          write_file(out_path, serialize_solution(result.assignment, inst));
          record["solution_file"] = out_path;
        }
      }
      emit(record, "optimum " + record["cost"].get<std::string>());
      return 0;
    }

    if (eval->parsed()) {
      AnyInstance any = load_instance(in_path);
      json record;
      record["record"] = "eval";
      if (std::holds_alternative<RandInstance>(any)) {
        const auto& inst = std::get<RandInstance>(any);
        auto sol = parse_rand_solution(read_file(solution_path), inst);
        Rat cost = eval_rand_cost(sol, inst);
        record["problem"] = "rand";
        record["cost"] = rat_to_string(cost);
        record["cost_approx"] = rat_to_double(cost);
      } else {
        const auto& inst = std::get<RaflInstance>(any);
        auto a = parse_rafl_solution(read_file(solution_path), inst);
        RaflCost cost = eval_rafl_cost(a, inst);
        record["problem"] = "rafl";
        record["cost"] = rat_to_string(cost.total());
        record["cost_approx"] = rat_to_double(cost.total());
        record["facility_cost"] = rat_to_string(cost.facility);
        record["routing_cost"] = rat_to_string(cost.routing);
      }
      emit(record, "cost " + record["cost"].get<std::string>());
      return 0;
    }

    if (ratio->parsed()) {
      AnyInstance any = load_instance(in_path);
      json record;
      record["record"] = "ratio";
      Rat cost, opt, bound;
      if (std::holds_alternative<RandInstance>(any)) {
        const auto& inst = std::get<RandInstance>(any);
        check_problem(solve_flags, "rand");
        RandResult result;
        json solve_rec = solve_rand_record(inst, solve_flags, "", &result);
        auto oracle_result = oracle_rand(inst, cap);
        cost = result.cost;
        opt = oracle_result.cost;
        bound = rand_bound(solve_flags, result.stats.node_count);
        record["problem"] = "rand";
        record["tree_nodes"] = result.stats.node_count;
      } else {
        const auto& inst = std::get<RaflInstance>(any);
        check_problem(solve_flags, "rafl");
        RaflResult result;
        json solve_rec = solve_rafl_record(inst, solve_flags, "", &result);
        auto oracle_result = oracle_rafl(inst, cap);
        cost = result.certificate.total_cost;
        opt = oracle_result.cost;
        bound = rafl_bound(rat_from_string(solve_flags.alpha));
        record["problem"] = "rafl";
      }
      record["cost"] = rat_to_string(cost);
      record["opt"] = rat_to_string(opt);
      Rat ratio_value = opt == 0 ? Rat(1) : Rat(cost / opt);
      record["ratio"] = rat_to_string(ratio_value);
      record["ratio_approx"] = rat_to_double(ratio_value);
      record["bound"] = rat_to_string(bound);
      record["within_bound"] = ratio_value <= bound;
      emit(record, "ratio " + std::to_string(rat_to_double(ratio_value)) + " (bound " +
                       rat_to_string(bound) + ")");
      return 0;
    }

    if (bench->parsed()) {
      std::cerr << "seed      cost            opt             ratio   ms\n";
      for (int i = 0; i < bench_count; ++i) {
        GeneratorConfig config = make_config(seed + i, problem, nodes, terminals, packets,
                                             facilities, density, branching, weight_max,
                                             cost_max, lambda_max);
        json record;
        record["record"] = "bench";
        record["problem"] = problem;
        record["seed"] = config.seed;
        auto start = std::chrono::steady_clock::now();
        Rat cost;
        Rat opt;
        bool have_opt = false;
        if (problem == "rafl") {
          RaflInstance inst = generate_rafl(config);
          RaflResult result =
              solve_rafl(inst, rat_from_string(solve_flags.alpha),
                         solve_flags.lp_mode == "float" ? LpMode::floating : LpMode::exact);
          cost = result.certificate.total_cost;
          record["cost"] = rat_to_string(cost);
          record["certificate_ok"] = result.certificate.all_ok();
          if (with_oracle) {
            opt = oracle_rafl(inst, cap).cost;
            have_opt = true;
          }
        } else {
          RandInstance inst = generate_rand(config);
          RandResult result = solve_rand_end_to_end(inst, rand_config(solve_flags));
          cost = result.cost;
          record["cost"] = rat_to_string(cost);
          record["tree_nodes"] = result.stats.node_count;
          if (with_oracle) {
            opt = oracle_rand(inst, cap).cost;
            have_opt = true;
          }
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              start)
                        .count();
        double ratio_value = 0;
        if (have_opt) {
          record["opt"] = rat_to_string(opt);
          ratio_value = opt == 0 ? 1.0 : rat_to_double(Rat(cost / opt));
          record["ratio_approx"] = ratio_value;
        } else {
          record["opt"] = nullptr;
        }
        std::cout << record.dump() << "\n";
        char line[160];
        std::snprintf(line, sizeof(line), "%-9llu %-15s %-15s %-7.3f %.1f",
                      static_cast<unsigned long long>(config.seed),
                      rat_to_string(cost).c_str(),
                      have_opt ? rat_to_string(opt).c_str() : "-", ratio_value, ms);
        std::cerr << line << "\n";
      }
      return 0;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
