#include "redunet/generator.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "redunet/laminar.hpp"

namespace redunet {

namespace {

// Thin wrapper over mt19937_64; bounded draws use rejection sampling so the
// stream is stable regardless of the standard library.
struct Rng {
  std::mt19937_64 engine;
  explicit Rng(uint64_t seed) : engine(seed) {}

  uint64_t next() { return engine(); }

  // Uniform in [0, bound).
  uint64_t below(uint64_t bound) {
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  int range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  bool coin(int num, int den) { return below(static_cast<uint64_t>(den)) < static_cast<uint64_t>(num); }
};

WeightedGraph random_graph(Rng& rng, const GeneratorConfig& config) {
  WeightedGraph g;
  g.node_count = config.nodes;
  std::set<std::pair<int, int>> present;
  auto add_edge = [&](int u, int v) {
    auto key = std::minmax(u, v);
    if (u == v || !present.insert(key).second) return false;
    Edge e;
    e.u = key.first;
    e.v = key.second;
    e.cost = Rat(rng.range(1, config.cost_max));
    g.edges.push_back(e);
    return true;
  };
  // Random spanning tree: each node attaches to an earlier one.
  for (int v = 1; v < config.nodes; ++v) add_edge(rng.range(0, v - 1), v);
  long long max_extra =
      static_cast<long long>(config.nodes) * (config.nodes - 1) / 2 - (config.nodes - 1);
  Rat target = Rat(config.nodes) * config.edge_density;
  mpz_class whole = target.get_num() / target.get_den();
  long long extra = std::min<long long>(max_extra, whole.get_si());
  for (long long added = 0; added < extra;) {
    int u = rng.range(0, config.nodes - 1);
    int v = rng.range(0, config.nodes - 1);
    if (add_edge(u, v)) ++added;
  }
  g.finalize();
  return g;
}

PacketUniverse random_universe(Rng& rng, const GeneratorConfig& config) {
  PacketUniverse u;
  for (int p = 0; p < config.packets; ++p) {
    u.ids.push_back("p" + std::to_string(p + 1));
    u.weights.push_back(rng.range(1, config.weight_max));
  }
  return u;
}

// Laminar family by recursive splitting; the root (full universe) is always
// the first entry.
std::vector<PacketSet> laminar_family(Rng& rng, int packets, int branching) {
  std::vector<PacketSet> family;
  auto split = [&](auto&& self, const std::vector<int>& members, bool is_root) -> void {
    PacketSet s(packets);
    for (int p : members) s.set(p);
    family.push_back(s);
    if (members.size() <= 1) return;
    if (!is_root && rng.coin(1, 4)) return;  // occasional early stop for shape variety
    if (branching <= 1) {
      // Single nested child: a random proper subset.
      int size = rng.range(1, static_cast<int>(members.size()) - 1);
      std::vector<int> shuffled = members;
      for (int i = static_cast<int>(shuffled.size()) - 1; i > 0; --i) {
        std::swap(shuffled[i], shuffled[rng.range(0, i)]);
      }
      shuffled.resize(size);
      std::sort(shuffled.begin(), shuffled.end());
      self(self, shuffled, false);
      return;
    }
    int parts = rng.range(2, std::min<int>(branching, static_cast<int>(members.size())));
    std::vector<std::vector<int>> buckets(parts);
    std::vector<int> shuffled = members;
    for (int i = static_cast<int>(shuffled.size()) - 1; i > 0; --i) {
      std::swap(shuffled[i], shuffled[rng.range(0, i)]);
    }
    for (int i = 0; i < parts; ++i) buckets[i].push_back(shuffled[i]);  // nonempty parts
    for (size_t i = parts; i < shuffled.size(); ++i) {
      buckets[rng.range(0, parts - 1)].push_back(shuffled[i]);
    }
    for (auto& bucket : buckets) {
      std::sort(bucket.begin(), bucket.end());
      self(self, bucket, false);
    }
  };
  std::vector<int> all(packets);
  for (int p = 0; p < packets; ++p) all[p] = p;
  split(split, all, true);
  return family;
}

std::vector<Terminal> random_terminals(Rng& rng, const GeneratorConfig& config,
                                       const std::vector<PacketSet>& family, int node_count) {
  std::vector<Terminal> terminals;
  for (int t = 0; t < config.terminals; ++t) {
    Terminal term;
    term.id = "t" + std::to_string(t + 1);
    term.node = rng.range(0, node_count - 1);
    term.demand = family[rng.below(family.size())];
    terminals.push_back(std::move(term));
  }
  return terminals;
}

void check_config(const GeneratorConfig& config) {
  if (config.nodes < 1 || config.packets < 1 || config.terminals < 0 || config.facilities < 1 ||
      config.weight_max < 1 || config.cost_max < 1 || config.lambda_max < 1 ||
      config.edge_density < 0) {
    throw ValidationError("generator config requires positive counts and ranges");
  }
}

}  // namespace

RandInstance generate_rand(const GeneratorConfig& config) {
  check_config(config);
  Rng rng(config.seed);
  RandInstance inst;
  inst.universe = random_universe(rng, config);
  inst.graph = random_graph(rng, config);
  inst.graph.source = rng.range(0, config.nodes - 1);
  auto family = laminar_family(rng, config.packets, config.branching);
  inst.terminals = random_terminals(rng, config, family, config.nodes);
  validate_rand_instance(inst);
  return inst;
}

RaflInstance generate_rafl(const GeneratorConfig& config) {
  check_config(config);
  Rng rng(config.seed);
  RaflInstance inst;
  inst.universe = random_universe(rng, config);
  inst.graph = random_graph(rng, config);
  auto family = laminar_family(rng, config.packets, config.branching);
  inst.terminals = random_terminals(rng, config, family, config.nodes);
  for (int f = 0; f < config.facilities; ++f) {
    Facility fac;
    fac.id = "f" + std::to_string(f + 1);
    fac.node = rng.range(0, config.nodes - 1);
    fac.lambda = Rat(rng.range(1, config.lambda_max));
    inst.facilities.push_back(std::move(fac));
  }
  validate_rafl_instance(inst);
  return inst;
}

}  // namespace redunet
