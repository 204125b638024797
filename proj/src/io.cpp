#include "redunet/io.hpp"

#include <fstream>
#include <sstream>

#include "redunet/laminar.hpp"

namespace redunet {

namespace {

std::string graph_section(const WeightedGraph& g) {
  std::ostringstream os;
  os << "nodes " << g.node_count << "\n";
  os << "edges " << g.edges.size() << "\n";
  for (const Edge& e : g.edges) {
    os << e.u << " " << e.v << " " << rat_to_string(e.cost) << "\n";
  }
  return os.str();
}

std::string packet_section(const PacketUniverse& u) {
  std::ostringstream os;
  os << "packets " << u.size() << "\n";
  for (int p = 0; p < u.size(); ++p) os << u.ids[p] << " " << u.weights[p] << "\n";
  return os.str();
}

std::string terminal_section(const PacketUniverse& u, const std::vector<Terminal>& terminals) {
  std::ostringstream os;
  os << "terminals " << terminals.size() << "\n";
  for (const Terminal& t : terminals) {
    os << t.id << " " << t.node << " " << t.demand.count();
    for (int p : t.demand.members()) os << " " << u.ids[p];
    os << "\n";
  }
  return os.str();
}

// Tokenized lines with 1-based numbers; comments and blanks skipped.
struct LineReader {
  std::vector<std::pair<int, std::vector<std::string>>> lines;
  size_t pos = 0;
  int last_line = -1;  // line number of the most recently consumed line

  explicit LineReader(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int number = 0;
    while (std::getline(is, line)) {
      ++number;
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      std::istringstream ls(line);
      std::vector<std::string> tokens;
      std::string tok;
      while (ls >> tok) tokens.push_back(tok);
      if (!tokens.empty()) lines.push_back({number, tokens});
    }
  }

  bool done() const { return pos >= lines.size(); }
  int line_number() const { return done() ? -1 : lines[pos].first; }
  const std::vector<std::string>& peek() const {
    if (done()) throw ParseError("unexpected end of file");
    return lines[pos].second;
  }
  std::vector<std::string> next() {
    auto tokens = peek();
    last_line = lines[pos].first;
    ++pos;
    return tokens;
  }
  [[noreturn]] void fail(const std::string& what) const {
    if (done()) throw ParseError("unexpected end of file: expected " + what);
    throw ParseError("line " + std::to_string(lines[pos].first) + ": expected " + what);
  }
};

long parse_int(const std::string& tok, const LineReader& r, const std::string& what) {
  try {
    size_t used = 0;
    long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(r.last_line) + ": bad " + what + " '" + tok +
                     "'");
  }
}

Rat parse_rat(const std::string& tok, const LineReader& r, const std::string& what) {
  try {
    return rat_from_string(tok);
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(r.last_line) + ": bad " + what + " '" + tok +
                     "'");
  }
}

std::vector<std::string> expect(LineReader& r, const std::string& keyword, size_t tokens) {
  if (r.done() || r.peek()[0] != keyword || r.peek().size() != tokens) {
    r.fail("'" + keyword + "' line");
  }
  return r.next();
}

PacketUniverse parse_packets(LineReader& r) {
  auto head = expect(r, "packets", 2);
  long count = parse_int(head[1], r, "packet count");
  PacketUniverse u;
  for (long i = 0; i < count; ++i) {
    if (r.done() || r.peek().size() != 2) r.fail("packet line '<id> <weight>'");
    auto tokens = r.next();
    u.ids.push_back(tokens[0]);
    u.weights.push_back(parse_int(tokens[1], r, "packet weight"));
  }
  u.validate();
  return u;
}

WeightedGraph parse_graph(LineReader& r) {
  WeightedGraph g;
  auto nodes = expect(r, "nodes", 2);
  g.node_count = static_cast<int>(parse_int(nodes[1], r, "node count"));
  auto edges = expect(r, "edges", 2);
  long m = parse_int(edges[1], r, "edge count");
  for (long i = 0; i < m; ++i) {
    if (r.done() || r.peek().size() != 3) r.fail("edge line '<u> <v> <cost>'");
    auto tokens = r.next();
    Edge e;
    e.u = static_cast<int>(parse_int(tokens[0], r, "edge endpoint"));
    e.v = static_cast<int>(parse_int(tokens[1], r, "edge endpoint"));
    e.cost = parse_rat(tokens[2], r, "edge cost");
    g.edges.push_back(e);
  }
  return g;
}

std::vector<Terminal> parse_terminals(LineReader& r, const PacketUniverse& u) {
  auto head = expect(r, "terminals", 2);
  long count = parse_int(head[1], r, "terminal count");
  std::vector<Terminal> terminals;
  for (long i = 0; i < count; ++i) {
    if (r.done() || r.peek().size() < 3) r.fail("terminal line '<id> <node> <k> <packets...>'");
    auto tokens = r.next();
    Terminal t;
    t.id = tokens[0];
    t.node = static_cast<int>(parse_int(tokens[1], r, "terminal node"));
    long k = parse_int(tokens[2], r, "demand size");
    if (static_cast<long>(tokens.size()) != 3 + k) {
      throw ParseError("line " + std::to_string(r.last_line) + ": terminal '" +
                       t.id + "' lists " + std::to_string(tokens.size() - 3) + " packets, not " +
                       std::to_string(k));
    }
    t.demand = PacketSet(u.size());
    for (long j = 0; j < k; ++j) {
      int p = u.index_of(tokens[3 + j]);
      if (p < 0) {
        throw ParseError("line " + std::to_string(r.last_line) +
                         ": unknown packet '" + tokens[3 + j] + "'");
      }
      t.demand.set(p);
    }
    terminals.push_back(std::move(t));
  }
  return terminals;
}

}  // namespace

std::string serialize(const RandInstance& inst) {
  std::ostringstream os;
  os << "redunet instance v1\n";
  os << "problem rand\n";
  os << packet_section(inst.universe);
  os << graph_section(inst.graph);
  os << "source " << inst.graph.source << "\n";
  os << terminal_section(inst.universe, inst.terminals);
  return os.str();
}

std::string serialize(const RaflInstance& inst) {
  std::ostringstream os;
  os << "redunet instance v1\n";
  os << "problem rafl\n";
  os << packet_section(inst.universe);
  os << graph_section(inst.graph);
  os << terminal_section(inst.universe, inst.terminals);
  os << "facilities " << inst.facilities.size() << "\n";
  for (const Facility& f : inst.facilities) {
    os << f.id << " " << f.node << " " << rat_to_string(f.lambda) << "\n";
  }
  return os.str();
}

AnyInstance parse_instance(const std::string& text) {
  LineReader r(text);
  auto header = expect(r, "redunet", 3);
  if (header[1] != "instance" || header[2] != "v1") {
    throw ParseError("unsupported file header");
  }
  auto problem = expect(r, "problem", 2);
  if (problem[1] == "rand") {
    RandInstance inst;
    inst.universe = parse_packets(r);
    inst.graph = parse_graph(r);
    auto source = expect(r, "source", 2);
    inst.graph.source = static_cast<int>(parse_int(source[1], r, "source node"));
    inst.graph.finalize();
    inst.terminals = parse_terminals(r, inst.universe);
    if (!r.done()) r.fail("end of file");
    validate_rand_instance(inst);
    return inst;
  }
  if (problem[1] == "rafl") {
    RaflInstance inst;
    inst.universe = parse_packets(r);
    inst.graph = parse_graph(r);
    inst.graph.finalize();
    inst.terminals = parse_terminals(r, inst.universe);
    auto head = expect(r, "facilities", 2);
    long count = parse_int(head[1], r, "facility count");
    for (long i = 0; i < count; ++i) {
      if (r.done() || r.peek().size() != 3) r.fail("facility line '<id> <node> <lambda>'");
      auto tokens = r.next();
      Facility f;
      f.id = tokens[0];
      f.node = static_cast<int>(parse_int(tokens[1], r, "facility node"));
      f.lambda = parse_rat(tokens[2], r, "facility lambda");
      inst.facilities.push_back(std::move(f));
    }
    if (!r.done()) r.fail("end of file");
    validate_rafl_instance(inst);
    return inst;
  }
  throw ParseError("unknown problem kind '" + problem[1] + "'");
}

AnyInstance load_instance(const std::string& path) {
  return parse_instance(read_file(path));
}

std::string serialize_solution(const RandSolution& sol, const RandInstance& inst) {
  std::ostringstream os;
  os << "redunet solution v1\n";
  os << "problem rand\n";
  os << "paths " << sol.paths.size() << "\n";
  for (size_t t = 0; t < sol.paths.size(); ++t) {
    os << inst.terminals[t].id << " " << sol.paths[t].size();
    for (int node : sol.paths[t]) os << " " << node;
    os << "\n";
  }
  return os.str();
}

std::string serialize_solution(const Assignment& a, const RaflInstance& inst) {
  std::ostringstream os;
  os << "redunet solution v1\n";
  os << "problem rafl\n";
  os << "assignments " << a.facility_of.size() << "\n";
  for (size_t t = 0; t < a.facility_of.size(); ++t) {
    os << inst.terminals[t].id << " " << inst.facilities[a.facility_of[t]].id << "\n";
  }
  return os.str();
}

RandSolution parse_rand_solution(const std::string& text, const RandInstance& inst) {
  LineReader r(text);
  auto header = expect(r, "redunet", 3);
  if (header[1] != "solution" || header[2] != "v1") throw ParseError("unsupported file header");
  auto problem = expect(r, "problem", 2);
  if (problem[1] != "rand") throw ParseError("expected a rand solution file");
  auto head = expect(r, "paths", 2);
  long count = parse_int(head[1], r, "path count");
  RandSolution sol;
  sol.paths.assign(inst.terminals.size(), {});
  std::vector<char> seen(inst.terminals.size(), 0);
  for (long i = 0; i < count; ++i) {
    if (r.done() || r.peek().size() < 2) r.fail("path line '<terminal> <length> <nodes...>'");
    auto tokens = r.next();
    int t = inst.terminal_index(tokens[0]);
    if (t < 0) {
      throw ParseError("line " + std::to_string(r.last_line) +
                       ": unknown terminal '" + tokens[0] + "'");
    }
    if (seen[t]) {
      throw ParseError("duplicate path for terminal '" + tokens[0] + "'");
    }
    seen[t] = 1;
    long k = parse_int(tokens[1], r, "path length");
    if (static_cast<long>(tokens.size()) != 2 + k) {
      throw ParseError("line " + std::to_string(r.last_line) + ": path for '" +
                       tokens[0] + "' lists " + std::to_string(tokens.size() - 2) +
                       " nodes, not " + std::to_string(k));
    }
    for (long j = 0; j < k; ++j) {
      sol.paths[t].push_back(static_cast<int>(parse_int(tokens[2 + j], r, "path node")));
    }
  }
  for (size_t t = 0; t < seen.size(); ++t) {
    if (!seen[t]) throw ParseError("no path for terminal '" + inst.terminals[t].id + "'");
  }
  return sol;
}

Assignment parse_rafl_solution(const std::string& text, const RaflInstance& inst) {
  LineReader r(text);
  auto header = expect(r, "redunet", 3);
  if (header[1] != "solution" || header[2] != "v1") throw ParseError("unsupported file header");
  auto problem = expect(r, "problem", 2);
  if (problem[1] != "rafl") throw ParseError("expected a rafl solution file");
  auto head = expect(r, "assignments", 2);
  long count = parse_int(head[1], r, "assignment count");
  Assignment a;
  a.facility_of.assign(inst.terminals.size(), -1);
  for (long i = 0; i < count; ++i) {
    if (r.done() || r.peek().size() != 2) r.fail("assignment line '<terminal> <facility>'");
    auto tokens = r.next();
    int t = inst.terminal_index(tokens[0]);
    if (t < 0) throw ParseError("unknown terminal '" + tokens[0] + "'");
    int f = inst.facility_index(tokens[1]);
    if (f < 0) throw ParseError("unknown facility '" + tokens[1] + "'");
    a.facility_of[t] = f;
  }
  for (size_t t = 0; t < a.facility_of.size(); ++t) {
    if (a.facility_of[t] < 0) {
      throw ParseError("no assignment for terminal '" + inst.terminals[t].id + "'");
    }
  }
  return a;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

}  // namespace redunet
