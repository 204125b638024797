#include "redunet/lp.hpp"

#include <sstream>

namespace redunet {

namespace {

ShortestPathMetric rafl_metric(const RaflInstance& inst) {
  std::vector<int> needed;
  for (const Terminal& t : inst.terminals) needed.push_back(t.node);
  for (const Facility& f : inst.facilities) needed.push_back(f.node);
  return ShortestPathMetric::compute(inst.graph, needed);
}

}  // namespace

LinearProgram<Rat> build_rafl_lp(const RaflInstance& inst) {
  const int nt = static_cast<int>(inst.terminals.size());
  const int nf = static_cast<int>(inst.facilities.size());
  const int np = inst.universe.size();
  RaflLpLayout layout{nt, nf, np};
  auto metric = rafl_metric(inst);

  LinearProgram<Rat> lp;
  lp.var_count = layout.var_count();
  lp.objective.assign(lp.var_count, Rat(0));
  lp.var_names.resize(lp.var_count);
  for (int t = 0; t < nt; ++t) {
    for (int f = 0; f < nf; ++f) {
      int j = layout.x_index(t, f);
      lp.var_names[j] = "x_" + inst.terminals[t].id + "_" + inst.facilities[f].id;
      lp.objective[j] = Rat(static_cast<long>(inst.universe.weight_of(inst.terminals[t].demand))) *
                        metric.dist(inst.terminals[t].node, inst.facilities[f].node);
    }
  }
  for (int f = 0; f < nf; ++f) {
    for (int p = 0; p < np; ++p) {
      int j = layout.y_index(f, p);
      lp.var_names[j] = "y_" + inst.facilities[f].id + "_" + inst.universe.ids[p];
      // Weighted-packet generalization of the unit-weight objective: a
      // facility pays lambda_f per unit weight produced.
      lp.objective[j] = inst.facilities[f].lambda * Rat(static_cast<long>(inst.universe.weights[p]));
    }
  }

  for (int t = 0; t < nt; ++t) {
    LpRow<Rat> cover;
    cover.rel = Rel::ge;
    cover.rhs = Rat(1);
    for (int f = 0; f < nf; ++f) cover.coeffs.push_back({layout.x_index(t, f), Rat(1)});
    lp.rows.push_back(std::move(cover));
  }
  for (int t = 0; t < nt; ++t) {
    for (int f = 0; f < nf; ++f) {
      for (int p = 0; p < np; ++p) {
        if (!inst.terminals[t].demand.test(p)) continue;
        LpRow<Rat> link;
        link.rel = Rel::ge;
        link.rhs = Rat(0);
        link.coeffs.push_back({layout.y_index(f, p), Rat(1)});
        link.coeffs.push_back({layout.x_index(t, f), Rat(-1)});
        lp.rows.push_back(std::move(link));
      }
    }
  }
  return lp;
}

FractionalSolution solve_rafl_lp(const RaflInstance& inst, LpMode mode) {
  const int nt = static_cast<int>(inst.terminals.size());
  const int nf = static_cast<int>(inst.facilities.size());
  const int np = inst.universe.size();
  RaflLpLayout layout{nt, nf, np};
  LinearProgram<Rat> lp = build_rafl_lp(inst);

  std::vector<Rat> values;
  if (mode == LpMode::exact) {
    auto sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal) {
      throw std::runtime_error("RAFL LP did not solve to optimality (internal error)");
    }
    values = std::move(sol.values);
  } else {
    LinearProgram<double> flp;
    flp.var_count = lp.var_count;
    flp.objective.reserve(lp.var_count);
    for (const Rat& c : lp.objective) flp.objective.push_back(rat_to_double(c));
    for (const auto& row : lp.rows) {
      LpRow<double> fr;
      fr.rel = row.rel;
      fr.rhs = rat_to_double(row.rhs);
      for (const auto& [j, c] : row.coeffs) fr.coeffs.push_back({j, rat_to_double(c)});
      flp.rows.push_back(std::move(fr));
    }
    auto sol = solve_lp(flp);
    if (sol.status != LpStatus::optimal) {
      throw std::runtime_error("RAFL LP did not solve to optimality (internal error)");
    }
    values.reserve(sol.values.size());
    for (double v : sol.values) values.push_back(Rat(v < 0 ? 0.0 : v));
  }

  FractionalSolution out;
  out.x.assign(nt, std::vector<Rat>(nf, Rat(0)));
  out.y.assign(nf, std::vector<Rat>(np, Rat(0)));
  for (int t = 0; t < nt; ++t) {
    for (int f = 0; f < nf; ++f) out.x[t][f] = values[layout.x_index(t, f)];
  }
  for (int f = 0; f < nf; ++f) {
    for (int p = 0; p < np; ++p) out.y[f][p] = values[layout.y_index(f, p)];
  }

  // At an optimum every covering row is tight; scale down any slack.
  for (int t = 0; t < nt; ++t) {
    Rat total = 0;
    for (int f = 0; f < nf; ++f) total += out.x[t][f];
    if (total > 1) {
      for (int f = 0; f < nf; ++f) out.x[t][f] /= total;
    }
  }

  out.objective = 0;
  for (int t = 0; t < nt; ++t) {
    for (int f = 0; f < nf; ++f) {
      out.objective += lp.objective[layout.x_index(t, f)] * out.x[t][f];
    }
  }
  for (int f = 0; f < nf; ++f) {
    for (int p = 0; p < np; ++p) {
      out.objective += lp.objective[layout.y_index(f, p)] * out.y[f][p];
    }
  }
  return out;
}

std::vector<TerminalAverages> per_terminal_averages(const FractionalSolution& sol,
                                                    const RaflInstance& inst) {
  const int nt = static_cast<int>(inst.terminals.size());
  const int nf = static_cast<int>(inst.facilities.size());
  auto metric = rafl_metric(inst);
  std::vector<TerminalAverages> out(nt);
  for (int t = 0; t < nt; ++t) {
    out[t].routing = 0;
    out[t].facility = 0;
    for (int f = 0; f < nf; ++f) {
      out[t].routing += sol.x[t][f] * metric.dist(inst.terminals[t].node, inst.facilities[f].node);
      out[t].facility += sol.x[t][f] * inst.facilities[f].lambda;
    }
  }
  return out;
}

Rat facility_mass(const FractionalSolution& sol, const RaflInstance& inst) {
  Rat total = 0;
  for (int f = 0; f < static_cast<int>(inst.facilities.size()); ++f) {
    for (int p = 0; p < inst.universe.size(); ++p) {
      total += inst.facilities[f].lambda * Rat(static_cast<long>(inst.universe.weights[p])) *
               sol.y[f][p];
    }
  }
  return total;
}

std::string lp_format(const LinearProgram<Rat>& lp) {
  auto name = [&](int j) {
    return lp.var_names.empty() || lp.var_names[j].empty() ? "v" + std::to_string(j)
                                                           : lp.var_names[j];
  };
  std::ostringstream os;
  os << "Minimize\n obj:";
  for (int j = 0; j < lp.var_count; ++j) {
    if (lp.objective[j] == 0) continue;
    os << (lp.objective[j] >= 0 ? " + " : " - ")
       << rat_to_string(Rat(abs(lp.objective[j]))) << " " << name(j);
  }
  os << "\nSubject To\n";
  for (size_t i = 0; i < lp.rows.size(); ++i) {
    os << " c" << i << ":";
    for (const auto& [j, c] : lp.rows[i].coeffs) {
      os << (c >= 0 ? " + " : " - ") << rat_to_string(Rat(abs(c))) << " " << name(j);
    }
    const char* rel = lp.rows[i].rel == Rel::ge ? ">=" : lp.rows[i].rel == Rel::le ? "<=" : "=";
    os << " " << rel << " " << rat_to_string(lp.rows[i].rhs) << "\n";
  }
  os << "Bounds\n";
  for (int j = 0; j < lp.var_count; ++j) os << " " << name(j) << " >= 0\n";
  os << "End\n";
  return os.str();
}

}  // namespace redunet
