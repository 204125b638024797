#pragma once

#include <string>
#include <vector>

#include "redunet/model.hpp"
#include "redunet/simplex.hpp"

namespace redunet {

enum class LpMode { exact, floating };

// Variable layout of the RAFL relaxation: x_{t,f} for every terminal and
// facility, then y_{f,p} for every facility and packet.
struct RaflLpLayout {
  int terminals = 0;
  int facilities = 0;
  int packets = 0;
  int x_index(int t, int f) const { return t * facilities + f; }
  int y_index(int f, int p) const { return terminals * facilities + f * packets + p; }
  int var_count() const { return terminals * facilities + facilities * packets; }
};

// min sum_f,p lambda_f y_{f,p} + sum_t,f w(D(t)) c(t,f) x_{t,f}
// s.t. sum_f x_{t,f} >= 1 for every t; y_{f,p} >= x_{t,f} for p in D(t).
LinearProgram<Rat> build_rafl_lp(const RaflInstance& inst);

struct FractionalSolution {
  std::vector<std::vector<Rat>> x;  // [terminal][facility]
  std::vector<std::vector<Rat>> y;  // [facility][packet]
  Rat objective;
};

// Solves the relaxation; in floating mode the simplex runs in doubles and
// the basic solution is converted back to exact rationals. Rows of x with
// total mass above 1 are scaled down to sum exactly 1, which never
// increases the objective.
FractionalSolution solve_rafl_lp(const RaflInstance& inst, LpMode mode = LpMode::exact);

struct TerminalAverages {
  Rat routing;   // C_r(t) = sum_f x_{t,f} c(t,f)
  Rat facility;  // C_f(t) = sum_f x_{t,f} lambda_f
};

std::vector<TerminalAverages> per_terminal_averages(const FractionalSolution& sol,
                                                    const RaflInstance& inst);

// Facility part of the objective: sum_f sum_p lambda_f y_{f,p}.
Rat facility_mass(const FractionalSolution& sol, const RaflInstance& inst);

// CPLEX LP-format text export, for cross-checking with external solvers.
std::string lp_format(const LinearProgram<Rat>& lp);

}  // namespace redunet
