#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace redunet {

enum class Rel { ge, le, eq };

enum class LpStatus { optimal, infeasible, unbounded };

template <typename Num>
struct LpRow {
  std::vector<std::pair<int, Num>> coeffs;  // (variable index, coefficient)
  Rel rel = Rel::ge;
  Num rhs{};
};

// min c^T v subject to the rows and v >= 0.
template <typename Num>
struct LinearProgram {
  int var_count = 0;
  std::vector<std::string> var_names;  // optional, for export
  std::vector<Num> objective;
  std::vector<LpRow<Num>> rows;
};

template <typename Num>
struct LpSolution {
  LpStatus status = LpStatus::optimal;
  Num objective{};
  std::vector<Num> values;
  long pivots = 0;
};

namespace simplex_detail {

template <typename Num>
struct Tolerance {
  static Num eps() { return Num(0); }
};

template <>
struct Tolerance<double> {
  static double eps() { return 1e-9; }
};

}  // namespace simplex_detail

// Dense two-phase primal simplex with Bland's anti-cycling rule. Exact when
// Num is a rational type; 1e-9 pivoting tolerance when Num is double.
template <typename Num>
LpSolution<Num> solve_lp(const LinearProgram<Num>& lp) {
  const Num eps = simplex_detail::Tolerance<Num>::eps();
  const int n = lp.var_count;
  const int m = static_cast<int>(lp.rows.size());

  // Equality standard form: one slack/surplus column per inequality row,
  // then sign-fix so every rhs is nonnegative, then artificials where no
  // slack can serve as the initial basic variable.
  int n_slack = 0;
  for (const auto& row : lp.rows) {
    if (row.rel != Rel::eq) ++n_slack;
  }
  std::vector<std::vector<Num>> a(m);  // m x (n + n_slack), built densely
  std::vector<Num> rhs(m);
  {
    int slack = 0;
    for (int i = 0; i < m; ++i) {
      a[i].assign(n + n_slack, Num(0));
      for (const auto& [j, coef] : lp.rows[i].coeffs) {
        if (j < 0 || j >= n) throw std::invalid_argument("LP coefficient index out of range");
        a[i][j] += coef;
      }
      if (lp.rows[i].rel != Rel::eq) {
        a[i][n + slack] = lp.rows[i].rel == Rel::le ? Num(1) : Num(-1);
        ++slack;
      }
      rhs[i] = lp.rows[i].rhs;
      if (rhs[i] < 0) {
        for (auto& x : a[i]) x = -x;
        rhs[i] = -rhs[i];
      }
    }
  }

  std::vector<int> basis(m, -1);
  std::vector<int> artificial_rows;
  {
    int slack = 0;
    for (int i = 0; i < m; ++i) {
      if (lp.rows[i].rel != Rel::eq) {
        if (a[i][n + slack] == Num(1)) basis[i] = n + slack;
        ++slack;
      }
      if (basis[i] == -1) artificial_rows.push_back(i);
    }
  }
  const int n_art = static_cast<int>(artificial_rows.size());
  const int cols = n + n_slack + n_art;
  for (int i = 0; i < m; ++i) a[i].resize(cols, Num(0));
  for (int k = 0; k < n_art; ++k) {
    a[artificial_rows[k]][n + n_slack + k] = Num(1);
    basis[artificial_rows[k]] = n + n_slack + k;
  }

  LpSolution<Num> result;

  auto pivot = [&](int row, int col, std::vector<Num>& cost_row) {
    Num p = a[row][col];
    for (int j = 0; j < cols; ++j) a[row][j] /= p;
    rhs[row] /= p;
    for (int i = 0; i < m; ++i) {
      if (i == row) continue;
      Num f = a[i][col];
      if (f == Num(0)) continue;
      for (int j = 0; j < cols; ++j) a[i][j] -= f * a[row][j];
      rhs[i] -= f * rhs[row];
    }
    Num f = cost_row[col];
    if (f != Num(0)) {
      for (int j = 0; j < cols; ++j) cost_row[j] -= f * a[row][j];
    }
    basis[row] = col;
    ++result.pivots;
  };

  // Bland: entering = lowest-index eligible column; leaving = min ratio,
  // ties by the lowest basic variable index.
  auto run = [&](std::vector<Num>& cost_row, int allowed_cols) -> LpStatus {
    while (true) {
      int col = -1;
      for (int j = 0; j < allowed_cols; ++j) {
        if (cost_row[j] < -eps) {
          col = j;
          break;
        }
      }
      if (col == -1) return LpStatus::optimal;
      int row = -1;
      Num best{};
      for (int i = 0; i < m; ++i) {
        if (a[i][col] > eps) {
          Num ratio = rhs[i] / a[i][col];
          if (row == -1 || ratio < best || (ratio == best && basis[i] < basis[row])) {
            row = i;
            best = ratio;
          }
        }
      }
      if (row == -1) return LpStatus::unbounded;
      pivot(row, col, cost_row);
    }
  };

  // Phase 1: minimize the sum of artificials.
  if (n_art > 0) {
    std::vector<Num> cost_row(cols, Num(0));
    for (int k = 0; k < n_art; ++k) cost_row[n + n_slack + k] = Num(1);
    for (int i : artificial_rows) {
      for (int j = 0; j < cols; ++j) cost_row[j] -= a[i][j];
    }
    run(cost_row, cols);
    Num phase1 = Num(0);
    for (int i = 0; i < m; ++i) {
      if (basis[i] >= n + n_slack) phase1 += rhs[i];
    }
    if (phase1 > eps) {
      result.status = LpStatus::infeasible;
      return result;
    }
    // Drive any zero-valued artificials out of the basis.
    for (int i = 0; i < m; ++i) {
      if (basis[i] < n + n_slack) continue;
      int col = -1;
      for (int j = 0; j < n + n_slack; ++j) {
        if (!(a[i][j] == Num(0))) {
          col = j;
          break;
        }
      }
      if (col != -1) {
        std::vector<Num> dummy(cols, Num(0));
        pivot(i, col, dummy);
      }
      // A row with no structural entries is redundant; its artificial stays
      // basic at value zero and never re-enters (phase 2 ignores it).
    }
  }

  // Phase 2 with the real objective, artificial columns barred from entering.
  {
    std::vector<Num> cost_row(cols, Num(0));
    for (int j = 0; j < n; ++j) cost_row[j] = lp.objective[j];
    for (int i = 0; i < m; ++i) {
      if (basis[i] < n && !(lp.objective[basis[i]] == Num(0))) {
        Num f = lp.objective[basis[i]];
        for (int j = 0; j < cols; ++j) cost_row[j] -= f * a[i][j];
      }
    }
    LpStatus status = run(cost_row, n + n_slack);
    if (status == LpStatus::unbounded) {
      result.status = LpStatus::unbounded;
      return result;
    }
  }

  result.status = LpStatus::optimal;
  result.values.assign(n, Num(0));
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) result.values[basis[i]] = rhs[i];
  }
  result.objective = Num(0);
  for (int j = 0; j < n; ++j) result.objective += lp.objective[j] * result.values[j];
  return result;
}

}  // namespace redunet
