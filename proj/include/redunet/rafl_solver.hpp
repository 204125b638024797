#pragma once

#include <vector>

#include "redunet/lp.hpp"
#include "redunet/model.hpp"

namespace redunet {

// LP solution after Phase 1: per-terminal candidate facilities within
// alpha * C_r^*(t), rows renormalized to sum 1, y reset to the per-facility
// maxima.
struct FilteredSolution {
  std::vector<std::vector<Rat>> x;
  std::vector<std::vector<Rat>> y;
  std::vector<std::vector<int>> candidates;  // F(t), ascending facility index
  std::vector<Rat> cr_star, cf_star;         // averages of the unfiltered optimum
  std::vector<Rat> cr, cf;                   // averages of the filtered solution
  Rat alpha;
};

FilteredSolution filter(const FractionalSolution& star, const RaflInstance& inst,
                        const Rat& alpha);

// Weighted covering test: w(D(t) \ union) < w(D(t)) / 2, strictly.
bool covers(const PacketUniverse& universe, const PacketSet& covered_union,
            const PacketSet& demand);
// Same, with the union taken over the demands of the terminals in `who`.
bool covers(const RaflInstance& inst, const std::vector<int>& who, int t);

// Phase 2 output: paying/free split, temporary assignments, cover sets,
// per-facility paying lists and levels.
struct ClassificationState {
  std::vector<char> is_free;
  std::vector<int> temp_assign;          // ~A(t); -1 for paying terminals
  std::vector<std::vector<int>> cov;     // Cov(t), ascending
  std::vector<std::vector<int>> pay;     // Pay(f) in processing order
  std::vector<int> level;                // l(t), clamped to >= 0
  std::vector<int> processing_order;
};

ClassificationState classify(const FilteredSolution& fs, const RaflInstance& inst);

// One opened facility copy; the analysis charges each copy separately even
// when several copies share a physical facility.
struct FacilityCopy {
  int facility = -1;
  int opener = -1;            // -1 for copies opened by paying terminals
  int level = -1;             // level of the opener (-1 for paying copies)
  std::vector<int> fpay;      // FPay: Cov(opener); empty for paying copies
  PacketSet packets;          // charged packet set
  PacketSet cover_union;      // union of Cov demands (free copies)
};

struct RaflCertificate {
  Rat alpha;
  Rat lp_value;
  Rat cr_star_total;  // sum_t w(D(t)) C_r^*(t)
  Rat cf_star_total;  // sum_f,p lambda_f y*_{f,p}
  Rat cf_filtered;    // C_f(x, y) after filtering
  Rat paying_cost;    // sum over paying terminals of w(D(t)) C_f(t)
  Rat copy_facility_cost;
  Rat facility_cost;  // merged, as evaluated
  Rat routing_cost;
  Rat total_cost;
  std::vector<FacilityCopy> copies;
  std::vector<Rat> routing_slack;  // 9 alpha C_r^*(t) - c(t, A(t)), per terminal

  bool routing_ok = false;       // c(t, A(t)) <= 9 alpha C_r^*(t) for all t
  bool filter_mass_ok = false;   // C_f(x,y) <= alpha/(alpha-1) C_f^*
  bool paying_bound_ok = false;  // paying_cost <= 2 C_f(x,y)
  bool copy_structure_ok = false;  // per copy: packets == D(t) u Cov-union, weight <= 2 w(Cov-union)
  bool level_discipline_ok = false;  // each payer in <= 1 FPay per level d <= l(t), none above
  bool copy_cost_ok = false;     // copy_facility_cost <= 18 alpha/(alpha-1) C_f^*
  bool total_ok = false;         // total <= max(9a, 18a/(a-1)) * lp_value
  bool all_ok() const {
    return routing_ok && filter_mass_ok && paying_bound_ok && copy_structure_ok &&
           level_discipline_ok && copy_cost_ok && total_ok;
  }
};

Assignment open_facilities(const ClassificationState& cs, const FilteredSolution& fs,
                           const RaflInstance& inst, std::vector<FacilityCopy>* copies = nullptr);

struct RaflResult {
  Assignment assignment;
  RaflCertificate certificate;
};

// LP -> filter -> classify -> open, with every per-phase bound checked and
// recorded in the certificate. alpha = 3 gives the certified 27x factor.
RaflResult solve_rafl(const RaflInstance& inst, const Rat& alpha = Rat(3),
                      LpMode mode = LpMode::exact);

}  // namespace redunet
