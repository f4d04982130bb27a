#pragma once

#include <vector>

#include "temple/initial_data.hpp"
#include "temple/temple_core.hpp"

namespace temple {

/// Uniform grid; cell j (0-based) covers (x_left + j h, x_left + (j+1) h].
struct Grid {
  double h = 0.0;
  double x_left = 0.0;
  int n_cells = 0;

  Grid() = default;
  Grid(double h, double x_left, int n_cells);

  double edge(int j) const { return x_left + j * h; }
  double center(int j) const { return x_left + (j + 0.5) * h; }
  double x_right() const { return edge(n_cells); }
  /// Index of the cell containing x (half-open on the left), clamped to [0, n).
  int cell_of(double x) const;
};

/// Grid covering [x_min, x_max] with spacing as close to h as divides the span.
Grid make_grid(double x_min, double x_max, double h);

/// Piecewise-constant Temple solution at one time level. Ghost cells copy the
/// first and last states.
struct CellField {
  Grid grid;
  double time = 0.0;
  std::vector<State> states;

  State left_ghost() const { return states.front(); }
  State right_ghost() const { return states.back(); }
};

struct StepDiagnostics {
  double time;      // time after the step
  double k;         // step size taken
  double tv;        // tv_pq after the step
  double max_region_violation;
};

/// Every time level of a run plus per-step monitors. levels[0] is the initial field.
struct History {
  RegionQ region;
  double k = 0.0;      // CFL step; the last step may be shorter
  double tv0 = 0.0;    // tv_pq of the initial field
  std::vector<CellField> levels;
  std::vector<StepDiagnostics> diagnostics;

  const CellField& at_or_before(double t) const;
  /// Level whose time equals t to 1e-12; throws std::out_of_range otherwise.
  const CellField& exactly_at(double t) const;
};

/// m, M from the sampled sigma_0 (the ghosts copy boundary cells, so the states
/// cover them). Throws std::logic_error on a non-positive sample.
RegionQ build_region(const std::vector<double>& sigma0_samples);
RegionQ build_region(const CellField& field);

/// Upper bound for lambda2 over Q from a 64x64 (p, q) sample of [m,M]^2.
double sup_lambda2(const RegionQ& Q, const RealFn& G_prime);

/// k = fraction * h / sup_Q lambda2.
double cfl_timestep(const RegionQ& Q, const RealFn& G_prime, double h, double fraction = 0.9);

/// eta = 1, v = cell average of sigma_0.
CellField init_cells(const InitialData& sigma0, const Grid& grid);

/// Conservative upwind update eta_j += (k/h)(G(p_j) - G(p_{j-1})); v is untouched.
/// Throws SchemeError if any eta becomes non-positive.
CellField step(const CellField& field, double k, const RealFn& G, long step_index = 0);

struct EvolveOptions {
  double cfl_fraction = 0.9;
  bool monitors = true;
  /// Extra times in (0, T) that must appear as levels; the step reaching each is clipped.
  std::vector<double> stop_times;
};

/// Repeats step() with the CFL step until time T, clipping the last step.
History evolve(const CellField& field, double T, const Velocity& vel, const EvolveOptions& options = {});

/// Sum of pq_norm over neighbouring cells (ghost pairs contribute zero).
double tv_pq(const CellField& field);

/// Componentwise |eta| + |v| L1 norm of the difference of two fields on one grid.
double l1_difference(const CellField& a, const CellField& b);

/// Sampled Lipschitz constant of P = (-G, 0) in the pq-norm: max over all pairs of an
/// 8x8 (p, q) lattice of Q (64^2 pairs) of |G(p) - G(p')| / ||w - w'||.
double lipschitz_P(const RegionQ& Q, const RealFn& G);

struct ContinuityCheck {
  double lhs;    // integral of |w_h(T2) - w_h(T1)|
  double bound;  // C |T2 - T1| TV(w^0)
  bool holds() const { return lhs <= bound * (1.0 + 1e-6); }
};

/// Time-L1 continuity of the discrete solution between two times of a run.
ContinuityCheck l1_time_continuity_check(const History& history, double T1, double T2, const RealFn& G);

}  // namespace temple
