#pragma once

#include <vector>

#include "temple/godunov.hpp"

namespace temple {

/// Piecewise-constant solution of the original scalar law rho_t + f(rho)_x = 0.
struct ScalarField {
  Grid grid;
  double time = 0.0;
  std::vector<double> values;
};

/// min f on [rl, rr] if rl <= rr, max f on [rr, rl] otherwise; extrema taken from
/// the endpoints and the catalog critical points.
double scalar_godunov_flux(const FluxSpec& flux, double rho_left, double rho_right);

ScalarField scalar_init(const InitialData& rho0, const Grid& grid);

/// First-order Godunov with constant-extrapolation ghosts; k = cfl * h / max|f'|
/// over the data range, last step clipped to T.
ScalarField scalar_evolve(const FluxSpec& flux, const ScalarField& init, double T, double cfl = 0.9);

/// Textbook Riemann solution for a convex flux (f' strictly increasing on the
/// data range). Throws ValidationError otherwise.
double exact_riemann_convex(const FluxSpec& flux, double rho_left, double rho_right, double y, double t);

/// Cell-centred samples of any function on `grid`.
ScalarField sample_field(const Grid& grid, double time, const RealFn& fn);

struct L1Distance {
  double value = 0.0;
  bool disjoint = false;
};

/// Sum of |a - b| times cell-overlap length over `window`, for fields on any two grids.
L1Distance l1_distance(const ScalarField& a, const ScalarField& b, Interval window);

}  // namespace temple
