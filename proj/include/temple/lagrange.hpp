#pragma once

#include <span>
#include <vector>

#include "temple/godunov.hpp"

namespace temple {

/// Discrete weak diffeomorphism on the cell edges x_0 < ... < x_N at every level.
struct GammaField {
  std::vector<double> times;
  std::vector<double> nodes;               // x_j
  std::vector<std::vector<double>> rows;   // rows[n][j] = gamma(x_j, t_n)

  std::span<const double> row_at(double t) const;
};

enum class Anchor { left, right };

/// gamma_x = eta, gamma_t = G(v/eta). The anchor node moves with the ghost state
/// velocity; the other nodes follow from prefix sums of h * eta.
GammaField build_gamma(const History& history, const RealFn& G, Anchor anchor = Anchor::left);

struct Inversion {
  double x;
  bool clamped;
};

/// Inverse of the piecewise-linear interpolant of (nodes, row) at y; out-of-range
/// values are clamped and flagged.
Inversion invert_gamma(std::span<const double> row, std::span<const double> nodes, double y);

/// Piecewise-linear gamma(x) of one row.
double eval_gamma(std::span<const double> row, std::span<const double> nodes, double x);

struct Recovered {
  std::vector<double> values;
  long flagged = 0;  // queries outside the gamma range
};

/// sigma(y, t) = (v/eta) of the cell containing gamma^{-1}(y, t). t must be a level time.
Recovered recover_sigma(const History& history, const GammaField& gamma, double t, std::span<const double> ys);

/// recover_sigma mapped back through rho = orientation * (sigma - L). Values whose
/// sigma lies outside I~ by more than `tol` are also counted in `flagged`.
Recovered recover_solution(const History& history, const GammaField& gamma, const TransformSpec& spec, double t,
                           std::span<const double> ys, double tol = 1e-9);

/// Range [gamma(x_0, t), gamma(x_N, t)] covered by the recovered solution.
Interval gamma_range(const GammaField& gamma, double t);

}  // namespace temple
