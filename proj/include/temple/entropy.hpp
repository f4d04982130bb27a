#pragma once

#include <array>
#include <vector>

#include "temple/godunov.hpp"

namespace temple {

/// Convex entropy E with its first two derivatives and flux Q, Q' = E' g'.
struct ScalarEntropyPair {
  RealFn E;
  RealFn dE;
  RealFn d2E;
  RealFn Q;
};

/// Q(s) = integral from `base` to s of E'(u) g'(u) du (adaptive Simpson, 1e-12).
/// Rejects E whose sampled E'' drops below -1e-8 on `check`.
ScalarEntropyPair scalar_pair_from_entropy(RealFn E, RealFn dE, RealFn d2E, RealFn g_prime, double base,
                                           Interval check);

/// (s - c)^2 paired with the flux of s_t + g(s)_x = 0.
ScalarEntropyPair quadratic_entropy(double c, RealFn g_prime, double base, Interval check);

/// Entropy pair of the transformed law built from a pair of the original law:
/// orientation +1: E(s) = E1(s - L), Q(s) = Q1(s - L); orientation -1: E(s) = E1(-s), Q(s) = Q1(-s).
ScalarEntropyPair shift_scalar_entropy(const ScalarEntropyPair& pair, double L, int orientation);

/// E2(eta, v) = eta E1(v/eta), Q2(p) = Q1(p) - G(p) E1(p).
struct SystemEntropyPair {
  ScalarEntropyPair scalar;
  RealFn G;

  double E(State w) const { return w.eta * scalar.E(w.p()); }
  double Q_of_p(double p) const { return scalar.Q(p) - G(p) * scalar.E(p); }
  double Q(State w) const { return Q_of_p(w.p()); }
  /// Hessian of E2 in (eta, v): E1''(p)/eta * [[p^2, -p], [-p, 1]], as (E_ee, E_ev, E_vv).
  std::array<double, 3> hessian(State w) const;
  /// Smallest eigenvalue of hessian(w).
  double min_hessian_eigenvalue(State w) const;
};

SystemEntropyPair lift_entropy(const ScalarEntropyPair& pair, RealFn G);

/// E2(w_j^{n+1}) - E2(w_j^n) + (k/h)(Q2(p_j^n) - Q2(p_{j-1}^n)), maximised over cells
/// for each step. Non-positive up to rounding for an entropy-satisfying scheme.
std::vector<double> discrete_entropy_residuals(const History& history, const SystemEntropyPair& pair);

/// Adaptive Simpson quadrature of fn on [a, b] to absolute tolerance tol.
double adaptive_simpson(const RealFn& fn, double a, double b, double tol = 1e-12);

}  // namespace temple
