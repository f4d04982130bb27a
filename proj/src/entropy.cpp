#include "temple/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "temple/errors.hpp"

namespace temple {

namespace {

double simpson_step(const RealFn& fn, double a, double fa, double b, double fb, double m, double fm, double whole,
                    double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = fn(lm);
  const double frm = fn(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(fn, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(fn, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const RealFn& fn, double a, double b, double tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = fn(a);
  const double fb = fn(b);
  const double fm = fn(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(fn, a, fa, b, fb, m, fm, whole, tol, 48);
}

ScalarEntropyPair scalar_pair_from_entropy(RealFn E, RealFn dE, RealFn d2E, RealFn g_prime, double base,
                                           Interval check) {
  for (int i = 0; i < 100; ++i) {
    const double s = check.lo + check.length() * i / 99.0;
    if (d2E(s) < -1e-8) throw ValidationError("entropy is not convex at " + std::to_string(s));
  }
  auto integrand = [dE, g_prime](double u) { return dE(u) * g_prime(u); };
  RealFn Q = [integrand, base](double s) { return adaptive_simpson(integrand, base, s); };
  return {std::move(E), std::move(dE), std::move(d2E), std::move(Q)};
}

ScalarEntropyPair quadratic_entropy(double c, RealFn g_prime, double base, Interval check) {
  return scalar_pair_from_entropy([c](double s) { return (s - c) * (s - c); },
                                  [c](double s) { return 2.0 * (s - c); }, [](double) { return 2.0; },
                                  std::move(g_prime), base, check);
}

ScalarEntropyPair shift_scalar_entropy(const ScalarEntropyPair& pair, double L, int orientation) {
  const ScalarEntropyPair p = pair;
  if (orientation > 0) {
    return {[p, L](double s) { return p.E(s - L); }, [p, L](double s) { return p.dE(s - L); },
            [p, L](double s) { return p.d2E(s - L); }, [p, L](double s) { return p.Q(s - L); }};
  }
  return {[p](double s) { return p.E(-s); }, [p](double s) { return -p.dE(-s); },
          [p](double s) { return p.d2E(-s); }, [p](double s) { return p.Q(-s); }};
}

std::array<double, 3> SystemEntropyPair::hessian(State w) const {
  const double p = w.p();
  const double c = scalar.d2E(p) / w.eta;
  return {c * p * p, -c * p, c};
}

double SystemEntropyPair::min_hessian_eigenvalue(State w) const {
  const auto [a, b, d] = hessian(w);
  const double mean = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
  return mean - rad;
}

SystemEntropyPair lift_entropy(const ScalarEntropyPair& pair, RealFn G) { return {pair, std::move(G)}; }

std::vector<double> discrete_entropy_residuals(const History& history, const SystemEntropyPair& pair) {
  std::vector<double> out;
  out.reserve(history.levels.size());
  for (std::size_t n = 0; n + 1 < history.levels.size(); ++n) {
    const CellField& cur = history.levels[n];
    const CellField& next = history.levels[n + 1];
    const double ratio = (next.time - cur.time) / cur.grid.h;
    double worst = -std::numeric_limits<double>::infinity();
    double q_prev = pair.Q(cur.left_ghost());
    for (std::size_t j = 0; j < cur.states.size(); ++j) {
      const double q_here = pair.Q(cur.states[j]);
      const double r = pair.E(next.states[j]) - pair.E(cur.states[j]) + ratio * (q_here - q_prev);
      worst = std::max(worst, r);
      q_prev = q_here;
    }
    out.push_back(worst);
  }
  return out;
}

}  // namespace temple
