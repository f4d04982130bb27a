#include "temple/scalar_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "temple/errors.hpp"

namespace temple {

double scalar_godunov_flux(const FluxSpec& flux, double rl, double rr) {
  if (rl == rr) return flux.f(rl);
  const double lo = std::min(rl, rr);
  const double hi = std::max(rl, rr);
  double fmin = std::min(flux.f(lo), flux.f(hi));
  double fmax = std::max(flux.f(lo), flux.f(hi));
  for (double c : flux.critical_points) {
    if (c > lo && c < hi) {
      const double fc = flux.f(c);
      fmin = std::min(fmin, fc);
      fmax = std::max(fmax, fc);
    }
  }
  return rl <= rr ? fmin : fmax;
}

ScalarField scalar_init(const InitialData& rho0, const Grid& grid) {
  ScalarField field;
  field.grid = grid;
  field.values.reserve(static_cast<std::size_t>(grid.n_cells));
  for (int j = 0; j < grid.n_cells; ++j) field.values.push_back(rho0.cell_average(grid.edge(j), grid.edge(j + 1)));
  return field;
}

ScalarField scalar_evolve(const FluxSpec& flux, const ScalarField& init, double T, double cfl) {
  const auto [lo_it, hi_it] = std::minmax_element(init.values.begin(), init.values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  double speed = 0.0;
  constexpr int samples = 1024;
  for (int i = 0; i <= samples; ++i) speed = std::max(speed, std::abs(flux.f_prime(lo + (hi - lo) * i / samples)));

  ScalarField cur = init;
  if (speed == 0.0) {
    cur.time = T;
    return cur;
  }
  const double k_cfl = cfl * init.grid.h / speed;
  const std::size_t n = cur.values.size();
  std::vector<double> fluxes(n + 1);
  while (cur.time < T) {
    double k = k_cfl;
    const bool last = cur.time + k >= T * (1.0 - 1e-14);
    if (last) k = T - cur.time;
    // fluxes[j] sits on the left edge of cell j.
    fluxes[0] = scalar_godunov_flux(flux, cur.values.front(), cur.values.front());
    for (std::size_t j = 1; j < n; ++j) fluxes[j] = scalar_godunov_flux(flux, cur.values[j - 1], cur.values[j]);
    fluxes[n] = scalar_godunov_flux(flux, cur.values.back(), cur.values.back());
    const double ratio = k / cur.grid.h;
    for (std::size_t j = 0; j < n; ++j) cur.values[j] -= ratio * (fluxes[j + 1] - fluxes[j]);
    cur.time = last ? T : cur.time + k;
  }
  return cur;
}

double exact_riemann_convex(const FluxSpec& flux, double rl, double rr, double y, double t) {
  if (rl == rr) return rl;
  if (!(t > 0.0)) throw ValidationError("exact Riemann solution needs t > 0");
  const double lo = std::min(rl, rr);
  const double hi = std::max(rl, rr);
  constexpr int samples = 256;
  double prev = flux.f_prime(lo);
  for (int i = 1; i <= samples; ++i) {
    const double d = flux.f_prime(lo + (hi - lo) * i / samples);
    if (!(d > prev)) throw ValidationError("flux is not strictly convex on the Riemann data range");
    prev = d;
  }
  const double xi = y / t;
  if (rl > rr) {
    const double s = (flux.f(rl) - flux.f(rr)) / (rl - rr);
    return xi < s ? rl : rr;
  }
  if (xi <= flux.f_prime(rl)) return rl;
  if (xi >= flux.f_prime(rr)) return rr;
  double a = rl;
  double b = rr;
  while (b - a > 1e-14 * std::max(1.0, std::abs(b))) {
    const double m = 0.5 * (a + b);
    if (flux.f_prime(m) < xi) {
      a = m;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

ScalarField sample_field(const Grid& grid, double time, const RealFn& fn) {
  ScalarField field;
  field.grid = grid;
  field.time = time;
  field.values.reserve(static_cast<std::size_t>(grid.n_cells));
  for (int j = 0; j < grid.n_cells; ++j) field.values.push_back(fn(grid.center(j)));
  return field;
}

L1Distance l1_distance(const ScalarField& a, const ScalarField& b, Interval window) {
  const double lo = std::max({window.lo, a.grid.x_left, b.grid.x_left});
  const double hi = std::min({window.hi, a.grid.x_right(), b.grid.x_right()});
  if (!(hi > lo)) return {0.0, true};
  double acc = 0.0;
  int i = a.grid.cell_of(std::nextafter(lo, hi));
  int j = b.grid.cell_of(std::nextafter(lo, hi));
  double x = lo;
  while (x < hi && i < a.grid.n_cells && j < b.grid.n_cells) {
    const double end = std::min({a.grid.edge(i + 1), b.grid.edge(j + 1), hi});
    if (end > x) acc += std::abs(a.values[i] - b.values[j]) * (end - x);
    x = end;
    if (a.grid.edge(i + 1) <= x) ++i;
    if (b.grid.edge(j + 1) <= x) ++j;
  }
  return {acc, false};
}

}  // namespace temple
