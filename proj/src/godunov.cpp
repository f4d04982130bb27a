#include "temple/godunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "temple/errors.hpp"

namespace temple {

Grid::Grid(double h_, double x_left_, int n_cells_) : h(h_), x_left(x_left_), n_cells(n_cells_) {
  if (!(h > 0.0)) throw ValidationError("mesh length must be positive");
  if (n_cells < 2) throw ValidationError("grid needs at least two cells");
}

int Grid::cell_of(double x) const {
  const double s = (x - x_left) / h;
  const int j = static_cast<int>(std::ceil(s)) - 1;
  return std::clamp(j, 0, n_cells - 1);
}

Grid make_grid(double x_min, double x_max, double h) {
  if (!(x_max > x_min)) throw ValidationError("span must satisfy x_min < x_max");
  if (!(h > 0.0)) throw ValidationError("mesh length must be positive");
  const int n = static_cast<int>(std::llround((x_max - x_min) / h));
  return Grid((x_max - x_min) / std::max(n, 1), x_min, n);
}

const CellField& History::at_or_before(double t) const {
  if (levels.empty()) throw std::out_of_range("empty history");
  if (t < levels.front().time - 1e-12) throw std::out_of_range("time precedes the history");
  const auto it = std::upper_bound(levels.begin(), levels.end(), t + 1e-12,
                                   [](double x, const CellField& f) { return x < f.time; });
  return *std::prev(it);
}

const CellField& History::exactly_at(double t) const {
  const CellField& f = at_or_before(t);
  if (std::abs(f.time - t) > 1e-12) throw std::out_of_range("no level at t=" + std::to_string(t));
  return f;
}

RegionQ build_region(const std::vector<double>& sigma0_samples) {
  if (sigma0_samples.empty()) throw std::logic_error("no samples for the invariant region");
  double m = std::numeric_limits<double>::infinity();
  double M = -m;
  for (double s : sigma0_samples) {
    if (!(s > 0.0)) throw std::logic_error("non-positive sigma_0 sample " + std::to_string(s));
    m = std::min(m, s);
    M = std::max(M, s);
  }
  return {m, M};
}

RegionQ build_region(const CellField& field) {
  std::vector<double> v;
  v.reserve(field.states.size());
  for (const State& w : field.states) v.push_back(w.v);
  return build_region(v);
}

double sup_lambda2(const RegionQ& Q, const RealFn& G_prime) {
  constexpr int n = 64;
  double sup = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p = Q.m + (Q.M - Q.m) * i / (n - 1);
    const double gp = G_prime(p);
    for (int j = 0; j < n; ++j) {
      const double q = Q.m + (Q.M - Q.m) * j / (n - 1);
      sup = std::max(sup, p * p / q * gp);  // (v/eta^2) G'(p) with eta = q/p
    }
  }
  return sup;
}

double cfl_timestep(const RegionQ& Q, const RealFn& G_prime, double h, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw ValidationError("CFL fraction must lie in (0, 1)");
  const double sup = sup_lambda2(Q, G_prime);
  if (!(sup > 0.0)) throw std::logic_error("sup lambda2 vanished; G' must be positive");
  return fraction * h / sup;
}

CellField init_cells(const InitialData& sigma0, const Grid& grid) {
  CellField field;
  field.grid = grid;
  field.time = 0.0;
  field.states.reserve(static_cast<std::size_t>(grid.n_cells));
  for (int j = 0; j < grid.n_cells; ++j) {
    field.states.push_back({1.0, sigma0.cell_average(grid.edge(j), grid.edge(j + 1))});
  }
  return field;
}

CellField step(const CellField& field, double k, const RealFn& G, long step_index) {
  CellField next;
  next.grid = field.grid;
  next.time = field.time + k;
  const auto n = field.states.size();
  next.states.resize(n);
  const double ratio = k / field.grid.h;
  double g_prev = G(field.left_ghost().p());
  for (std::size_t j = 0; j < n; ++j) {
    const State& w = field.states[j];
    const double g_here = G(w.p());
    const double eta = w.eta + ratio * (g_here - g_prev);
    if (!(eta > 0.0)) {
      throw SchemeError("non-positive eta in cell " + std::to_string(j), step_index);
    }
    next.states[j] = {eta, w.v};
    g_prev = g_here;
  }
  return next;
}

double tv_pq(const CellField& field) {
  double tv = 0.0;
  for (std::size_t j = 1; j < field.states.size(); ++j) tv += pq_norm(field.states[j - 1], field.states[j]);
  return tv;
}

History evolve(const CellField& field, double T, const Velocity& vel, const EvolveOptions& options) {
  if (!(T > 0.0)) throw ValidationError("final time must be positive");
  History history;
  history.region = build_region(field);
  history.k = cfl_timestep(history.region, vel.G_prime, field.grid.h, options.cfl_fraction);
  history.tv0 = tv_pq(field);
  history.levels.push_back(field);

  std::vector<double> stops;
  for (double t : options.stop_times) {
    if (t > 0.0 && t < T) stops.push_back(t);
  }
  stops.push_back(T);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  long n = 0;
  std::size_t stop = 0;
  while (history.levels.back().time < T) {
    const CellField& cur = history.levels.back();
    const double target = stops[stop];
    double k = history.k;
    const bool clipped = cur.time + k >= target - 1e-14 * std::max(1.0, target);
    if (clipped) k = target - cur.time;
    CellField next = step(cur, k, vel.G, n);
    if (clipped) {
      next.time = target;
      ++stop;
    }
    if (options.monitors) {
      double viol = 0.0;
      for (const State& w : next.states) viol = std::max(viol, history.region.violation(w));
      history.diagnostics.push_back({next.time, k, tv_pq(next), viol});
    }
    history.levels.push_back(std::move(next));
    ++n;
  }
  return history;
}

double l1_difference(const CellField& a, const CellField& b) {
  if (a.states.size() != b.states.size()) throw std::invalid_argument("fields on different grids");
  double acc = 0.0;
  for (std::size_t j = 0; j < a.states.size(); ++j) {
    acc += std::abs(a.states[j].eta - b.states[j].eta) + std::abs(a.states[j].v - b.states[j].v);
  }
  return acc * a.grid.h;
}

double lipschitz_P(const RegionQ& Q, const RealFn& G) {
  constexpr int n = 8;
  std::vector<State> pts;
  for (int i = 0; i < n; ++i) {
    const double p = Q.m + (Q.M - Q.m) * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double q = Q.m + (Q.M - Q.m) * j / (n - 1);
      pts.push_back({q / p, q});
    }
  }
  double lip = 0.0;
  for (const State& a : pts) {
    for (const State& b : pts) {
      const double d = pq_norm(a, b);
      if (d > 0.0) lip = std::max(lip, std::abs(G(a.p()) - G(b.p())) / d);
    }
  }
  if (lip == 0.0) {
    // Degenerate Q: one state; use the local slope.
    const double p = Q.m;
    const double dp = 1e-6 * p;
    lip = std::abs(G(p + dp) - G(p - dp)) / (2 * dp);
  }
  return lip;
}

ContinuityCheck l1_time_continuity_check(const History& history, double T1, double T2, const RealFn& G) {
  const double t_end = history.levels.back().time;
  if (T1 < 0.0 || T2 < 0.0 || T1 > t_end + 1e-12 || T2 > t_end + 1e-12) {
    throw std::out_of_range("continuity check times outside the history");
  }
  const CellField& a = history.at_or_before(T1);
  const CellField& b = history.at_or_before(T2);
  const double C = lipschitz_P(history.region, G);
  return {l1_difference(a, b), C * std::abs(T2 - T1) * history.tv0};
}

}  // namespace temple
