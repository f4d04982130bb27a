#include "temple/lagrange.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace temple {

std::span<const double> GammaField::row_at(double t) const {
  for (std::size_t n = 0; n < times.size(); ++n) {
    if (std::abs(times[n] - t) <= 1e-12) return rows[n];
  }
  throw std::out_of_range("no gamma row at t=" + std::to_string(t));
}

GammaField build_gamma(const History& history, const RealFn& G, Anchor anchor) {
  if (history.levels.empty()) throw std::invalid_argument("empty history");
  const Grid& grid = history.levels.front().grid;
  const int N = grid.n_cells;

  GammaField out;
  out.nodes.resize(static_cast<std::size_t>(N) + 1);
  for (int j = 0; j <= N; ++j) out.nodes[j] = grid.edge(j);

  double anchor_pos = (anchor == Anchor::left) ? out.nodes.front() : out.nodes.back();
  for (std::size_t n = 0; n < history.levels.size(); ++n) {
    const CellField& f = history.levels[n];
    if (n > 0) {
      const CellField& prev = history.levels[n - 1];
      const double k = f.time - prev.time;
      const State ghost = (anchor == Anchor::left) ? prev.left_ghost() : prev.right_ghost();
      anchor_pos += k * G(ghost.p());
    }
    std::vector<double> row(out.nodes.size());
    if (n == 0) {
      row = out.nodes;
    } else if (anchor == Anchor::left) {
      row[0] = anchor_pos;
      for (int j = 0; j < N; ++j) row[j + 1] = row[j] + grid.h * f.states[j].eta;
    } else {
      row[N] = anchor_pos;
      for (int j = N - 1; j >= 0; --j) row[j] = row[j + 1] - grid.h * f.states[j].eta;
    }
    out.times.push_back(f.time);
    out.rows.push_back(std::move(row));
  }
  return out;
}

Inversion invert_gamma(std::span<const double> row, std::span<const double> nodes, double y) {
  if (row.size() != nodes.size() || row.size() < 2) throw std::invalid_argument("gamma row/node size mismatch");
  if (y <= row.front()) return {nodes.front(), y < row.front()};
  if (y >= row.back()) return {nodes.back(), y > row.back()};
  const auto it = std::upper_bound(row.begin(), row.end(), y);
  const auto j = static_cast<std::size_t>(it - row.begin());  // row[j-1] <= y < row[j]
  const double t = (y - row[j - 1]) / (row[j] - row[j - 1]);
  return {nodes[j - 1] + t * (nodes[j] - nodes[j - 1]), false};
}

double eval_gamma(std::span<const double> row, std::span<const double> nodes, double x) {
  if (x <= nodes.front()) return row.front();
  if (x >= nodes.back()) return row.back();
  const auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
  const auto j = static_cast<std::size_t>(it - nodes.begin());
  const double t = (x - nodes[j - 1]) / (nodes[j] - nodes[j - 1]);
  return row[j - 1] + t * (row[j] - row[j - 1]);
}

Recovered recover_sigma(const History& history, const GammaField& gamma, double t, std::span<const double> ys) {
  const CellField& field = history.exactly_at(t);
  const auto row = gamma.row_at(t);
  Recovered out;
  out.values.reserve(ys.size());
  for (double y : ys) {
    const Inversion inv = invert_gamma(row, gamma.nodes, y);
    if (inv.clamped) ++out.flagged;
    out.values.push_back(field.states[static_cast<std::size_t>(field.grid.cell_of(inv.x))].p());
  }
  return out;
}

Recovered recover_solution(const History& history, const GammaField& gamma, const TransformSpec& spec, double t,
                           std::span<const double> ys, double tol) {
  Recovered sigma = recover_sigma(history, gamma, t, ys);
  for (double& s : sigma.values) {
    if (!sigma_in_range(spec, s, tol)) ++sigma.flagged;
    s = spec.recover_rho(s);
  }
  return sigma;
}

Interval gamma_range(const GammaField& gamma, double t) {
  const auto row = gamma.row_at(t);
  return {row.front(), row.back()};
}

}  // namespace temple
