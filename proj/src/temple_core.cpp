#include "temple/temple_core.hpp"

#include <algorithm>
#include <cmath>

namespace temple {

RiemannInvariants riemann_invariants(State w) { return {w.p(), w.q()}; }

double lambda2(State w, const RealFn& G_prime) { return w.v / (w.eta * w.eta) * G_prime(w.p()); }

State middle_state(State left, State right) {
  if (left == right) return left;
  return {left.eta * right.v / left.v, right.v};
}

double pq_norm(State a, State b) { return std::abs(a.p() - b.p()) + std::abs(a.q() - b.q()); }

bool RegionQ::contains(State w, double tol) const {
  const double p = w.p();
  const double q = w.q();
  return q >= m - tol && q <= M + tol && p >= m - tol && p <= M + tol;
}

double RegionQ::violation(State w) const {
  const double p = w.p();
  const double q = w.q();
  return std::max({0.0, m - p, p - M, m - q, q - M});
}

bool region_contains(const RegionQ& Q, State w, double tol) { return Q.contains(w, tol); }

Wave2Kind WaveStructure::kind() const {
  if (wave2.empty()) return Wave2Kind::none;
  if (wave2.size() > 1) return Wave2Kind::composite;
  return wave2.front().kind == WavePiece::Kind::shock ? Wave2Kind::shock : Wave2Kind::rarefaction;
}

namespace {

constexpr int kEnvelopeCells = 1024;
constexpr double kBreakpointTol = 1e-10;

// Scalar law u_t + psi(u)_x = 0 with u increasing from u_lo to u_hi. The concave
// case eta_from > eta_to is mapped here by u = -eta, psi(u) = -phi(-u).
struct Reduced {
  RealFn psi;
  RealFn dpsi;
  double sign;  // eta = sign * u
};

Reduced reduce(double v, bool reflect, const Velocity& vel) {
  auto G = vel.G;
  auto Gp = vel.G_prime;
  auto phi = [G, v](double eta) { return -G(v / eta); };
  auto dphi = [Gp, v](double eta) { return Gp(v / eta) * v / (eta * eta); };
  if (!reflect) return {phi, dphi, 1.0};
  return {[phi](double u) { return -phi(-u); }, [dphi](double u) { return dphi(-u); }, -1.0};
}

double cross(double ox, double oy, double ax, double ay, double bx, double by) {
  return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox);
}

// Tangency of the chord from (ua, psi(ua)) at u: psi'(u)(u - ua) - (psi(u) - psi(ua)) = 0,
// searched in [lo, hi]. Returns `guess` when the residual does not change sign.
double refine_tangency(const Reduced& r, double ua, double lo, double hi, double guess) {
  const double pa = r.psi(ua);
  auto res = [&](double u) { return r.dpsi(u) * (u - ua) - (r.psi(u) - pa); };
  double flo = res(lo);
  double fhi = res(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) return guess;
  while (hi - lo > kBreakpointTol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = res(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Pieces in u-coordinates for u_lo < u_hi.
std::vector<WavePiece> lower_envelope(const Reduced& r, double u_lo, double u_hi) {
  const int n = kEnvelopeCells;
  std::vector<double> us(n + 1);
  std::vector<double> ps(n + 1);
  for (int i = 0; i <= n; ++i) {
    us[i] = (i == n) ? u_hi : u_lo + (u_hi - u_lo) * i / n;
    ps[i] = r.psi(us[i]);
  }
  // Monotone chain, lower hull.
  std::vector<int> hull;
  for (int i = 0; i <= n; ++i) {
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2];
      const int b = hull.back();
      if (cross(us[a], ps[a], us[b], ps[b], us[i], ps[i]) <= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }

  // Vertex positions, refined where a chord meets an interior tangency point.
  std::vector<double> pos(hull.size());
  for (std::size_t i = 0; i < hull.size(); ++i) pos[i] = us[hull[i]];
  const auto is_chord = [&](std::size_t seg) { return hull[seg + 1] - hull[seg] > 1; };
  for (int sweep = 0; sweep < 4; ++sweep) {
    for (std::size_t seg = 0; seg + 1 < hull.size(); ++seg) {
      if (!is_chord(seg)) continue;
      const std::size_t a = seg;
      const std::size_t b = seg + 1;
      if (hull[b] != n) {
        const double lo = us[hull[b] - 1];
        const double hi = us[std::min(hull[b] + 1, n)];
        pos[b] = refine_tangency(r, pos[a], lo, hi, pos[b]);
      }
      if (hull[a] != 0) {
        const double lo = us[hull[a] - 1];
        const double hi = us[std::min(hull[a] + 1, n)];
        pos[a] = refine_tangency(r, pos[b], lo, hi, pos[a]);
      }
    }
  }

  std::vector<WavePiece> pieces;
  for (std::size_t seg = 0; seg + 1 < hull.size(); ++seg) {
    const double a = pos[seg];
    const double b = pos[seg + 1];
    if (!(b > a)) continue;
    if (is_chord(seg)) {
      const double s = (r.psi(b) - r.psi(a)) / (b - a);
      pieces.push_back({WavePiece::Kind::shock, a, b, s, s});
    } else if (!pieces.empty() && pieces.back().kind == WavePiece::Kind::fan) {
      pieces.back().eta_to = b;
      pieces.back().speed_hi = r.dpsi(b);
    } else {
      pieces.push_back({WavePiece::Kind::fan, a, b, r.dpsi(a), r.dpsi(b)});
    }
  }
  return pieces;
}

double sample_reduced(const std::vector<WavePiece>& pieces, const Reduced& r, double u_lo, double u_hi,
                      double xi) {
  double u = u_lo;
  for (const WavePiece& pc : pieces) {
    if (pc.kind == WavePiece::Kind::shock) {
      if (xi < pc.speed_lo) return pc.eta_from;
      u = pc.eta_to;
      continue;
    }
    if (xi < pc.speed_lo) return pc.eta_from;
    if (xi >= pc.speed_hi) {
      u = pc.eta_to;
      continue;
    }
    double lo = pc.eta_from;
    double hi = pc.eta_to;
    while (hi - lo > 1e-14 * std::max(1.0, std::abs(hi))) {
      const double mid = 0.5 * (lo + hi);
      if (r.dpsi(mid) < xi) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }
  return pieces.empty() ? u_hi : u;
}

}  // namespace

std::vector<WavePiece> wave2_pieces(double v, double eta_from, double eta_to, const Velocity& vel) {
  if (eta_from == eta_to) return {};
  const bool reflect = eta_from > eta_to;
  const Reduced r = reduce(v, reflect, vel);
  std::vector<WavePiece> pieces = lower_envelope(r, r.sign * eta_from, r.sign * eta_to);
  for (WavePiece& pc : pieces) {
    pc.eta_from *= r.sign;
    pc.eta_to *= r.sign;
  }
  return pieces;
}

double sample_pieces(const std::vector<WavePiece>& pieces, double eta_left, double eta_right, double xi,
                     const Velocity& vel, double v) {
  if (eta_left == eta_right) return eta_left;
  const bool reflect = eta_left > eta_right;
  const Reduced r = reduce(v, reflect, vel);
  std::vector<WavePiece> reduced = pieces;
  for (WavePiece& pc : reduced) {
    pc.eta_from *= r.sign;
    pc.eta_to *= r.sign;
  }
  return r.sign * sample_reduced(reduced, r, r.sign * eta_left, r.sign * eta_right, xi);
}

double wave2_sampler(double v, double eta_left, double eta_right, double xi, const Velocity& vel) {
  if (eta_left == eta_right) return eta_left;
  return sample_pieces(wave2_pieces(v, eta_left, eta_right, vel), eta_left, eta_right, xi, vel, v);
}

WaveStructure riemann_structure(State left, State right, const Velocity& vel) {
  WaveStructure ws;
  ws.left = left;
  ws.right = right;
  ws.middle = middle_state(left, right);
  ws.wave2 = wave2_pieces(right.v, ws.middle.eta, right.eta, vel);
  return ws;
}

State solve_riemann(State left, State right, double xi, const Velocity& vel) {
  if (left == right) return left;
  if (xi < 0.0) return left;
  const State mid = middle_state(left, right);
  if (xi == 0.0) return mid;
  return {wave2_sampler(right.v, mid.eta, right.eta, xi, vel), right.v};
}

std::array<double, 2> godunov_flux(State left, State /*right*/, const RealFn& G) {
  return {-G(left.p()), 0.0};
}

}  // namespace temple
