#pragma once

#include <array>
#include <vector>

#include "temple/transform.hpp"

namespace temple {

/// One state w = (eta, v) of eta_t - G(v/eta)_x = 0, v_t = 0.
/// eta is the stretch gamma_x, v the label sigma_0 carried by each particle.
struct State {
  double eta = 1.0;
  double v = 1.0;

  double p() const { return v / eta; }
  double q() const { return v; }
  bool positive() const { return eta > 0.0 && v > 0.0; }
  bool operator==(const State&) const = default;
};

struct RiemannInvariants {
  double p;
  double q;
};

RiemannInvariants riemann_invariants(State w);

/// (v/eta^2) G'(v/eta).
double lambda2(State w, const RealFn& G_prime);

/// State across the stationary contact: keeps p of the left state and q of the right.
State middle_state(State left, State right);

/// |p_L - p_R| + |q_L - q_R|.
double pq_norm(State a, State b);

/// Rectangle [m,M]^2 in (p,q) coordinates; the quadrilateral with vertices
/// (m/M,m), (1,m), (M/m,M), (1,M) in the (eta,v) plane.
struct RegionQ {
  double m = 1.0;
  double M = 1.0;

  bool contains(State w, double tol = 0.0) const;
  /// Largest distance of p or q outside [m, M]; 0 inside.
  double violation(State w) const;
};

bool region_contains(const RegionQ& Q, State w, double tol);

/// One piece of the 2-wave, oriented from the middle state towards the right state.
struct WavePiece {
  enum class Kind { shock, fan };
  Kind kind;
  double eta_from;
  double eta_to;
  double speed_lo;  // shock: both speeds equal the Rankine-Hugoniot speed
  double speed_hi;
};

enum class Wave2Kind { none, shock, rarefaction, composite };

struct WaveStructure {
  State left;
  State middle;
  State right;
  std::vector<WavePiece> wave2;

  Wave2Kind kind() const;
};

/// Entropy solution of the frozen-v scalar law eta_t + phi(eta)_x = 0,
/// phi(eta) = -G(v/eta), from the lower convex envelope of phi (eta_from < eta_to)
/// or the upper concave envelope (eta_from > eta_to), sampled at 1024 cells with
/// tangency breakpoints refined by bisection.
std::vector<WavePiece> wave2_pieces(double v, double eta_from, double eta_to, const Velocity& vel);

/// eta at the ray x/t = xi of the 2-wave connecting eta_left to eta_right at fixed v.
double wave2_sampler(double v, double eta_left, double eta_right, double xi, const Velocity& vel);

/// Evaluates an already-built 2-wave at xi.
double sample_pieces(const std::vector<WavePiece>& pieces, double eta_left, double eta_right, double xi,
                     const Velocity& vel, double v);

WaveStructure riemann_structure(State left, State right, const Velocity& vel);

/// Self-similar solution at xi = x/t: left state for xi < 0, middle state at xi = 0,
/// 2-wave with v = v_R for xi > 0.
State solve_riemann(State left, State right, double xi, const Velocity& vel);

/// Interface flux P(w_L) = (-G(p_L), 0). All 2-waves move right, so the right
/// state never reaches the interface and P is continuous across the contact.
std::array<double, 2> godunov_flux(State left, State right, const RealFn& G);

}  // namespace temple
