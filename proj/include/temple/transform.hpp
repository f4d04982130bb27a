#pragma once

#include <optional>

#include "temple/flux.hpp"

namespace temple {

/// Sign and shift taking the data interval I into the strictly positive reals.
struct OrientationChoice {
  int orientation = 1;  // +1: sigma = rho + L, -1: sigma = -rho
  double L = 0.0;
  Interval interval_tilde;
};

/// a > 0: identity. b < 0: reflect (sigma = -rho, flux s -> -f(-s)).
/// a <= 0 <= b: shift by L = 1 - a. Throws ValidationError when a >= b.
OrientationChoice normalize_orientation(Interval interval);

/// Flux seen by sigma before shifting: f itself, or s -> -f(-s) under reflection.
struct OrientedFlux {
  RealFn f;
  RealFn f_prime;
};
OrientedFlux orient_flux(const FluxSpec& flux, int orientation);

struct ShiftK {
  double K = 0.0;
  double K_bound = 0.0;  // min over I~ of s f'(s-L) - f(s-L)
  double margin = 0.0;
};

/// Chooses K strictly below K_bound so that G' > 0 on I~. K_bound comes from a
/// dense sample refined by Brent minimization around the sampled minimizer;
/// K = K_bound - max(1e-3, 0.05|K_bound|), or 0 when K_bound already exceeds that margin.
ShiftK compute_shift_K(const FluxSpec& flux, int orientation, double L, Interval interval_tilde,
                       int samples = 4096);

/// Velocity G(s) = g(s)/s of the positive-state law s_t + g(s)_x = 0.
struct Velocity {
  RealFn G;
  RealFn G_prime;
};

/// Everything needed to move between rho and sigma = orientation*rho + L and to
/// evaluate g, G and G'.
class TransformSpec {
public:
  TransformSpec(FluxSpec flux, OrientationChoice choice, ShiftK shift);

  int orientation() const { return choice_.orientation; }
  double L() const { return choice_.L; }
  double K() const { return shift_.K; }
  double K_bound() const { return shift_.K_bound; }
  double margin() const { return shift_.margin; }
  const Interval& interval_tilde() const { return choice_.interval_tilde; }
  const FluxSpec& flux() const { return flux_; }

  double g(double sigma) const;
  double g_prime(double sigma) const;
  double G(double sigma) const;
  double G_prime(double sigma) const;
  Velocity velocity() const;

  double to_sigma(double rho) const { return choice_.orientation * rho + choice_.L; }
  /// rho = orientation * (sigma - L); with reflection L = 0.
  double recover_rho(double sigma) const { return choice_.orientation * (sigma - choice_.L); }

private:
  FluxSpec flux_;
  OrientationChoice choice_;
  ShiftK shift_;
  OrientedFlux oriented_;
};

/// G and G' as closures over a transform; G' is re-checked positive at 1024 samples
/// of I~ and a std::logic_error is thrown if it is not.
Velocity build_velocity(const TransformSpec& spec);

/// Full transform of a flux on its data interval. `K_override`, when given, must
/// be strictly below K_bound (ValidationError otherwise).
TransformSpec make_transform(const FluxSpec& flux, std::optional<double> K_override = std::nullopt);

/// sigma within the transformed interval up to `tol`.
bool sigma_in_range(const TransformSpec& spec, double sigma, double tol);

}  // namespace temple
