#include "temple/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "temple/errors.hpp"

namespace temple {

OrientationChoice normalize_orientation(Interval interval) {
  if (!(interval.lo < interval.hi)) {
    throw ValidationError("data interval must satisfy a < b");
  }
  OrientationChoice c;
  if (interval.lo > 0.0) {
    c.orientation = 1;
    c.L = 0.0;
    c.interval_tilde = interval;
  } else if (interval.hi < 0.0) {
    c.orientation = -1;
    c.L = 0.0;
    c.interval_tilde = {-interval.hi, -interval.lo};
  } else {
    c.orientation = 1;
    c.L = 1.0 - interval.lo;
    c.interval_tilde = {interval.lo + c.L, interval.hi + c.L};
  }
  return c;
}

OrientedFlux orient_flux(const FluxSpec& flux, int orientation) {
  if (orientation > 0) return {flux.f, flux.f_prime};
  auto f = flux.f;
  auto fp = flux.f_prime;
  return {[f](double s) { return -f(-s); }, [fp](double s) { return fp(-s); }};
}

ShiftK compute_shift_K(const FluxSpec& flux, int orientation, double L, Interval tilde, int samples) {
  if (!(tilde.lo > 0.0)) throw ValidationError("transformed interval must be positive");
  const OrientedFlux of = orient_flux(flux, orientation);
  auto lower = [&](double s) { return s * of.f_prime(s - L) - of.f(s - L); };

  samples = std::max(samples, 2);
  const double ds = tilde.length() / (samples - 1);
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double s = (i == samples - 1) ? tilde.hi : tilde.lo + i * ds;
    const double val = lower(s);
    if (val < best_val) {
      best_val = val;
      best = i;
    }
  }
  const double a = std::max(tilde.lo, tilde.lo + (best - 1) * ds);
  const double b = std::min(tilde.hi, tilde.lo + (best + 1) * ds);
  const auto refined = boost::math::tools::brent_find_minima(lower, a, b, 52);
  const double K_bound = std::min(best_val, refined.second);

  ShiftK out;
  out.K_bound = K_bound;
  out.margin = std::max(1e-3, 0.05 * std::abs(K_bound));
  out.K = (K_bound > out.margin) ? 0.0 : K_bound - out.margin;
  return out;
}

TransformSpec::TransformSpec(FluxSpec flux, OrientationChoice choice, ShiftK shift)
    : flux_(std::move(flux)), choice_(choice), shift_(shift), oriented_(orient_flux(flux_, choice.orientation)) {}

double TransformSpec::g(double sigma) const { return oriented_.f(sigma - choice_.L) + shift_.K; }

double TransformSpec::g_prime(double sigma) const { return oriented_.f_prime(sigma - choice_.L); }

double TransformSpec::G(double sigma) const { return g(sigma) / sigma; }

double TransformSpec::G_prime(double sigma) const {
  const double r = sigma - choice_.L;
  return (sigma * oriented_.f_prime(r) - oriented_.f(r) - shift_.K) / (sigma * sigma);
}

Velocity TransformSpec::velocity() const {
  auto self = *this;
  return {[self](double s) { return self.G(s); }, [self](double s) { return self.G_prime(s); }};
}

Velocity build_velocity(const TransformSpec& spec) {
  const Interval I = spec.interval_tilde();
  for (int i = 0; i < 1024; ++i) {
    const double s = I.lo + I.length() * i / 1023.0;
    if (!(spec.G_prime(s) > 0.0)) {
      throw std::logic_error("G' <= 0 at sigma=" + std::to_string(s) + "; K margin too small");
    }
  }
  return spec.velocity();
}

TransformSpec make_transform(const FluxSpec& flux, std::optional<double> K_override) {
  const OrientationChoice choice = normalize_orientation(flux.interval);
  ShiftK shift = compute_shift_K(flux, choice.orientation, choice.L, choice.interval_tilde);
  if (K_override) {
    if (!(*K_override < shift.K_bound)) {
      throw ValidationError("K override " + std::to_string(*K_override) + " is not below K_bound " +
                            std::to_string(shift.K_bound));
    }
    shift.K = *K_override;
  }
  TransformSpec spec(flux, choice, shift);
  (void)build_velocity(spec);
  return spec;
}

bool sigma_in_range(const TransformSpec& spec, double sigma, double tol) {
  return spec.interval_tilde().contains(sigma, tol);
}

}  // namespace temple
