#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace temple {

using RealFn = std::function<double(double)>;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x, double tol = 0.0) const { return x >= lo - tol && x <= hi + tol; }
};

/// Scalar flux f with its derivative and the zeros of f' inside the working interval.
struct FluxSpec {
  std::string name;
  RealFn f;
  RealFn f_prime;
  std::vector<double> critical_points;  // sorted, inside `interval`
  Interval interval;
};

/// Built-in fluxes: "burgers" (r^2/2), "cubic" (r^3), "buckley_leverett"
/// (r^2/(r^2+(1-r)^2)) and "sine" (sin r). Throws ValidationError for unknown names.
FluxSpec catalog_flux(std::string_view name, Interval interval);

/// f(r) = sum_i coeffs[i] r^i. Critical points are found by sign-change bracketing
/// on a dense sample followed by bisection to 1e-12.
FluxSpec polynomial_flux(std::vector<double> coeffs, Interval interval);

/// Checks the FluxSpec invariants: f' against a central difference of f on 100
/// samples, and |f'| ~ 0 at each listed critical point. Throws ValidationError.
void validate_flux(const FluxSpec& flux);

/// Names accepted by catalog_flux.
const std::vector<std::string>& catalog_names();

}  // namespace temple
