#pragma once

#include <variant>
#include <vector>

#include "temple/flux.hpp"

namespace temple {

struct RiemannData {
  double left;
  double right;
  double x0;
};

/// values[i] on (breaks[i-1], breaks[i]]; values.size() == breaks.size() + 1.
struct PiecewiseData {
  std::vector<double> breaks;
  std::vector<double> values;
};

/// mean + amp * sin(2 pi x / period).
struct SineData {
  double mean;
  double amp;
  double period;
};

/// Initial profile in one variable (rho or sigma).
class InitialData {
public:
  using Variant = std::variant<RiemannData, PiecewiseData, SineData>;

  InitialData(Variant data);  // NOLINT(google-explicit-constructor)
  InitialData(RiemannData d) : InitialData(Variant(d)) {}          // NOLINT(google-explicit-constructor)
  InitialData(PiecewiseData d) : InitialData(Variant(std::move(d))) {}  // NOLINT(google-explicit-constructor)
  InitialData(SineData d) : InitialData(Variant(d)) {}             // NOLINT(google-explicit-constructor)

  double operator()(double x) const;
  /// Exact average of the profile over [a, b] for piecewise-constant data,
  /// 10-point Gauss-Legendre otherwise.
  double cell_average(double a, double b) const;
  bool piecewise_constant() const;
  /// Range of values taken by the profile.
  Interval range() const;
  /// Discontinuity locations.
  std::vector<double> breakpoints() const;
  /// Profile of orientation * value + shift.
  InitialData mapped(int orientation, double shift) const;

  const Variant& data() const { return data_; }

private:
  Variant data_;
};

}  // namespace temple
