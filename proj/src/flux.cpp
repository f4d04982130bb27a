#include "temple/flux.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "temple/errors.hpp"

namespace temple {

namespace {

void require_interval(Interval interval) {
  if (!(interval.lo < interval.hi) || !std::isfinite(interval.lo) || !std::isfinite(interval.hi)) {
    throw ValidationError("flux interval must satisfy a < b");
  }
}

std::vector<double> inside(std::vector<double> pts, Interval interval) {
  std::erase_if(pts, [&](double x) { return !interval.contains(x); });
  std::sort(pts.begin(), pts.end());
  return pts;
}

// Zeros of `df` on `interval` located by sign changes on a dense sample.
std::vector<double> bracket_roots(const RealFn& df, Interval interval, int samples = 4096) {
  std::vector<double> roots;
  const double dx = interval.length() / samples;
  double x0 = interval.lo;
  double y0 = df(x0);
  if (y0 == 0.0) roots.push_back(x0);
  for (int i = 1; i <= samples; ++i) {
    const double x1 = (i == samples) ? interval.hi : interval.lo + i * dx;
    const double y1 = df(x1);
    if (y1 == 0.0) {
      roots.push_back(x1);
    } else if (y0 != 0.0 && std::signbit(y0) != std::signbit(y1)) {
      auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-12; };
      auto [a, b] = boost::math::tools::bisect(df, x0, x1, tol);
      roots.push_back(0.5 * (a + b));
    }
    x0 = x1;
    y0 = y1;
  }
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-10; }),
              roots.end());
  return roots;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"burgers", "cubic", "buckley_leverett", "sine"};
  return names;
}

FluxSpec catalog_flux(std::string_view name, Interval interval) {
  require_interval(interval);
  FluxSpec flux;
  flux.name = std::string(name);
  flux.interval = interval;
  if (name == "burgers") {
    flux.f = [](double r) { return 0.5 * r * r; };
    flux.f_prime = [](double r) { return r; };
    flux.critical_points = inside({0.0}, interval);
  } else if (name == "cubic") {
    flux.f = [](double r) { return r * r * r; };
    flux.f_prime = [](double r) { return 3.0 * r * r; };
    flux.critical_points = inside({0.0}, interval);
  } else if (name == "buckley_leverett") {
    flux.f = [](double r) {
      const double s = 1.0 - r;
      return r * r / (r * r + s * s);
    };
    flux.f_prime = [](double r) {
      const double s = 1.0 - r;
      const double d = r * r + s * s;
      return 2.0 * r * s / (d * d);
    };
    flux.critical_points = inside({0.0, 1.0}, interval);
  } else if (name == "sine") {
    flux.f = [](double r) { return std::sin(r); };
    flux.f_prime = [](double r) { return std::cos(r); };
    const double pi = std::numbers::pi;
    std::vector<double> pts;
    const long first = static_cast<long>(std::ceil((interval.lo - pi / 2) / pi));
    const long last = static_cast<long>(std::floor((interval.hi - pi / 2) / pi));
    for (long n = first; n <= last; ++n) pts.push_back(pi / 2 + n * pi);
    flux.critical_points = inside(std::move(pts), interval);
  } else {
    throw ValidationError("unknown flux '" + std::string(name) + "'");
  }
  return flux;
}

FluxSpec polynomial_flux(std::vector<double> coeffs, Interval interval) {
  require_interval(interval);
  if (coeffs.empty()) throw ValidationError("polynomial flux needs at least one coefficient");
  std::vector<double> deriv;
  for (std::size_t i = 1; i < coeffs.size(); ++i) deriv.push_back(static_cast<double>(i) * coeffs[i]);

  auto horner = [](const std::vector<double>& c) {
    return [c](double x) {
      double acc = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
      return acc;
    };
  };

  FluxSpec flux;
  flux.name = "polynomial";
  flux.interval = interval;
  flux.f = horner(coeffs);
  flux.f_prime = horner(deriv);
  // f' == 0 identically (constant flux) has no isolated critical points.
  const bool constant = std::all_of(deriv.begin(), deriv.end(), [](double c) { return c == 0.0; });
  if (!constant) flux.critical_points = bracket_roots(flux.f_prime, interval);
  return flux;
}

void validate_flux(const FluxSpec& flux) {
  if (!flux.f || !flux.f_prime) throw ValidationError("flux functions are not set");
  require_interval(flux.interval);
  const Interval I = flux.interval;
  double scale = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = I.lo + I.length() * i / 99.0;
    scale = std::max({scale, std::abs(flux.f(x)), std::abs(flux.f_prime(x))});
  }
  scale = std::max(scale, 1.0);

  const double step = 1e-5 * std::max(1.0, I.length());
  for (int i = 0; i < 100; ++i) {
    const double x = I.lo + I.length() * i / 99.0;
    const double fd = (flux.f(x + step) - flux.f(x - step)) / (2.0 * step);
    const double df = flux.f_prime(x);
    if (std::abs(fd - df) > 1e-6 * std::max(std::abs(df), scale)) {
      throw ValidationError("flux derivative does not match f at x=" + std::to_string(x));
    }
  }
  for (double c : flux.critical_points) {
    if (!I.contains(c)) throw ValidationError("critical point outside the interval");
    if (std::abs(flux.f_prime(c)) > 1e-10 * scale) {
      throw ValidationError("f' does not vanish at critical point " + std::to_string(c));
    }
  }
}

}  // namespace temple
