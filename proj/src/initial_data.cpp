#include "temple/initial_data.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "temple/errors.hpp"

namespace temple {

namespace {

PiecewiseData as_piecewise(const RiemannData& r) { return {{r.x0}, {r.left, r.right}}; }

double piecewise_value(const PiecewiseData& d, double x) {
  const auto it = std::lower_bound(d.breaks.begin(), d.breaks.end(), x);
  return d.values[static_cast<std::size_t>(it - d.breaks.begin())];
}

double piecewise_average(const PiecewiseData& d, double a, double b) {
  if (b <= a) return piecewise_value(d, a);
  double acc = 0.0;
  double lo = a;
  double vmin = std::numeric_limits<double>::infinity();
  double vmax = -vmin;
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    const double hi = (i < d.breaks.size()) ? std::min(d.breaks[i], b) : b;
    if (hi > lo) {
      acc += d.values[i] * (hi - lo);
      vmin = std::min(vmin, d.values[i]);
      vmax = std::max(vmax, d.values[i]);
      lo = hi;
    }
    if (lo >= b) break;
  }
  // Keep the average inside the values it mixes; exact when they coincide.
  if (vmin == vmax) return vmin;
  return std::clamp(acc / (b - a), vmin, vmax);
}

}  // namespace

InitialData::InitialData(Variant data) : data_(std::move(data)) {
  if (const auto* p = std::get_if<PiecewiseData>(&data_)) {
    if (p->values.size() != p->breaks.size() + 1) {
      throw ValidationError("piecewise data needs one more value than breaks");
    }
    if (!std::is_sorted(p->breaks.begin(), p->breaks.end())) {
      throw ValidationError("piecewise breaks must be sorted");
    }
  }
  if (const auto* s = std::get_if<SineData>(&data_)) {
    if (!(s->period > 0.0)) throw ValidationError("sine period must be positive");
  }
}

double InitialData::operator()(double x) const {
  return std::visit(
      [x](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, RiemannData>) {
          return x <= d.x0 ? d.left : d.right;
        } else if constexpr (std::is_same_v<T, PiecewiseData>) {
          return piecewise_value(d, x);
        } else {
          return d.mean + d.amp * std::sin(2.0 * std::numbers::pi * x / d.period);
        }
      },
      data_);
}

double InitialData::cell_average(double a, double b) const {
  if (const auto* r = std::get_if<RiemannData>(&data_)) return piecewise_average(as_piecewise(*r), a, b);
  if (const auto* p = std::get_if<PiecewiseData>(&data_)) return piecewise_average(*p, a, b);
  using Gauss = boost::math::quadrature::gauss<double, 10>;
  return Gauss::integrate([this](double x) { return (*this)(x); }, a, b) / (b - a);
}

bool InitialData::piecewise_constant() const { return !std::holds_alternative<SineData>(data_); }

Interval InitialData::range() const {
  if (const auto* r = std::get_if<RiemannData>(&data_)) {
    return {std::min(r->left, r->right), std::max(r->left, r->right)};
  }
  if (const auto* p = std::get_if<PiecewiseData>(&data_)) {
    const auto [lo, hi] = std::minmax_element(p->values.begin(), p->values.end());
    return {*lo, *hi};
  }
  const auto& s = std::get<SineData>(data_);
  return {s.mean - std::abs(s.amp), s.mean + std::abs(s.amp)};
}

std::vector<double> InitialData::breakpoints() const {
  if (const auto* r = std::get_if<RiemannData>(&data_)) return {r->x0};
  if (const auto* p = std::get_if<PiecewiseData>(&data_)) return p->breaks;
  return {};
}

InitialData InitialData::mapped(int orientation, double shift) const {
  auto map = [&](double v) { return orientation * v + shift; };
  return std::visit(
      [&](const auto& d) -> InitialData {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, RiemannData>) {
          return RiemannData{map(d.left), map(d.right), d.x0};
        } else if constexpr (std::is_same_v<T, PiecewiseData>) {
          PiecewiseData out{d.breaks, {}};
          for (double v : d.values) out.values.push_back(map(v));
          return out;
        } else {
          return SineData{map(d.mean), orientation * d.amp, d.period};
        }
      },
      data_);
}

}  // namespace temple
