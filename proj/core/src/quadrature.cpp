#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "radial_quadrature.hpp"

namespace clusterforge {

double unit_sphere_area(int dimension) {
  switch (dimension) {
    case 1: return 2.0;
    case 2: return 2.0 * std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi;
    default: throw std::invalid_argument("radial quadrature supports d in {1, 2, 3}");
  }
}

double ball_volume(double radius, int dimension) {
  return unit_sphere_area(dimension) * std::pow(radius, dimension) / dimension;
}

namespace detail {

namespace {

constexpr double kMaxTailRadius = 1e12;
constexpr unsigned kMaxDepth = 20;

QuadratureResult panel(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  double l1 = 0.0;
  const double value = gauss_kronrod<double, 31>::integrate(f, a, b, kMaxDepth, rel_tol, &error, &l1);
  // Kronrod estimates can vanish on smooth panels; keep a rounding floor.
  error = std::max(error, 64.0 * std::numeric_limits<double>::epsilon() * l1);
  return {value, error};
}

}  // namespace

QuadratureResult integrate_radial(const PairPotential& p, double beta, const EnergyIntegrand& integrand,
                                  const QuadratureOptions& opts) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be positive and finite");
  const int d = p.dimension();
  const double surface = unit_sphere_area(d);
  const double panel_tol = opts.rel_tol * 0.1;

  QuadratureResult total;
  const double core = p.hard_core_radius();
  if (core > 0.0) total.value += integrand(kInfinity) * ball_volume(core, d);

  auto radial = [&](double r) { return integrand(p(r)) * std::pow(r, d - 1); };

  std::vector<double> edges{core};
  for (double b : p.quadrature_breakpoints()) {
    if (b > edges.back()) edges.push_back(b);
  }

  const auto& support = p.support_radius();
  if (!support) {
    // Unbounded support: extend to a scale where the tail moment is defined.
    const double start = std::max({edges.back(), p.temperedness_radius(), 1.0});
    if (start > edges.back()) edges.push_back(start);
  }

  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const auto part = panel(radial, edges[k], edges[k + 1], panel_tol);
    total.value += surface * part.value;
    total.error += surface * part.error;
  }
  if (support) return total;

  // Geometric tail panels [R, 2R] until the analytic tail bound is negligible.
  double r = edges.back();
  while (true) {
    const double moment = p.tail_moment(r);
    if (!std::isfinite(moment)) {
      throw NonTemperedError(p.name() + ": integral of |V| beyond r = " + std::to_string(r) + " diverges");
    }
    const double tail = beta * std::exp(beta * std::fabs(p(r))) * surface * moment;
    const double scale = std::max(std::fabs(total.value), std::numeric_limits<double>::min());
    if (tail <= opts.tail_fraction * scale || tail == 0.0) {
      total.error += tail;
      break;
    }
    if (r > kMaxTailRadius) {
      throw NonTemperedError(p.name() + ": tail did not become negligible before r = 1e12");
    }
    const auto part = panel(radial, r, 2.0 * r, panel_tol);
    total.value += surface * part.value;
    total.error += surface * part.error;
    r *= 2.0;
  }
  return total;
}

}  // namespace detail
}  // namespace clusterforge
