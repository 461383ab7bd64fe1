#include "clusterforge/bounds.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "radial_quadrature.hpp"

namespace clusterforge {

QuadratureResult quad_C(const PairPotential& p, double beta, const QuadratureOptions& opts) {
  return detail::integrate_radial(
      p, beta, [beta](double v) { return v == kInfinity ? 1.0 : std::fabs(std::expm1(-beta * v)); }, opts);
}

QuadratureResult quad_Chat(const PairPotential& p, double beta, const QuadratureOptions& opts) {
  return detail::integrate_radial(
      p, beta, [beta](double v) { return v == kInfinity ? 1.0 : -std::expm1(-beta * std::fabs(v)); }, opts);
}

QuadratureResult mayer_c2(const PairPotential& p, double beta, const QuadratureOptions& opts) {
  auto r = detail::integrate_radial(p, beta, [beta](double v) { return mayer_factor_from_energy(v, beta); }, opts);
  return {0.5 * r.value, 0.5 * r.error};
}

double mayer_bound(int n, double beta, double stability_constant, double integral, BoundVariant variant) {
  if (n < 2) throw std::invalid_argument("mayer_bound needs n >= 2");
  // Work in logs: n^{n-2} / n! and the exponential overflow early.
  const double log_combinatorial = (n - 2) * std::log(static_cast<double>(n)) - std::lgamma(n + 1.0);
  const double log_stability =
      variant == BoundVariant::New ? beta * stability_constant * n : 2.0 * beta * stability_constant * (n - 1);
  if (integral == 0.0) return 0.0;
  return std::exp(log_stability + log_combinatorial + (n - 1) * std::log(integral));
}

double radius(double beta, double stability_constant, double c, double c_hat, BoundVariant variant) {
  const double denom_integral = variant == BoundVariant::New ? c_hat : c;
  if (!(denom_integral > 0.0)) throw std::invalid_argument("radius: integral in the denominator must be positive");
  const double exponent =
      variant == BoundVariant::New ? beta * stability_constant + 1.0 : 2.0 * beta * stability_constant + 1.0;
  return std::exp(-exponent) / denom_integral;
}

namespace {

double g_objective(double u, double w) {
  // ((1 + u) e^{-w} - 1) w / u rewritten to stay finite for huge u.
  return ((1.0 + 1.0 / u) * std::exp(-w) - 1.0 / u) * w;
}

}  // namespace

GMaximum g_function(double u) {
  // u = +inf is the w e^{-w} limit.
  if (!(u >= 1.0)) throw std::invalid_argument("g_function needs u >= 1");
  constexpr double kStep = 1e-3;
  constexpr double kTol = 1e-8;

  double best_w = kStep;
  double best = g_objective(u, best_w);
  for (int k = 2; k < 1000; ++k) {
    const double w = k * kStep;
    const double h = g_objective(u, w);
    if (h > best) {
      best = h;
      best_w = w;
    }
  }

  // Golden-section refinement on the grid cell around the best node.
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = std::max(best_w - kStep, 0.0);
  double hi = std::min(best_w + kStep, 1.0);
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = g_objective(u, x1);
  double f2 = g_objective(u, x2);
  while (hi - lo > kTol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = g_objective(u, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = g_objective(u, x1);
    }
  }
  const double w = 0.5 * (lo + hi);
  const double h = g_objective(u, w);
  if (h >= best) return {h, w};
  return {best, best_w};
}

double virial_radius(double beta, double stability_constant, double c, double c_hat, VirialVariant variant,
                     bool literal_lp_formula) {
  if (variant == VirialVariant::New) {
    if (!(c_hat > 0.0)) throw std::invalid_argument("virial_radius: C_hat must be positive");
    const double u = std::exp(beta * stability_constant);
    return g_function(u).value / (u * c_hat);
  }
  const double denom = literal_lp_formula ? c_hat : c;
  if (!(denom > 0.0)) throw std::invalid_argument("virial_radius: integral in the denominator must be positive");
  const double u = std::exp(2.0 * beta * stability_constant);
  return g_function(u).value / (u * denom);
}

std::vector<std::pair<std::string, double>> BoundsReport::fields() const {
  return {
      {"beta", beta},
      {"B", stability_constant},
      {"C", c},
      {"C_hat", c_hat},
      {"R_PR", r_pr},
      {"R_star", r_star},
      {"mayer_ratio", mayer_ratio},
      {"g_old", g_old},
      {"g_new", g_new},
      {"R_LP", r_lp},
      {"R_virial_star", r_virial_star},
      {"virial_ratio", virial_ratio},
      {"C_error", c_error},
      {"C_hat_error", c_hat_error},
  };
}

BoundsReport bounds_report(const PairPotential& p, double beta, const QuadratureOptions& opts,
                           bool literal_lp_formula) {
  BoundsReport r;
  r.potential = p.name();
  r.beta = beta;
  r.stability_constant = p.stability_constant();
  r.literal_lp_formula = literal_lp_formula;
  const auto c = quad_C(p, beta, opts);
  const auto ch = quad_Chat(p, beta, opts);
  r.c = c.value;
  r.c_hat = ch.value;
  r.c_error = c.error;
  r.c_hat_error = ch.error;
  const double b = r.stability_constant;
  r.r_pr = radius(beta, b, r.c, r.c_hat, BoundVariant::PenroseRuelle);
  r.r_star = radius(beta, b, r.c, r.c_hat, BoundVariant::New);
  // e^{beta B} C / C_hat computed in one step to avoid under/overflow of the radii.
  r.mayer_ratio = std::exp(beta * b) * (r.c / r.c_hat);
  r.g_old = g_function(std::exp(2.0 * beta * b)).value;
  r.g_new = g_function(std::exp(beta * b)).value;
  r.r_lp = virial_radius(beta, b, r.c, r.c_hat, VirialVariant::LebowitzPenrose, literal_lp_formula);
  r.r_virial_star = virial_radius(beta, b, r.c, r.c_hat, VirialVariant::New);
  const double lp_denominator = literal_lp_formula ? r.c_hat : r.c;
  r.virial_ratio = std::exp(beta * b) * (lp_denominator / r.c_hat) * (r.g_new / r.g_old);
  return r;
}

namespace {

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

}  // namespace

std::string csv_header(const BoundsReport& r) {
  std::string out = "potential";
  for (const auto& [name, value] : r.fields()) out += "," + name;
  return out;
}

std::string csv_row(const BoundsReport& r) {
  std::string out = r.potential;
  for (const auto& [name, value] : r.fields()) out += "," + format_double(value);
  return out;
}

}  // namespace clusterforge
