#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clusterforge/graphs.hpp"
#include "clusterforge/potentials.hpp"

namespace clusterforge {

/// Raised when the tail of a radial integral does not converge.
class NonTemperedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureResult {
  double value = 0.0;
  /// Absolute error estimate: panel estimates plus the analytic tail bound.
  double error = 0.0;
};

struct QuadratureOptions {
  double rel_tol = 1e-6;
  /// Tail truncation: stop once beta * integral_R^inf |V| dx falls below
  /// tail_fraction * |integral so far|.
  double tail_fraction = 1e-12;
};

/// Surface area of the unit sphere in R^d for d in {1, 2, 3}.
double unit_sphere_area(int dimension);
/// Volume of the d-ball of radius r for d in {1, 2, 3}.
double ball_volume(double radius, int dimension);

/// C(beta) = integral |exp(-beta V(x)) - 1| dx over R^d.
QuadratureResult quad_C(const PairPotential& p, double beta, const QuadratureOptions& opts = {});
/// C_hat(beta) = integral (1 - exp(-beta |V(x)|)) dx over R^d.
QuadratureResult quad_Chat(const PairPotential& p, double beta, const QuadratureOptions& opts = {});
/// Infinite-volume second Mayer coefficient (1/2) integral (exp(-beta V) - 1) dx.
QuadratureResult mayer_c2(const PairPotential& p, double beta, const QuadratureOptions& opts = {});

enum class BoundVariant { PenroseRuelle, New };

/// Upper bound on |C_n|:
///   New:           e^{beta B n}       n^{n-2} C_hat^{n-1} / n!
///   PenroseRuelle: e^{2 beta B (n-1)} n^{n-2} C^{n-1}     / n!
/// `integral` is C_hat for New and C for PenroseRuelle.
double mayer_bound(int n, double beta, double stability_constant, double integral, BoundVariant variant);

/// Mayer-series radius lower bound: 1/(e^{2 beta B + 1} C) or 1/(e^{beta B + 1} C_hat).
double radius(double beta, double stability_constant, double c, double c_hat, BoundVariant variant);

struct GMaximum {
  double value = 0.0;
  double argmax = 0.0;
};

/// g(u) = max over 0 < w < 1 of ((1 + u) e^{-w} - 1) w / u, for u >= 1.
/// Coarse grid (step 1e-3) followed by golden-section refinement to 1e-8.
GMaximum g_function(double u);

enum class VirialVariant { LebowitzPenrose, New };

/// Virial-series radius lower bound.
///   LebowitzPenrose: g(e^{2 beta B}) / (e^{2 beta B} C), or with C_hat in
///                    the denominator when `literal_lp_formula` is set.
///   New:             g(e^{beta B}) / (e^{beta B} C_hat).
double virial_radius(double beta, double stability_constant, double c, double c_hat, VirialVariant variant,
                     bool literal_lp_formula = false);

struct BoundsReport {
  std::string potential;
  double beta = 0.0;
  double stability_constant = 0.0;
  double c = 0.0;
  double c_hat = 0.0;
  double r_pr = 0.0;
  double r_star = 0.0;
  double mayer_ratio = 0.0;
  double g_old = 0.0;
  double g_new = 0.0;
  double r_lp = 0.0;
  double r_virial_star = 0.0;
  double virial_ratio = 0.0;
  double c_error = 0.0;
  double c_hat_error = 0.0;
  bool literal_lp_formula = false;

  /// Numeric fields in output order (potential name excluded).
  std::vector<std::pair<std::string, double>> fields() const;
};

BoundsReport bounds_report(const PairPotential& p, double beta, const QuadratureOptions& opts = {},
                           bool literal_lp_formula = false);

std::string csv_header(const BoundsReport& r);
/// One CSV record, '.' decimal separator, shortest round-trip formatting.
std::string csv_row(const BoundsReport& r);

struct MonteCarloResult {
  double estimate = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  bool ok = false;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  /// Non-empty when the box is too small for the potential's range.
  std::string warning;
};

struct MonteCarloOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  int threads = 1;
};

/// Estimate of (1/n!) integral over Lambda^{n-1} of the Ursell function with
/// x_1 = 0, Lambda = [-L, L]^d, checked against mayer_bound(New) + 3 sigma.
/// Supports 2 <= n <= 4.
MonteCarloResult mayer_cn_mc(const PairPotential& p, double beta, int n, double box_half_width,
                             const MonteCarloOptions& opts = {});

/// Estimate of integral over Lambda^n of prod_{tree edges} (1 - e^{-beta |V|}),
/// checked against |Lambda| C_hat^{n-1} + 3 sigma. Supports 2 <= n <= 6.
MonteCarloResult tree_integral_check(const PairPotential& p, double beta, const Tree& tree,
                                     double box_half_width, const MonteCarloOptions& opts = {});

}  // namespace clusterforge
