#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace clusterforge {

/// +infinity is a legal pair energy (hard cores); -infinity never is.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Stability constant used for the Lennard-Jones gas V(r) = r^-12 - 2 r^-6.
inline constexpr double kLennardJonesStability = 8.61;

enum class StabilitySource { Literature, UserSupplied, Nonnegative };

/// Radial energy V(r), r > 0.
using RadialFunction = std::function<double(double)>;

/// Absolute tail moment: integral_R^inf |V(r)| r^(d-1) dr. Returns +inf when
/// the integral diverges (non-tempered potential).
using TailMoment = std::function<double(double radius, int dimension)>;

/// Everything needed to construct a PairPotential. Only `name` and `radial`
/// are mandatory; the rest are metadata used by the quadrature routines.
struct PotentialSpec {
  std::string name;
  std::string family = "custom";
  RadialFunction radial;
  int dimension = 3;
  double stability_constant = 0.0;
  StabilitySource stability_source = StabilitySource::UserSupplied;
  double temperedness_radius = 0.0;
  /// Radii where V crosses zero.
  std::vector<double> sign_change_radii;
  /// V = +inf on [0, hard_core_radius).
  double hard_core_radius = 0.0;
  /// Radii where V jumps (square-well edges).
  std::vector<double> discontinuities;
  /// V == 0 for r >= support_radius, if set.
  std::optional<double> support_radius;
  TailMoment tail_moment;
  std::map<std::string, double> parameters;
};

/// A radial pair interaction V(x) = V(|x|) with extended-real values.
class PairPotential {
 public:
  explicit PairPotential(PotentialSpec spec);

  /// V(r). Returns +inf for r == 0 unless the radial function is finite there.
  double operator()(double r) const;

  const std::string& name() const { return spec_.name; }
  const std::string& family() const { return spec_.family; }
  int dimension() const { return spec_.dimension; }
  double stability_constant() const { return spec_.stability_constant; }
  StabilitySource stability_source() const { return spec_.stability_source; }
  double temperedness_radius() const { return spec_.temperedness_radius; }
  const std::vector<double>& sign_change_radii() const { return spec_.sign_change_radii; }
  double hard_core_radius() const { return spec_.hard_core_radius; }
  const std::vector<double>& discontinuities() const { return spec_.discontinuities; }
  const std::optional<double>& support_radius() const { return spec_.support_radius; }
  const std::map<std::string, double>& parameters() const { return spec_.parameters; }

  /// integral_R^inf |V(r)| r^(d-1) dr; +inf if not tempered.
  double tail_moment(double radius) const;

  /// Sorted breakpoints for radial quadrature (hard core, sign changes,
  /// discontinuities), all strictly positive.
  std::vector<double> quadrature_breakpoints() const;

  /// Copy with a different stability constant (tagged user-supplied).
  PairPotential with_stability_constant(double b) const;

 private:
  PotentialSpec spec_;
};

// Built-in families.

/// V(r) = r^-12 - 2 r^-6, minimum -1 at r = 1.
PairPotential lennard_jones(double stability_constant = kLennardJonesStability, int dimension = 3);
/// +inf inside diameter a, zero outside.
PairPotential hard_sphere(double diameter = 1.0, int dimension = 3);
/// Hard core a, well of depth `depth` out to `range`. The stability constant
/// has no default and must be provided.
PairPotential square_well(double core, double depth, double range,
                          std::optional<double> stability_constant, int dimension = 3);
/// V(r) = strength * r^-s. Tempered only for s > d.
PairPotential inverse_power(double exponent, double strength = 1.0, int dimension = 3);
/// V == 0.
PairPotential ideal_gas(int dimension = 3);

/// Crude but valid stability constant for a square well: depth/2 times the
/// maximum number of non-overlapping cores that fit within the well range.
double square_well_stability_bound(double core, double depth, double range, int dimension = 3);

/// Named family with a factory taking a parameter map.
struct PotentialFamily {
  std::string name;
  std::vector<std::string> aliases;
  std::string description;
  std::function<PairPotential(const std::map<std::string, double>& params, int dimension)> make;
};

std::vector<PotentialFamily> builtin_registry();

/// Look up a family by name or alias and build it. Throws std::invalid_argument
/// for unknown families or missing/invalid parameters.
PairPotential make_potential(const std::string& family, const std::map<std::string, double>& params,
                             int dimension = 3);

/// n labeled points in R^d, stored row-major, optionally confined to [-L, L]^d.
class Configuration {
 public:
  Configuration(int dimension, std::vector<double> coordinates,
                std::optional<double> box_half_width = std::nullopt);

  int dimension() const { return dimension_; }
  int size() const { return static_cast<int>(coords_.size()) / dimension_; }
  std::span<const double> point(int i) const;
  const std::vector<double>& coordinates() const { return coords_; }
  const std::optional<double>& box_half_width() const { return box_; }

  double distance(int i, int j) const;

  Configuration translated(std::span<const double> shift) const;
  /// Point k of the result is point perm[k] of this configuration.
  Configuration permuted(std::span<const int> perm) const;

 private:
  int dimension_;
  std::vector<double> coords_;
  std::optional<double> box_;
};

/// Uniform points in [-L, L]^d from a counter-based stream.
Configuration random_configuration(int n, int dimension, double box_half_width, std::uint64_t seed);
/// All points at the origin.
Configuration coincident_configuration(int n, int dimension);
/// First n sites of a square (d=2) or cubic (d=3) lattice, row-major.
Configuration lattice_configuration(int n, int dimension, double spacing);

/// V(x_i - x_j).
double pair_energy(const PairPotential& p, const Configuration& c, int i, int j);

/// exp(-beta V) - 1 with exp(-inf) == 0 exactly.
double mayer_factor_from_energy(double energy, double beta);
double mayer_factor(const PairPotential& p, double beta, const Configuration& c, int i, int j);

}  // namespace clusterforge
