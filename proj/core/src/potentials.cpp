#include "clusterforge/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "clusterforge/rng.hpp"

namespace clusterforge {

namespace {

double require_param(const std::map<std::string, double>& params, const std::string& key,
                     const std::string& family) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw std::invalid_argument(family + ": missing parameter '" + key + "'");
  }
  return it->second;
}

double param_or(const std::map<std::string, double>& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::optional<double> optional_param(const std::map<std::string, double>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  return it->second;
}

void reject_unknown(const std::map<std::string, double>& params, std::initializer_list<const char*> allowed,
                    const std::string& family) {
  for (const auto& [key, value] : params) {
    bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!ok) throw std::invalid_argument(family + ": unknown parameter '" + key + "'");
  }
}

}  // namespace

PairPotential::PairPotential(PotentialSpec spec) : spec_(std::move(spec)) {
  if (spec_.name.empty()) throw std::invalid_argument("pair potential needs a name");
  if (!spec_.radial) throw std::invalid_argument(spec_.name + ": radial function is empty");
  if (spec_.dimension < 1) throw std::invalid_argument(spec_.name + ": dimension must be positive");
  if (!(spec_.stability_constant >= 0.0) || !std::isfinite(spec_.stability_constant)) {
    throw std::invalid_argument(spec_.name + ": stability constant must be finite and >= 0");
  }
  if (spec_.hard_core_radius < 0.0 || spec_.temperedness_radius < 0.0) {
    throw std::invalid_argument(spec_.name + ": radii must be non-negative");
  }
  std::sort(spec_.sign_change_radii.begin(), spec_.sign_change_radii.end());
  std::sort(spec_.discontinuities.begin(), spec_.discontinuities.end());
}

double PairPotential::operator()(double r) const {
  if (r < spec_.hard_core_radius) return kInfinity;
  if (r <= 0.0) {
    // Coincident points: take the r -> 0+ limit if it is +inf, else evaluate.
    double v = spec_.radial(0.0);
    return std::isnan(v) ? kInfinity : v;
  }
  double v = spec_.radial(r);
  if (std::isnan(v) || v == -kInfinity) {
    throw std::domain_error(spec_.name + ": V(" + std::to_string(r) + ") is not in R u {+inf}");
  }
  return v;
}

double PairPotential::tail_moment(double radius) const {
  if (spec_.support_radius && radius >= *spec_.support_radius) return 0.0;
  if (spec_.tail_moment) return spec_.tail_moment(radius, spec_.dimension);
  return kInfinity;
}

std::vector<double> PairPotential::quadrature_breakpoints() const {
  std::vector<double> pts;
  if (spec_.hard_core_radius > 0.0) pts.push_back(spec_.hard_core_radius);
  for (double r : spec_.sign_change_radii) {
    if (r > spec_.hard_core_radius) pts.push_back(r);
  }
  for (double r : spec_.discontinuities) {
    if (r > spec_.hard_core_radius) pts.push_back(r);
  }
  if (spec_.support_radius && *spec_.support_radius > spec_.hard_core_radius) {
    pts.push_back(*spec_.support_radius);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

PairPotential PairPotential::with_stability_constant(double b) const {
  PotentialSpec copy = spec_;
  copy.stability_constant = b;
  copy.stability_source = StabilitySource::UserSupplied;
  return PairPotential(std::move(copy));
}

PairPotential lennard_jones(double stability_constant, int dimension) {
  if (dimension >= 6) throw std::invalid_argument("lennard-jones: tempered only for d < 6");
  PotentialSpec spec;
  spec.name = "lennard-jones";
  spec.family = "lennard-jones";
  spec.radial = [](double r) {
    if (r <= 0.0) return kInfinity;
    double inv6 = 1.0 / (r * r * r * r * r * r);
    return inv6 * inv6 - 2.0 * inv6;
  };
  spec.dimension = dimension;
  spec.stability_constant = stability_constant;
  spec.stability_source = stability_constant == kLennardJonesStability ? StabilitySource::Literature
                                                                       : StabilitySource::UserSupplied;
  spec.temperedness_radius = 1.0;
  spec.sign_change_radii = {std::pow(2.0, -1.0 / 6.0)};
  // For R beyond the zero crossing V < 0, so |V| = 2 r^-6 - r^-12.
  spec.tail_moment = [](double radius, int d) {
    double r0 = std::pow(2.0, -1.0 / 6.0);
    if (radius < r0) return kInfinity;
    return 2.0 * std::pow(radius, d - 6.0) / (6.0 - d) - std::pow(radius, d - 12.0) / (12.0 - d);
  };
  return PairPotential(std::move(spec));
}

PairPotential hard_sphere(double diameter, int dimension) {
  if (!(diameter > 0.0)) throw std::invalid_argument("hard-sphere: diameter must be positive");
  PotentialSpec spec;
  spec.name = "hard-sphere";
  spec.family = "hard-sphere";
  spec.radial = [diameter](double r) { return r < diameter ? kInfinity : 0.0; };
  spec.dimension = dimension;
  spec.stability_constant = 0.0;
  spec.stability_source = StabilitySource::Nonnegative;
  spec.hard_core_radius = diameter;
  spec.support_radius = diameter;
  spec.parameters = {{"a", diameter}};
  return PairPotential(std::move(spec));
}

PairPotential square_well(double core, double depth, double range, std::optional<double> stability_constant,
                          int dimension) {
  if (!stability_constant) throw std::invalid_argument("square-well: stability constant unknown");
  if (!(core > 0.0) || !(range > core) || !(depth >= 0.0)) {
    throw std::invalid_argument("square-well: need 0 < a < range and depth >= 0");
  }
  PotentialSpec spec;
  spec.name = "square-well";
  spec.family = "square-well";
  spec.radial = [core, depth, range](double r) {
    if (r < core) return kInfinity;
    return r < range ? -depth : 0.0;
  };
  spec.dimension = dimension;
  spec.stability_constant = *stability_constant;
  spec.stability_source = StabilitySource::UserSupplied;
  spec.hard_core_radius = core;
  spec.discontinuities = {range};
  spec.support_radius = range;
  spec.parameters = {{"a", core}, {"epsilon", depth}, {"range", range}};
  return PairPotential(std::move(spec));
}

PairPotential inverse_power(double exponent, double strength, int dimension) {
  if (!(exponent > 0.0) || !(strength > 0.0)) {
    throw std::invalid_argument("inverse-power: exponent and strength must be positive");
  }
  PotentialSpec spec;
  spec.name = "inverse-power";
  spec.family = "inverse-power";
  spec.radial = [exponent, strength](double r) { return r <= 0.0 ? kInfinity : strength * std::pow(r, -exponent); };
  spec.dimension = dimension;
  spec.stability_constant = 0.0;
  spec.stability_source = StabilitySource::Nonnegative;
  spec.temperedness_radius = 1.0;
  spec.tail_moment = [exponent, strength](double radius, int d) {
    if (exponent <= d) return kInfinity;
    return strength * std::pow(radius, d - exponent) / (exponent - d);
  };
  spec.parameters = {{"s", exponent}, {"epsilon", strength}};
  return PairPotential(std::move(spec));
}

PairPotential ideal_gas(int dimension) {
  PotentialSpec spec;
  spec.name = "ideal";
  spec.family = "ideal";
  spec.radial = [](double) { return 0.0; };
  spec.dimension = dimension;
  spec.stability_source = StabilitySource::Nonnegative;
  spec.support_radius = 0.0;
  return PairPotential(std::move(spec));
}

double square_well_stability_bound(double core, double depth, double range, int dimension) {
  // Balls of radius a/2 around the neighbours of one particle fit inside a
  // ball of radius range + a/2 and exclude the particle's own ball.
  double neighbours = std::pow(2.0 * range / core + 1.0, dimension) - 1.0;
  return 0.5 * depth * std::floor(neighbours);
}

std::vector<PotentialFamily> builtin_registry() {
  std::vector<PotentialFamily> out;
  out.push_back({"lennard-jones", {"lj"}, "V(r) = r^-12 - 2 r^-6; B = 8.61 unless overridden",
                 [](const std::map<std::string, double>& p, int d) {
                   reject_unknown(p, {"stability_constant"}, "lennard-jones");
                   return lennard_jones(param_or(p, "stability_constant", kLennardJonesStability), d);
                 }});
  out.push_back({"hard-sphere", {"hs"}, "+inf for r < a, else 0; B = 0",
                 [](const std::map<std::string, double>& p, int d) {
                   reject_unknown(p, {"a", "stability_constant"}, "hard-sphere");
                   return hard_sphere(param_or(p, "a", 1.0), d);
                 }});
  out.push_back({"square-well", {"sw"}, "hard core a, depth epsilon out to range; B required",
                 [](const std::map<std::string, double>& p, int d) {
                   reject_unknown(p, {"a", "epsilon", "range", "stability_constant"}, "square-well");
                   return square_well(param_or(p, "a", 1.0), require_param(p, "epsilon", "square-well"),
                                      require_param(p, "range", "square-well"),
                                      optional_param(p, "stability_constant"), d);
                 }});
  out.push_back({"inverse-power", {"ipl"}, "V(r) = epsilon r^-s, tempered for s > d; B = 0",
                 [](const std::map<std::string, double>& p, int d) {
                   reject_unknown(p, {"s", "epsilon", "stability_constant"}, "inverse-power");
                   return inverse_power(param_or(p, "s", 12.0), param_or(p, "epsilon", 1.0), d);
                 }});
  out.push_back({"ideal", {"zero"}, "V == 0", [](const std::map<std::string, double>& p, int d) {
                   reject_unknown(p, {"stability_constant"}, "ideal");
                   return ideal_gas(d);
                 }});
  return out;
}

PairPotential make_potential(const std::string& family, const std::map<std::string, double>& params, int dimension) {
  for (const auto& f : builtin_registry()) {
    bool match = f.name == family ||
                 std::find(f.aliases.begin(), f.aliases.end(), family) != f.aliases.end();
    if (match) return f.make(params, dimension);
  }
  throw std::invalid_argument("unknown potential family '" + family + "'");
}

Configuration::Configuration(int dimension, std::vector<double> coordinates, std::optional<double> box_half_width)
    : dimension_(dimension), coords_(std::move(coordinates)), box_(box_half_width) {
  if (dimension_ < 1) throw std::invalid_argument("configuration dimension must be positive");
  if (coords_.size() % static_cast<std::size_t>(dimension_) != 0) {
    throw std::invalid_argument("coordinate count is not a multiple of the dimension");
  }
  if (box_ && !(*box_ > 0.0)) throw std::invalid_argument("box half-width must be positive");
}

std::span<const double> Configuration::point(int i) const {
  return std::span<const double>(coords_).subspan(static_cast<std::size_t>(i) * dimension_, dimension_);
}

double Configuration::distance(int i, int j) const {
  auto a = point(i);
  auto b = point(j);
  double s = 0.0;
  for (int k = 0; k < dimension_; ++k) {
    double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

Configuration Configuration::translated(std::span<const double> shift) const {
  if (static_cast<int>(shift.size()) != dimension_) throw std::invalid_argument("shift dimension mismatch");
  std::vector<double> out = coords_;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += shift[k % dimension_];
  return Configuration(dimension_, std::move(out));
}

Configuration Configuration::permuted(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<double> out;
  out.reserve(coords_.size());
  for (int src : perm) {
    auto p = point(src);
    out.insert(out.end(), p.begin(), p.end());
  }
  return Configuration(dimension_, std::move(out), box_);
}

Configuration random_configuration(int n, int dimension, double box_half_width, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<double> coords(static_cast<std::size_t>(n) * dimension);
  for (double& x : coords) x = rng.uniform(-box_half_width, box_half_width);
  return Configuration(dimension, std::move(coords), box_half_width);
}

Configuration coincident_configuration(int n, int dimension) {
  return Configuration(dimension, std::vector<double>(static_cast<std::size_t>(n) * dimension, 0.0));
}

Configuration lattice_configuration(int n, int dimension, double spacing) {
  int side = 1;
  while (std::pow(side, dimension) < n) ++side;
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(n) * dimension);
  for (int k = 0; k < n; ++k) {
    int rem = k;
    for (int axis = 0; axis < dimension; ++axis) {
      coords.push_back(spacing * (rem % side));
      rem /= side;
    }
  }
  return Configuration(dimension, std::move(coords));
}

double pair_energy(const PairPotential& p, const Configuration& c, int i, int j) {
  if (i == j) throw std::invalid_argument("pair_energy needs distinct vertices");
  if (i < 0 || j < 0 || i >= c.size() || j >= c.size()) throw std::out_of_range("vertex out of range");
  if (c.dimension() != p.dimension()) throw std::invalid_argument("configuration/potential dimension mismatch");
  return p(c.distance(i, j));
}

double mayer_factor_from_energy(double energy, double beta) {
  if (energy == kInfinity) return -1.0;
  return std::expm1(-beta * energy);
}

double mayer_factor(const PairPotential& p, double beta, const Configuration& c, int i, int j) {
  return mayer_factor_from_energy(pair_energy(p, c, i, j), beta);
}

}  // namespace clusterforge
