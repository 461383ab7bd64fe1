#include <cmath>
#include <stdexcept>
#include <vector>

#include "clusterforge/bounds.hpp"
#include "clusterforge/parallel.hpp"
#include "clusterforge/rng.hpp"
#include "clusterforge/scheme.hpp"
#include "clusterforge/ursell.hpp"

namespace clusterforge {

namespace {

constexpr std::size_t kStreams = 16;

struct StreamTotals {
  long double sum = 0.0L;
  long double sum_sq = 0.0L;
  std::uint64_t count = 0;
};

/// Runs `sample(rng)` opts.samples times split over fixed streams, each with
/// its own derived seed, and merges the totals in stream order.
template <typename Sampler>
StreamTotals run_streams(const MonteCarloOptions& opts, const Sampler& sample) {
  std::vector<StreamTotals> totals(kStreams);
  run_chunks(kStreams, opts.threads, [&](std::size_t s) {
    CounterRng rng(derive_seed(opts.seed, s));
    const std::uint64_t count = opts.samples / kStreams + (s < opts.samples % kStreams ? 1 : 0);
    StreamTotals& t = totals[s];
    for (std::uint64_t k = 0; k < count; ++k) {
      const long double x = sample(rng);
      t.sum += x;
      t.sum_sq += x * x;
    }
    t.count = count;
  });
  StreamTotals merged;
  for (const auto& t : totals) {
    merged.sum += t.sum;
    merged.sum_sq += t.sum_sq;
    merged.count += t.count;
  }
  return merged;
}

/// (scale * mean, scale * standard error of the mean).
std::pair<double, double> summarize(const StreamTotals& t, double scale) {
  if (t.count == 0) throw std::invalid_argument("Monte Carlo needs at least one sample");
  const long double n = static_cast<long double>(t.count);
  const long double mean = t.sum / n;
  const long double var = t.count > 1 ? std::max(0.0L, (t.sum_sq - n * mean * mean) / (n - 1)) : 0.0L;
  return {static_cast<double>(scale * mean), static_cast<double>(scale * std::sqrt(var / n))};
}

// A connected cluster anchored at the origin reaches (n - 1) ranges out.
std::string range_warning(const PairPotential& p, double beta, int n, double box_half_width) {
  const auto& support = p.support_radius();
  const double reach = box_half_width / (n - 1);
  if (support) {
    if (*support > reach) return "box half-width is smaller than (n - 1) times the potential range";
    return {};
  }
  if (beta * std::fabs(p(reach)) > 1e-3) {
    return "potential is not negligible at the box half-width (beta |V(L / (n - 1))| > 1e-3)";
  }
  return {};
}

}  // namespace

MonteCarloResult mayer_cn_mc(const PairPotential& p, double beta, int n, double box_half_width,
                             const MonteCarloOptions& opts) {
  if (n < 2 || n > 4) throw std::out_of_range("mayer_cn_mc supports 2 <= n <= 4");
  if (!(box_half_width > 0.0)) throw std::invalid_argument("box half-width must be positive");
  const int d = p.dimension();

  auto sample = [&](CounterRng& rng) -> long double {
    std::vector<double> coords(static_cast<std::size_t>(n) * d, 0.0);
    for (std::size_t k = d; k < coords.size(); ++k) coords[k] = rng.uniform(-box_half_width, box_half_width);
    const Configuration c(d, std::move(coords));
    return ursell_direct(beta, edge_weights(p, c));
  };
  const StreamTotals totals = run_streams(opts, sample);

  const double volume = std::pow(2.0 * box_half_width, d);
  const double scale = std::pow(volume, n - 1) / std::tgamma(n + 1.0);
  const auto [estimate, std_error] = summarize(totals, scale);

  MonteCarloResult r;
  r.estimate = estimate;
  r.std_error = std_error;
  r.bound = mayer_bound(n, beta, p.stability_constant(), quad_Chat(p, beta).value, BoundVariant::New);
  r.ok = std::fabs(r.estimate) <= r.bound + 3.0 * r.std_error;
  r.samples = opts.samples;
  r.seed = opts.seed;
  r.warning = range_warning(p, beta, n, box_half_width);
  return r;
}

MonteCarloResult tree_integral_check(const PairPotential& p, double beta, const Tree& tree, double box_half_width,
                                     const MonteCarloOptions& opts) {
  const int n = tree.vertex_count();
  if (n < 2 || n > 6) throw std::out_of_range("tree_integral_check supports 2 <= n <= 6");
  if (!(box_half_width > 0.0)) throw std::invalid_argument("box half-width must be positive");
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  const int d = p.dimension();
  const auto edges = tree.edges().edges();

  auto sample = [&](CounterRng& rng) -> long double {
    std::vector<double> coords(static_cast<std::size_t>(n) * d);
    for (double& x : coords) x = rng.uniform(-box_half_width, box_half_width);
    const Configuration c(d, std::move(coords));
    long double product = 1.0L;
    for (const Edge& e : edges) {
      const double v = pair_energy(p, c, e.i, e.j);
      product *= v == kInfinity ? 1.0L : -std::expm1(-beta * std::fabs(v));
      if (product == 0.0L) break;
    }
    return product;
  };
  const StreamTotals totals = run_streams(opts, sample);

  const double volume = std::pow(2.0 * box_half_width, d);
  const auto [estimate, std_error] = summarize(totals, std::pow(volume, n));

  MonteCarloResult r;
  r.estimate = estimate;
  r.std_error = std_error;
  r.bound = volume * std::pow(quad_Chat(p, beta).value, n - 1);
  r.ok = r.estimate <= r.bound + 3.0 * r.std_error;
  r.samples = opts.samples;
  r.seed = opts.seed;
  return r;
}

}  // namespace clusterforge
