#include "clusterforge/ursell.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace clusterforge {

namespace {

/// Neumaier-compensated accumulator in extended precision.
class CompensatedSum {
 public:
  void add(long double x) {
    const long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return static_cast<double>(sum_ + carry_); }

 private:
  long double sum_ = 0.0L;
  long double carry_ = 0.0L;
};

using FactorTable = std::array<long double, edge_count(kMaxVertices)>;

void check_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be positive and finite");
}

FactorTable mayer_factors(double beta, const EdgeWeights& w) {
  FactorTable f{};
  // Extended precision here: the graph sum can cancel by many orders.
  for (int k = 0; k < edge_count(w.vertex_count()); ++k) {
    const double v = w.energy(k);
    f[k] = v == kInfinity ? -1.0L : std::expm1(-static_cast<long double>(beta) * v);
  }
  return f;
}

/// 1 - exp(-beta |V|), equal to 1 on hard cores.
FactorTable abs_factors(double beta, const EdgeWeights& w) {
  FactorTable f{};
  for (int k = 0; k < edge_count(w.vertex_count()); ++k) {
    const double v = w.energy(k);
    f[k] = v == kInfinity ? 1.0L : -std::expm1(-static_cast<long double>(beta) * std::fabs(v));
  }
  return f;
}

long double product_over(std::uint64_t bits, const FactorTable& f) {
  long double p = 1.0L;
  for (; bits; bits &= bits - 1) p *= f[std::countr_zero(bits)];
  return p;
}

/// exp(-beta * sum of energies over `bits`); exactly 0 if any energy is +inf.
long double boltzmann_over(std::uint64_t bits, double beta, const EdgeWeights& w) {
  long double s = 0.0L;
  for (; bits; bits &= bits - 1) {
    const double v = w.energy(std::countr_zero(bits));
    if (v == kInfinity) return 0.0L;
    s += v;
  }
  return std::exp(-static_cast<long double>(beta) * s);
}

}  // namespace

bool UrsellEvaluation::chain_holds(double slack) const {
  const double lhs = std::fabs(lhs_direct);
  return lhs <= corollary_bound * (1.0 + slack) && corollary_bound <= prop1_bound * (1.0 + slack);
}

double ursell_direct(double beta, const EdgeWeights& w) {
  check_beta(beta);
  const int n = w.vertex_count();
  if (n > 7) throw std::out_of_range("ursell_direct supports 2 <= n <= 7");
  const FactorTable f = mayer_factors(beta, w);
  CompensatedSum total;
  for (std::uint64_t g : connected_masks(n)) total.add(product_over(g, f));
  return total.value();
}

double ursell_direct(const PairPotential& p, double beta, const Configuration& c) {
  return ursell_direct(beta, edge_weights(p, c));
}

double penrose_rhs(double beta, const EdgeWeights& w) {
  check_beta(beta);
  const int n = w.vertex_count();
  if (n > 8) throw std::out_of_range("penrose_rhs supports 2 <= n <= 8");
  const FactorTable f = mayer_factors(beta, w);
  CompensatedSum total;
  for (std::uint64_t t : tree_masks(n)) {
    const std::uint64_t top = detail::interval_top_mask(n, t, w);
    const long double boltzmann = boltzmann_over(top & ~t, beta, w);
    if (boltzmann == 0.0L) continue;
    total.add(product_over(t, f) * boltzmann);
  }
  return total.value();
}

double penrose_rhs(const PairPotential& p, double beta, const Configuration& c, EdgeOrder order) {
  return penrose_rhs(beta, edge_weights(p, c, order));
}

double corollary_bound(double beta, const EdgeWeights& w) {
  check_beta(beta);
  const int n = w.vertex_count();
  if (n > 8) throw std::out_of_range("corollary_bound supports 2 <= n <= 8");
  const FactorTable h = abs_factors(beta, w);
  CompensatedSum total;
  for (std::uint64_t t : tree_masks(n)) {
    std::uint64_t plus = 0;
    for (std::uint64_t b = t; b; b &= b - 1) {
      const int k = std::countr_zero(b);
      if (w.energy(k) >= 0.0) plus |= std::uint64_t{1} << k;
    }
    const std::uint64_t top = detail::interval_top_mask(n, t, w);
    const long double boltzmann = boltzmann_over(top & ~plus, beta, w);
    if (boltzmann == 0.0L) continue;
    total.add(boltzmann * product_over(t, h));
  }
  return total.value();
}

double corollary_bound(const PairPotential& p, double beta, const Configuration& c) {
  return corollary_bound(beta, edge_weights(p, c));
}

double prop1_bound(double beta, const EdgeWeights& w, double stability_constant) {
  check_beta(beta);
  const int n = w.vertex_count();
  if (n > 8) throw std::out_of_range("prop1_bound supports 2 <= n <= 8");
  const FactorTable h = abs_factors(beta, w);
  CompensatedSum total;
  for (std::uint64_t t : tree_masks(n)) total.add(product_over(t, h));
  return std::exp(beta * stability_constant * n) * total.value();
}

double prop1_bound(const PairPotential& p, double beta, const Configuration& c, double stability_constant) {
  return prop1_bound(beta, edge_weights(p, c), stability_constant);
}

UrsellEvaluation evaluate_ursell(double beta, const EdgeWeights& w, double stability_constant) {
  UrsellEvaluation e;
  e.n = w.vertex_count();
  e.beta = beta;
  e.lhs_direct = ursell_direct(beta, w);
  e.rhs_identity = penrose_rhs(beta, w);
  e.corollary_bound = corollary_bound(beta, w);
  e.prop1_bound = prop1_bound(beta, w, stability_constant);
  e.rel_discrepancy = std::fabs(e.lhs_direct - e.rhs_identity) / std::max(1.0, std::fabs(e.lhs_direct));
  return e;
}

UrsellEvaluation evaluate_ursell(const PairPotential& p, double beta, const Configuration& c,
                                 double stability_constant) {
  return evaluate_ursell(beta, edge_weights(p, c), stability_constant);
}

}  // namespace clusterforge
