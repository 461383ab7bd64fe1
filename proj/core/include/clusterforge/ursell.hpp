#pragma once

#include "clusterforge/potentials.hpp"
#include "clusterforge/scheme.hpp"

namespace clusterforge {

/// The Ursell function evaluated three ways, plus the tree bound that uses
/// the stability constant.
struct UrsellEvaluation {
  int n = 0;
  double beta = 0.0;
  /// Sum over connected graphs of products of Mayer factors.
  double lhs_direct = 0.0;
  /// Tree sum with exp(-beta * energy of M(t) \ t) weights.
  double rhs_identity = 0.0;
  /// Tree sum with the E_t^+ rearrangement; bounds |lhs_direct|.
  double corollary_bound = 0.0;
  /// exp(beta B n) * sum_t prod (1 - exp(-beta |V|)).
  double prop1_bound = 0.0;
  /// |lhs - rhs| / max(1, |lhs|).
  double rel_discrepancy = 0.0;

  /// |lhs| <= corollary <= prop1 up to `slack` relative rounding.
  bool chain_holds(double slack = 1e-12) const;
};

// All routines take beta > 0. Overloads on EdgeWeights reuse precomputed
// pair energies; the tie-break order only matters for the tree sums.

double ursell_direct(double beta, const EdgeWeights& w);
double ursell_direct(const PairPotential& p, double beta, const Configuration& c);

double penrose_rhs(double beta, const EdgeWeights& w);
double penrose_rhs(const PairPotential& p, double beta, const Configuration& c,
                   EdgeOrder order = EdgeOrder::Lexicographic);

double corollary_bound(double beta, const EdgeWeights& w);
double corollary_bound(const PairPotential& p, double beta, const Configuration& c);

double prop1_bound(double beta, const EdgeWeights& w, double stability_constant);
double prop1_bound(const PairPotential& p, double beta, const Configuration& c, double stability_constant);

UrsellEvaluation evaluate_ursell(double beta, const EdgeWeights& w, double stability_constant);
UrsellEvaluation evaluate_ursell(const PairPotential& p, double beta, const Configuration& c,
                                 double stability_constant);

}  // namespace clusterforge
