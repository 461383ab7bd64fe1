#pragma once

#include <functional>

#include "clusterforge/bounds.hpp"
#include "clusterforge/potentials.hpp"

namespace clusterforge::detail {

/// Integrand as a function of the pair energy V (may be +inf).
using EnergyIntegrand = std::function<double(double energy)>;

/// surface(d) * integral_0^inf integrand(V(r)) r^{d-1} dr.
///
/// The hard core contributes integrand(+inf) times its ball volume exactly.
/// The remainder is split at the potential's breakpoints and integrated by
/// adaptive Gauss-Kronrod panels; the unbounded tail is truncated once
/// beta * e^{beta |V(R)|} * surface * tail_moment(R) is negligible, and that
/// bound is added to the error estimate. Valid for integrands bounded by
/// beta |V| e^{beta |V|} with |V| non-increasing beyond R.
QuadratureResult integrate_radial(const PairPotential& p, double beta, const EnergyIntegrand& integrand,
                                  const QuadratureOptions& opts);

}  // namespace clusterforge::detail
