#pragma once

// Exact solution of the Riemann problem for a polytropic gas. Used as a
// verification oracle: it deliberately depends on nothing but <cmath> so
// that it shares no code with the solver or the EOS layer.

namespace irp::oracle {

struct GasState {
  double rho = 1.0;
  double u = 0.0;
  double p = 1.0;
};

struct StarRegion {
  double p = 0.0;
  double u = 0.0;
  int iterations = 0;
};

/// Star-region pressure and velocity by safeguarded Newton on the standard
/// pressure function, to relative 1e-12. Throws VacuumFormation when the
/// data generate vacuum and DomainError for non-positive rho or p.
StarRegion star_region(const GasState& left, const GasState& right, double gamma);

/// The self-similar solution sampled at xi = (x - x0) / t.
GasState exact_riemann_polytropic(const GasState& left, const GasState& right, double gamma,
                                  double xi);

}  // namespace irp::oracle
