#pragma once

#include <cstdint>
#include <vector>

#include "ymflow/fields.hpp"
#include "ymflow/spectral.hpp"

namespace ymflow {

/// Per-component eigencoefficients of a 1-form under the plans of
/// form_component_plan (one algebra coefficient per site).
struct SpectralField {
  std::vector<std::vector<double>> comps;
};

SpectralField to_spectral(const ConnectionField& a);
ConnectionField from_spectral(const LatticePtr& lattice, const SpectralField& s);

/// Exact U(1) ZDS flow: every eigencoefficient decays by exp(-lambda t).
ConnectionField u1_zds_solution(const ConnectionField& a0, double t);

/// Exact U(1) direct flow on the torus: per Fourier mode the gradient part is
/// frozen and the transverse part decays by exp(-|s|^2 t), s_a = sin(theta_a)/h.
ConnectionField u1_direct_solution(const ConnectionField& a0, double t);

/// Exponent p with coefficient scale (1 + lambda)^(-p/2) used by sample_ha_data.
double ha_sample_exponent(double a);

/// Random 1-form whose H_b norms stay bounded under refinement for b < a and
/// grow for b above the threshold; only resolved modes are populated.
ConnectionField sample_ha_data(const LatticePtr& lattice, double a,
                               double amplitude, std::uint64_t seed);

struct CnEstimate {
  double value = 0.0;
  double t_at_max = 0.0;
};

/// sup over 0 < t <= 1 of t^{3/4} ||exp(t Delta_N)||_{2->inf} for the Neumann
/// scalar Laplacian of a box, on a log grid of t.
CnEstimate estimate_cN(const Grid& grid, int samples = 400);

}  // namespace ymflow
