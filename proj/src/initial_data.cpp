#include "ymflow/initial_data.hpp"

#include <cmath>
#include <random>

#include "ymflow/gauge_fields.hpp"
#include "ymflow/spectral.hpp"

namespace ymflow {

namespace {

template <int Degree>
Form<Degree> low_modes(const LatticePtr& l, double amplitude,
                       std::uint64_t seed, int max_mode) {
  Form<Degree> f(l);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  const std::size_t sites = l->sites();
  for (int c = 0; c < Form<Degree>::components; ++c) {
    const SpectralPlan plan = form_component_plan(l->grid(), l->bc(), Degree, c);
    const auto md = plan.mode_dims();
    for (int k = 0; k < l->adim(); ++k) {
      std::vector<double> coeffs(plan.modes(), 0.0);
      for (int i = 0; i < std::min(md[0], max_mode + 1); ++i)
        for (int j = 0; j < std::min(md[1], max_mode + 1); ++j)
          for (int q = 0; q < std::min(md[2], max_mode + 1); ++q)
            coeffs[plan.mode_index(i, j, q)] = nd(rng);
      const std::vector<double> nodal = plan.inverse(coeffs);
      for (std::size_t s = 0; s < sites; ++s) f.at(c, s)[k] = nodal[s];
    }
  }
  mask(f);
  const double n = l2_norm(f);
  if (n > 0.0) f *= amplitude / n;
  return f;
}

}  // namespace

ConnectionField smooth_connection(const LatticePtr& lattice, double amplitude,
                                  std::uint64_t seed, int max_mode) {
  return low_modes<1>(lattice, amplitude, seed, max_mode);
}

ZeroForm smooth_zero_form(const LatticePtr& lattice, double amplitude,
                          std::uint64_t seed, int max_mode) {
  return low_modes<0>(lattice, amplitude, seed, max_mode);
}

GaugeField smooth_gauge(const LatticePtr& lattice, double amplitude,
                        std::uint64_t seed, int max_mode) {
  ZeroForm xi = smooth_zero_form(lattice, 1.0, seed, max_mode);
  // scale to a pointwise amplitude rather than an L2 one
  const double m = linf_norm(xi);
  if (m > 0.0) xi *= amplitude / m;
  return GaugeField::exp(xi);
}

ConnectionField u1_mode(const LatticePtr& lattice, std::array<int, 3> mode,
                        int component, double amplitude) {
  if (component < 0 || component > 2) {
    throw StructuralError("mode component must be 0, 1 or 2");
  }
  const SpectralPlan plan =
      form_component_plan(lattice->grid(), lattice->bc(), 1, component);
  const auto md = plan.mode_dims();
  for (int a = 0; a < 3; ++a) {
    if (mode[a] < 0 || mode[a] >= md[a]) {
      throw StructuralError("mode index out of range for this component");
    }
  }
  std::vector<double> coeffs(plan.modes(), 0.0);
  coeffs[plan.mode_index(mode[0], mode[1], mode[2])] = amplitude;
  const std::vector<double> nodal = plan.inverse(coeffs);
  ConnectionField a(lattice);
  for (std::size_t s = 0; s < lattice->sites(); ++s) a.at(component, s)[0] = nodal[s];
  mask(a);
  return a;
}

}  // namespace ymflow
