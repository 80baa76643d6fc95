#pragma once

#include <array>
#include <cstdint>

#include "ymflow/fields.hpp"

namespace ymflow {

/// Random combination of the eigenmodes with every axis index <= max_mode,
/// normal coefficients scaled so the L2 norm is about `amplitude`.
ConnectionField smooth_connection(const LatticePtr& lattice, double amplitude,
                                  std::uint64_t seed, int max_mode = 1);
ZeroForm smooth_zero_form(const LatticePtr& lattice, double amplitude,
                          std::uint64_t seed, int max_mode = 1);

/// exp of a smooth 0-form; equals I on Dirichlet faces.
GaugeField smooth_gauge(const LatticePtr& lattice, double amplitude,
                        std::uint64_t seed, int max_mode = 1);

/// One eigenmode of a single component times the first basis element.
ConnectionField u1_mode(const LatticePtr& lattice, std::array<int, 3> mode,
                        int component, double amplitude);

}  // namespace ymflow
