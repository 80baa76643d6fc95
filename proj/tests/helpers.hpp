#pragma once

#include <cmath>
#include <random>

#include "ymflow/gauge_fields.hpp"

namespace testing {

inline ymflow::LatticePtr lattice(int n, double h, ymflow::DomainKind d,
                                  ymflow::BoundaryKind bc,
                                  ymflow::GroupId g) {
  return ymflow::Lattice::make(ymflow::Grid::make({n, n, n}, h, d), bc, g);
}

template <int P>
ymflow::Form<P> random_form(const ymflow::LatticePtr& l, std::uint64_t seed,
                            double scale = 1.0) {
  ymflow::Form<P> f(l);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, scale);
  for (double& v : f.data()) v = nd(rng);
  ymflow::mask(f);
  return f;
}

}  // namespace testing
