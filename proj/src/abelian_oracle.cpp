#include "ymflow/abelian_oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace ymflow {

namespace {

void require_u1(const Lattice& l) {
  if (l.group().id() != GroupId::U1) {
    throw StructuralError("abelian oracle requires the U(1) group");
  }
}

using CVec = std::vector<std::complex<double>>;

// Unitary DFT along one axis of an n0 x n1 x n2 row-major complex array.
void dft_axis(CVec& data, const std::array<int, 3>& dims, int axis, int sign) {
  const int n = dims[axis];
  const int stride = axis == 0 ? dims[1] * dims[2] : (axis == 1 ? dims[2] : 1);
  std::vector<std::complex<double>> tw(n);
  for (int k = 0; k < n; ++k) {
    tw[k] = std::polar(1.0 / std::sqrt(double(n)),
                       sign * 2.0 * std::numbers::pi * k / n);
  }
  CVec line(n), out(n);
  const int total = dims[0] * dims[1] * dims[2];
  for (int base = 0; base < total; ++base) {
    if ((base / stride) % n != 0) continue;
    for (int i = 0; i < n; ++i) line[i] = data[base + i * stride];
    for (int k = 0; k < n; ++k) {
      std::complex<double> acc = 0.0;
      for (int i = 0; i < n; ++i) acc += tw[(k * i) % n] * line[i];
      out[k] = acc;
    }
    for (int k = 0; k < n; ++k) data[base + k * stride] = out[k];
  }
}

}  // namespace

SpectralField to_spectral(const ConnectionField& a) {
  require_u1(a.lattice());
  const Lattice& l = a.lattice();
  SpectralField s;
  for (int c = 0; c < 3; ++c) {
    const SpectralPlan plan = form_component_plan(l.grid(), l.bc(), 1, c);
    s.comps.push_back(
        plan.forward(std::span<const double>(a.comp(c), l.sites())));
  }
  return s;
}

ConnectionField from_spectral(const LatticePtr& lattice, const SpectralField& s) {
  ConnectionField a(lattice);
  for (int c = 0; c < 3; ++c) {
    const SpectralPlan plan =
        form_component_plan(lattice->grid(), lattice->bc(), 1, c);
    const std::vector<double> nodal = plan.inverse(s.comps[c]);
    std::copy(nodal.begin(), nodal.end(), a.comp(c));
  }
  mask(a);
  return a;
}

ConnectionField u1_zds_solution(const ConnectionField& a0, double t) {
  require_u1(a0.lattice());
  const Lattice& l = a0.lattice();
  SpectralField s = to_spectral(a0);
  for (int c = 0; c < 3; ++c) {
    const SpectralPlan plan = form_component_plan(l.grid(), l.bc(), 1, c);
    for (std::size_t m = 0; m < s.comps[c].size(); ++m) {
      s.comps[c][m] *= std::exp(-plan.eigenvalue(m) * t);
    }
  }
  return from_spectral(a0.lattice_ptr(), s);
}

ConnectionField u1_direct_solution(const ConnectionField& a0, double t) {
  require_u1(a0.lattice());
  const Lattice& l = a0.lattice();
  const Grid& g = l.grid();
  if (g.domain != DomainKind::Torus) {
    throw StructuralError("direct-flow oracle is only available on the torus");
  }
  const std::size_t n = l.sites();
  std::array<CVec, 3> hat;
  for (int c = 0; c < 3; ++c) {
    hat[c].assign(a0.comp(c), a0.comp(c) + n);
    for (int ax = 0; ax < 3; ++ax) dft_axis(hat[c], g.dims, ax, -1);
  }
  for (std::size_t m = 0; m < n; ++m) {
    const auto k = g.coords(static_cast<int>(m));
    Eigen::Vector3d sv;
    for (int ax = 0; ax < 3; ++ax) {
      sv[ax] = std::sin(2.0 * std::numbers::pi * k[ax] / g.dims[ax]) / g.h;
    }
    const double s2 = sv.squaredNorm();
    Eigen::Vector3cd v(hat[0][m], hat[1][m], hat[2][m]);
    Eigen::Vector3cd par = Eigen::Vector3cd::Zero();
    if (s2 > 1e-300) par = sv.cast<std::complex<double>>() * (sv.dot(v.real()) + std::complex<double>(0, 1) * sv.dot(v.imag())) / s2;
    const Eigen::Vector3cd out = par + (v - par) * std::exp(-s2 * t);
    for (int c = 0; c < 3; ++c) hat[c][m] = out[c];
  }
  ConnectionField a(a0.lattice_ptr());
  for (int c = 0; c < 3; ++c) {
    for (int ax = 0; ax < 3; ++ax) dft_axis(hat[c], g.dims, ax, +1);
    for (std::size_t s = 0; s < n; ++s) a.comp(c)[s] = hat[c][s].real();
  }
  return a;
}

double ha_sample_exponent(double a) {
  // a + 3/2 is the critical exponent in three dimensions; the margin keeps
  // the H_a norm itself convergent.
  return a + 1.5 + 0.5 * (1.0 - a);
}

ConnectionField sample_ha_data(const LatticePtr& lattice, double a,
                               double amplitude, std::uint64_t seed) {
  if (!(a >= 0.5 && a <= 1.0)) {
    throw StructuralError("H_a sampling requires a in [1/2, 1]");
  }
  require_u1(*lattice);
  const double p = ha_sample_exponent(a);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  SpectralField s;
  for (int c = 0; c < 3; ++c) {
    const SpectralPlan plan =
        form_component_plan(lattice->grid(), lattice->bc(), 1, c);
    std::vector<double> coeffs(plan.modes(), 0.0);
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
      const double z = nd(rng);
      if (plan.resolved(m)) {
        coeffs[m] = amplitude * z * std::pow(1.0 + plan.eigenvalue(m), -0.5 * p);
      }
    }
    s.comps.push_back(std::move(coeffs));
  }
  return from_spectral(lattice, s);
}

CnEstimate estimate_cN(const Grid& grid, int samples) {
  if (grid.domain != DomainKind::Box) {
    throw StructuralError("c_N estimate requires a box");
  }
  std::array<AxisBasis, 3> axes;
  for (int ax = 0; ax < 3; ++ax) axes[ax] = make_axis_basis(grid, ax, Parity::Even);
  CnEstimate best;
  const double lo = std::log(1e-8), hi = 0.0;
  for (int q = 0; q < samples; ++q) {
    const double t = std::exp(lo + (hi - lo) * q / (samples - 1));
    double prod = 1.0;
    for (int ax = 0; ax < 3; ++ax) {
      const AxisBasis& b = axes[ax];
      double mx = 0.0;
      for (int i = 0; i < b.nodes; ++i) {
        double sum = 0.0;
        for (int k = 0; k < b.modes(); ++k) {
          if (!b.resolved[k]) continue;
          const double decay = std::exp(-2.0 * b.eigenvalues[k] * t);
          if (decay < 1e-30) continue;
          sum += decay * b.inverse(i, k) * b.inverse(i, k);
        }
        mx = std::max(mx, sum);
      }
      prod *= mx;
    }
    const double v = std::pow(t, 0.75) * std::sqrt(prod);
    if (v > best.value) {
      best.value = v;
      best.t_at_max = t;
    }
  }
  return best;
}

}  // namespace ymflow
