#include "ymflow/spectral.hpp"

#include <cmath>
#include <numbers>

#include "ymflow/errors.hpp"

namespace ymflow {

namespace {

// Contract a dense (m x n) matrix with axis `axis` of a row-major d0 x d1 x d2
// tensor.
std::vector<double> apply_along(const Eigen::MatrixXd& mat,
                                std::span<const double> in,
                                std::array<int, 3>& dims, int axis) {
  std::array<int, 3> out_dims = dims;
  out_dims[axis] = static_cast<int>(mat.rows());
  std::vector<double> out(static_cast<std::size_t>(out_dims[0]) * out_dims[1] *
                              out_dims[2],
                          0.0);
  auto idx = [](const std::array<int, 3>& d, int i, int j, int k) {
    return (static_cast<std::size_t>(i) * d[1] + j) * d[2] + k;
  };
  const int n = dims[axis];
  const int m = out_dims[axis];
  std::array<int, 3> c{};
  for (c[0] = 0; c[0] < (axis == 0 ? 1 : dims[0]); ++c[0]) {
    for (c[1] = 0; c[1] < (axis == 1 ? 1 : dims[1]); ++c[1]) {
      for (c[2] = 0; c[2] < (axis == 2 ? 1 : dims[2]); ++c[2]) {
        for (int r = 0; r < m; ++r) {
          double acc = 0.0;
          std::array<int, 3> src = c;
          for (int q = 0; q < n; ++q) {
            src[axis] = q;
            acc += mat(r, q) * in[idx(dims, src[0], src[1], src[2])];
          }
          std::array<int, 3> dst = c;
          dst[axis] = r;
          out[idx(out_dims, dst[0], dst[1], dst[2])] = acc;
        }
      }
    }
  }
  dims = out_dims;
  return out;
}

Parity parity_for_axis_kind(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::Dirichlet:
      return Parity::Odd;
    case BoundaryKind::Neumann:
      return Parity::Even;
    case BoundaryKind::Periodic:
      return Parity::Periodic;
  }
  return Parity::Even;
}

}  // namespace

AxisBasis make_axis_basis(const Grid& grid, int axis, Parity parity) {
  const int n = grid.dims[axis];
  const double h = grid.h;
  const double len = grid.length(axis);
  const double pi = std::numbers::pi;
  const std::vector<double> w = axis_weights(grid, axis);

  AxisBasis b;
  b.parity = parity;
  b.nodes = n;
  std::vector<std::vector<double>> modes;

  auto push = [&](std::vector<double> phi, double theta) {
    modes.push_back(std::move(phi));
    b.angles.push_back(theta);
    const double s = std::sin(theta);
    b.eigenvalues.push_back(s * s / (h * h));
    b.resolved.push_back(theta <= 0.5 * pi + 1e-12);
  };

  if (parity == Parity::Periodic) {
    if (grid.domain != DomainKind::Torus) {
      throw StructuralError("Fourier basis requires a torus");
    }
    std::vector<double> phi(n, 1.0 / std::sqrt(len));
    push(phi, 0.0);
    for (int k = 1; 2 * k < n; ++k) {
      const double theta = 2.0 * pi * k / n;
      std::vector<double> c(n), s(n);
      for (int i = 0; i < n; ++i) {
        c[i] = std::sqrt(2.0 / len) * std::cos(theta * i);
        s[i] = std::sqrt(2.0 / len) * std::sin(theta * i);
      }
      push(c, theta);
      push(s, theta);
    }
    if (n % 2 == 0) {
      for (int i = 0; i < n; ++i) phi[i] = (i % 2 ? -1.0 : 1.0) / std::sqrt(len);
      push(phi, pi);
    }
  } else {
    if (grid.domain != DomainKind::Box) {
      throw StructuralError("cosine/sine bases require a box");
    }
    if (parity == Parity::Even) {
      for (int k = 0; k < n; ++k) {
        const double theta = pi * k / (n - 1);
        const double norm =
            (k == 0 || k == n - 1) ? std::sqrt(1.0 / len) : std::sqrt(2.0 / len);
        std::vector<double> phi(n);
        for (int i = 0; i < n; ++i) phi[i] = norm * std::cos(theta * i);
        push(phi, theta);
      }
    } else {
      for (int k = 1; k < n - 1; ++k) {
        const double theta = pi * k / (n - 1);
        std::vector<double> phi(n, 0.0);
        for (int i = 1; i < n - 1; ++i) {
          phi[i] = std::sqrt(2.0 / len) * std::sin(theta * i);
        }
        push(phi, theta);
      }
    }
  }

  const int m = static_cast<int>(modes.size());
  b.forward.resize(m, n);
  b.inverse.resize(n, m);
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < n; ++i) {
      b.forward(k, i) = w[i] * modes[k][i];
      b.inverse(i, k) = modes[k][i];
    }
  }
  return b;
}

SpectralPlan::SpectralPlan(const Grid& grid, std::array<Parity, 3> parities)
    : grid_(grid) {
  for (int a = 0; a < 3; ++a) axes_[a] = make_axis_basis(grid, a, parities[a]);
  const auto md = mode_dims();
  eigenvalues_.resize(modes());
  resolved_.resize(modes());
  for (int i = 0; i < md[0]; ++i)
    for (int j = 0; j < md[1]; ++j)
      for (int k = 0; k < md[2]; ++k) {
        const std::size_t m = mode_index(i, j, k);
        eigenvalues_[m] = axes_[0].eigenvalues[i] + axes_[1].eigenvalues[j] +
                          axes_[2].eigenvalues[k];
        resolved_[m] = axes_[0].resolved[i] && axes_[1].resolved[j] &&
                       axes_[2].resolved[k];
      }
}

std::size_t SpectralPlan::modes() const {
  return static_cast<std::size_t>(axes_[0].modes()) * axes_[1].modes() *
         axes_[2].modes();
}

std::vector<double> SpectralPlan::forward(std::span<const double> nodal) const {
  if (nodal.size() != static_cast<std::size_t>(grid_.sites())) {
    throw StructuralError("spectral forward on array of wrong size");
  }
  std::array<int, 3> dims = grid_.dims;
  std::vector<double> cur(nodal.begin(), nodal.end());
  for (int a = 0; a < 3; ++a) cur = apply_along(axes_[a].forward, cur, dims, a);
  return cur;
}

std::vector<double> SpectralPlan::inverse(std::span<const double> coeffs) const {
  if (coeffs.size() != modes()) {
    throw StructuralError("spectral inverse on array of wrong size");
  }
  std::array<int, 3> dims = mode_dims();
  std::vector<double> cur(coeffs.begin(), coeffs.end());
  for (int a = 0; a < 3; ++a) cur = apply_along(axes_[a].inverse, cur, dims, a);
  return cur;
}

SpectralPlan scalar_laplacian_transform(const Grid& grid,
                                        std::array<BoundaryKind, 3> per_axis) {
  std::array<Parity, 3> p{};
  for (int a = 0; a < 3; ++a) {
    const bool periodic = per_axis[a] == BoundaryKind::Periodic;
    if (periodic != (grid.domain == DomainKind::Torus)) {
      throw StructuralError("mixed box/torus spectral transform request");
    }
    p[a] = parity_for_axis_kind(per_axis[a]);
  }
  return SpectralPlan(grid, p);
}

SpectralPlan form_component_plan(const Grid& grid, BoundaryKind bc, int degree,
                                 int comp) {
  check_pairing(grid, bc);
  return SpectralPlan(grid, {parity(bc, degree, comp, 0),
                             parity(bc, degree, comp, 1),
                             parity(bc, degree, comp, 2)});
}

double ha_norm(const Grid& grid, BoundaryKind bc, int adim,
               std::span<const double> one_form, double a) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw StructuralError("H_a norm requires a in [0, 1]");
  }
  const std::size_t sites = static_cast<std::size_t>(grid.sites());
  if (one_form.size() != 3 * sites * adim) {
    throw StructuralError("H_a norm of array with wrong size");
  }
  double total = 0.0;
  std::vector<double> scalar(sites);
  for (int comp = 0; comp < 3; ++comp) {
    const SpectralPlan plan = form_component_plan(grid, bc, 1, comp);
    for (int k = 0; k < adim; ++k) {
      for (std::size_t s = 0; s < sites; ++s) {
        scalar[s] = one_form[(comp * sites + s) * adim + k];
      }
      const std::vector<double> c = plan.forward(scalar);
      for (std::size_t m = 0; m < c.size(); ++m) {
        total += std::pow(1.0 + plan.eigenvalue(m), a) * c[m] * c[m];
      }
    }
  }
  return std::sqrt(total);
}

}  // namespace ymflow
