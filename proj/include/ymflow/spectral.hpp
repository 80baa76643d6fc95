#pragma once

#include <Eigen/Dense>
#include <array>
#include <span>
#include <vector>

#include "ymflow/grid.hpp"

namespace ymflow {

/// Orthonormal eigenbasis (trapezoidal inner product) of the one-dimensional
/// central-difference Laplacian along one axis: cosines for even parity,
/// sines on interior nodes for odd parity, real Fourier modes when periodic.
struct AxisBasis {
  Parity parity = Parity::Even;
  int nodes = 0;
  Eigen::MatrixXd forward;          // modes x nodes, quadrature weights folded in
  Eigen::MatrixXd inverse;          // nodes x modes
  std::vector<double> eigenvalues;  // sin^2(theta)/h^2 >= 0
  std::vector<double> angles;       // theta = k h in [0, pi]
  // True on the monotone branch theta <= pi/2 of the dispersion relation; the
  // upper half repeats the same eigenvalues with sawtooth modes.
  std::vector<bool> resolved;

  int modes() const { return static_cast<int>(eigenvalues.size()); }
};

AxisBasis make_axis_basis(const Grid& grid, int axis, Parity parity);

class SpectralPlan {
 public:
  SpectralPlan(const Grid& grid, std::array<Parity, 3> parities);

  const Grid& grid() const { return grid_; }
  const AxisBasis& axis(int a) const { return axes_[a]; }
  std::array<int, 3> mode_dims() const {
    return {axes_[0].modes(), axes_[1].modes(), axes_[2].modes()};
  }
  std::size_t modes() const;
  std::size_t mode_index(int k0, int k1, int k2) const {
    return (static_cast<std::size_t>(k0) * axes_[1].modes() + k1) *
               axes_[2].modes() + k2;
  }
  double eigenvalue(std::size_t mode) const { return eigenvalues_[mode]; }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  bool resolved(std::size_t mode) const { return resolved_[mode]; }

  /// Nodal array (one value per site) -> eigencoefficients.
  std::vector<double> forward(std::span<const double> nodal) const;
  /// Eigencoefficients -> nodal array; odd-axis boundary nodes come back zero.
  std::vector<double> inverse(std::span<const double> coeffs) const;

 private:
  Grid grid_;
  std::array<AxisBasis, 3> axes_;
  std::vector<double> eigenvalues_;
  std::vector<bool> resolved_;
};

/// Per-axis kind for the scalar transform: Dirichlet -> sine, Neumann ->
/// cosine, Periodic -> Fourier. Throws when mixing Box and Torus kinds.
SpectralPlan scalar_laplacian_transform(const Grid& grid,
                                        std::array<BoundaryKind, 3> per_axis);

/// Plan diagonalizing the Hodge Laplacian on component `comp` of a p-form.
SpectralPlan form_component_plan(const Grid& grid, BoundaryKind bc, int degree,
                                 int comp);

/// ||(1 - Delta)^{a/2} w||_2 for a connection-shaped array (3 components,
/// `adim` coefficients per site).
double ha_norm(const Grid& grid, BoundaryKind bc, int adim,
               std::span<const double> one_form, double a);

}  // namespace ymflow
