#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <span>
#include <vector>

#include "ymflow/grid.hpp"

namespace ymflow {

/// Centered difference along `axis` of an array of `adim` coefficients per
/// site. Box faces are closed by ghost reflection: even components reflect
/// evenly (f[-1] = f[1]), odd components oddly about a zero boundary value.
void axis_derivative(const Grid& grid, int axis, Parity parity, int adim,
                     const double* in, double* out, double scale = 1.0,
                     bool accumulate = false);

/// Zero the components of a p-form that are odd across a face, on that face.
void apply_mask(const Grid& grid, BoundaryKind bc, int degree, int adim,
                std::span<double> data);

/// Exterior derivative d: p -> p+1 or its codifferential d*: p+1 -> p, as a
/// matrix-free operator on component-major arrays
/// (index = (component * sites + site) * adim + coefficient).
class DiscreteOperator {
 public:
  enum class Kind { Derivative, Codifferential };

  DiscreteOperator(const Grid& grid, BoundaryKind bc, int form_degree,
                   Kind kind);

  const Grid& grid() const { return grid_; }
  BoundaryKind bc() const { return bc_; }
  Kind kind() const { return kind_; }
  int source_degree() const {
    return kind_ == Kind::Derivative ? degree_ : degree_ + 1;
  }
  int target_degree() const {
    return kind_ == Kind::Derivative ? degree_ + 1 : degree_;
  }
  std::size_t source_size(int adim = 1) const;
  std::size_t target_size(int adim = 1) const;
  const std::vector<double>& weights() const { return weights_; }

  void apply(std::span<const double> in, std::span<double> out,
             int adim = 1) const;
  std::vector<double> apply(std::span<const double> in, int adim = 1) const;

  /// Sparse matrix for one algebra coefficient (adim = 1).
  Eigen::SparseMatrix<double> assemble() const;

 private:
  Grid grid_;
  BoundaryKind bc_;
  int degree_;  // lower degree of the pair (p for d: p -> p+1)
  Kind kind_;
  std::vector<double> weights_;
};

DiscreteOperator build_d(const Grid& grid, BoundaryKind bc, int degree);
/// d* = M_p^{-1} d^T M_{p+1} realized by the opposite-parity stencil.
DiscreteOperator codifferential(const DiscreteOperator& d);

/// Trapezoidal L2 inner product of two form arrays with `ncomp` components.
double form_inner(const Grid& grid, std::span<const double> weights, int ncomp,
                  int adim, std::span<const double> a,
                  std::span<const double> b);

/// Trilinear interpolation of an array with `ncomp * adim` values per site.
/// Returns ncomp * adim values at `point`; throws outside the domain closure.
std::vector<double> interpolate(const Grid& grid, int ncomp, int adim,
                                std::span<const double> data,
                                const Eigen::Vector3d& point);

}  // namespace ymflow
