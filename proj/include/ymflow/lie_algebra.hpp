#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ymflow {

using Complex = std::complex<double>;

// Coefficients of a Lie-algebra element in the orthonormal basis of its group.
using AlgebraVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1>;
// Defining-representation matrix of a group or algebra element.
using GroupMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, 0, 2, 2>;

enum class GroupId { U1, SU2 };

std::string_view to_string(GroupId id);
GroupId group_id_from_string(std::string_view name);

/// Structure group K with an orthonormal basis of its Lie algebra.
///
/// The Ad-invariant inner product is <X,Y> = -c trace(XY) with c = 1 for
/// U(1) and c = 2 for SU(2), which makes the stored basis orthonormal.
/// Structure constants are computed from the basis matrices at construction.
class GroupSpec {
 public:
  static const GroupSpec& get(GroupId id);

  GroupId id() const { return id_; }
  int matrix_dim() const { return matrix_dim_; }
  int algebra_dim() const { return algebra_dim_; }
  double trace_scale() const { return trace_scale_; }
  const GroupMatrix& basis(int a) const { return basis_[a]; }
  bool abelian() const { return terms_.empty(); }

  /// f_abc with [e_a, e_b] = sum_c f_abc e_c.
  double structure_constant(int a, int b, int c) const;

  // Coefficient-level kernels used by the field stencils.
  void bracket(const double* x, const double* y, double* out) const;
  void bracket_add(const double* x, const double* y, double* out,
                   double scale = 1.0) const;

  GroupMatrix to_matrix(const double* coeffs) const;
  /// Orthogonal projection of an arbitrary matrix onto the algebra.
  void from_matrix(const GroupMatrix& m, double* coeffs) const;

  bool operator==(const GroupSpec& other) const { return id_ == other.id_; }

 private:
  explicit GroupSpec(GroupId id);

  struct Term {
    int a, b, c;
    double f;
  };

  GroupId id_;
  int matrix_dim_;
  int algebra_dim_;
  double trace_scale_;
  std::vector<GroupMatrix> basis_;
  std::vector<double> structure_;
  std::vector<Term> terms_;
};

struct AlgebraElement {
  const GroupSpec* group;
  AlgebraVector coeffs;

  static AlgebraElement zero(const GroupSpec& g);
  static AlgebraElement basis(const GroupSpec& g, int a);
  GroupMatrix matrix() const { return group->to_matrix(coeffs.data()); }
  static AlgebraElement from_matrix(const GroupSpec& g, const GroupMatrix& m);

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator-() const;
  AlgebraElement operator*(double s) const;
};

struct GroupElement {
  const GroupSpec* group;
  GroupMatrix matrix;

  static GroupElement identity(const GroupSpec& g);
  GroupElement inverse() const;
  GroupElement operator*(const GroupElement& o) const;
  /// ||M*M - I|| in the Frobenius norm.
  double unitarity_residual() const;
};

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);
double inner(const AlgebraElement& x, const AlgebraElement& y);
double norm(const AlgebraElement& x);

/// Exact exponential (Euler formula for U(1), Rodrigues form for SU(2)).
GroupElement expm(const AlgebraElement& x);
GroupMatrix expm_matrix(const GroupSpec& g, const double* coeffs);

/// Coefficients of g^{-1} X g.
AlgebraElement adjoint_action(const GroupElement& g, const AlgebraElement& x);

/// Nearest group element to a raw matrix.
GroupElement project_to_group(const GroupSpec& g, const GroupMatrix& m);
GroupMatrix project_matrix(const GroupSpec& g, const GroupMatrix& m);

/// I.i.d. normal coefficients with standard deviation `scale`.
AlgebraElement random_algebra(const GroupSpec& g, double scale,
                              std::uint64_t seed);

}  // namespace ymflow
