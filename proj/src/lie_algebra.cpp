#include "ymflow/lie_algebra.hpp"

#include <cmath>
#include <random>

#include "ymflow/errors.hpp"

namespace ymflow {

namespace {

const Complex kI{0.0, 1.0};

void require_same(const GroupSpec* a, const GroupSpec* b) {
  if (a == nullptr || b == nullptr || !(*a == *b)) {
    throw StructuralError("algebra elements belong to different groups");
  }
}

void require_finite(const AlgebraVector& v) {
  if (!v.allFinite()) {
    throw NumericError("non-finite algebra coefficients");
  }
}

}  // namespace

std::string_view to_string(GroupId id) {
  return id == GroupId::U1 ? "U1" : "SU2";
}

GroupId group_id_from_string(std::string_view name) {
  if (name == "U1" || name == "u1") return GroupId::U1;
  if (name == "SU2" || name == "su2") return GroupId::SU2;
  throw StructuralError("unknown group '" + std::string(name) + "'");
}

const GroupSpec& GroupSpec::get(GroupId id) {
  static const GroupSpec u1(GroupId::U1);
  static const GroupSpec su2(GroupId::SU2);
  return id == GroupId::U1 ? u1 : su2;
}

GroupSpec::GroupSpec(GroupId id) : id_(id) {
  if (id == GroupId::U1) {
    matrix_dim_ = 1;
    algebra_dim_ = 1;
    trace_scale_ = 1.0;
    GroupMatrix e(1, 1);
    e(0, 0) = kI;
    basis_.push_back(e);
  } else {
    matrix_dim_ = 2;
    algebra_dim_ = 3;
    trace_scale_ = 2.0;
    // e_k = -i sigma_k / 2
    GroupMatrix s1(2, 2), s2(2, 2), s3(2, 2);
    s1 << 0.0, 1.0, 1.0, 0.0;
    s2 << 0.0, -kI, kI, 0.0;
    s3 << 1.0, 0.0, 0.0, -1.0;
    for (const GroupMatrix* s : {&s1, &s2, &s3}) {
      basis_.push_back(GroupMatrix(-0.5 * kI * (*s)));
    }
  }

  const int n = algebra_dim_;
  structure_.assign(static_cast<std::size_t>(n * n * n), 0.0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const GroupMatrix comm = basis_[a] * basis_[b] - basis_[b] * basis_[a];
      for (int c = 0; c < n; ++c) {
        const double f =
            -trace_scale_ * (comm * basis_[c]).trace().real();
        const double rounded = std::abs(f) < 1e-14 ? 0.0 : f;
        structure_[(a * n + b) * n + c] = rounded;
        if (rounded != 0.0) terms_.push_back({a, b, c, rounded});
      }
    }
  }
}

double GroupSpec::structure_constant(int a, int b, int c) const {
  const int n = algebra_dim_;
  return structure_[(a * n + b) * n + c];
}

void GroupSpec::bracket(const double* x, const double* y, double* out) const {
  for (int c = 0; c < algebra_dim_; ++c) out[c] = 0.0;
  bracket_add(x, y, out);
}

void GroupSpec::bracket_add(const double* x, const double* y, double* out,
                            double scale) const {
  if (id_ == GroupId::SU2) {
    // f_abc = epsilon_abc for the basis above
    out[0] += scale * (x[1] * y[2] - x[2] * y[1]);
    out[1] += scale * (x[2] * y[0] - x[0] * y[2]);
    out[2] += scale * (x[0] * y[1] - x[1] * y[0]);
    return;
  }
  for (const Term& t : terms_) out[t.c] += scale * t.f * x[t.a] * y[t.b];
}

GroupMatrix GroupSpec::to_matrix(const double* coeffs) const {
  GroupMatrix m = GroupMatrix::Zero(matrix_dim_, matrix_dim_);
  for (int a = 0; a < algebra_dim_; ++a) m += coeffs[a] * basis_[a];
  return m;
}

void GroupSpec::from_matrix(const GroupMatrix& m, double* coeffs) const {
  // <e_a, M> under the real Hilbert-Schmidt product scaled by c
  for (int a = 0; a < algebra_dim_; ++a) {
    coeffs[a] = trace_scale_ * (basis_[a].adjoint() * m).trace().real();
  }
}

AlgebraElement AlgebraElement::zero(const GroupSpec& g) {
  return {&g, AlgebraVector::Zero(g.algebra_dim())};
}

AlgebraElement AlgebraElement::basis(const GroupSpec& g, int a) {
  AlgebraElement e = zero(g);
  e.coeffs[a] = 1.0;
  return e;
}

AlgebraElement AlgebraElement::from_matrix(const GroupSpec& g,
                                           const GroupMatrix& m) {
  if (m.rows() != g.matrix_dim() || m.cols() != g.matrix_dim()) {
    throw StructuralError("matrix dimension does not match group");
  }
  AlgebraElement e = zero(g);
  g.from_matrix(m, e.coeffs.data());
  return e;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  require_same(group, o.group);
  return {group, coeffs + o.coeffs};
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  require_same(group, o.group);
  return {group, coeffs - o.coeffs};
}

AlgebraElement AlgebraElement::operator-() const { return {group, -coeffs}; }

AlgebraElement AlgebraElement::operator*(double s) const {
  return {group, s * coeffs};
}

GroupElement GroupElement::identity(const GroupSpec& g) {
  return {&g, GroupMatrix::Identity(g.matrix_dim(), g.matrix_dim())};
}

GroupElement GroupElement::inverse() const {
  return {group, matrix.adjoint()};
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  require_same(group, o.group);
  return {group, matrix * o.matrix};
}

double GroupElement::unitarity_residual() const {
  const auto n = matrix.rows();
  return (matrix.adjoint() * matrix - GroupMatrix::Identity(n, n)).norm();
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  require_same(x.group, y.group);
  AlgebraElement out = AlgebraElement::zero(*x.group);
  x.group->bracket(x.coeffs.data(), y.coeffs.data(), out.coeffs.data());
  return out;
}

double inner(const AlgebraElement& x, const AlgebraElement& y) {
  require_same(x.group, y.group);
  return x.coeffs.dot(y.coeffs);
}

double norm(const AlgebraElement& x) { return x.coeffs.norm(); }

GroupMatrix expm_matrix(const GroupSpec& g, const double* c) {
  if (g.id() == GroupId::U1) {
    if (!std::isfinite(c[0])) throw NumericError("non-finite exponent");
    GroupMatrix m(1, 1);
    m(0, 0) = std::polar(1.0, c[0]);
    return m;
  }
  // X = -(i/2) theta.sigma, exp(X) = cos(r) I - i sin(r) n.sigma, r = |theta|/2
  const double r2 = c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
  if (!std::isfinite(r2)) throw NumericError("non-finite exponent");
  const double r = 0.5 * std::sqrt(r2);
  const double cr = std::cos(r);
  // sin(r)/r * (1/2), series near zero
  const double s = r < 1e-4 ? 0.5 * (1.0 - r * r / 6.0 + r * r * r * r / 120.0)
                             : 0.5 * std::sin(r) / r;
  GroupMatrix m(2, 2);
  m(0, 0) = Complex(cr, -s * c[2]);
  m(0, 1) = Complex(-s * c[1], -s * c[0]);
  m(1, 0) = Complex(s * c[1], -s * c[0]);
  m(1, 1) = Complex(cr, s * c[2]);
  return m;
}

GroupElement expm(const AlgebraElement& x) {
  require_finite(x.coeffs);
  return {x.group, expm_matrix(*x.group, x.coeffs.data())};
}

AlgebraElement adjoint_action(const GroupElement& g, const AlgebraElement& x) {
  require_same(g.group, x.group);
  if (g.matrix.rows() != g.group->matrix_dim()) {
    throw StructuralError("group element dimension mismatch");
  }
  return AlgebraElement::from_matrix(*x.group,
                                     g.matrix.adjoint() * x.matrix() * g.matrix);
}

GroupMatrix project_matrix(const GroupSpec& g, const GroupMatrix& m) {
  if (g.id() == GroupId::U1) {
    const double r = std::abs(m(0, 0));
    if (!(r > 1e-12)) throw NumericError("cannot project singular U(1) value");
    GroupMatrix out(1, 1);
    out(0, 0) = m(0, 0) / r;
    return out;
  }
  // Quaternion components q0 I + sum_k q_k (-i sigma_k); the real span of SU(2)
  // is this 4-dimensional subspace, so projecting and normalizing gives the
  // nearest unit quaternion.
  const double q0 = 0.5 * (m(0, 0) + m(1, 1)).real();
  const double q3 = -0.5 * (m(0, 0) - m(1, 1)).imag();
  const double q1 = -0.5 * (m(0, 1) + m(1, 0)).imag();
  const double q2 = 0.5 * (m(1, 0) - m(0, 1)).real();
  const double r = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
  if (!(r > 1e-12) || !std::isfinite(r)) {
    throw NumericError("cannot project singular SU(2) factor");
  }
  GroupMatrix out(2, 2);
  out(0, 0) = Complex(q0, -q3) / r;
  out(0, 1) = Complex(-q2, -q1) / r;
  out(1, 0) = Complex(q2, -q1) / r;
  out(1, 1) = Complex(q0, q3) / r;
  return out;
}

GroupElement project_to_group(const GroupSpec& g, const GroupMatrix& m) {
  if (m.rows() != g.matrix_dim() || m.cols() != g.matrix_dim()) {
    throw StructuralError("matrix dimension does not match group");
  }
  return {&g, project_matrix(g, m)};
}

AlgebraElement random_algebra(const GroupSpec& g, double scale,
                              std::uint64_t seed) {
  AlgebraElement e = AlgebraElement::zero(g);
  if (scale == 0.0) return e;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, scale);
  for (int a = 0; a < g.algebra_dim(); ++a) e.coeffs[a] = normal(rng);
  return e;
}

}  // namespace ymflow
