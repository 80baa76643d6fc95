#include "doctest.h"

#include <random>

#include "ymflow/errors.hpp"
#include "ymflow/lie_algebra.hpp"

using namespace ymflow;

namespace {

AlgebraElement rnd(const GroupSpec& g, std::uint64_t seed) {
  return random_algebra(g, 1.0, seed);
}

GroupMatrix commutator(const GroupMatrix& x, const GroupMatrix& y) {
  return x * y - y * x;
}

}  // namespace

TEST_CASE("basis is orthonormal and anti-hermitian") {
  for (GroupId id : {GroupId::U1, GroupId::SU2}) {
    const GroupSpec& g = GroupSpec::get(id);
    for (int a = 0; a < g.algebra_dim(); ++a) {
      CHECK((g.basis(a) + g.basis(a).adjoint()).norm() < 1e-15);
      for (int b = 0; b < g.algebra_dim(); ++b) {
        const double ip =
            -g.trace_scale() * (g.basis(a) * g.basis(b)).trace().real();
        CHECK(ip == doctest::Approx(a == b ? 1.0 : 0.0));
        const auto ea = AlgebraElement::basis(g, a);
        const auto eb = AlgebraElement::basis(g, b);
        CHECK(inner(ea, eb) == doctest::Approx(a == b ? 1.0 : 0.0));
      }
    }
  }
}

TEST_CASE("su2 structure constant matches matrix commutator") {
  const GroupSpec& g = GroupSpec::get(GroupId::SU2);
  const GroupMatrix c = commutator(g.basis(0), g.basis(1));
  // the oracle is the explicit 2x2 product, projected on e3
  const double f = -g.trace_scale() * (c * g.basis(2)).trace().real();
  CHECK(f == doctest::Approx(1.0));
  CHECK(g.structure_constant(0, 1, 2) == doctest::Approx(f));
  const auto b = bracket(AlgebraElement::basis(g, 0), AlgebraElement::basis(g, 1));
  CHECK((b.matrix() - c).norm() < 1e-15);
}

TEST_CASE("bracket antisymmetry, jacobi and ad-invariance") {
  const GroupSpec& g = GroupSpec::get(GroupId::SU2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = rnd(g, 3 * trial), y = rnd(g, 3 * trial + 1),
               z = rnd(g, 3 * trial + 2);
    CHECK(norm(bracket(x, x)) < 1e-15);
    CHECK(norm(bracket(x, y) + bracket(y, x)) < 1e-15);
    const auto jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) +
                     bracket(z, bracket(x, y));
    CHECK(norm(jac) < 1e-12);
    CHECK(std::abs(inner(bracket(x, y), z) + inner(y, bracket(x, z))) < 1e-12);
    CHECK((bracket(x, y).matrix() - commutator(x.matrix(), y.matrix())).norm() <
          1e-13);
  }
  const GroupSpec& u = GroupSpec::get(GroupId::U1);
  CHECK(norm(bracket(rnd(u, 1), rnd(u, 2))) == 0.0);
}

TEST_CASE("mismatched groups are structural errors") {
  const auto x = AlgebraElement::basis(GroupSpec::get(GroupId::U1), 0);
  const auto y = AlgebraElement::basis(GroupSpec::get(GroupId::SU2), 0);
  CHECK_THROWS_AS(bracket(x, y), StructuralError);
  CHECK_THROWS_AS(inner(x, y), StructuralError);
}

TEST_CASE("expm closed forms") {
  const GroupSpec& u = GroupSpec::get(GroupId::U1);
  CHECK((expm(AlgebraElement::zero(u)).matrix - GroupMatrix::Identity(1, 1))
            .norm() == 0.0);
  const auto th = AlgebraElement::basis(u, 0) * 0.7;
  CHECK(std::abs(expm(th).matrix(0, 0) - std::polar(1.0, 0.7)) < 1e-15);

  const GroupSpec& g = GroupSpec::get(GroupId::SU2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_algebra(g, 3.0, 100 + trial);
    const auto e = expm(x);
    CHECK(e.unitarity_residual() < 1e-12);
    CHECK(std::abs(e.matrix.determinant() - 1.0) < 1e-12);
    CHECK(((e * expm(-x)).matrix - GroupMatrix::Identity(2, 2)).norm() < 1e-12);
    // series oracle on a small argument
    const GroupMatrix m = (x * 0.05).matrix();
    GroupMatrix s = GroupMatrix::Identity(2, 2), term = s;
    for (int k = 1; k < 30; ++k) {
      term = (term * m / double(k)).eval();
      s += term;
    }
    CHECK((expm(x * 0.05).matrix - s).norm() < 1e-14);
  }
  CHECK_THROWS_AS(expm(AlgebraElement::basis(g, 0) * std::nan("")), NumericError);
}

TEST_CASE("adjoint action") {
  const GroupSpec& g = GroupSpec::get(GroupId::SU2);
  const auto e1 = AlgebraElement::basis(g, 0), e2 = AlgebraElement::basis(g, 1);
  CHECK(norm(adjoint_action(GroupElement::identity(g), e2) - e2) < 1e-15);
  const auto r = adjoint_action(expm(e1), e2);
  const GroupElement g1 = expm(e1);
  const GroupMatrix oracle = g1.matrix.adjoint() * e2.matrix() * g1.matrix;
  CHECK((r.matrix() - oracle).norm() < 1e-14);
  // rotation in the (e2, e3) plane by angle one
  CHECK(r.coeffs[0] == doctest::Approx(0.0));
  CHECK(r.coeffs[1] * r.coeffs[1] + r.coeffs[2] * r.coeffs[2] ==
        doctest::Approx(1.0));
  CHECK(std::abs(r.coeffs[1]) == doctest::Approx(std::cos(1.0)));
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = expm(rnd(g, 50 + trial));
    const auto x = rnd(g, 70 + trial), y = rnd(g, 90 + trial);
    CHECK(inner(adjoint_action(h, x), adjoint_action(h, y)) ==
          doctest::Approx(inner(x, y)).epsilon(1e-12));
  }
  const GroupSpec& u = GroupSpec::get(GroupId::U1);
  const auto x = rnd(u, 4);
  CHECK(norm(adjoint_action(expm(rnd(u, 5)), x) - x) < 1e-15);
}

TEST_CASE("projection to the group") {
  const GroupSpec& g = GroupSpec::get(GroupId::SU2);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    const auto e = expm(rnd(g, 200 + trial));
    CHECK((project_to_group(g, e.matrix).matrix - e.matrix).norm() < 1e-14);
    GroupMatrix pert(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) pert(i, j) = Complex(nd(rng), nd(rng));
    pert /= pert.norm();
    const GroupMatrix m =
        e.matrix * (GroupMatrix::Identity(2, 2) + 1e-8 * pert);
    const auto p = project_to_group(g, m);
    CHECK((p.matrix - e.matrix).norm() < 1e-7);
    CHECK(p.unitarity_residual() < 1e-12);
  }
  const GroupSpec& u = GroupSpec::get(GroupId::U1);
  GroupMatrix z(1, 1);
  z(0, 0) = Complex(0.6, 0.9);
  CHECK(std::abs(project_to_group(u, z).matrix(0, 0) - z(0, 0) / std::abs(z(0, 0))) <
        1e-15);
}

TEST_CASE("random_algebra determinism and variance") {
  const GroupSpec& g = GroupSpec::get(GroupId::SU2);
  CHECK(norm(random_algebra(g, 0.0, 3)) == 0.0);
  CHECK(norm(random_algebra(g, 1.0, 3) - random_algebra(g, 1.0, 3)) == 0.0);
  double s2 = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto x = random_algebra(g, 0.5, 1000 + i);
    s2 += x.coeffs.squaredNorm();
  }
  CHECK(s2 / (3.0 * n) == doctest::Approx(0.25).epsilon(0.05));
}
