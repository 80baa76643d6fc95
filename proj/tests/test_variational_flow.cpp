#include "doctest.h"

#include "helpers.hpp"
#include "ymflow/abelian_oracle.hpp"
#include "ymflow/initial_data.hpp"
#include "ymflow/variational_flow.hpp"

using namespace ymflow;
using testing::lattice;
using testing::random_form;

TEST_CASE("variational rhs is the derivative of the flow rhs") {
  for (auto bc : {BoundaryKind::Neumann, BoundaryKind::Dirichlet}) {
    auto l = lattice(6, 0.2, DomainKind::Box, bc, GroupId::SU2);
    const ConnectionField a = smooth_connection(l, 1.5, 3);
    const TangentField v = random_form<1>(l, 4, 0.3);
    const TangentField lin = variational_rhs(v, a, curvature(a));
    auto fd = [&](double eps) {
      TangentField d = ym_rhs(a + eps * v) - ym_rhs(a - eps * v);
      d *= 0.5 / eps;
      return l2_norm(d - lin);
    };
    const double e1 = fd(1e-2), e2 = fd(5e-3);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
    CHECK(e2 < 1e-3 * l2_norm(lin));
  }
}

TEST_CASE("u1 tangent flow at zero is the direct flow") {
  auto l = lattice(8, 0.125, DomainKind::Torus, BoundaryKind::Periodic, GroupId::U1);
  const TangentField v0 = smooth_connection(l, 1.0, 7, 2);
  const double dt = 0.01 / 26;
  const BaseTrajectory base = record_base(ConnectionField(l), 0.01, dt);
  const TangentTrajectory tt = integrate_variational(v0, base, dt);
  CHECK(tt.times.back() == doctest::Approx(0.01));
  const ConnectionField exact = u1_direct_solution(v0, tt.times.back());
  CHECK(l2_norm(tt.fields.back() - exact) < 1e-7 * l2_norm(exact));
}

TEST_CASE("vertical directions at zero stay exact") {
  auto l = lattice(6, 0.2, DomainKind::Box, BoundaryKind::Neumann, GroupId::SU2);
  const ZeroForm alpha = smooth_zero_form(l, 1.0, 2);
  CHECK(vertical_residual(alpha, ConnectionField(l)) < 1e-12);
}

TEST_CASE("base trajectory interpolation") {
  auto l = lattice(6, 0.2, DomainKind::Box, BoundaryKind::Neumann, GroupId::SU2);
  const ConnectionField a0 = smooth_connection(l, 1.0, 5);
  const double dt = 0.004;
  const BaseTrajectory base = record_base(a0, 0.02, dt);
  CHECK(base.spacing == doctest::Approx(dt / 2));
  CHECK(base.t_end() == doctest::Approx(0.02));
  CHECK(l2_norm(base.at(0.0) - a0) == 0.0);
  CHECK(l2_norm(base.at(base.spacing * 3) - base.fields[3]) < 1e-14);
  const ConnectionField mid = base.at(base.spacing * 2.5);
  ConnectionField avg = base.fields[2] + base.fields[3];
  avg *= 0.5;
  CHECK(l2_norm(mid - avg) < 1e-14);
  CHECK_THROWS(base.at(1.0));
}

TEST_CASE("tangent steps above the stability limit are rejected") {
  auto l = lattice(6, 0.2, DomainKind::Box, BoundaryKind::Neumann, GroupId::SU2);
  const BaseTrajectory base = record_base(ConnectionField(l), 0.04, 0.02);
  CHECK_THROWS_AS(integrate_variational(random_form<1>(l, 1), base, 0.02), StructuralError);
}
