#include "doctest.h"

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "ymflow/abelian_oracle.hpp"
#include "ymflow/heat_flow.hpp"
#include "ymflow/initial_data.hpp"

using namespace ymflow;
using testing::lattice;

namespace {

double rel(const ConnectionField& a, const ConnectionField& b) {
  return l2_norm(a - b) / l2_norm(b);
}

ConnectionField flow(const ConnectionField& a0, FlowMode mode, double t_end,
                     double cfl = 0.1) {
  StepperConfig cfg;
  cfg.cfl = cfl;
  cfg.t_end = t_end;
  FlowState st = FlowState::start(a0, mode);
  integrate(st, cfg, {t_end});
  return st.connection();
}

}  // namespace

TEST_CASE("time stamps") {
  const auto s = time_stamps(0.01, 0.1, 0.025);
  const std::vector<double> expect{0.01, 0.02, 0.025, 0.04, 0.05, 0.075, 0.08, 0.1};
  REQUIRE(s.size() == expect.size());
  for (std::size_t k = 0; k < s.size(); ++k) CHECK(s[k] == doctest::Approx(expect[k]));
  CHECK(time_stamps(0.0, 0.0, 0.1).empty());
  CHECK(time_stamps(0.0, 1.0, 0.0) == std::vector<double>{1.0});
}

TEST_CASE("integrate lands on every stamp") {
  auto l = lattice(6, 0.2, DomainKind::Box, BoundaryKind::Neumann, GroupId::SU2);
  FlowState st = FlowState::start(smooth_connection(l, 0.5, 3), FlowMode::ZDS);
  StepperConfig cfg;
  const auto stamps = time_stamps(1e-4, 0.013, 0.005);
  std::vector<double> seen;
  int steps = 0;
  integrate(st, cfg, stamps, [&](const FlowState& s) { seen.push_back(s.t); },
            [&](const FlowState&) { ++steps; });
  CHECK(seen == stamps);
  CHECK(st.steps == static_cast<std::uint64_t>(steps));
  CHECK(st.t == 0.013);
}

TEST_CASE("u1 zds flow matches the exact solution") {
  for (auto [d, bc] : {std::pair{DomainKind::Torus, BoundaryKind::Periodic},
                       std::pair{DomainKind::Box, BoundaryKind::Neumann},
                       std::pair{DomainKind::Box, BoundaryKind::Dirichlet}}) {
    auto l = lattice(8, 1.0 / 8, d, bc, GroupId::U1);
    const ConnectionField a0 = smooth_connection(l, 1.0, 5, 2);
    CHECK(rel(flow(a0, FlowMode::ZDS, 0.02, 0.025), u1_zds_solution(a0, 0.02)) < 1e-7);
  }
}

TEST_CASE("u1 direct flow matches the exact solution on the torus") {
  auto l = lattice(8, 1.0 / 8, DomainKind::Torus, BoundaryKind::Periodic, GroupId::U1);
  const ConnectionField a0 = smooth_connection(l, 1.0, 6, 2);
  CHECK(rel(flow(a0, FlowMode::Direct, 0.02, 0.025), u1_direct_solution(a0, 0.02)) < 1e-7);
}

TEST_CASE("recovered zds agrees with the direct flow for su2") {
  auto l = lattice(6, 0.2, DomainKind::Box, BoundaryKind::Neumann, GroupId::SU2);
  const ConnectionField a0 = smooth_connection(l, 0.8, 11);
  const ConnectionField direct = flow(a0, FlowMode::Direct, 0.01, 0.05);
  const ConnectionField recovered = flow(a0, FlowMode::ZDSRecovered, 0.01, 0.05);
  CHECK(rel(recovered, direct) < 2e-3);
}

TEST_CASE("direct flow does not increase the energy") {
  auto l = lattice(6, 0.2, DomainKind::Box, BoundaryKind::Dirichlet, GroupId::SU2);
  FlowState st = FlowState::start(smooth_connection(l, 2.0, 2), FlowMode::Direct);
  StepperConfig cfg;
  double prev = l2_norm(curvature(st.field));
  bool monotone = true;
  integrate(st, cfg, {0.02}, {}, [&](const FlowState& s) {
    const double e = l2_norm(curvature(s.field));
    monotone = monotone && e <= prev * (1.0 + 1e-12);
    prev = e;
  });
  CHECK(monotone);
}

TEST_CASE("unstable steps are reported") {
  auto l = lattice(6, 0.2, DomainKind::Box, BoundaryKind::Neumann, GroupId::SU2);
  FlowState st = FlowState::start(smooth_connection(l, 2.0, 2), FlowMode::Direct);
  StepperConfig cfg;
  CHECK_THROWS_AS(step(st, cfg, 1e9), StepFailure);
  CHECK_THROWS_AS(step(st, cfg, -1.0), StepFailure);
  CHECK(st.t == 0.0);
}

TEST_CASE("gauge flow keeps g unitary and pinned") {
  auto l = lattice(6, 0.2, DomainKind::Box, BoundaryKind::Dirichlet, GroupId::SU2);
  FlowState st = FlowState::start(smooth_connection(l, 1.0, 4), FlowMode::ZDSRecovered);
  StepperConfig cfg;
  integrate(st, cfg, {0.02});
  REQUIRE(st.g);
  CHECK(st.g->max_unitarity_residual() < 1e-12);
  CHECK(st.g->max_boundary_deviation() < 1e-12);
}

TEST_CASE("flow modes parse") {
  for (FlowMode m : {FlowMode::Direct, FlowMode::ZDS, FlowMode::ZDSRecovered}) {
    CHECK(flow_mode_from_string(to_string(m)) == m);
  }
  CHECK_THROWS(flow_mode_from_string("sideways"));
}

TEST_CASE("epsilon family starts at the identity") {
  auto l = lattice(6, 0.2, DomainKind::Box, BoundaryKind::Neumann, GroupId::SU2);
  StepperConfig cfg;
  const Trajectory c = run_trajectory(FlowState::start(smooth_connection(l, 0.8, 8), FlowMode::ZDS),
                                      cfg, time_stamps(0.0, 0.02, 0.005));
  const Trajectory fam = epsilon_family(c, 0.005, cfg);
  REQUIRE(fam.size() == 4);
  CHECK(fam.times.front() == doctest::Approx(0.005));
  const auto sol = recover_solution(fam);
  CHECK(l2_norm(sol.front() - c.fields[1]) < 1e-12);
}

TEST_CASE("right-hand sides vanish at zero") {
  auto l = lattice(6, 0.2, DomainKind::Box, BoundaryKind::Neumann, GroupId::SU2);
  const ConnectionField zero(l);
  CHECK(l2_norm(ym_rhs(zero)) == 0.0);
  CHECK(l2_norm(zds_rhs(zero)) == 0.0);
}

TEST_CASE("u1 zds rhs is minus the hodge laplacian") {
  for (BoundaryKind bc : {BoundaryKind::Neumann, BoundaryKind::Dirichlet}) {
    auto l = lattice(7, 1.0 / 6, DomainKind::Box, bc, GroupId::U1);
    const ConnectionField c = testing::random_form<1>(l, 21);
    ConnectionField lap = codiff(exterior_d(c));
    lap += exterior_d(codiff(c));
    mask(lap);
    CHECK(l2_norm(zds_rhs(c) + lap) < 1e-12 * l2_norm(lap));
  }
}

TEST_CASE("u1 torus mode decays at the continuum rate") {
  double prev = 0.0;
  for (int n : {8, 16, 32}) {
    auto l = lattice(n, 1.0 / n, DomainKind::Torus, BoundaryKind::Periodic, GroupId::U1);
    ConnectionField a(l);
    const Grid& g = l->grid();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          a.at(1, g.index(i, j, k))[0] = std::sin(2.0 * std::numbers::pi * i / n);
        }
    const ConnectionField r = ym_rhs(a);
    const double ratio = inner(r, a) / inner(a, a);
    const double err = std::abs(ratio + 4.0 * std::numbers::pi * std::numbers::pi);
    if (prev > 0.0) CHECK(prev / err > 3.5);
    prev = err;
  }
}

TEST_CASE("constant gauge flow is the exponential") {
  auto l = lattice(5, 0.25, DomainKind::Box, BoundaryKind::Neumann, GroupId::SU2);
  ZeroForm xi(l);
  for (std::size_t s = 0; s < xi.sites(); ++s) {
    xi.at(0, s)[0] = 0.3;
    xi.at(0, s)[2] = -0.7;
  }
  GaugeField g = GaugeField::identity(l);
  for (int k = 0; k < 40; ++k) g = gauge_flow_step(g, xi, 0.025);
  CHECK(gauge_distance(g, GaugeField::exp(xi), 0.0) < 1e-12);
}

TEST_CASE("flow commutes with constant gauge transformations") {
  auto l = lattice(6, 0.2, DomainKind::Box, BoundaryKind::Neumann, GroupId::SU2);
  ZeroForm xi(l);
  for (std::size_t s = 0; s < xi.sites(); ++s) {
    xi.at(0, s)[0] = 0.4;
    xi.at(0, s)[1] = 1.1;
  }
  const GaugeField g = GaugeField::exp(xi);
  const ConnectionField a0 = smooth_connection(l, 1.5, 3);
  for (FlowMode m : {FlowMode::Direct, FlowMode::ZDS}) {
    const ConnectionField lhs = gauge_transform(flow(a0, m, 0.01), g);
    const ConnectionField rhs = flow(gauge_transform(a0, g), m, 0.01);
    CHECK(rel(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("recovery with the identity gauge returns the field") {
  auto l = lattice(6, 0.2, DomainKind::Box, BoundaryKind::Neumann, GroupId::SU2);
  FlowState st = FlowState::start(smooth_connection(l, 0.8, 9), FlowMode::ZDSRecovered);
  const auto sol = recover_solution(run_trajectory(st, StepperConfig{}, {0.0}));
  REQUIRE(!sol.empty());
  CHECK(l2_norm(sol.front() - st.connection()) < 1e-14);
}
