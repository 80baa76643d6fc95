#include "doctest.h"

#include <cmath>
#include <complex>

#include "helpers.hpp"
#include "ymflow/initial_data.hpp"
#include "ymflow/observables.hpp"

using namespace ymflow;
using testing::lattice;

namespace {

ObservableSeries sampled(double (*f)(double), int n, double t_end) {
  ObservableSeries s{"f", {}, {}};
  for (int k = 0; k <= n; ++k) {
    const double t = t_end * k / n;
    s.push(t, f(t));
  }
  return s;
}

}  // namespace

TEST_CASE("a-action closed forms") {
  const double a = 0.5;
  const auto one = a_action(sampled([](double) { return 1.0; }, 7, 0.3), a);
  const auto lin = a_action(sampled([](double t) { return t; }, 7, 0.3), a);
  for (std::size_t k = 0; k < one.t.size(); ++k) {
    const double t = one.t[k];
    CHECK(one.value[k] == doctest::Approx(std::pow(t, 1 - a) / (1 - a)).epsilon(1e-13));
    CHECK(lin.value[k] == doctest::Approx(std::pow(t, 2 - a) / (2 - a)).epsilon(1e-13));
  }
  CHECK(one.value.front() == 0.0);
  CHECK_THROWS(a_action(sampled([](double) { return 1.0; }, 3, 1.0), 1.0));

  // smooth integrand: second order in the sample spacing
  auto err = [](int n) {
    const auto s = weighted_integral(sampled([](double t) { return std::exp(-t); }, n, 1.0),
                                     1.5, "w");
    // int_0^1 s^{3/2} e^{-s} ds
    const double exact = 0.20053759629003476;
    return std::abs(s.value.back() - exact);
  };
  CHECK(err(20) / err(40) > 3.5);
}

TEST_CASE("series push requires increasing times") {
  ObservableSeries s{"x", {}, {}};
  s.push(0.0, 1.0);
  s.push(0.5, 3.0);
  CHECK_THROWS(s.push(0.5, 2.0));
  CHECK(s.sup() == 3.0);
}

TEST_CASE("u1 square loop obeys stokes") {
  auto l = lattice(9, 0.125, DomainKind::Box, BoundaryKind::Neumann, GroupId::U1);
  const double c = 1.7;
  ConnectionField a(l);
  for (std::size_t s = 0; s < l->sites(); ++s) {
    a.at(1, s)[0] = c * l->grid().coords(static_cast<int>(s))[0] * l->grid().h;
  }
  const double side = 0.5;
  const Loop loop = Loop::rectangle({0.25, 0.25, 0.5}, 0, side, 1, side, 0.125);
  const std::complex<double> w = wilson_loop(a, loop);
  const std::complex<double> expect = std::polar(1.0, c * side * side);
  CHECK(std::abs(w - expect) < 1e-12);
  CHECK(std::abs(wilson_loop(a, loop.reversed()) - std::conj(expect)) < 1e-12);
}

TEST_CASE("holonomy reverses and refines") {
  auto l = lattice(8, 0.15, DomainKind::Box, BoundaryKind::Neumann, GroupId::SU2);
  const ConnectionField a = smooth_connection(l, 2.0, 13);
  const Loop loop = Loop::rectangle({0.2, 0.3, 0.4}, 0, 0.6, 2, 0.45, 0.15);
  const GroupElement g = parallel_transport(a, loop);
  const GroupElement r = parallel_transport(a, loop.reversed());
  CHECK((g.matrix * r.matrix - GroupMatrix::Identity(2, 2)).norm() < 1e-12);

  auto with = [&](double delta) {
    Loop q = loop;
    q.subdiv = delta;
    return parallel_transport(a, q).matrix;
  };
  const GroupMatrix ref = with(0.15 / 256);
  const double e1 = (with(0.15 / 4) - ref).norm();
  const double e2 = (with(0.15 / 8) - ref).norm();
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("loop validation") {
  const Grid g = Grid::make({8, 8, 8}, 0.1, DomainKind::Box);
  CHECK_NOTHROW(Loop::rectangle({0.1, 0.1, 0.1}, 0, 0.3, 1, 0.3, 0.05).validate(g));
  CHECK_THROWS(Loop::rectangle({0.1, 0.1, 0.1}, 0, 0.3, 1, 0.3, 0.2).validate(g));
  CHECK_THROWS(Loop::rectangle({0.5, 0.1, 0.1}, 0, 0.3, 1, 0.3, 0.05).validate(g));
  Loop open = Loop::rectangle({0.1, 0.1, 0.1}, 0, 0.3, 1, 0.3, 0.05);
  open.vertices.pop_back();
  CHECK_THROWS(open.validate(g));
}

TEST_CASE("zero connection") {
  for (auto grp : {GroupId::U1, GroupId::SU2}) {
    auto l = lattice(6, 0.2, DomainKind::Box, BoundaryKind::Dirichlet, grp);
    const ConnectionField a(l);
    CHECK(energy(a) == 0.0);
    CHECK(bianchi_residual(a) == 0.0);
    CHECK(marini_residual(a) == 0.0);
    CHECK(dirichlet_b_residual(a) == 0.0);
    const auto w = wilson_loop(a, Loop::rectangle({0.2, 0.2, 0.2}, 0, 0.4, 1, 0.4, 0.1));
    CHECK(w.real() == doctest::Approx(grp == GroupId::U1 ? 1.0 : 2.0));
    CHECK(w.imag() == doctest::Approx(0.0));
  }
}

TEST_CASE("gauge invariants of the curvature") {
  auto l = lattice(8, 0.15, DomainKind::Box, BoundaryKind::Neumann, GroupId::SU2);
  const ConnectionField a = smooth_connection(l, 1.5, 21);
  ZeroForm xi(l);
  for (std::size_t s = 0; s < l->sites(); ++s) {
    xi.at(0, s)[0] = 0.4;
    xi.at(0, s)[2] = -1.1;
  }
  const GaugeField g = GaugeField::exp(xi);
  const Loop loop = Loop::rectangle({0.2, 0.3, 0.4}, 0, 0.6, 1, 0.45, 0.15);
  CHECK(energy(gauge_transform(a, g)) == doctest::Approx(energy(a)).epsilon(1e-12));
  CHECK(std::abs(wilson_loop(gauge_transform(a, g), loop) - wilson_loop(a, loop)) < 1e-12);

  // non-constant gauges act exactly only up to the discretization error
  const GaugeField k = smooth_gauge(l, 0.8, 5);
  CHECK(energy(gauge_transform(a, k)) == doctest::Approx(energy(a)).epsilon(1e-2));
  CHECK(std::abs(wilson_loop(gauge_transform(a, k), loop) - wilson_loop(a, loop)) < 1e-2);
}

TEST_CASE("gronwall rate") {
  std::vector<GronwallSample> s;
  for (int k = 0; k <= 4; ++k) {
    const double t = 0.1 * k;
    s.push_back({t, std::exp(3.0 * t), 1.0});
  }
  CHECK(gronwall_rate(s[0], s[1]) == doctest::Approx(3.0));
  CHECK(gronwall_residual(s, 3.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(gronwall_residual(s, 1.0) == doctest::Approx(2.0));
  CHECK(gronwall_residual(s, 5.0) <= 0.0);
}

TEST_CASE("small time monitor on a u1 mode") {
  auto l = lattice(9, 0.125, DomainKind::Box, BoundaryKind::Neumann, GroupId::U1);
  FlowState st = FlowState::start(u1_mode(l, {1, 0, 0}, 1, 1.0), FlowMode::ZDS);
  SmallTimeMonitor m;
  m.sample(st);
  StepperConfig cfg;
  integrate(st, cfg, {0.01}, {}, [&](const FlowState& s) { m.sample(s); });
  const SmallTimeSeries s = m.finish();
  REQUIRE(s.b_sq.t.size() > 2);
  CHECK(s.b_sq.t.front() == 0.0);
  CHECK(s.weighted_b.value.front() == 0.0);
  // single eigenmode: ||B||^2 decays at exactly twice the eigenvalue
  // cos(pi x/L) along x, lowest sine along y
  const double lam = 2 * std::pow(std::sin(3.14159265358979 / 8) / 0.125, 2);
  const double expect = s.b_sq.value.front() * std::exp(-2 * lam * 0.01);
  CHECK(s.b_sq.value.back() == doctest::Approx(expect).epsilon(1e-6));
  for (std::size_t k = 1; k < s.action.t.size(); ++k) {
    CHECK(s.action.value[k] > s.action.value[k - 1]);
  }
}
