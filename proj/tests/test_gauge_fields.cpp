#include "doctest.h"

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "ymflow/spectral.hpp"

using namespace ymflow;
using testing::lattice;
using testing::random_form;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<LatticePtr> su2_lattices(int n) {
  return {lattice(n, 0.3, DomainKind::Box, BoundaryKind::Neumann, GroupId::SU2),
          lattice(n, 0.3, DomainKind::Box, BoundaryKind::Dirichlet, GroupId::SU2),
          lattice(n, 0.3, DomainKind::Torus, BoundaryKind::Periodic,
                  GroupId::SU2)};
}

// Smooth SU(2) gauge field exp(xi(x)) with xi a product of low modes, equal
// to the identity on box faces when `pin` is set.
GaugeField smooth_gauge(const LatticePtr& l, double amp, bool pin) {
  const Grid& g = l->grid();
  ZeroForm xi(l);
  for (std::size_t s = 0; s < l->sites(); ++s) {
    const auto c = g.coords(static_cast<int>(s));
    double x[3];
    for (int a = 0; a < 3; ++a) x[a] = c[a] * g.h / g.length(a);
    double bump = 1.0;
    if (pin) {
      for (int a = 0; a < 3; ++a) bump *= std::sin(kPi * x[a]);
    }
    for (int k = 0; k < l->adim(); ++k) {
      xi.at(0, s)[k] = amp * bump *
                       std::cos(2 * kPi * x[0] + k) *
                       std::sin(2 * kPi * x[1] + 0.5 * k + 0.3) *
                       std::cos(2 * kPi * x[2] - k);
    }
  }
  return GaugeField::exp(xi);
}

}  // namespace

TEST_CASE("curvature examples") {
  auto l = lattice(6, 0.3, DomainKind::Box, BoundaryKind::Neumann, GroupId::SU2);
  CHECK(l2_norm(curvature(ConnectionField(l))) == 0.0);

  auto t = lattice(6, 0.3, DomainKind::Torus, BoundaryKind::Periodic,
                   GroupId::SU2);
  ConnectionField a(t);
  for (int i = 0; i < 3; ++i)
    for (std::size_t s = 0; s < t->sites(); ++s) a.at(i, s)[i] = 1.0;
  const TwoFormField b = curvature(a);
  const GroupSpec& grp = t->group();
  for (int c = 0; c < 3; ++c) {
    const int i = (c + 1) % 3, j = (c + 2) % 3;
    const auto oracle = bracket(AlgebraElement::basis(grp, i),
                                AlgebraElement::basis(grp, j));
    for (std::size_t s = 0; s < t->sites(); s += 7)
      for (int k = 0; k < 3; ++k) CHECK(b.at(c, s)[k] == oracle.coeffs[k]);
  }

  // U1, A = f(x) dy on the torus: B_12 = f'(x)
  double prev = 0.0;
  for (int n : {16, 32}) {
    auto u = lattice(n, 1.0 / n, DomainKind::Torus, BoundaryKind::Periodic,
                     GroupId::U1);
    ConnectionField au(u);
    for (std::size_t s = 0; s < u->sites(); ++s) {
      au.at(1, s)[0] = std::sin(2 * kPi * u->grid().coords(int(s))[0] / n);
    }
    const TwoFormField bu = curvature(au);
    double err = 0.0;
    for (std::size_t s = 0; s < u->sites(); ++s) {
      const double x = double(u->grid().coords(int(s))[0]) / n;
      err = std::max(err, std::abs(bu.at(2, s)[0] - 2 * kPi * std::cos(2 * kPi * x)));
      CHECK(bu.at(0, s)[0] == 0.0);
      CHECK(bu.at(1, s)[0] == 0.0);
    }
    if (prev > 0) CHECK(prev / err > 3.5);
    prev = err;
  }
}

TEST_CASE("covariant d and codifferential are exact adjoints") {
  for (const auto& l : su2_lattices(5)) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_form<1>(l, 10 + trial);
      const auto al = random_form<0>(l, 20 + trial);
      const auto w = random_form<1>(l, 30 + trial);
      const auto eta = random_form<2>(l, 40 + trial);
      const double r0 = inner(covariant_d(a, al), w) -
                        inner(al, covariant_codiff(a, w));
      const double r1 = inner(covariant_d(a, w), eta) -
                        inner(w, covariant_codiff(a, eta));
      CHECK(std::abs(r0) <= 1e-10 * l2_norm(al) * l2_norm(w) * 10);
      CHECK(std::abs(r1) <= 1e-10 * l2_norm(w) * l2_norm(eta) * 10);
    }
    const ConnectionField zero(l);
    const auto w = random_form<1>(l, 5);
    CHECK(l2_norm(covariant_d(zero, w) - exterior_d(w)) == 0.0);
    CHECK(l2_norm(covariant_codiff(zero, exterior_d(w)) - codiff(exterior_d(w))) ==
          0.0);
  }
}

TEST_CASE("covariant d on 0-forms matches site-wise brute force") {
  auto l = lattice(4, 0.5, DomainKind::Box, BoundaryKind::Neumann, GroupId::SU2);
  const auto a = random_form<1>(l, 1);
  const auto al = random_form<0>(l, 2);
  const auto got = covariant_d(a, al);
  const Grid& g = l->grid();
  const GroupSpec& grp = l->group();
  for (std::size_t s = 0; s < l->sites(); ++s) {
    const auto c = g.coords(int(s));
    for (int i = 0; i < 3; ++i) {
      auto val = [&](int q) {
        auto cc = c;
        cc[i] = q < 0 ? -q : (q > 3 ? 6 - q : q);
        return AlgebraElement{&grp, Eigen::Map<const Eigen::Vector3d>(
                                        al.at(0, g.index(cc[0], cc[1], cc[2])))};
      };
      AlgebraElement d = (val(c[i] + 1) - val(c[i] - 1)) * (1.0 / (2 * g.h));
      const AlgebraElement ai{&grp, Eigen::Map<const Eigen::Vector3d>(a.at(i, s))};
      d = d + bracket(ai, val(c[i]));
      if (g.on_boundary(i, c[i])) d = AlgebraElement::zero(grp);
      for (int k = 0; k < 3; ++k)
        CHECK(got.at(i, s)[k] == doctest::Approx(d.coeffs[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("abelian covariant d is flat d") {
  auto l = lattice(5, 0.3, DomainKind::Box, BoundaryKind::Dirichlet, GroupId::U1);
  const auto a = random_form<1>(l, 3);
  const auto w = random_form<1>(l, 4);
  CHECK(l2_norm(covariant_d(a, w) - exterior_d(w)) == 0.0);
}

TEST_CASE("masks hold after every operation") {
  auto l = lattice(5, 0.3, DomainKind::Box, BoundaryKind::Neumann, GroupId::SU2);
  const auto a = random_form<1>(l, 3);
  const auto b = curvature(a);
  const Grid& g = l->grid();
  for (std::size_t s = 0; s < l->sites(); ++s) {
    const auto c = g.coords(int(s));
    for (int i = 0; i < 3; ++i) {
      if (g.on_boundary(i, c[i])) {
        // normal 1-form component and the two 2-form components containing i
        for (int k = 0; k < 3; ++k) {
          CHECK(a.at(i, s)[k] == 0.0);
          CHECK(b.at((i + 1) % 3, s)[k] == 0.0);
          CHECK(b.at((i + 2) % 3, s)[k] == 0.0);
        }
      }
    }
  }
}

TEST_CASE("gauge transform basics") {
  for (const auto& l : su2_lattices(6)) {
    const auto a = random_form<1>(l, 8);
    const auto id = GaugeField::identity(l);
    CHECK(l2_norm(gauge_transform(a, id) - a) == 0.0);
    const auto g = smooth_gauge(l, 0.4, true);
    CHECK(l2_norm(gauge_transform(ConnectionField(l), g) - pure_gauge(g)) == 0.0);
    // constant g: curvature is conjugated exactly
    ZeroForm xi(l);
    for (std::size_t s = 0; s < l->sites(); ++s) {
      xi.at(0, s)[0] = 0.3;
      xi.at(0, s)[1] = -1.1;
      xi.at(0, s)[2] = 0.7;
    }
    if (l->bc() != BoundaryKind::Dirichlet) {
      const auto gc = GaugeField::exp(xi);
      CHECK(l2_norm(pure_gauge(gc)) < 1e-14);
      const auto lhs = curvature(gauge_transform(a, gc));
      const auto rhs = conjugate(curvature(a), gc);
      CHECK(l2_norm(lhs - rhs) <= 1e-12 * l2_norm(rhs));
      // group action is exact when one factor is constant
      const auto ab = gauge_transform(gauge_transform(a, g), gc);
      const auto ac = gauge_transform(a, g * gc);
      CHECK(l2_norm(ab - ac) <= 1e-12 * l2_norm(ac));
    } else {
      CHECK_THROWS_AS(gauge_transform(a, GaugeField::exp(xi)), StructuralError);
    }
  }
}

TEST_CASE("u1 pure gauge is i d phi to second order") {
  double prev = 0.0;
  for (int n : {8, 16, 32}) {
    auto l = lattice(n, 1.0 / (n - 1), DomainKind::Box, BoundaryKind::Neumann,
                     GroupId::U1);
    const Grid& g = l->grid();
    ZeroForm phi(l);
    for (std::size_t s = 0; s < l->sites(); ++s) {
      const auto c = g.coords(int(s));
      phi.at(0, s)[0] = std::cos(kPi * c[0] * g.h) * std::cos(kPi * c[1] * g.h);
    }
    const auto gg = GaugeField::exp(phi);
    const auto pg = pure_gauge(gg);
    ConnectionField exact(l);
    for (std::size_t s = 0; s < l->sites(); ++s) {
      const auto c = g.coords(int(s));
      const double x = c[0] * g.h, y = c[1] * g.h;
      exact.at(0, s)[0] = -kPi * std::sin(kPi * x) * std::cos(kPi * y);
      exact.at(1, s)[0] = -kPi * std::cos(kPi * x) * std::sin(kPi * y);
    }
    const double err = linf_norm(pg - exact);
    if (prev > 0) CHECK(prev / err > 3.5);
    prev = err;
    const double rho = gauge_distance(GaugeField::identity(l), gg, 0.5);
    double s2 = 0.0;
    for (std::size_t s = 0; s < l->sites(); ++s)
      s2 += l->weights()[s] * std::norm(gg[s](0, 0) - 1.0);
    CHECK(rho == doctest::Approx(ha_norm(g, l->bc(), 1, pg.data(), 0.5) +
                                 std::sqrt(s2)));
    CHECK(gauge_distance(gg, gg, 0.5) == 0.0);
  }
}

TEST_CASE("su2 pure gauge curvature vanishes at second order") {
  double prev = 0.0;
  for (int n : {16, 32, 64}) {
    auto l = lattice(n, 1.0 / (n - 1), DomainKind::Box, BoundaryKind::Neumann,
                     GroupId::SU2);
    const double r = l2_norm(curvature(pure_gauge(smooth_gauge(l, 0.5, false))));
    if (prev > 0) CHECK(prev / r > 3.5);
    prev = r;
  }
}

TEST_CASE("norms") {
  auto l = lattice(6, 1.0 / 6, DomainKind::Torus, BoundaryKind::Periodic,
                   GroupId::SU2);
  ConnectionField w(l);
  CHECK(norms(w).l2 == 0.0);
  for (std::size_t s = 0; s < l->sites(); ++s) {
    w.at(0, s)[1] = 2.0;
    w.at(2, s)[0] = 1.0;
  }
  const auto n = norms(w);
  const double mag = std::sqrt(5.0);
  CHECK(n.l2 == doctest::Approx(mag));
  CHECK(n.l6 == doctest::Approx(mag));
  CHECK(n.linf == doctest::Approx(mag));
  CHECK(n.w1 == doctest::Approx(mag));
  ConnectionField zero(l);
  const auto r = random_form<1>(l, 4);
  CHECK(norms(r, &zero).w1a == norms(r).w1);
}

TEST_CASE("gauge distance triangle inequality") {
  auto l = lattice(6, 0.2, DomainKind::Box, BoundaryKind::Neumann, GroupId::SU2);
  std::vector<GaugeField> gs;
  for (int i = 0; i < 12; ++i) {
    gs.push_back(GaugeField::exp(random_form<0>(l, 300 + i, 0.3)));
  }
  int checked = 0;
  for (int i = 0; i < 12 && checked < 50; ++i)
    for (int j = 0; j < 12 && checked < 50; ++j)
      for (int k = 0; k < 12 && checked < 50; ++k) {
        if (i == j || j == k || i == k) continue;
        const double ij = gauge_distance(gs[i], gs[j], 0.5);
        CHECK(ij == doctest::Approx(gauge_distance(gs[j], gs[i], 0.5)));
        CHECK(gauge_distance(gs[i], gs[k], 0.5) <=
              ij + gauge_distance(gs[j], gs[k], 0.5) + 1e-12);
        ++checked;
      }
}

TEST_CASE("bianchi residual converges") {
  double prev = 0.0;
  for (int n : {8, 16, 32}) {
    auto l = lattice(n, 1.0 / n, DomainKind::Torus, BoundaryKind::Periodic,
                     GroupId::SU2);
    ConnectionField a(l);
    const Grid& g = l->grid();
    for (std::size_t s = 0; s < l->sites(); ++s) {
      const auto c = g.coords(int(s));
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
          a.at(i, s)[k] = std::sin(2 * kPi * (c[(i + 1) % 3] * g.h) + k) +
                          0.5 * std::cos(2 * kPi * (c[(i + k) % 3] * g.h));
    }
    const double r = l2_norm(covariant_d(a, curvature(a)));
    if (prev > 0) CHECK(prev / r > 3.5);
    prev = r;
  }
}
