#include "ymflow/gauge_fields.hpp"

#include <cmath>

#include "ymflow/discrete_calculus.hpp"
#include "ymflow/parallel.hpp"
#include "ymflow/spectral.hpp"

namespace ymflow {

// ---------------------------------------------------------------------------
// Lattice, GaugeField, masks

std::shared_ptr<const Lattice> Lattice::make(const Grid& grid, BoundaryKind bc,
                                             GroupId group) {
  check_pairing(grid, bc);
  return std::shared_ptr<const Lattice>(
      new Lattice(grid, bc, GroupSpec::get(group)));
}

Lattice::Lattice(const Grid& grid, BoundaryKind bc, const GroupSpec& group)
    : grid_(grid), bc_(bc), group_(&group), weights_(site_weights(grid)) {}

GaugeField GaugeField::identity(LatticePtr lattice) {
  GaugeField g;
  const int m = lattice->group().matrix_dim();
  g.elems_.assign(lattice->sites(), GroupMatrix::Identity(m, m));
  g.lattice_ = std::move(lattice);
  return g;
}

GaugeField GaugeField::exp(const ZeroForm& xi) {
  GaugeField g;
  g.lattice_ = xi.lattice_ptr();
  g.elems_.resize(xi.sites());
  const GroupSpec& grp = xi.lattice().group();
  for (std::size_t s = 0; s < xi.sites(); ++s) {
    g.elems_[s] = expm_matrix(grp, xi.at(0, s));
  }
  return g;
}

GaugeField GaugeField::inverse() const {
  GaugeField g = *this;
  for (auto& m : g.elems_) m = m.adjoint().eval();
  return g;
}

GaugeField GaugeField::operator*(const GaugeField& other) const {
  if (!lattice_->same_as(other.lattice())) {
    throw StructuralError("gauge fields live on different lattices");
  }
  GaugeField g = *this;
  for (std::size_t s = 0; s < elems_.size(); ++s) {
    g.elems_[s] = elems_[s] * other.elems_[s];
  }
  return g;
}

double GaugeField::max_unitarity_residual() const {
  double r = 0.0;
  for (const auto& m : elems_) {
    const auto n = m.rows();
    r = std::max(r, (m.adjoint() * m - GroupMatrix::Identity(n, n)).norm());
  }
  return r;
}

double GaugeField::max_boundary_deviation() const {
  const Grid& g = lattice_->grid();
  if (g.domain == DomainKind::Torus) return 0.0;
  double r = 0.0;
  for (std::size_t s = 0; s < elems_.size(); ++s) {
    const auto c = g.coords(static_cast<int>(s));
    bool boundary = false;
    for (int a = 0; a < 3; ++a) boundary = boundary || g.on_boundary(a, c[a]);
    if (!boundary) continue;
    const auto n = elems_[s].rows();
    r = std::max(r, (elems_[s] - GroupMatrix::Identity(n, n)).norm());
  }
  return r;
}

void GaugeField::reproject() {
  const GroupSpec& grp = lattice_->group();
  for (auto& m : elems_) m = project_matrix(grp, m);
}

template <int Degree>
void mask(Form<Degree>& f) {
  const Lattice& l = f.lattice();
  apply_mask(l.grid(), l.bc(), Degree, l.adim(), f.data());
}

template void mask(Form<0>&);
template void mask(Form<1>&);
template void mask(Form<2>&);
template void mask(Form<3>&);

// ---------------------------------------------------------------------------
// Kernels

namespace {

// dst (+)= scale * D_axis src, src being component `src_comp` of a p-form.
template <int Degree>
void derive(const Form<Degree>& src, int src_comp, int axis, double* dst,
            double scale, bool accumulate) {
  const Lattice& l = src.lattice();
  axis_derivative(l.grid(), axis, parity(l.bc(), Degree, src_comp, axis),
                  l.adim(), src.comp(src_comp), dst, scale, accumulate);
}

// dst += scale * [x, y] pointwise over all sites.
void bracket_field(const GroupSpec& grp, std::size_t sites, const double* x,
                   const double* y, double* dst, double scale) {
  if (grp.abelian()) return;
  const int ad = grp.algebra_dim();
  parallel_for(sites, [&](std::size_t b, std::size_t e) {
    for (std::size_t s = b; s < e; ++s) {
      grp.bracket_add(x + s * ad, y + s * ad, dst + s * ad, scale);
    }
  });
}

// Rotation matrix of Ad(g^{-1}) on coefficients: (R x) = coeffs(g^{-1} X g).
Eigen::Matrix3d adjoint_rotation(const GroupSpec& grp, const GroupMatrix& g) {
  Eigen::Matrix3d r = Eigen::Matrix3d::Zero();
  const int ad = grp.algebra_dim();
  for (int b = 0; b < ad; ++b) {
    const GroupMatrix conj = g.adjoint() * grp.basis(b) * g;
    double col[3] = {0, 0, 0};
    grp.from_matrix(conj, col);
    for (int a = 0; a < ad; ++a) r(a, b) = col[a];
  }
  return r;
}

void check_same(const Lattice& a, const Lattice& b) {
  if (!a.same_as(b)) throw StructuralError("fields live on different lattices");
}

}  // namespace

ConnectionField exterior_d(const ZeroForm& f) {
  ConnectionField out(f.lattice_ptr());
  for (int i = 0; i < 3; ++i) derive(f, 0, i, out.comp(i), 1.0, false);
  mask(out);
  return out;
}

TwoFormField exterior_d(const ConnectionField& w) {
  TwoFormField out(w.lattice_ptr());
  for (int c = 0; c < 3; ++c) {
    const int i = (c + 1) % 3, j = (c + 2) % 3;
    derive(w, j, i, out.comp(c), 1.0, false);
    derive(w, i, j, out.comp(c), -1.0, true);
  }
  mask(out);
  return out;
}

ZeroForm codiff(const ConnectionField& w) {
  ZeroForm out(w.lattice_ptr());
  for (int i = 0; i < 3; ++i) derive(w, i, i, out.comp(0), -1.0, i > 0);
  mask(out);
  return out;
}

ConnectionField codiff(const TwoFormField& eta) {
  ConnectionField out(eta.lattice_ptr());
  for (int c = 0; c < 3; ++c) {
    const int i = (c + 1) % 3, j = (c + 2) % 3;
    derive(eta, c, i, out.comp(j), -1.0, true);
    derive(eta, c, j, out.comp(i), 1.0, true);
  }
  mask(out);
  return out;
}

TwoFormField curvature(const ConnectionField& a) {
  TwoFormField b = exterior_d(a);
  const GroupSpec& grp = a.lattice().group();
  for (int c = 0; c < 3; ++c) {
    const int i = (c + 1) % 3, j = (c + 2) % 3;
    bracket_field(grp, a.sites(), a.comp(i), a.comp(j), b.comp(c), 1.0);
  }
  mask(b);
  return b;
}

ConnectionField covariant_d(const ConnectionField& a, const ZeroForm& alpha) {
  check_same(a.lattice(), alpha.lattice());
  ConnectionField out = exterior_d(alpha);
  const GroupSpec& grp = a.lattice().group();
  for (int i = 0; i < 3; ++i) {
    bracket_field(grp, a.sites(), a.comp(i), alpha.comp(0), out.comp(i), 1.0);
  }
  mask(out);
  return out;
}

TwoFormField covariant_d(const ConnectionField& a, const ConnectionField& w) {
  check_same(a.lattice(), w.lattice());
  TwoFormField out = exterior_d(w);
  const GroupSpec& grp = a.lattice().group();
  for (int c = 0; c < 3; ++c) {
    const int i = (c + 1) % 3, j = (c + 2) % 3;
    bracket_field(grp, a.sites(), a.comp(i), w.comp(j), out.comp(c), 1.0);
    bracket_field(grp, a.sites(), a.comp(j), w.comp(i), out.comp(c), -1.0);
  }
  mask(out);
  return out;
}

ThreeForm covariant_d(const ConnectionField& a, const TwoFormField& b) {
  check_same(a.lattice(), b.lattice());
  ThreeForm out(a.lattice_ptr());
  const GroupSpec& grp = a.lattice().group();
  for (int c = 0; c < 3; ++c) {
    derive(b, c, c, out.comp(0), 1.0, c > 0);
  }
  for (int c = 0; c < 3; ++c) {
    bracket_field(grp, a.sites(), a.comp(c), b.comp(c), out.comp(0), 1.0);
  }
  mask(out);
  return out;
}

ZeroForm covariant_codiff(const ConnectionField& a, const ConnectionField& w) {
  check_same(a.lattice(), w.lattice());
  ZeroForm out = codiff(w);
  const GroupSpec& grp = a.lattice().group();
  for (int i = 0; i < 3; ++i) {
    bracket_field(grp, a.sites(), a.comp(i), w.comp(i), out.comp(0), -1.0);
  }
  mask(out);
  return out;
}

ConnectionField contract(const ConnectionField& v, const TwoFormField& eta) {
  check_same(v.lattice(), eta.lattice());
  ConnectionField out(v.lattice_ptr());
  const GroupSpec& grp = v.lattice().group();
  for (int c = 0; c < 3; ++c) {
    const int i = (c + 1) % 3, j = (c + 2) % 3;
    bracket_field(grp, v.sites(), v.comp(i), eta.comp(c), out.comp(j), -1.0);
    bracket_field(grp, v.sites(), v.comp(j), eta.comp(c), out.comp(i), 1.0);
  }
  mask(out);
  return out;
}

ConnectionField covariant_codiff(const ConnectionField& a,
                                 const TwoFormField& eta) {
  ConnectionField out = codiff(eta);
  out += contract(a, eta);
  mask(out);
  return out;
}

ConnectionField pure_gauge(const GaugeField& g) {
  const Lattice& l = g.lattice();
  const Grid& grid = l.grid();
  const GroupSpec& grp = l.group();
  ConnectionField out(g.lattice_ptr());
  const bool torus = grid.domain == DomainKind::Torus;
  const bool odd = parity(l.bc(), 0, 0, 0) == Parity::Odd;
  const double inv2h = 1.0 / (2.0 * grid.h);
  for (int axis = 0; axis < 3; ++axis) {
    const int n = grid.dims[axis];
    const int stride = grid.stride(axis);
    double* dst = out.comp(axis);
    parallel_for(l.sites(), [&](std::size_t b, std::size_t e) {
      for (std::size_t s = b; s < e; ++s) {
        const int i = grid.coords(static_cast<int>(s))[axis];
        const int base = static_cast<int>(s) - i * stride;
        auto at = [&](int q) -> const GroupMatrix& { return g[base + q * stride]; };
        GroupMatrix diff;
        if (torus) {
          diff = (at((i + 1) % n) - at((i - 1 + n) % n)) * inv2h;
        } else if (i == 0 || i == n - 1) {
          // ghost node mirrors the 0-form parity: g(-h) = g(h) when even,
          // g(0) g(h)^{-1} g(0) when odd
          const int in = i == 0 ? 1 : n - 2;
          const GroupMatrix ghost =
              odd ? GroupMatrix(at(i) * at(in).adjoint() * at(i)) : at(in);
          diff = (i == 0 ? at(in) - ghost : ghost - at(in)) * inv2h;
        } else {
          diff = (at(i + 1) - at(i - 1)) * inv2h;
        }
        const GroupMatrix x = g[s].adjoint() * diff;
        grp.from_matrix(x, dst + s * grp.algebra_dim());
      }
    });
  }
  mask(out);
  return out;
}

template <int Degree>
Form<Degree> conjugate(const Form<Degree>& w, const GaugeField& g) {
  check_same(w.lattice(), g.lattice());
  const GroupSpec& grp = w.lattice().group();
  if (grp.abelian()) return w;
  Form<Degree> out(w.lattice_ptr());
  const int ad = grp.algebra_dim();
  parallel_for(w.sites(), [&](std::size_t b, std::size_t e) {
    for (std::size_t s = b; s < e; ++s) {
      const Eigen::Matrix3d r = adjoint_rotation(grp, g[s]);
      for (int c = 0; c < Form<Degree>::components; ++c) {
        const Eigen::Map<const Eigen::Vector3d> x(w.at(c, s));
        Eigen::Map<Eigen::Vector3d> y(out.at(c, s));
        y = r * x;
      }
    }
  });
  (void)ad;
  mask(out);
  return out;
}

template ZeroForm conjugate(const ZeroForm&, const GaugeField&);
template ConnectionField conjugate(const ConnectionField&, const GaugeField&);
template TwoFormField conjugate(const TwoFormField&, const GaugeField&);

ConnectionField gauge_transform(const ConnectionField& a, const GaugeField& g) {
  check_same(a.lattice(), g.lattice());
  if (a.lattice().bc() == BoundaryKind::Dirichlet &&
      g.max_boundary_deviation() > 1e-10) {
    throw StructuralError(
        "Dirichlet gauge transformation must equal the identity on the "
        "boundary");
  }
  ConnectionField out = pure_gauge(g);
  out += conjugate(a, g);
  mask(out);
  return out;
}

// ---------------------------------------------------------------------------
// Norms

template <int Degree>
double inner(const Form<Degree>& a, const Form<Degree>& b) {
  a.check(b);
  const Lattice& l = a.lattice();
  return form_inner(l.grid(), l.weights(), Form<Degree>::components, l.adim(),
                    a.data(), b.data());
}

template <int Degree>
double l2_norm(const Form<Degree>& w) {
  return std::sqrt(inner(w, w));
}

namespace {

template <int Degree>
std::vector<double> pointwise_sq(const Form<Degree>& w) {
  const int ad = w.adim();
  std::vector<double> p(w.sites(), 0.0);
  for (int c = 0; c < Form<Degree>::components; ++c) {
    for (std::size_t s = 0; s < w.sites(); ++s) {
      const double* x = w.at(c, s);
      for (int k = 0; k < ad; ++k) p[s] += x[k] * x[k];
    }
  }
  return p;
}

}  // namespace

template <int Degree>
double linf_norm(const Form<Degree>& w) {
  double m = 0.0;
  for (double v : pointwise_sq(w)) m = std::max(m, v);
  return std::sqrt(m);
}

template <int Degree>
double covariant_gradient_sq(const Form<Degree>& w, const ConnectionField* a) {
  const Lattice& l = w.lattice();
  if (a) check_same(l, a->lattice());
  const std::size_t block = l.sites() * l.adim();
  std::vector<double> tmp(block);
  double total = 0.0;
  for (int c = 0; c < Form<Degree>::components; ++c) {
    for (int j = 0; j < 3; ++j) {
      derive(w, c, j, tmp.data(), 1.0, false);
      if (a) {
        bracket_field(l.group(), l.sites(), a->comp(j), w.comp(c), tmp.data(),
                      1.0);
      }
      for (std::size_t s = 0; s < l.sites(); ++s) {
        double local = 0.0;
        for (int k = 0; k < l.adim(); ++k) {
          local += tmp[s * l.adim() + k] * tmp[s * l.adim() + k];
        }
        total += l.weights()[s] * local;
      }
    }
  }
  return total;
}

template <int Degree>
FormNorms norms(const Form<Degree>& w, const ConnectionField* connection) {
  const Lattice& l = w.lattice();
  FormNorms n;
  const std::vector<double> p = pointwise_sq(w);
  double s2 = 0.0, s6 = 0.0, mx = 0.0;
  for (std::size_t s = 0; s < p.size(); ++s) {
    s2 += l.weights()[s] * p[s];
    s6 += l.weights()[s] * p[s] * p[s] * p[s];
    mx = std::max(mx, p[s]);
  }
  n.l2 = std::sqrt(s2);
  n.l6 = std::cbrt(std::sqrt(s6));
  n.linf = std::sqrt(mx);
  n.w1 = std::sqrt(covariant_gradient_sq(w, nullptr) + s2);
  n.w1a = connection ? std::sqrt(covariant_gradient_sq(w, connection) + s2)
                     : n.w1;
  return n;
}

#define YMFLOW_INSTANTIATE_NORMS(P)                                          \
  template double inner(const Form<P>&, const Form<P>&);                     \
  template double l2_norm(const Form<P>&);                                   \
  template double linf_norm(const Form<P>&);                                 \
  template double covariant_gradient_sq(const Form<P>&,                      \
                                        const ConnectionField*);             \
  template FormNorms norms(const Form<P>&, const ConnectionField*);

YMFLOW_INSTANTIATE_NORMS(0)
YMFLOW_INSTANTIATE_NORMS(1)
YMFLOW_INSTANTIATE_NORMS(2)
YMFLOW_INSTANTIATE_NORMS(3)
#undef YMFLOW_INSTANTIATE_NORMS

double gauge_distance(const GaugeField& g, const GaugeField& h, double a) {
  check_same(g.lattice(), h.lattice());
  const Lattice& l = g.lattice();
  ConnectionField diff = pure_gauge(g) - pure_gauge(h);
  const double ha = ha_norm(l.grid(), l.bc(), l.adim(), diff.data(), a);
  double s2 = 0.0;
  for (std::size_t s = 0; s < l.sites(); ++s) {
    s2 += l.weights()[s] * (g[s] - h[s]).squaredNorm();
  }
  return ha + std::sqrt(s2);
}

}  // namespace ymflow
