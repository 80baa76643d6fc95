#pragma once

#include <optional>

#include "ymflow/fields.hpp"

namespace ymflow {

// Flat exterior calculus on algebra-valued fields (coefficient-wise).
ConnectionField exterior_d(const ZeroForm& f);
TwoFormField exterior_d(const ConnectionField& w);
ZeroForm codiff(const ConnectionField& w);
ConnectionField codiff(const TwoFormField& eta);

/// B = dA + (1/2)[A ^ A], i.e. B_ij = (dA)_ij + [A_i, A_j].
TwoFormField curvature(const ConnectionField& a);

/// d_A on 0-, 1- and 2-forms: d w + [A ^ w].
ConnectionField covariant_d(const ConnectionField& a, const ZeroForm& alpha);
TwoFormField covariant_d(const ConnectionField& a, const ConnectionField& w);
ThreeForm covariant_d(const ConnectionField& a, const TwoFormField& b);

/// d*_A on 1- and 2-forms: d* w + [A -| w], exact adjoint of covariant_d.
ZeroForm covariant_codiff(const ConnectionField& a, const ConnectionField& w);
ConnectionField covariant_codiff(const ConnectionField& a,
                                 const TwoFormField& eta);

/// Interior bracket [v -| eta]_j = -sum_i [v_i, eta_ij]; the sign makes
/// d*_A eta = d* eta + [A -| eta].
ConnectionField contract(const ConnectionField& v, const TwoFormField& eta);

/// g^{-1} dg by centered logarithmic differences, projected onto the algebra
/// and masked. Box faces use a ghost node reflected with the 0-form parity,
/// so the abelian case reproduces the flat d of the logarithm.
ConnectionField pure_gauge(const GaugeField& g);

/// A^g = g^{-1} dg + g^{-1} A g. Dirichlet lattices require g = I on the
/// boundary.
ConnectionField gauge_transform(const ConnectionField& a, const GaugeField& g);

/// Pointwise g^{-1} w g for any form degree.
template <int Degree>
Form<Degree> conjugate(const Form<Degree>& w, const GaugeField& g);

struct FormNorms {
  double l2 = 0.0;
  double l6 = 0.0;
  double linf = 0.0;
  double w1 = 0.0;
  double w1a = 0.0;
};

/// Quadrature norms of a p-form; W1A uses nabla^A_j = d_j + [A_j, .].
template <int Degree>
FormNorms norms(const Form<Degree>& w,
                const ConnectionField* connection = nullptr);

template <int Degree>
double l2_norm(const Form<Degree>& w);
template <int Degree>
double inner(const Form<Degree>& a, const Form<Degree>& b);
template <int Degree>
double linf_norm(const Form<Degree>& w);

/// ||nabla^A w||_2^2 summed over all derivative directions and components.
template <int Degree>
double covariant_gradient_sq(const Form<Degree>& w, const ConnectionField* a);

/// rho_a(g, h) = ||g^{-1}dg - h^{-1}dh||_{H_a} + ||g - h||_{L2(End V)}.
double gauge_distance(const GaugeField& g, const GaugeField& h, double a);

}  // namespace ymflow
