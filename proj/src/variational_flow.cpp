#include "ymflow/variational_flow.hpp"

#include <cmath>

namespace ymflow {

TangentField variational_rhs(const TangentField& v, const ConnectionField& a,
                             const TwoFormField& b) {
  TangentField r = covariant_codiff(a, covariant_d(a, v));
  r += contract(v, b);
  r *= -1.0;
  return r;
}

ConnectionField BaseTrajectory::at(double t) const {
  if (fields.empty() || t < -1e-12 || t > t_end() * (1.0 + 1e-12) + 1e-15) {
    throw StructuralError("time outside the base trajectory");
  }
  const double x = std::max(0.0, t / spacing);
  std::size_t k = static_cast<std::size_t>(std::floor(x + 1e-9));
  if (k >= fields.size() - 1) return fields.back();
  const double f = x - static_cast<double>(k);
  if (std::abs(f) < 1e-9) return fields[k];
  ConnectionField out = fields[k];
  out *= 1.0 - f;
  out.axpy(f, fields[k + 1]);
  return out;
}

BaseTrajectory record_base(const ConnectionField& a0, double t_end, double dt) {
  BaseTrajectory base;
  base.spacing = 0.5 * dt;
  const auto n = static_cast<std::size_t>(std::llround(t_end / base.spacing));
  if (std::abs(n * base.spacing - t_end) > 1e-9 * t_end) {
    throw StructuralError("t_end must be a multiple of dt / 2");
  }
  base.fields.reserve(n + 1);
  base.fields.push_back(a0);
  for (std::size_t k = 0; k < n; ++k) {
    base.fields.push_back(rk4(FlowMode::Direct, base.fields.back(), base.spacing));
  }
  return base;
}

TangentTrajectory integrate_variational(const TangentField& v0,
                                        const BaseTrajectory& base, double dt,
                                        double cfl_max) {
  const Grid& g = v0.lattice().grid();
  if (!(dt > 0.0) || dt > cfl_max * g.h * g.h * (1.0 + 1e-12)) {
    throw StructuralError("variational step violates the CFL limit");
  }
  TangentTrajectory out;
  TangentField v = v0;
  mask(v);
  double t = 0.0;
  out.times.push_back(t);
  out.fields.push_back(v);
  const auto steps = static_cast<std::size_t>(std::llround(base.t_end() / dt));
  auto f = [&](double time, const TangentField& x) {
    const ConnectionField a = base.at(time);
    return variational_rhs(x, a, curvature(a));
  };
  for (std::size_t k = 0; k < steps; ++k) {
    const TangentField k1 = f(t, v);
    TangentField y = v;
    y.axpy(0.5 * dt, k1);
    const TangentField k2 = f(t + 0.5 * dt, y);
    y = v;
    y.axpy(0.5 * dt, k2);
    const TangentField k3 = f(t + 0.5 * dt, y);
    y = v;
    y.axpy(dt, k3);
    const TangentField k4 = f(t + dt, y);
    v.axpy(dt / 6.0, k1);
    v.axpy(dt / 3.0, k2);
    v.axpy(dt / 3.0, k3);
    v.axpy(dt / 6.0, k4);
    mask(v);
    t = (k + 1) * dt;
    out.times.push_back(t);
    out.fields.push_back(v);
  }
  return out;
}

TangentTrajectory vertical_solution(const ZeroForm& alpha,
                                    const BaseTrajectory& base) {
  TangentTrajectory out;
  for (std::size_t k = 0; k < base.fields.size(); ++k) {
    out.times.push_back(k * base.spacing);
    out.fields.push_back(covariant_d(base.fields[k], alpha));
  }
  return out;
}

double vertical_residual(const ZeroForm& alpha, const ConnectionField& a) {
  const ConnectionField ap = ym_rhs(a);
  // d/dt of d_A alpha is the bracket part of d_{A'} alpha
  TangentField dv = covariant_d(ap, alpha);
  dv -= exterior_d(alpha);
  const TangentField v = covariant_d(a, alpha);
  dv -= variational_rhs(v, a, curvature(a));
  return l2_norm(dv);
}

}  // namespace ymflow
