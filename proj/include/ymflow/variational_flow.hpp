#pragma once

#include <vector>

#include "ymflow/heat_flow.hpp"

namespace ymflow {

/// -(d*_A d_A v + [v -| B]); the linearization of ym_rhs at A.
TangentField variational_rhs(const TangentField& v, const ConnectionField& a,
                             const TwoFormField& b);

/// Direct-flow trajectory on a uniform grid of spacing `spacing`, dense
/// enough for linear interpolation in t.
struct BaseTrajectory {
  double spacing = 0.0;
  std::vector<ConnectionField> fields;  // fields[k] at t = k * spacing

  double t_end() const { return spacing * (fields.size() - 1); }
  ConnectionField at(double t) const;
};

/// Records the direct flow from a0 with steps of dt / 2 up to t_end, so that
/// every RK4 stage time of a step dt is a stored node.
BaseTrajectory record_base(const ConnectionField& a0, double t_end, double dt);

struct TangentTrajectory {
  std::vector<double> times;
  std::vector<TangentField> fields;
};

/// RK4 for v' = variational_rhs(v, A(t), B(t)) with A linearly interpolated.
TangentTrajectory integrate_variational(const TangentField& v0,
                                        const BaseTrajectory& base, double dt,
                                        double cfl_max = 0.25);

/// t -> d_{A(t)} alpha at the stored base times.
TangentTrajectory vertical_solution(const ZeroForm& alpha,
                                    const BaseTrajectory& base);

/// || d/dt (d_A alpha) - variational_rhs(d_A alpha, A, B) ||_2 at A, where
/// d/dt (d_A alpha) = [A', alpha] with A' = ym_rhs(A).
double vertical_residual(const ZeroForm& alpha, const ConnectionField& a);

}  // namespace ymflow
