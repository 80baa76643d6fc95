#include "ymflow/heat_flow.hpp"

#include <algorithm>
#include <cmath>

namespace ymflow {

std::string_view to_string(FlowMode m) {
  switch (m) {
    case FlowMode::Direct:
      return "Direct";
    case FlowMode::ZDS:
      return "ZDS";
    case FlowMode::ZDSRecovered:
      return "ZDSRecovered";
  }
  return "?";
}

FlowMode flow_mode_from_string(std::string_view s) {
  if (s == "Direct") return FlowMode::Direct;
  if (s == "ZDS") return FlowMode::ZDS;
  if (s == "ZDSRecovered") return FlowMode::ZDSRecovered;
  throw StructuralError("unknown flow mode '" + std::string(s) + "'");
}

double StepperConfig::max_dt(const Grid& grid) const {
  const double cap = cfl * grid.h * grid.h;
  return dt_init > 0.0 ? std::min(dt_init, cap) : cap;
}

FlowState FlowState::start(ConnectionField a0, FlowMode mode) {
  FlowState s;
  s.mode = mode;
  if (mode == FlowMode::ZDSRecovered) s.g = GaugeField::identity(a0.lattice_ptr());
  s.field = std::move(a0);
  return s;
}

ConnectionField FlowState::connection() const {
  if (mode == FlowMode::ZDSRecovered) return gauge_transform(field, *g);
  return field;
}

ConnectionField ym_rhs(const ConnectionField& a) {
  ConnectionField r = covariant_codiff(a, curvature(a));
  r *= -1.0;
  return r;
}

ConnectionField zds_rhs(const ConnectionField& c) {
  ConnectionField r = ym_rhs(c);
  r -= covariant_d(c, codiff(c));
  return r;
}

ConnectionField flow_rhs(FlowMode mode, const ConnectionField& field) {
  return mode == FlowMode::Direct ? ym_rhs(field) : zds_rhs(field);
}

ConnectionField rk4(FlowMode mode, const ConnectionField& y, double dt) {
  const ConnectionField k1 = flow_rhs(mode, y);
  ConnectionField tmp = y;
  tmp.axpy(0.5 * dt, k1);
  const ConnectionField k2 = flow_rhs(mode, tmp);
  tmp = y;
  tmp.axpy(0.5 * dt, k2);
  const ConnectionField k3 = flow_rhs(mode, tmp);
  tmp = y;
  tmp.axpy(dt, k3);
  const ConnectionField k4 = flow_rhs(mode, tmp);
  ConnectionField out = y;
  out.axpy(dt / 6.0, k1);
  out.axpy(dt / 3.0, k2);
  out.axpy(dt / 3.0, k3);
  out.axpy(dt / 6.0, k4);
  mask(out);
  return out;
}

GaugeField gauge_flow_step(const GaugeField& g, const ZeroForm& xi, double dt) {
  ZeroForm scaled = xi;
  scaled *= dt;
  return GaugeField::exp(scaled) * g;
}

GaugeField gauge_flow_step(const GaugeField& g, const ConnectionField& c0,
                           const ConnectionField& c1, double dt) {
  ZeroForm xi = codiff(c0);
  xi += codiff(c1);
  xi *= 0.5;
  return gauge_flow_step(g, xi, dt);
}

StepReport step(FlowState& state, const StepperConfig& config, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw StepFailure("non-positive time step", state.t, dt, 0);
  }
  StepReport rep;
  const bool check_energy =
      config.energy_backtrack && state.mode == FlowMode::Direct;
  const double e0 = check_energy ? l2_norm(curvature(state.field)) : 0.0;
  ConnectionField next;
  for (;;) {
    next = rk4(state.mode, state.field, dt);
    for (double v : next.data()) {
      if (!std::isfinite(v)) {
        throw StepFailure("non-finite field after step", state.t, dt,
                          rep.halvings);
      }
    }
    if (!check_energy) break;
    const double e1 = l2_norm(curvature(next));
    if (e1 <= e0 * (1.0 + 1e-12)) break;
    if (rep.halvings == 20) {
      throw StepFailure("energy increase persists after 20 halvings", state.t,
                        dt, rep.halvings);
    }
    dt *= 0.5;
    ++rep.halvings;
  }
  if (state.mode == FlowMode::ZDSRecovered) {
    *state.g = gauge_flow_step(*state.g, state.field, next, dt);
    if (config.reproject_every > 0 &&
        (state.steps + 1) % static_cast<std::uint64_t>(config.reproject_every) ==
            0) {
      state.g->reproject();
    }
  }
  state.field = std::move(next);
  state.t += dt;
  ++state.steps;
  state.backtracks += rep.halvings;
  rep.dt = dt;
  return rep;
}

std::vector<double> time_stamps(double t_min, double t_end, double interval) {
  std::vector<double> out;
  if (!(t_end > 0.0)) return out;
  if (t_min > 0.0) {
    for (double t = t_min; t < t_end; t *= 2.0) out.push_back(t);
  }
  if (interval > 0.0) {
    for (long k = 1;; ++k) {
      const double t = k * interval;
      if (t >= t_end * (1.0 - 1e-14)) break;
      out.push_back(t);
    }
  }
  out.push_back(t_end);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void integrate(FlowState& state, const StepperConfig& config,
               const std::vector<double>& stamps,
               const StampCallback& on_stamp,
               const StampCallback& on_step) {
  const double dt_max = config.max_dt(state.field.lattice().grid());
  for (double target : stamps) {
    if (target <= state.t) continue;
    while (state.t < target) {
      const double remaining = target - state.t;
      const bool last = remaining <= dt_max * (1.0 + 1e-12);
      const StepReport r = step(state, config, last ? remaining : dt_max);
      // land exactly on the stamp when the full remainder was taken
      if (last && r.halvings == 0) state.t = target;
      if (remaining - r.dt < 1e-14 * std::max(1.0, target)) state.t = target;
      if (on_step) on_step(state);
    }
    if (on_stamp) on_stamp(state);
  }
}

Trajectory run_trajectory(FlowState state, const StepperConfig& config,
                          const std::vector<double>& stamps) {
  Trajectory tr;
  auto record = [&](const FlowState& s) {
    tr.times.push_back(s.t);
    tr.fields.push_back(s.field);
    if (s.g) tr.gauges.push_back(*s.g);
  };
  record(state);
  integrate(state, config, stamps, record);
  return tr;
}

std::vector<ConnectionField> recover_solution(const Trajectory& c_traj,
                                              const Trajectory& g_traj) {
  if (c_traj.times != g_traj.times || g_traj.gauges.size() != g_traj.size()) {
    throw StructuralError("field and gauge trajectories are not synchronized");
  }
  std::vector<ConnectionField> out;
  out.reserve(c_traj.size());
  for (std::size_t k = 0; k < c_traj.size(); ++k) {
    out.push_back(gauge_transform(c_traj.fields[k], g_traj.gauges[k]));
  }
  return out;
}

std::vector<ConnectionField> recover_solution(const Trajectory& recovered) {
  return recover_solution(recovered, recovered);
}

Trajectory epsilon_family(const Trajectory& c_traj, double eps,
                          const StepperConfig& config) {
  if (c_traj.size() == 0 || !(eps >= c_traj.times.front()) ||
      eps > c_traj.times.back()) {
    throw StructuralError("epsilon outside the trajectory time range");
  }
  std::size_t k = 0;
  while (k + 1 < c_traj.size() && c_traj.times[k + 1] <= eps) ++k;
  FlowState s = FlowState::start(c_traj.fields[k], FlowMode::ZDS);
  s.t = c_traj.times[k];
  integrate(s, config, {eps});
  s.mode = FlowMode::ZDSRecovered;
  s.g = GaugeField::identity(s.field.lattice_ptr());
  std::vector<double> later;
  for (double t : c_traj.times) {
    if (t > eps) later.push_back(t);
  }
  return run_trajectory(std::move(s), config, later);
}

}  // namespace ymflow
