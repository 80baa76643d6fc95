#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ymflow/gauge_fields.hpp"

namespace ymflow {

enum class FlowMode { Direct, ZDS, ZDSRecovered };

std::string_view to_string(FlowMode m);
FlowMode flow_mode_from_string(std::string_view s);

struct StepperConfig {
  double dt_init = 0.0;  // 0 means cfl * h^2
  double cfl = 0.1;
  double t_end = 0.0;
  bool energy_backtrack = true;
  int reproject_every = 16;

  /// Largest admissible step on `grid`.
  double max_dt(const Grid& grid) const;
};

struct FlowState {
  double t = 0.0;
  ConnectionField field;  // A in Direct mode, C otherwise
  std::optional<GaugeField> g;
  FlowMode mode = FlowMode::ZDS;
  std::uint64_t steps = 0;
  std::uint64_t backtracks = 0;

  static FlowState start(ConnectionField a0, FlowMode mode);
  /// A(t): the field itself, or C^g in recovered mode.
  ConnectionField connection() const;
};

class StepFailure : public NumericError {
 public:
  StepFailure(const std::string& what, double t, double dt, int halvings)
      : NumericError(what), t(t), dt(dt), halvings(halvings) {}
  double t;
  double dt;
  int halvings;
};

/// -d*_A B.
ConnectionField ym_rhs(const ConnectionField& a);
/// -d*_C B_C - d_C d* C.
ConnectionField zds_rhs(const ConnectionField& c);
ConnectionField flow_rhs(FlowMode mode, const ConnectionField& field);

/// One classical RK4 step of the field equation.
ConnectionField rk4(FlowMode mode, const ConnectionField& field, double dt);

/// g <- exp(dt xi) g.
GaugeField gauge_flow_step(const GaugeField& g, const ZeroForm& xi, double dt);
/// Midpoint update with xi = (d*C_n + d*C_{n+1}) / 2.
GaugeField gauge_flow_step(const GaugeField& g, const ConnectionField& c0,
                           const ConnectionField& c1, double dt);

struct StepReport {
  double dt = 0.0;
  int halvings = 0;
};

/// Advances by dt (or less after energy backtracking in Direct mode).
StepReport step(FlowState& state, const StepperConfig& config, double dt);

/// Sorted event times in (0, t_end]: t_min 2^k, multiples of `interval`, t_end.
std::vector<double> time_stamps(double t_min, double t_end, double interval);

using StampCallback = std::function<void(const FlowState&)>;

/// Steps to each stamp in turn (dt clipped to land exactly on stamps) and
/// calls `on_stamp` after reaching each one, `on_step` after every step.
/// Stamps <= state.t are skipped.
void integrate(FlowState& state, const StepperConfig& config,
               const std::vector<double>& stamps,
               const StampCallback& on_stamp = {},
               const StampCallback& on_step = {});

struct Trajectory {
  std::vector<double> times;
  std::vector<ConnectionField> fields;
  std::vector<GaugeField> gauges;  // empty unless recovered mode

  std::size_t size() const { return times.size(); }
};

/// Runs the flow and stores the field at t0 and at every stamp.
Trajectory run_trajectory(FlowState state, const StepperConfig& config,
                          const std::vector<double>& stamps);

/// A(t) = C(t)^{g(t)} at every stored time.
std::vector<ConnectionField> recover_solution(const Trajectory& c_traj,
                                              const Trajectory& g_traj);
std::vector<ConnectionField> recover_solution(const Trajectory& recovered);

/// Gauge flow started from the identity at t = eps, evaluated at the stored
/// times >= eps of a ZDS trajectory.
Trajectory epsilon_family(const Trajectory& c_traj, double eps,
                          const StepperConfig& config);

}  // namespace ymflow
