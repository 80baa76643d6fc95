#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ymflow/gauge_fields.hpp"
#include "ymflow/heat_flow.hpp"

namespace ymflow {

struct Loop {
  std::vector<Eigen::Vector3d> vertices;  // first == last
  double subdiv = 0.0;

  static Loop rectangle(const Eigen::Vector3d& corner, int axis_u, double lu,
                        int axis_v, double lv, double subdiv);
  Loop reversed() const;
  void validate(const Grid& grid) const;
};

struct ObservableSeries {
  std::string name;
  std::vector<double> t;
  std::vector<double> value;

  void push(double time, double v);
  double sup() const;
};

/// ||B||_2^2.
double energy(const ConnectionField& a);

/// rho_a at every sample time of a series of ||B(s)||_2^2 starting at s = 0,
/// with s^{-a} integrated exactly against the piecewise-linear interpolant.
ObservableSeries a_action(const ObservableSeries& b_sq, double a);

/// Same panel quadrature for a general weight s^{power} (power > -1).
ObservableSeries weighted_integral(const ObservableSeries& f, double power,
                                   const std::string& name);

/// t^{3/4} ||B(t)||_inf / ||B_0||_2 over the stored times.
ObservableSeries sup_curvature_monitor(const Trajectory& traj);

/// Ordered product of exp(A(mid)<segment>) along the loop.
GroupElement parallel_transport(const ConnectionField& a, const Loop& loop);
std::complex<double> wilson_loop(const ConnectionField& a, const Loop& loop);

struct LongTimeWilsonReport {
  std::vector<double> times;  // doubling sequence
  std::vector<std::vector<double>> increments;  // per loop
  bool monotone = true;  // over the last `tail` increments of every loop
};

/// Cauchy increments of Wilson traces on stored times t0 2^j.
LongTimeWilsonReport long_time_wilson(const Trajectory& traj,
                                      const std::vector<Loop>& loops,
                                      double t0, int tail = 4);

struct GaffneyConstants {
  double lambda_m = 0.0;
  double gamma2 = 0.0;
};

/// ||d_A w||^2 + ||d*_A w||^2 + (lambda_M + gamma2 ||B||^4) ||w||^2
/// - (1/2) ||w||_{W1A}^2; nonnegative when the inequality holds.
double gaffney_residual(const ConnectionField& a, const ConnectionField& w,
                        const GaffneyConstants& k);

/// ||d_A B||_2.
double bianchi_residual(const ConnectionField& a);

/// Face L2 norm of the normal (Marini/Neumann) or tangential (Dirichlet)
/// components of B, extrapolated to the faces from interior nodes.
double marini_residual(const ConnectionField& a);
double dirichlet_b_residual(const ConnectionField& a);

/// Largest excess of the per-interval log rate of ||A1 - A2||^2 over
/// c (||B1||_inf + ||B2||_inf); both series share sample times.
struct GronwallSample {
  double t;
  double gap_sq;
  double sup_b_sum;
};
double gronwall_rate(const GronwallSample& s0, const GronwallSample& s1);
double gronwall_residual(const std::vector<GronwallSample>& samples, double c);

struct SmallTimeSeries {
  ObservableSeries b_sq;          // ||B||^2
  ObservableSeries weighted_b;    // t^{1/2} ||B||^2
  ObservableSeries weighted_da;   // t^{3/2} ||A'||^2
  ObservableSeries weighted_db;   // int_0^t s^{3/2} ||B'||^2 ds
  ObservableSeries action;        // rho_{1/2}
};

/// Accumulates the small-time monitors; feed it every step of a flow.
class SmallTimeMonitor {
 public:
  void sample(const FlowState& state);
  SmallTimeSeries finish() const;

 private:
  ObservableSeries b_sq_{"b_sq", {}, {}};
  ObservableSeries da_sq_{"da_sq", {}, {}};
  ObservableSeries db_sq_{"db_sq", {}, {}};
};

}  // namespace ymflow
