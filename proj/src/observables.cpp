#include "ymflow/observables.hpp"

#include <algorithm>
#include <cmath>

#include "ymflow/discrete_calculus.hpp"

namespace ymflow {

Loop Loop::rectangle(const Eigen::Vector3d& corner, int axis_u, double lu,
                     int axis_v, double lv, double subdiv) {
  Eigen::Vector3d u = Eigen::Vector3d::Zero(), v = Eigen::Vector3d::Zero();
  u[axis_u] = lu;
  v[axis_v] = lv;
  Loop l;
  l.vertices = {corner, corner + u, corner + u + v, corner + v, corner};
  l.subdiv = subdiv;
  return l;
}

Loop Loop::reversed() const {
  Loop l = *this;
  std::reverse(l.vertices.begin(), l.vertices.end());
  return l;
}

void Loop::validate(const Grid& grid) const {
  if (vertices.size() < 2 || (vertices.front() - vertices.back()).norm() > 1e-12) {
    throw StructuralError("loop must be closed");
  }
  if (!(subdiv > 0.0) || subdiv > grid.h * (1.0 + 1e-12)) {
    throw StructuralError("loop subdivision must satisfy 0 < delta <= h");
  }
  if (grid.domain == DomainKind::Box) {
    for (const auto& p : vertices) {
      for (int a = 0; a < 3; ++a) {
        if (p[a] < -1e-12 || p[a] > grid.length(a) + 1e-12) {
          throw StructuralError("loop leaves the domain");
        }
      }
    }
  }
}

void ObservableSeries::push(double time, double v) {
  if (!t.empty() && time <= t.back()) {
    throw StructuralError("series times must increase strictly");
  }
  t.push_back(time);
  value.push_back(v);
}

double ObservableSeries::sup() const {
  double m = 0.0;
  for (double v : value) m = std::max(m, v);
  return m;
}

double energy(const ConnectionField& a) {
  const double b = l2_norm(curvature(a));
  return b * b;
}

ObservableSeries weighted_integral(const ObservableSeries& f, double power,
                                   const std::string& name) {
  if (!(power > -1.0)) throw StructuralError("weight s^p needs p > -1");
  ObservableSeries out{name, {}, {}};
  if (f.t.empty()) return out;
  auto moment = [](double t0, double t1, double q) {
    return (std::pow(t1, q + 1.0) - std::pow(t0, q + 1.0)) / (q + 1.0);
  };
  double acc = 0.0;
  double t_prev = 0.0;
  double f_prev = f.value.front();
  std::size_t k = 0;
  if (f.t.front() > 0.0) {
    // constant extrapolation to s = 0
    acc = f_prev * moment(0.0, f.t.front(), power);
  }
  t_prev = f.t.front();
  out.push(f.t.front(), acc);
  for (k = 1; k < f.t.size(); ++k) {
    const double t1 = f.t[k], f1 = f.value[k];
    const double m = (f1 - f_prev) / (t1 - t_prev);
    acc += (f_prev - m * t_prev) * moment(t_prev, t1, power) +
           m * moment(t_prev, t1, power + 1.0);
    out.push(t1, acc);
    t_prev = t1;
    f_prev = f1;
  }
  return out;
}

ObservableSeries a_action(const ObservableSeries& b_sq, double a) {
  if (!(a >= 0.0 && a < 1.0)) {
    throw StructuralError("a-action requires 0 <= a < 1");
  }
  return weighted_integral(b_sq, -a, "a_action");
}

ObservableSeries sup_curvature_monitor(const Trajectory& traj) {
  ObservableSeries out{"sup_curvature", {}, {}};
  if (traj.size() == 0) return out;
  const double b0 = l2_norm(curvature(traj.fields.front()));
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double t = traj.times[k];
    const double v =
        b0 > 0.0 ? std::pow(t, 0.75) * linf_norm(curvature(traj.fields[k])) / b0
                 : 0.0;
    out.push(t, v);
  }
  return out;
}

GroupElement parallel_transport(const ConnectionField& a, const Loop& loop) {
  const Lattice& l = a.lattice();
  const Grid& grid = l.grid();
  const GroupSpec& grp = l.group();
  loop.validate(grid);
  const int ad = grp.algebra_dim();
  GroupMatrix g = GroupMatrix::Identity(grp.matrix_dim(), grp.matrix_dim());
  std::vector<double> x(ad);
  for (std::size_t seg = 0; seg + 1 < loop.vertices.size(); ++seg) {
    const Eigen::Vector3d p0 = loop.vertices[seg];
    const Eigen::Vector3d delta = loop.vertices[seg + 1] - p0;
    const double len = delta.norm();
    if (len == 0.0) continue;
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / loop.subdiv - 1e-9)));
    const Eigen::Vector3d step = delta / pieces;
    for (int q = 0; q < pieces; ++q) {
      const Eigen::Vector3d mid = p0 + (q + 0.5) * step;
      const std::vector<double> v = interpolate(grid, 3, ad, a.data(), mid);
      for (int k = 0; k < ad; ++k) {
        x[k] = v[0 * ad + k] * step[0] + v[1 * ad + k] * step[1] +
               v[2 * ad + k] * step[2];
      }
      g = (g * expm_matrix(grp, x.data())).eval();
    }
  }
  return project_to_group(grp, g);
}

std::complex<double> wilson_loop(const ConnectionField& a, const Loop& loop) {
  return parallel_transport(a, loop).matrix.trace();
}

LongTimeWilsonReport long_time_wilson(const Trajectory& traj,
                                      const std::vector<Loop>& loops,
                                      double t0, int tail) {
  LongTimeWilsonReport rep;
  std::vector<std::size_t> idx;
  for (double t = t0; !traj.times.empty() && t <= traj.times.back() * (1 + 1e-12);
       t *= 2.0) {
    const auto it = std::min_element(
        traj.times.begin(), traj.times.end(),
        [t](double x, double y) { return std::abs(x - t) < std::abs(y - t); });
    if (std::abs(*it - t) > 1e-9 * std::max(1.0, t)) {
      throw StructuralError("trajectory lacks a doubling time stamp");
    }
    idx.push_back(static_cast<std::size_t>(it - traj.times.begin()));
    rep.times.push_back(*it);
  }
  for (const Loop& loop : loops) {
    std::vector<std::complex<double>> w;
    for (std::size_t k : idx) w.push_back(wilson_loop(traj.fields[k], loop));
    std::vector<double> inc;
    for (std::size_t j = 0; j + 1 < w.size(); ++j) {
      inc.push_back(std::abs(w[j + 1] - w[j]));
    }
    const int n = static_cast<int>(inc.size());
    for (int j = std::max(0, n - tail); j + 1 < n; ++j) {
      if (inc[j + 1] > inc[j]) rep.monotone = false;
    }
    if (n < tail) rep.monotone = false;
    rep.increments.push_back(std::move(inc));
  }
  return rep;
}

double gaffney_residual(const ConnectionField& a, const ConnectionField& w,
                        const GaffneyConstants& k) {
  const double b = l2_norm(curvature(a));
  const double dw = l2_norm(covariant_d(a, w));
  const double dsw = l2_norm(covariant_codiff(a, w));
  const double w2 = inner(w, w);
  const double w1a_sq = covariant_gradient_sq(w, &a) + w2;
  return dw * dw + dsw * dsw + (k.lambda_m + k.gamma2 * std::pow(b, 4)) * w2 -
         0.5 * w1a_sq;
}

double bianchi_residual(const ConnectionField& a) {
  return l2_norm(covariant_d(a, curvature(a)));
}

namespace {

// Face L2 norm of selected 2-form components, each extrapolated to the face
// from the three nearest interior nodes.
double face_residual(const TwoFormField& b, bool normal) {
  const Lattice& l = b.lattice();
  const Grid& g = l.grid();
  if (g.domain == DomainKind::Torus) return 0.0;
  const int ad = l.adim();
  double total = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    const int u = (axis + 1) % 3, v = (axis + 2) % 3;
    const auto wu = axis_weights(g, u), wv = axis_weights(g, v);
    const int n = g.dims[axis];
    for (int c = 0; c < 3; ++c) {
      if ((c != axis) != normal) continue;
      for (int side = 0; side < 2; ++side) {
        for (int i = 0; i < g.dims[u]; ++i) {
          for (int j = 0; j < g.dims[v]; ++j) {
            auto site = [&](int q) {
              std::array<int, 3> cc{};
              cc[axis] = side == 0 ? q : n - 1 - q;
              cc[u] = i;
              cc[v] = j;
              return static_cast<std::size_t>(g.index(cc[0], cc[1], cc[2]));
            };
            double sq = 0.0;
            for (int k = 0; k < ad; ++k) {
              const double e = 3.0 * b.at(c, site(1))[k] -
                               3.0 * b.at(c, site(2))[k] + b.at(c, site(3))[k];
              sq += e * e;
            }
            total += wu[i] * wv[j] * sq;
          }
        }
      }
    }
  }
  return std::sqrt(total);
}

}  // namespace

double marini_residual(const ConnectionField& a) {
  return face_residual(curvature(a), true);
}

double dirichlet_b_residual(const ConnectionField& a) {
  return face_residual(curvature(a), false);
}

double gronwall_rate(const GronwallSample& s0, const GronwallSample& s1) {
  return (std::log(s1.gap_sq) - std::log(s0.gap_sq)) / (s1.t - s0.t);
}

double gronwall_residual(const std::vector<GronwallSample>& samples, double c) {
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
    const double bound =
        c * 0.5 * (samples[k].sup_b_sum + samples[k + 1].sup_b_sum);
    worst = std::max(worst, gronwall_rate(samples[k], samples[k + 1]) - bound);
  }
  return worst;
}

void SmallTimeMonitor::sample(const FlowState& state) {
  const ConnectionField& a = state.field;
  const TwoFormField b = curvature(a);
  ConnectionField da = covariant_codiff(a, b);
  da *= -1.0;
  const double bn = l2_norm(b), dan = l2_norm(da);
  const double dbn = l2_norm(covariant_d(a, da));
  b_sq_.push(state.t, bn * bn);
  da_sq_.push(state.t, dan * dan);
  db_sq_.push(state.t, dbn * dbn);
}

SmallTimeSeries SmallTimeMonitor::finish() const {
  SmallTimeSeries s;
  s.b_sq = b_sq_;
  s.weighted_b = {"t_half_b_sq", b_sq_.t, b_sq_.value};
  s.weighted_da = {"t_three_half_da_sq", da_sq_.t, da_sq_.value};
  for (std::size_t k = 0; k < b_sq_.t.size(); ++k) {
    s.weighted_b.value[k] *= std::sqrt(b_sq_.t[k]);
    s.weighted_da.value[k] *= std::pow(da_sq_.t[k], 1.5);
  }
  s.weighted_db = weighted_integral(db_sq_, 1.5, "int_s_three_half_db_sq");
  s.action = weighted_integral(b_sq_, -0.5, "a_action");
  return s;
}

}  // namespace ymflow
