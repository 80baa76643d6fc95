#include "ymflow/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "ymflow/abelian_oracle.hpp"
#include "ymflow/initial_data.hpp"
#include "ymflow/variational_flow.hpp"

namespace ymflow {

namespace fs = std::filesystem;

std::string Verdict::line() const {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s %s %.6e %.6e", pass ? "PASS" : "FAIL",
                name.c_str(), value, tol);
  return buf;
}

bool RunReport::ok() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const Verdict& v) { return v.pass; });
}

ConnectionField build_initial(const RunConfig& cfg, const LatticePtr& lattice) {
  const InitialData& in = cfg.initial;
  switch (in.kind) {
    case InitialKind::Zero:
      return ConnectionField(lattice);
    case InitialKind::PureGauge:
      return pure_gauge(smooth_gauge(lattice, in.amplitude, in.seed, in.max_mode));
    case InitialKind::U1Mode:
      return u1_mode(lattice, in.mode, in.component, in.amplitude);
    case InitialKind::HaSample:
      return sample_ha_data(lattice, in.a, in.amplitude, in.seed);
    case InitialKind::Smooth:
      return smooth_connection(lattice, in.amplitude, in.seed, in.max_mode);
    case InitialKind::Checkpoint: {
      Checkpoint ck = read_checkpoint(in.path);
      if (!ck.state.field.lattice().same_as(*lattice)) {
        throw ConfigError("initial.path: checkpoint lattice differs from the config");
      }
      return ck.state.connection();
    }
  }
  throw StructuralError("unhandled initial data kind");
}

namespace {

// Raw series are continued across resume; derived ones are rebuilt at the end.
class Session {
 public:
  Session(RunConfig cfg, bool fresh) : cfg_(std::move(cfg)) {
    if (cfg_.output.series_every <= 0.0) {
      cfg_.output.series_every = cfg_.stepper.t_end / 10.0;
    }
    text_ = emit_config(cfg_);
    hash_ = fnv1a(text_);
    lattice_ = Lattice::make(cfg_.grid(), cfg_.bc, cfg_.group);
    a0_ = build_initial(cfg_, lattice_);
    if (cfg_.observables.has("wilson")) loops_ = read_loops(cfg_.observables.loops);
    dir_ = cfg_.output.dir;
    fs::create_directories(dir_);
    if (!fresh) load_raw_series();
  }

  const RunConfig& config() const { return cfg_; }
  const std::string& text() const { return text_; }
  std::uint64_t hash() const { return hash_; }
  const ConnectionField& a0() const { return a0_; }

  void set_t_end(double t) { cfg_.stepper.t_end = t; }

  void truncate_after(double t) {
    for (auto& [name, s] : raw_) {
      std::size_t keep = 0;
      while (keep < s.t.size() && s.t[keep] <= t) ++keep;
      s.t.resize(keep);
      s.value.resize(keep);
    }
  }

  void record_stamp(const FlowState& st) {
    const ConnectionField a = st.connection();
    const TwoFormField b = curvature(a);
    const double bn = l2_norm(b);
    push("energy", st.t, bn * bn);
    push("b_linf", st.t, linf_norm(b));
    const auto& obs = cfg_.observables;
    if (obs.has("wilson")) {
      for (std::size_t k = 0; k < loops_.size(); ++k) {
        const auto w = wilson_loop(a, loops_[k]);
        push("wilson_" + std::to_string(k) + "_re", st.t, w.real());
        push("wilson_" + std::to_string(k) + "_im", st.t, w.imag());
      }
    }
    if (obs.has("residuals")) {
      push("bianchi", st.t, bianchi_residual(a));
      push("marini", st.t, marini_residual(a));
      push("dirichlet_b", st.t, dirichlet_b_residual(a));
    }
    if (obs.has("oracle")) {
      const ConnectionField ex = cfg_.mode == FlowMode::Direct
                                     ? u1_direct_solution(a0_, st.t)
                                     : u1_zds_solution(a0_, st.t);
      const double n = l2_norm(ex);
      push("oracle_rel_error", st.t, n > 0.0 ? l2_norm(st.field - ex) / n : l2_norm(st.field));
    }
    if (st.g) push("gauge_unitarity", st.t, st.g->max_unitarity_residual());
  }

  void record_step(const FlowState& st) {
    const auto& obs = cfg_.observables;
    if (!obs.has("small_time") && !obs.has("a_action")) return;
    const ConnectionField& a = st.field;
    const TwoFormField b = curvature(a);
    ConnectionField da = covariant_codiff(a, b);
    da *= -1.0;
    const double bn = l2_norm(b), dan = l2_norm(da);
    const double dbn = l2_norm(covariant_d(a, da));
    push("step_b_sq", st.t, bn * bn);
    push("step_da_sq", st.t, dan * dan);
    push("step_db_sq", st.t, dbn * dbn);
  }

  void advance(FlowState& st, std::size_t* stamp_counter) {
    const std::vector<double> stamps = cfg_.stamps();
    std::size_t idx = 0;
    while (idx < stamps.size() && stamps[idx] <= st.t) ++idx;
    const int every = cfg_.output.checkpoint_every;
    integrate(
        st, cfg_.stepper, stamps,
        [&](const FlowState& s) {
          record_stamp(s);
          if (every > 0 && (idx + 1) % static_cast<std::size_t>(every) == 0) {
            char name[64];
            std::snprintf(name, sizeof name, "checkpoint_%04zu.bin", idx);
            save(s, dir_ / name);
          }
          ++idx;
        },
        [&](const FlowState& s) { record_step(s); });
    if (stamp_counter) *stamp_counter = idx;
  }

  void save(const FlowState& st, const fs::path& path) const {
    Checkpoint ck;
    ck.config_text = text_;
    ck.config_hash = hash_;
    ck.kind = FieldKind::Connection;
    ck.dt = cfg_.stepper.max_dt(lattice_->grid());
    ck.state = st;
    write_checkpoint(path, ck);
  }

  RunReport finish(const FlowState& st) {
    save(st, dir_ / "final.bin");
    RunReport rep;
    rep.dir = dir_;
    rep.final_state = st;
    rep.series = raw_;
    derive(rep.series);
    for (const auto& [name, s] : rep.series) write_series(dir_ / (name + ".csv"), s);

    auto verdict = [&](std::string name, bool pass, double value, double tol) {
      rep.verdicts.push_back({std::move(name), pass, value, tol});
    };
    bool finite = true;
    for (const auto& [name, s] : rep.series)
      for (double v : s.value) finite = finite && std::isfinite(v);
    verdict("finite_series", finite, finite ? 0.0 : 1.0, 0.0);
    if (cfg_.mode == FlowMode::Direct) {
      const auto& e = rep.series.at("energy").value;
      double worst = 0.0;
      for (std::size_t k = 1; k < e.size(); ++k) {
        const double b0 = std::sqrt(e[k - 1]), b1 = std::sqrt(e[k]);
        if (b0 > 0.0) worst = std::max(worst, (b1 - b0) / b0);
      }
      verdict("energy_monotone", worst <= 1e-8, worst, 1e-8);
    }
    if (cfg_.observables.has("oracle")) {
      const double m = rep.series.at("oracle_rel_error").sup();
      verdict("oracle_rel_error", m <= cfg_.observables.oracle_tol, m,
              cfg_.observables.oracle_tol);
    }
    if (st.g) {
      const double m = rep.series.at("gauge_unitarity").sup();
      verdict("gauge_unitarity", m <= 1e-10, m, 1e-10);
    }
    std::ofstream out(dir_ / "report.txt");
    for (const auto& v : rep.verdicts) out << v.line() << '\n';
    return rep;
  }

 private:
  void push(const std::string& name, double t, double v) {
    auto& s = raw_[name];
    s.name = name;
    s.push(t, v);
  }

  void load_raw_series() {
    for (const char* name : {"energy", "b_linf", "bianchi", "marini", "dirichlet_b",
                             "oracle_rel_error", "gauge_unitarity", "step_b_sq",
                             "step_da_sq", "step_db_sq"}) {
      const fs::path p = dir_ / (std::string(name) + ".csv");
      if (fs::exists(p)) raw_[name] = read_series(p);
    }
    for (std::size_t k = 0; k < loops_.size(); ++k) {
      for (const char* part : {"_re", "_im"}) {
        const std::string name = "wilson_" + std::to_string(k) + part;
        const fs::path p = dir_ / (name + ".csv");
        if (fs::exists(p)) raw_[name] = read_series(p);
      }
    }
  }

  void derive(std::map<std::string, ObservableSeries>& out) const {
    const auto& obs = cfg_.observables;
    if (obs.has("sup_curvature")) {
      const auto& e = raw_.at("energy");
      const auto& linf = raw_.at("b_linf");
      const double b0 = std::sqrt(e.value.front());
      ObservableSeries s{"sup_curvature", {}, {}};
      for (std::size_t k = 0; k < linf.t.size(); ++k) {
        s.push(linf.t[k],
               b0 > 0.0 ? std::pow(linf.t[k], 0.75) * linf.value[k] / b0 : 0.0);
      }
      out["sup_curvature"] = s;
    }
    if (obs.has("a_action")) {
      auto s = a_action(raw_.at("step_b_sq"), obs.a);
      out["a_action"] = s;
    }
    if (obs.has("small_time")) {
      const auto& b = raw_.at("step_b_sq");
      const auto& da = raw_.at("step_da_sq");
      ObservableSeries wb{"t_half_b_sq", b.t, b.value};
      ObservableSeries wa{"t_three_half_da_sq", da.t, da.value};
      for (std::size_t k = 0; k < b.t.size(); ++k) {
        wb.value[k] *= std::sqrt(b.t[k]);
        wa.value[k] *= std::pow(da.t[k], 1.5);
      }
      out[wb.name] = wb;
      out[wa.name] = wa;
      out["int_s_three_half_db_sq"] =
          weighted_integral(raw_.at("step_db_sq"), 1.5, "int_s_three_half_db_sq");
      out["rho_half"] = weighted_integral(b, -0.5, "rho_half");
    }
    if (obs.has("epsilon") && !obs.epsilons.empty()) {
      FlowState s0 = FlowState::start(a0_, FlowMode::ZDS);
      const Trajectory tr = run_trajectory(s0, cfg_.stepper, cfg_.stamps());
      std::vector<double> eps = obs.epsilons;
      std::sort(eps.begin(), eps.end());
      std::vector<ConnectionField> finals;
      for (double e : eps) {
        const Trajectory fam = epsilon_family(tr, e, cfg_.stepper);
        finals.push_back(fam.size() > 0 ? recover_solution(fam).back()
                                        : tr.fields.back());
      }
      ObservableSeries s{"epsilon_cauchy", {}, {}};
      for (std::size_t k = 0; k + 1 < eps.size(); ++k) {
        s.push(eps[k], l2_norm(finals[k] - finals[k + 1]));
      }
      out["epsilon_cauchy"] = s;
    }
  }

  RunConfig cfg_;
  std::string text_;
  std::uint64_t hash_ = 0;
  LatticePtr lattice_;
  ConnectionField a0_;
  std::vector<Loop> loops_;
  fs::path dir_;
  std::map<std::string, ObservableSeries> raw_;
};

}  // namespace

RunReport run(const RunConfig& cfg) {
  Session session(cfg, true);
  FlowState st = FlowState::start(session.a0(), session.config().mode);
  session.record_stamp(st);
  session.record_step(st);
  session.advance(st, nullptr);
  return session.finish(st);
}

RunReport resume(const fs::path& checkpoint, double until, bool force,
                 const std::optional<std::string>& config_text) {
  Checkpoint ck = read_checkpoint(checkpoint);
  if (fnv1a(ck.config_text) != ck.config_hash) {
    throw IoError(checkpoint.string() + ": embedded config does not match its hash");
  }
  if (config_text && !force) {
    const RunConfig given = parse_config(*config_text);
    RunConfig resolved = given;
    if (resolved.output.series_every <= 0.0) {
      resolved.output.series_every = resolved.stepper.t_end / 10.0;
    }
    if (fnv1a(emit_config(resolved)) != ck.config_hash) {
      throw ConfigError(
          "config hash differs from the checkpoint (use --force to override)");
    }
  }
  RunConfig cfg = parse_config(config_text && force ? *config_text : ck.config_text);
  if (!(until > ck.state.t)) {
    throw ConfigError("--until must exceed the checkpoint time");
  }
  cfg.stepper.t_end = until;
  Session session(cfg, false);
  session.truncate_after(ck.state.t);
  FlowState st = std::move(ck.state);
  session.advance(st, nullptr);
  return session.finish(st);
}

std::vector<std::complex<double>> wilson_from_checkpoint(
    const fs::path& checkpoint, const std::vector<Loop>& loops) {
  const Checkpoint ck = read_checkpoint(checkpoint);
  const ConnectionField a = ck.state.connection();
  std::vector<std::complex<double>> out;
  for (const auto& l : loops) out.push_back(wilson_loop(a, l));
  return out;
}

RunReport compare_oracle(RunConfig cfg) {
  if (!cfg.observables.has("oracle")) cfg.observables.enabled.push_back("oracle");
  const auto errors = validate(cfg);
  if (!errors.empty()) throw ConfigError(errors.front());
  return run(cfg);
}

VariationalReport run_variational(const RunConfig& cfg, const std::string& v0) {
  const LatticePtr lat = Lattice::make(cfg.grid(), cfg.bc, cfg.group);
  const ConnectionField a0 = build_initial(cfg, lat);
  const double dt_max = cfg.stepper.max_dt(lat->grid());
  const auto steps = static_cast<std::size_t>(std::ceil(cfg.stepper.t_end / dt_max - 1e-9));
  const double dt = cfg.stepper.t_end / static_cast<double>(steps);

  std::string kind = v0;
  std::uint64_t seed = 1;
  double scale = 1.0;
  {
    const auto c1 = v0.find(':');
    if (c1 == std::string::npos) throw ConfigError("--v0: expected kind:seed[:scale]");
    kind = v0.substr(0, c1);
    const auto c2 = v0.find(':', c1 + 1);
    try {
      seed = std::stoull(v0.substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1));
      if (c2 != std::string::npos) scale = std::stod(v0.substr(c2 + 1));
    } catch (const std::exception&) {
      throw ConfigError("--v0: malformed seed or scale in '" + v0 + "'");
    }
  }
  TangentField v(lat);
  std::optional<ZeroForm> alpha;
  if (kind == "random") {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    for (double& x : v.data()) x = nd(rng);
    mask(v);
    v *= scale / l2_norm(v);
  } else if (kind == "smooth") {
    v = smooth_connection(lat, scale, seed);
  } else if (kind == "vertical") {
    alpha = smooth_zero_form(lat, scale, seed);
    v = covariant_d(a0, *alpha);
  } else {
    throw ConfigError("--v0: unknown kind '" + kind + "'");
  }

  const BaseTrajectory base = record_base(a0, cfg.stepper.t_end, dt);
  const TangentTrajectory tt = integrate_variational(v, base, dt);
  VariationalReport rep;
  rep.tangent_norm.name = "tangent_l2";
  for (std::size_t k = 0; k < tt.times.size(); ++k) {
    rep.tangent_norm.push(tt.times[k], l2_norm(tt.fields[k]));
  }
  if (alpha) {
    rep.vertical_residual.name = "vertical_residual";
    for (std::size_t k = 0; k < base.fields.size(); k += 2) {
      rep.vertical_residual.push(k * base.spacing, vertical_residual(*alpha, base.fields[k]));
    }
  }
  const fs::path dir = cfg.output.dir;
  fs::create_directories(dir);
  write_series(dir / "tangent_l2.csv", rep.tangent_norm);
  if (alpha) write_series(dir / "vertical_residual.csv", rep.vertical_residual);
  Checkpoint ck;
  ck.config_text = emit_config(cfg);
  ck.config_hash = fnv1a(ck.config_text);
  ck.kind = FieldKind::Tangent;
  ck.dt = dt;
  ck.state.t = tt.times.back();
  ck.state.mode = FlowMode::Direct;
  ck.state.steps = tt.times.size() - 1;
  ck.state.field = tt.fields.back();
  rep.checkpoint = dir / "tangent_final.bin";
  write_checkpoint(rep.checkpoint, ck);
  return rep;
}

AggregateReport aggregate(const fs::path& dir) {
  AggregateReport rep;
  if (!fs::is_directory(dir)) return rep;
  std::vector<fs::path> csvs, reports;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    if (e.path().extension() == ".csv") csvs.push_back(e.path());
    if (e.path().filename() == "report.txt") reports.push_back(e.path());
  }
  std::sort(csvs.begin(), csvs.end());
  std::sort(reports.begin(), reports.end());
  bool all_pass = true;
  for (const auto& r : reports) {
    std::ifstream in(r);
    for (std::string line; std::getline(in, line);) {
      if (line.rfind("PASS", 0) == 0 || line.rfind("FAIL", 0) == 0) {
        rep.verdict_lines.push_back(line);
        if (line.rfind("FAIL", 0) == 0) all_pass = false;
      }
    }
  }
  for (const auto& c : csvs) {
    const ObservableSeries s = read_series(c);
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s samples=%zu last_t=%.6e last=%.6e",
                  fs::relative(c, dir).string().c_str(), s.t.size(),
                  s.t.empty() ? 0.0 : s.t.back(),
                  s.value.empty() ? 0.0 : s.value.back());
    rep.series_lines.push_back(buf);
  }
  rep.ok = !csvs.empty() && all_pass;
  return rep;
}

}  // namespace ymflow
