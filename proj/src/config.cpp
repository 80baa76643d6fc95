#include "ymflow/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

namespace ymflow {

std::string_view to_string(InitialKind k) {
  switch (k) {
    case InitialKind::Zero:
      return "zero";
    case InitialKind::PureGauge:
      return "pure_gauge";
    case InitialKind::U1Mode:
      return "u1_mode";
    case InitialKind::HaSample:
      return "ha_sample";
    case InitialKind::Smooth:
      return "smooth";
    case InitialKind::Checkpoint:
      return "checkpoint";
  }
  return "?";
}

InitialKind initial_kind_from_string(std::string_view s) {
  for (InitialKind k : {InitialKind::Zero, InitialKind::PureGauge,
                        InitialKind::U1Mode, InitialKind::HaSample,
                        InitialKind::Smooth, InitialKind::Checkpoint}) {
    if (to_string(k) == s) return k;
  }
  throw StructuralError("unknown initial data kind '" + std::string(s) + "'");
}

bool ObservableConfig::has(std::string_view name) const {
  return std::find(enabled.begin(), enabled.end(), name) != enabled.end();
}

bool RunConfig::operator==(const RunConfig& o) const {
  return dims == o.dims && h == o.h && domain == o.domain && group == o.group &&
         bc == o.bc && mode == o.mode && initial == o.initial &&
         stepper.dt_init == o.stepper.dt_init && stepper.cfl == o.stepper.cfl &&
         stepper.t_end == o.stepper.t_end &&
         stepper.energy_backtrack == o.stepper.energy_backtrack &&
         stepper.reproject_every == o.stepper.reproject_every &&
         observables == o.observables && output == o.output;
}

std::vector<double> RunConfig::stamps() const {
  const double every =
      output.series_every > 0.0 ? output.series_every : stepper.t_end / 10.0;
  return time_stamps(observables.t_min, stepper.t_end, every);
}

namespace {

const std::vector<std::string> kKnownObservables = {
    "energy", "a_action", "sup_curvature", "wilson",
    "small_time", "residuals", "oracle", "epsilon"};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

template <class T>
bool parse_number(const std::string& s, T& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto r = std::from_chars(b, e, out);
  return r.ec == std::errc() && r.ptr == e;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Reader {
 public:
  Reader(std::map<std::string, std::pair<std::string, int>> kv,
         std::vector<std::string>& errors)
      : kv_(std::move(kv)), errors_(errors) {}

  bool get(const std::string& key, std::string& value) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return false;
    value = it->second.first;
    used_.push_back(key);
    return true;
  }

  template <class T>
  void number(const std::string& key, T& out) {
    std::string v;
    if (!get(key, v)) return;
    if (!parse_number(v, out)) bad(key, v, "a number");
  }

  template <class T, std::size_t N>
  void numbers(const std::string& key, std::array<T, N>& out) {
    std::string v;
    if (!get(key, v)) return;
    const auto w = words(v);
    if (w.size() != N) return bad(key, v, std::to_string(N) + " numbers");
    for (std::size_t i = 0; i < N; ++i) {
      if (!parse_number(w[i], out[i])) return bad(key, v, "numbers");
    }
  }

  void list(const std::string& key, std::vector<double>& out) {
    std::string v;
    if (!get(key, v)) return;
    out.clear();
    for (const auto& w : words(v)) {
      double x;
      if (!parse_number(w, x)) return bad(key, v, "a list of numbers");
      out.push_back(x);
    }
  }

  void boolean(const std::string& key, bool& out) {
    std::string v;
    if (!get(key, v)) return;
    if (v == "true") {
      out = true;
    } else if (v == "false") {
      out = false;
    } else {
      bad(key, v, "true or false");
    }
  }

  template <class E, class F>
  void enumeration(const std::string& key, E& out, F parse) {
    std::string v;
    if (!get(key, v)) return;
    try {
      out = parse(v);
    } catch (const std::exception& e) {
      errors_.push_back(key + ": " + e.what());
    }
  }

  void unknown_keys() {
    for (const auto& [k, v] : kv_) {
      if (std::find(used_.begin(), used_.end(), k) == used_.end()) {
        errors_.push_back(k + " (line " + std::to_string(v.second) +
                          "): unknown key");
      }
    }
  }

 private:
  void bad(const std::string& key, const std::string& v, const std::string& want) {
    errors_.push_back(key + ": expected " + want + ", got '" + v + "'");
  }

  std::map<std::string, std::pair<std::string, int>> kv_;
  std::vector<std::string>& errors_;
  std::vector<std::string> used_;
};

}  // namespace

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> e;
  for (int a = 0; a < 3; ++a) {
    if (c.dims[a] < 4) e.push_back("grid.dims: every axis needs at least 4 nodes");
  }
  if (static_cast<std::size_t>(c.dims[0]) * c.dims[1] * c.dims[2] >
      kDefaultMaxSites) {
    e.push_back("grid.dims: exceeds the site cap");
  }
  if (!(c.h > 0.0)) e.push_back("grid.h: must be positive");
  const bool torus = c.domain == DomainKind::Torus;
  if (torus != (c.bc == BoundaryKind::Periodic)) {
    e.push_back("bc = " + std::string(to_string(c.bc)) +
                " is incompatible with grid.domain = " +
                std::string(to_string(c.domain)));
  }
  const InitialData& in = c.initial;
  if ((in.kind == InitialKind::U1Mode || in.kind == InitialKind::HaSample) &&
      c.group != GroupId::U1) {
    e.push_back("initial.kind = " + std::string(to_string(in.kind)) +
                " requires group = U1");
  }
  if (in.kind == InitialKind::HaSample && c.mode == FlowMode::Direct) {
    e.push_back(
        "mode = Direct is not allowed with initial.kind = ha_sample (rough "
        "data must use ZDS or ZDSRecovered)");
  }
  if (in.kind == InitialKind::HaSample && !(in.a >= 0.5 && in.a <= 1.0)) {
    e.push_back("initial.a: must lie in [0.5, 1]");
  }
  if (in.kind == InitialKind::Checkpoint && in.path.empty()) {
    e.push_back("initial.path: required for initial.kind = checkpoint");
  }
  if (in.kind == InitialKind::U1Mode && (in.component < 0 || in.component > 2)) {
    e.push_back("initial.component: must be 0, 1 or 2");
  }
  if (in.amplitude < 0.0 || !std::isfinite(in.amplitude)) {
    e.push_back("initial.amplitude: must be finite and nonnegative");
  }
  if (in.max_mode < 0) e.push_back("initial.max_mode: must be nonnegative");
  const StepperConfig& s = c.stepper;
  if (!(s.cfl > 0.0 && s.cfl <= 0.25)) e.push_back("stepper.cfl: must lie in (0, 0.25]");
  if (!(s.t_end > 0.0)) e.push_back("stepper.t_end: must be positive");
  if (s.dt_init < 0.0) e.push_back("stepper.dt_init: must be nonnegative");
  if (s.reproject_every < 1) e.push_back("stepper.reproject_every: must be >= 1");
  const ObservableConfig& o = c.observables;
  for (const auto& name : o.enabled) {
    if (std::find(kKnownObservables.begin(), kKnownObservables.end(), name) ==
        kKnownObservables.end()) {
      e.push_back("observables: unknown observable '" + name + "'");
    }
  }
  if (!(o.a >= 0.0 && o.a < 1.0)) e.push_back("observables.a: must lie in [0, 1)");
  if (o.has("wilson") && o.loops.empty()) {
    e.push_back("observables.loops: required when wilson is enabled");
  }
  if (o.has("oracle")) {
    if (c.group != GroupId::U1) e.push_back("observables: oracle requires group = U1");
    if (c.mode == FlowMode::Direct && torus == false) {
      e.push_back("observables: the Direct-mode oracle requires grid.domain = Torus");
    }
  }
  if (o.has("epsilon") && c.mode == FlowMode::Direct) {
    e.push_back("observables: epsilon family requires a ZDS mode");
  }
  for (double eps : o.epsilons) {
    if (!(eps > 0.0 && eps <= s.t_end)) {
      e.push_back("observables.epsilons: values must lie in (0, t_end]");
    }
  }
  if (!(o.t_min >= 0.0)) e.push_back("observables.t_min: must be nonnegative");
  if (c.output.dir.empty()) e.push_back("output.dir: must not be empty");
  if (c.output.series_format != "csv") e.push_back("output.series_format: only csv is supported");
  if (c.output.checkpoint_every < 0) e.push_back("output.checkpoint_every: must be >= 0");
  if (c.output.series_every < 0.0) e.push_back("output.series_every: must be >= 0");
  return e;
}

RunConfig parse_config(const std::string& text) {
  std::vector<std::string> errors;
  std::map<std::string, std::pair<std::string, int>> kv;
  std::istringstream in(text);
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    if (kv.count(key)) {
      errors.push_back(key + " (line " + std::to_string(lineno) + "): duplicate key");
    }
    kv[key] = {trim(line.substr(eq + 1)), lineno};
  }

  RunConfig c;
  Reader r(std::move(kv), errors);
  r.numbers("grid.dims", c.dims);
  r.number("grid.h", c.h);
  r.enumeration("grid.domain", c.domain, domain_kind_from_string);
  r.enumeration("group", c.group, group_id_from_string);
  r.enumeration("bc", c.bc, boundary_kind_from_string);
  r.enumeration("mode", c.mode, flow_mode_from_string);
  r.enumeration("initial.kind", c.initial.kind, initial_kind_from_string);
  r.number("initial.seed", c.initial.seed);
  r.number("initial.amplitude", c.initial.amplitude);
  r.number("initial.a", c.initial.a);
  r.numbers("initial.mode", c.initial.mode);
  r.number("initial.component", c.initial.component);
  r.number("initial.max_mode", c.initial.max_mode);
  r.get("initial.path", c.initial.path);
  r.number("stepper.dt_init", c.stepper.dt_init);
  r.number("stepper.cfl", c.stepper.cfl);
  r.number("stepper.t_end", c.stepper.t_end);
  r.boolean("stepper.energy_backtrack", c.stepper.energy_backtrack);
  r.number("stepper.reproject_every", c.stepper.reproject_every);
  std::string obs;
  if (r.get("observables", obs)) c.observables.enabled = words(obs);
  r.number("observables.a", c.observables.a);
  r.get("observables.loops", c.observables.loops);
  r.list("observables.epsilons", c.observables.epsilons);
  r.number("observables.oracle_tol", c.observables.oracle_tol);
  r.number("observables.t_min", c.observables.t_min);
  r.get("output.dir", c.output.dir);
  r.number("output.checkpoint_every", c.output.checkpoint_every);
  r.get("output.series_format", c.output.series_format);
  r.number("output.series_every", c.output.series_every);
  r.unknown_keys();

  for (auto& e : validate(c)) errors.push_back(std::move(e));
  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  return c;
}

std::string emit_config(const RunConfig& c) {
  std::ostringstream o;
  o << "grid.dims = " << c.dims[0] << ' ' << c.dims[1] << ' ' << c.dims[2] << '\n'
    << "grid.h = " << fmt(c.h) << '\n'
    << "grid.domain = " << to_string(c.domain) << '\n'
    << "group = " << to_string(c.group) << '\n'
    << "bc = " << to_string(c.bc) << '\n'
    << "mode = " << to_string(c.mode) << '\n'
    << "initial.kind = " << to_string(c.initial.kind) << '\n'
    << "initial.seed = " << c.initial.seed << '\n'
    << "initial.amplitude = " << fmt(c.initial.amplitude) << '\n'
    << "initial.a = " << fmt(c.initial.a) << '\n'
    << "initial.mode = " << c.initial.mode[0] << ' ' << c.initial.mode[1] << ' '
    << c.initial.mode[2] << '\n'
    << "initial.component = " << c.initial.component << '\n'
    << "initial.max_mode = " << c.initial.max_mode << '\n';
  if (!c.initial.path.empty()) o << "initial.path = " << c.initial.path << '\n';
  o << "stepper.dt_init = " << fmt(c.stepper.dt_init) << '\n'
    << "stepper.cfl = " << fmt(c.stepper.cfl) << '\n'
    << "stepper.t_end = " << fmt(c.stepper.t_end) << '\n'
    << "stepper.energy_backtrack = "
    << (c.stepper.energy_backtrack ? "true" : "false") << '\n'
    << "stepper.reproject_every = " << c.stepper.reproject_every << '\n';
  o << "observables =";
  for (const auto& n : c.observables.enabled) o << ' ' << n;
  o << '\n' << "observables.a = " << fmt(c.observables.a) << '\n';
  if (!c.observables.loops.empty()) o << "observables.loops = " << c.observables.loops << '\n';
  if (!c.observables.epsilons.empty()) {
    o << "observables.epsilons =";
    for (double e : c.observables.epsilons) o << ' ' << fmt(e);
    o << '\n';
  }
  o << "observables.oracle_tol = " << fmt(c.observables.oracle_tol) << '\n'
    << "observables.t_min = " << fmt(c.observables.t_min) << '\n'
    << "output.dir = " << c.output.dir << '\n'
    << "output.checkpoint_every = " << c.output.checkpoint_every << '\n'
    << "output.series_format = " << c.output.series_format << '\n'
    << "output.series_every = " << fmt(c.output.series_every) << '\n';
  return o.str();
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace ymflow
