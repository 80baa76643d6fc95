#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ymflow/checkpoint.hpp"
#include "ymflow/config.hpp"

namespace ymflow {

struct Verdict {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double tol = 0.0;

  std::string line() const;
};

struct RunReport {
  std::filesystem::path dir;
  std::vector<Verdict> verdicts;
  std::map<std::string, ObservableSeries> series;
  FlowState final_state;

  bool ok() const;
};

/// Initial connection described by the config (checkpoint data included).
ConnectionField build_initial(const RunConfig& cfg, const LatticePtr& lattice);

/// Runs the full pipeline and writes series, checkpoints and report.txt into
/// cfg.output.dir.
RunReport run(const RunConfig& cfg);

/// Continues from a checkpoint to `until`. A supplied config must hash to the
/// checkpoint's config unless `force` is set.
RunReport resume(const std::filesystem::path& checkpoint, double until,
                 bool force, const std::optional<std::string>& config_text = {});

/// Wilson traces of the connection stored in a checkpoint.
std::vector<std::complex<double>> wilson_from_checkpoint(
    const std::filesystem::path& checkpoint, const std::vector<Loop>& loops);

/// Runs with the abelian oracle comparison enabled.
RunReport compare_oracle(RunConfig cfg);

struct VariationalReport {
  ObservableSeries tangent_norm;
  ObservableSeries vertical_residual;  // empty unless v0 is vertical
  std::filesystem::path checkpoint;
};

/// v0 spec: "random:SEED[:SCALE]", "smooth:SEED[:SCALE]" or
/// "vertical:SEED[:SCALE]" (d_{A0} alpha for a smooth alpha).
VariationalReport run_variational(const RunConfig& cfg, const std::string& v0);

struct AggregateReport {
  std::vector<std::string> verdict_lines;
  std::vector<std::string> series_lines;
  bool ok = false;
};

AggregateReport aggregate(const std::filesystem::path& dir);

}  // namespace ymflow
