#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ymflow/grid.hpp"
#include "ymflow/heat_flow.hpp"
#include "ymflow/lie_algebra.hpp"

namespace ymflow {

enum class InitialKind { Zero, PureGauge, U1Mode, HaSample, Smooth, Checkpoint };

std::string_view to_string(InitialKind k);
InitialKind initial_kind_from_string(std::string_view s);

struct InitialData {
  InitialKind kind = InitialKind::Zero;
  std::uint64_t seed = 1;
  double amplitude = 1.0;
  double a = 0.5;                    // ha_sample
  std::array<int, 3> mode{1, 0, 0};  // u1_mode
  int component = 1;                 // u1_mode
  int max_mode = 1;                  // smooth, pure_gauge
  std::string path;                  // checkpoint

  bool operator==(const InitialData&) const = default;
};

struct ObservableConfig {
  std::vector<std::string> enabled;  // energy a_action sup_curvature wilson
                                     // small_time residuals oracle epsilon
  double a = 0.5;
  std::string loops;  // loop file
  std::vector<double> epsilons;
  double oracle_tol = 1e-6;
  double t_min = 1e-6;  // first geometric stamp

  bool has(std::string_view name) const;
  bool operator==(const ObservableConfig&) const = default;
};

struct OutputConfig {
  std::string dir = "out";
  int checkpoint_every = 0;  // every n-th stamp; the final state always
  std::string series_format = "csv";
  double series_every = 0.0;  // uniform stamp interval; 0 means t_end / 10

  bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
  std::array<int, 3> dims{8, 8, 8};
  double h = 0.125;
  DomainKind domain = DomainKind::Box;
  GroupId group = GroupId::SU2;
  BoundaryKind bc = BoundaryKind::Neumann;
  FlowMode mode = FlowMode::ZDS;
  InitialData initial;
  StepperConfig stepper;
  ObservableConfig observables;
  OutputConfig output;

  bool operator==(const RunConfig& o) const;
  Grid grid() const { return Grid::make(dims, h, domain); }
  std::vector<double> stamps() const;
};

/// Parses `key = value` lines (flat dotted keys, '#' comments). Throws
/// ConfigError listing every violation.
RunConfig parse_config(const std::string& text);
std::string emit_config(const RunConfig& cfg);
/// Empty when valid.
std::vector<std::string> validate(const RunConfig& cfg);

std::uint64_t fnv1a(const std::string& text);

}  // namespace ymflow
