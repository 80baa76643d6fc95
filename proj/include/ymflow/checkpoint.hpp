#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ymflow/heat_flow.hpp"
#include "ymflow/observables.hpp"

namespace ymflow {

inline constexpr std::uint32_t kCheckpointVersion = 1;

enum class FieldKind : std::uint8_t { Connection = 0, Tangent = 1 };

struct Checkpoint {
  std::string config_text;
  std::uint64_t config_hash = 0;
  FieldKind kind = FieldKind::Connection;
  double dt = 0.0;
  FlowState state;
};

/// Binary layout: magic, version, config hash and text, grid/bc/group header,
/// flow metadata, then little-endian doubles ordered by site, then component,
/// then algebra coefficient; gauge matrices follow as (re, im) pairs.
void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ck);
Checkpoint read_checkpoint(const std::filesystem::path& path);

/// Two-column CSV "t,value" with 17 significant digits.
void write_series(const std::filesystem::path& path, const ObservableSeries& s);
ObservableSeries read_series(const std::filesystem::path& path);

/// One closed loop per non-comment line: "delta x0 y0 z0 x1 y1 z1 ...".
std::vector<Loop> read_loops(const std::filesystem::path& path);

}  // namespace ymflow
