#include "ymflow/grid.hpp"

#include <cmath>
#include <string>

#include "ymflow/errors.hpp"

namespace ymflow {

std::string_view to_string(DomainKind k) {
  return k == DomainKind::Box ? "box" : "torus";
}

std::string_view to_string(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::Neumann:
      return "neumann";
    case BoundaryKind::Dirichlet:
      return "dirichlet";
    case BoundaryKind::Periodic:
      return "periodic";
  }
  return "?";
}

DomainKind domain_kind_from_string(std::string_view s) {
  if (s == "box") return DomainKind::Box;
  if (s == "torus") return DomainKind::Torus;
  throw StructuralError("unknown domain kind '" + std::string(s) + "'");
}

BoundaryKind boundary_kind_from_string(std::string_view s) {
  if (s == "neumann") return BoundaryKind::Neumann;
  if (s == "dirichlet") return BoundaryKind::Dirichlet;
  if (s == "periodic") return BoundaryKind::Periodic;
  throw StructuralError("unknown boundary kind '" + std::string(s) + "'");
}

Grid Grid::make(std::array<int, 3> dims, double h, DomainKind domain,
                std::size_t max_sites) {
  for (int n : dims) {
    if (n < 4) throw StructuralError("grid needs at least 4 nodes per axis");
  }
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw StructuralError("grid spacing must be positive");
  }
  const std::size_t total = static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
  if (total > max_sites) {
    throw StructuralError("grid exceeds the configured site cap");
  }
  return Grid{dims, h, domain};
}

void check_pairing(const Grid& grid, BoundaryKind bc) {
  const bool torus = grid.domain == DomainKind::Torus;
  if (torus != (bc == BoundaryKind::Periodic)) {
    throw StructuralError(std::string("boundary kind '") +
                          std::string(to_string(bc)) +
                          "' is incompatible with domain '" +
                          std::string(to_string(grid.domain)) + "'");
  }
}

Parity parity(BoundaryKind bc, int degree, int comp, int axis) {
  if (bc == BoundaryKind::Periodic) return Parity::Periodic;
  bool odd = false;
  switch (degree) {
    case 0:
      odd = false;
      break;
    case 1:
      odd = axis == comp;
      break;
    case 2:
      odd = axis != comp;
      break;
    case 3:
      odd = true;
      break;
    default:
      throw StructuralError("unsupported form degree");
  }
  if (bc == BoundaryKind::Dirichlet) odd = !odd;
  return odd ? Parity::Odd : Parity::Even;
}

std::vector<double> axis_weights(const Grid& grid, int axis) {
  std::vector<double> w(static_cast<std::size_t>(grid.dims[axis]), grid.h);
  if (grid.domain == DomainKind::Box) {
    w.front() *= 0.5;
    w.back() *= 0.5;
  }
  return w;
}

std::vector<double> site_weights(const Grid& grid) {
  const auto wx = axis_weights(grid, 0);
  const auto wy = axis_weights(grid, 1);
  const auto wz = axis_weights(grid, 2);
  std::vector<double> w(static_cast<std::size_t>(grid.sites()));
  for (int i = 0; i < grid.dims[0]; ++i)
    for (int j = 0; j < grid.dims[1]; ++j)
      for (int k = 0; k < grid.dims[2]; ++k)
        w[grid.index(i, j, k)] = wx[i] * wy[j] * wz[k];
  return w;
}

}  // namespace ymflow
