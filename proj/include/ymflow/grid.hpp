#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

namespace ymflow {

enum class DomainKind { Box, Torus };
enum class BoundaryKind { Neumann, Dirichlet, Periodic };

// Reflection class of a form component along one axis. Odd components vanish
// on the two faces normal to that axis.
enum class Parity { Even, Odd, Periodic };

std::string_view to_string(DomainKind k);
std::string_view to_string(BoundaryKind k);
DomainKind domain_kind_from_string(std::string_view s);
BoundaryKind boundary_kind_from_string(std::string_view s);

inline constexpr std::size_t kDefaultMaxSites = std::size_t{1} << 21;

/// Uniform node grid. Box nodes sit at 0, h, ..., (n-1)h; Torus nodes at
/// 0, h, ..., (n-1)h with period n h.
struct Grid {
  std::array<int, 3> dims{};
  double h = 0.0;
  DomainKind domain = DomainKind::Box;

  static Grid make(std::array<int, 3> dims, double h, DomainKind domain,
                   std::size_t max_sites = kDefaultMaxSites);

  int sites() const { return dims[0] * dims[1] * dims[2]; }
  int index(int i, int j, int k) const {
    return (i * dims[1] + j) * dims[2] + k;
  }
  int stride(int axis) const {
    return axis == 0 ? dims[1] * dims[2] : (axis == 1 ? dims[2] : 1);
  }
  std::array<int, 3> coords(int site) const {
    return {site / (dims[1] * dims[2]), (site / dims[2]) % dims[1],
            site % dims[2]};
  }
  double length(int axis) const {
    return domain == DomainKind::Box ? (dims[axis] - 1) * h : dims[axis] * h;
  }
  double volume() const { return length(0) * length(1) * length(2); }
  bool on_boundary(int axis, int i) const {
    return domain == DomainKind::Box && (i == 0 || i == dims[axis] - 1);
  }

  bool operator==(const Grid&) const = default;
};

/// Throws StructuralError for Periodic on a Box or Neumann/Dirichlet on a Torus.
void check_pairing(const Grid& grid, BoundaryKind bc);

inline int form_components(int degree) {
  return degree == 0 || degree == 3 ? 1 : 3;
}

/// Parity of component `comp` of a p-form along `axis`. Two-form component c
/// is the (c+1, c+2) plane, i.e. the one missing axis c.
Parity parity(BoundaryKind bc, int degree, int comp, int axis);

/// One-dimensional trapezoidal quadrature weights along an axis.
std::vector<double> axis_weights(const Grid& grid, int axis);
/// Product trapezoidal weights per site.
std::vector<double> site_weights(const Grid& grid);

}  // namespace ymflow
