#include "ymflow/discrete_calculus.hpp"

#include <algorithm>
#include <cmath>

#include "ymflow/errors.hpp"

namespace ymflow {

namespace {

// Calls fn(base) for the first site of every grid line along `axis`.
template <class Fn>
void for_each_line(const Grid& g, int axis, Fn&& fn) {
  const int a1 = (axis + 1) % 3;
  const int a2 = (axis + 2) % 3;
  for (int i = 0; i < g.dims[a1]; ++i) {
    for (int j = 0; j < g.dims[a2]; ++j) {
      std::array<int, 3> c{};
      c[a1] = i;
      c[a2] = j;
      fn(g.index(c[0], c[1], c[2]));
    }
  }
}

}  // namespace

void axis_derivative(const Grid& grid, int axis, Parity parity, int adim,
                     const double* in, double* out, double scale,
                     bool accumulate) {
  const int n = grid.dims[axis];
  const std::ptrdiff_t s = static_cast<std::ptrdiff_t>(grid.stride(axis)) * adim;
  const double c = scale / (2.0 * grid.h);
  const bool periodic = parity == Parity::Periodic;
  const double edge = parity == Parity::Odd ? 2.0 * c : 0.0;

  for_each_line(grid, axis, [&](int base_site) {
    const std::ptrdiff_t base = static_cast<std::ptrdiff_t>(base_site) * adim;
    for (int a = 0; a < adim; ++a) {
      const double* f = in + base + a;
      double* o = out + base + a;
      auto store = [&](int i, double v) {
        if (accumulate) {
          o[i * s] += v;
        } else {
          o[i * s] = v;
        }
      };
      if (periodic) {
        store(0, c * (f[s] - f[(n - 1) * s]));
        store(n - 1, c * (f[0] - f[(n - 2) * s]));
      } else {
        store(0, edge * f[s]);
        store(n - 1, -edge * f[(n - 2) * s]);
      }
      for (int i = 1; i < n - 1; ++i) {
        store(i, c * (f[(i + 1) * s] - f[(i - 1) * s]));
      }
    }
  });
}

void apply_mask(const Grid& grid, BoundaryKind bc, int degree, int adim,
                std::span<double> data) {
  if (bc == BoundaryKind::Periodic) return;
  const int ncomp = form_components(degree);
  const std::size_t sites = static_cast<std::size_t>(grid.sites());
  for (int comp = 0; comp < ncomp; ++comp) {
    double* block = data.data() + comp * sites * adim;
    for (int axis = 0; axis < 3; ++axis) {
      if (parity(bc, degree, comp, axis) != Parity::Odd) continue;
      const int n = grid.dims[axis];
      const std::ptrdiff_t s =
          static_cast<std::ptrdiff_t>(grid.stride(axis)) * adim;
      for_each_line(grid, axis, [&](int base_site) {
        double* f = block + static_cast<std::ptrdiff_t>(base_site) * adim;
        for (int a = 0; a < adim; ++a) {
          f[a] = 0.0;
          f[(n - 1) * s + a] = 0.0;
        }
      });
    }
  }
}

DiscreteOperator::DiscreteOperator(const Grid& grid, BoundaryKind bc,
                                   int form_degree, Kind kind)
    : grid_(grid), bc_(bc), degree_(form_degree), kind_(kind) {
  check_pairing(grid, bc);
  if (form_degree < 0 || form_degree > 2) {
    throw StructuralError("exterior derivative degree must be 0, 1 or 2");
  }
  weights_ = site_weights(grid);
}

std::size_t DiscreteOperator::source_size(int adim) const {
  return static_cast<std::size_t>(form_components(source_degree())) *
         grid_.sites() * adim;
}

std::size_t DiscreteOperator::target_size(int adim) const {
  return static_cast<std::size_t>(form_components(target_degree())) *
         grid_.sites() * adim;
}

void DiscreteOperator::apply(std::span<const double> in, std::span<double> out,
                             int adim) const {
  if (in.size() != source_size(adim) || out.size() != target_size(adim)) {
    throw StructuralError("operator applied to array of wrong size");
  }
  const std::size_t block = static_cast<std::size_t>(grid_.sites()) * adim;
  const double* src = in.data();
  double* dst = out.data();
  const int src_deg = source_degree();
  auto D = [&](int axis, int src_comp, int dst_comp, double scale,
               bool accumulate) {
    axis_derivative(grid_, axis, parity(bc_, src_deg, src_comp, axis), adim,
                    src + src_comp * block, dst + dst_comp * block, scale,
                    accumulate);
  };

  if (kind_ == Kind::Derivative) {
    switch (degree_) {
      case 0:
        for (int i = 0; i < 3; ++i) D(i, 0, i, 1.0, false);
        break;
      case 1:
        for (int c = 0; c < 3; ++c) {
          const int i = (c + 1) % 3, j = (c + 2) % 3;
          D(i, j, c, 1.0, false);
          D(j, i, c, -1.0, true);
        }
        break;
      case 2:
        D(0, 0, 0, 1.0, false);
        D(1, 1, 0, 1.0, true);
        D(2, 2, 0, 1.0, true);
        break;
    }
    return;
  }

  switch (degree_) {
    case 0:
      D(0, 0, 0, -1.0, false);
      D(1, 1, 0, -1.0, true);
      D(2, 2, 0, -1.0, true);
      break;
    case 1:
      std::fill(out.begin(), out.end(), 0.0);
      for (int c = 0; c < 3; ++c) {
        const int i = (c + 1) % 3, j = (c + 2) % 3;
        D(i, c, j, -1.0, true);
        D(j, c, i, 1.0, true);
      }
      break;
    case 2:
      for (int c = 0; c < 3; ++c) D(c, 0, c, -1.0, false);
      break;
  }
}

std::vector<double> DiscreteOperator::apply(std::span<const double> in,
                                            int adim) const {
  std::vector<double> out(target_size(adim));
  apply(in, out, adim);
  return out;
}

Eigen::SparseMatrix<double> DiscreteOperator::assemble() const {
  const std::size_t ns = source_size();
  const std::size_t nt = target_size();
  std::vector<Eigen::Triplet<double>> triplets;
  std::vector<double> unit(ns, 0.0), col(nt);
  for (std::size_t j = 0; j < ns; ++j) {
    unit[j] = 1.0;
    apply(unit, col);
    unit[j] = 0.0;
    for (std::size_t i = 0; i < nt; ++i) {
      if (col[i] != 0.0) {
        triplets.emplace_back(static_cast<int>(i), static_cast<int>(j), col[i]);
      }
    }
  }
  Eigen::SparseMatrix<double> m(static_cast<int>(nt), static_cast<int>(ns));
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

DiscreteOperator build_d(const Grid& grid, BoundaryKind bc, int degree) {
  return DiscreteOperator(grid, bc, degree, DiscreteOperator::Kind::Derivative);
}

DiscreteOperator codifferential(const DiscreteOperator& d) {
  if (d.kind() != DiscreteOperator::Kind::Derivative) {
    throw StructuralError("codifferential expects an exterior derivative");
  }
  return DiscreteOperator(d.grid(), d.bc(), d.source_degree(),
                          DiscreteOperator::Kind::Codifferential);
}

double form_inner(const Grid& grid, std::span<const double> weights, int ncomp,
                  int adim, std::span<const double> a,
                  std::span<const double> b) {
  const std::size_t sites = static_cast<std::size_t>(grid.sites());
  if (a.size() != ncomp * sites * adim || b.size() != a.size() ||
      weights.size() != sites) {
    throw StructuralError("inner product of mismatched arrays");
  }
  double total = 0.0;
  for (int c = 0; c < ncomp; ++c) {
    const std::size_t off = c * sites * adim;
    for (std::size_t s = 0; s < sites; ++s) {
      double local = 0.0;
      for (int k = 0; k < adim; ++k) {
        local += a[off + s * adim + k] * b[off + s * adim + k];
      }
      total += weights[s] * local;
    }
  }
  return total;
}

std::vector<double> interpolate(const Grid& grid, int ncomp, int adim,
                                std::span<const double> data,
                                const Eigen::Vector3d& point) {
  const std::size_t sites = static_cast<std::size_t>(grid.sites());
  if (data.size() != ncomp * sites * adim) {
    throw StructuralError("interpolation of array with wrong size");
  }
  std::array<int, 3> lo{}, hi{};
  std::array<double, 3> frac{};
  const double slack = 1e-12 * grid.h;
  for (int ax = 0; ax < 3; ++ax) {
    const int n = grid.dims[ax];
    double x = point[ax];
    if (!std::isfinite(x)) throw NumericError("non-finite interpolation point");
    if (grid.domain == DomainKind::Torus) {
      const double len = grid.length(ax);
      x = std::fmod(x, len);
      if (x < 0) x += len;
      double q = x / grid.h;
      int i = static_cast<int>(std::floor(q));
      if (i >= n) i = n - 1;
      lo[ax] = i;
      hi[ax] = (i + 1) % n;
      frac[ax] = q - i;
    } else {
      if (x < -slack || x > grid.length(ax) + slack) {
        throw StructuralError("interpolation point outside the domain");
      }
      double q = std::clamp(x / grid.h, 0.0, static_cast<double>(n - 1));
      int i = std::min(static_cast<int>(std::floor(q)), n - 2);
      lo[ax] = i;
      hi[ax] = i + 1;
      frac[ax] = q - i;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ncomp * adim), 0.0);
  for (int corner = 0; corner < 8; ++corner) {
    std::array<int, 3> idx{};
    double w = 1.0;
    for (int ax = 0; ax < 3; ++ax) {
      const bool up = (corner >> ax) & 1;
      idx[ax] = up ? hi[ax] : lo[ax];
      w *= up ? frac[ax] : 1.0 - frac[ax];
    }
    if (w == 0.0) continue;
    const std::size_t site = grid.index(idx[0], idx[1], idx[2]);
    for (int c = 0; c < ncomp; ++c) {
      for (int k = 0; k < adim; ++k) {
        out[c * adim + k] += w * data[(c * sites + site) * adim + k];
      }
    }
  }
  return out;
}

}  // namespace ymflow
