#pragma once

#include <memory>
#include <span>
#include <vector>

#include "ymflow/errors.hpp"
#include "ymflow/grid.hpp"
#include "ymflow/lie_algebra.hpp"

namespace ymflow {

/// Immutable context shared by every field on one discretized domain.
class Lattice {
 public:
  static std::shared_ptr<const Lattice> make(const Grid& grid, BoundaryKind bc,
                                             GroupId group);

  const Grid& grid() const { return grid_; }
  BoundaryKind bc() const { return bc_; }
  const GroupSpec& group() const { return *group_; }
  int adim() const { return group_->algebra_dim(); }
  std::size_t sites() const { return static_cast<std::size_t>(grid_.sites()); }
  const std::vector<double>& weights() const { return weights_; }

  bool same_as(const Lattice& o) const {
    return grid_ == o.grid_ && bc_ == o.bc_ && *group_ == *o.group_;
  }

 private:
  Lattice(const Grid& grid, BoundaryKind bc, const GroupSpec& group);

  Grid grid_;
  BoundaryKind bc_;
  const GroupSpec* group_;
  std::vector<double> weights_;
};

using LatticePtr = std::shared_ptr<const Lattice>;

/// Lie-algebra valued p-form sampled on nodes. Storage is component-major:
/// data[(component * sites + site) * adim + coefficient].
template <int Degree>
class Form {
 public:
  static constexpr int degree = Degree;
  static constexpr int components = (Degree == 0 || Degree == 3) ? 1 : 3;

  Form() = default;
  explicit Form(LatticePtr lattice)
      : lattice_(std::move(lattice)),
        data_(components * lattice_->sites() * lattice_->adim(), 0.0) {}
  Form(LatticePtr lattice, std::vector<double> data)
      : lattice_(std::move(lattice)), data_(std::move(data)) {
    if (data_.size() != components * lattice_->sites() * lattice_->adim()) {
      throw StructuralError("form data has wrong size");
    }
  }

  const Lattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  int adim() const { return lattice_->adim(); }
  std::size_t sites() const { return lattice_->sites(); }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  std::vector<double>& storage() { return data_; }

  double* comp(int c) { return data_.data() + c * sites() * adim(); }
  const double* comp(int c) const {
    return data_.data() + c * sites() * adim();
  }
  double* at(int c, std::size_t site) { return comp(c) + site * adim(); }
  const double* at(int c, std::size_t site) const {
    return comp(c) + site * adim();
  }

  Form& operator+=(const Form& o) {
    check(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Form& operator-=(const Form& o) {
    check(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Form& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }
  /// this += s * o
  Form& axpy(double s, const Form& o) {
    check(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * o.data_[i];
    return *this;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(double s, Form a) { return a *= s; }

  void check(const Form& o) const {
    if (!lattice_ || !o.lattice_ || !lattice_->same_as(*o.lattice_)) {
      throw StructuralError("fields live on different lattices");
    }
  }

 private:
  LatticePtr lattice_;
  std::vector<double> data_;
};

using ZeroForm = Form<0>;
using ConnectionField = Form<1>;
using TwoFormField = Form<2>;
using ThreeForm = Form<3>;
using TangentField = Form<1>;

/// K-valued function on nodes.
class GaugeField {
 public:
  GaugeField() = default;
  static GaugeField identity(LatticePtr lattice);
  /// Pointwise exponential of a 0-form.
  static GaugeField exp(const ZeroForm& xi);

  const Lattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  std::size_t sites() const { return elems_.size(); }

  GroupMatrix& operator[](std::size_t s) { return elems_[s]; }
  const GroupMatrix& operator[](std::size_t s) const { return elems_[s]; }

  GaugeField inverse() const;
  /// Pointwise product (this * other)(x) = this(x) other(x).
  GaugeField operator*(const GaugeField& other) const;
  /// Largest unitarity residual over the sites.
  double max_unitarity_residual() const;
  /// Largest Frobenius distance to the identity over boundary nodes.
  double max_boundary_deviation() const;
  void reproject();

 private:
  LatticePtr lattice_;
  std::vector<GroupMatrix> elems_;
};

/// Applies the boundary mask of the lattice to a form.
template <int Degree>
void mask(Form<Degree>& f);

}  // namespace ymflow
