#pragma once

#include "kummer/grid.hpp"
#include "kummer/types.hpp"

namespace kummer::geom {

// Covariant vector field (chart components a_th, a_ph per point).
struct CovectorField {
  GridPtr grid;
  ArrayXd d_th, d_ph;

  CovectorField() = default;
  explicit CovectorField(GridPtr g)
      : grid(std::move(g)),
        d_th(ArrayXd::Zero(grid->points())),
        d_ph(ArrayXd::Zero(grid->points())) {}

  Vec2 at(int p) const {
    return Vec2(d_th[p], grid->dimension() == 2 ? d_ph[p] : 0.0);
  }
  // |a|^2 = e^{ij} a_i a_j pointwise.
  ArrayXd norm2() const;
};

// Symmetric covariant 2-tensor field in chart components. For n=1 only c_tt
// is meaningful. The orthonormal-frame representation divides out the metric
// degeneracy at small colatitudes: F = E^{-T} T E^{-1} with E = diag(1, sin th).
class SymTensorField2 {
 public:
  SymTensorField2() = default;
  explicit SymTensorField2(GridPtr g);

  const GridPtr& grid() const { return grid_; }
  int points() const { return grid_->points(); }

  ArrayXd& tt() { return c_tt_; }
  ArrayXd& tp() { return c_tp_; }
  ArrayXd& pp() { return c_pp_; }
  const ArrayXd& tt() const { return c_tt_; }
  const ArrayXd& tp() const { return c_tp_; }
  const ArrayXd& pp() const { return c_pp_; }

  Mat2 at(int p) const;
  void set(int p, const Mat2& m);

  // Frame components at a point (symmetric, well-conditioned near poles).
  Mat2 frame_at(int p) const;
  // Frame eigenvalues sorted ascending (lo, hi); for n=1 both equal c_tt.
  void frame_eigenvalues(ArrayXd& lo, ArrayXd& hi) const;
  // trace with the inverse metric: e^{ij} T_ij.
  ArrayXd trace_e() const;
  // det T / det e (equals the product of frame eigenvalues).
  ArrayXd det_ratio() const;

  SymTensorField2 operator+(const SymTensorField2& o) const;
  SymTensorField2 operator-(const SymTensorField2& o) const;
  SymTensorField2 operator*(double s) const;

  // Sup over points of the frame-component distance to another tensor field.
  double frame_sup_diff(const SymTensorField2& o) const;
  // Sup over points and chart components.
  double chart_sup_diff(const SymTensorField2& o) const;

 private:
  GridPtr grid_;
  ArrayXd c_tt_, c_tp_, c_pp_;
};

// The metric itself as a tensor field (e_ij at every point).
SymTensorField2 metric_tensor(const GridPtr& grid);

}  // namespace kummer::geom
