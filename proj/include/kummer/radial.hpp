#pragma once

#include <functional>

#include "kummer/field.hpp"

namespace kummer::core {

using geom::ChartPoint;
using geom::GridPtr;
using geom::ScalarField;

// Radial function data at one point: value, chart gradient components, and the
// covariant Hessian.
struct RadialJet {
  double rho = 0.0;
  Vec2 d1 = Vec2::Zero();
  Mat2 hess = Mat2::Zero();
};

// Ambient data of the reflector at a source direction x: position r = rho x,
// tangential gradient, W = sqrt(rho^2 + |grad rho|^2), outward unit normal N
// and reflected direction gamma = x - 2<x,N>N.
struct AmbientPoint {
  double rho = 0.0;
  Vec3 r = Vec3::Zero();
  Vec3 grad = Vec3::Zero();
  double W = 0.0;
  Vec3 N = Vec3::Zero();
  Vec3 gamma = Vec3::Zero();
};

// A star-shaped reflector given by rho > 0 on S^n, with cached derivatives at
// the collocation points and (for analytic and band-limited backends) exact
// or spectral jets at arbitrary chart points.
class RadialHypersurface {
 public:
  using JetFn = std::function<RadialJet(const ChartPoint&)>;
  using AmbientFn = std::function<AmbientPoint(const Vec3&)>;

  // Analytic radial function with exact derivatives. An optional chart-free
  // ambient evaluator makes ray tracing independent of chart singularities.
  static RadialHypersurface from_callable(GridPtr grid, JetFn jet,
                                          AmbientFn ambient = nullptr);
  // rho given as field values (spectral derivatives if band-limited, FD4 else).
  static RadialHypersurface from_field(const ScalarField& rho);
  // rho = 1/w for a positive field w.
  static RadialHypersurface from_reciprocal(const ScalarField& w);
  // rho = exp(-w).
  static RadialHypersurface from_exp_neg(const ScalarField& w);

  const GridPtr& grid() const { return grid_; }
  int points() const { return grid_->points(); }
  bool supports_offgrid() const { return bool(jet_fn_); }
  bool analytic() const { return analytic_; }

  const RadialJet& jet(int p) const { return cached_[p]; }
  RadialJet jet_at(const ChartPoint& cp) const;
  // rho values as a field (General smoothness unless backing field was exact).
  const ArrayXd& rho_values() const { return rho_; }

  AmbientPoint ambient(const Vec3& x) const;

 private:
  RadialHypersurface() = default;
  void cache_from_fn();
  void validate_positive() const;

  GridPtr grid_;
  JetFn jet_fn_;
  AmbientFn ambient_fn_;
  bool analytic_ = false;
  std::vector<RadialJet> cached_;
  ArrayXd rho_;
};

// Assemble ambient data from a chart jet (shared by all backends).
AmbientPoint ambient_from_jet(const ChartPoint& cp, const RadialJet& jet);

// Chart jets (value, gradient, covariant Hessian) of a scalar field at all
// collocation points, spectral or FD4 per the field's smoothness.
std::vector<RadialJet> field_chart_jets(const ScalarField& f);

}  // namespace kummer::core
