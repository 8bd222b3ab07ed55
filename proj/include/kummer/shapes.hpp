#pragma once

#include "kummer/radial.hpp"

namespace kummer::shapes {

using core::RadialHypersurface;
using core::RadialJet;
using geom::ChartPoint;
using geom::GridPtr;

// Rotationally symmetric radial function rho = F(s), s = <x, axis>, with
// exact derivative callables. The natural domain is the open band
// s_min < s < s_max; evaluation within 1e-8 of a boundary raises
// std::domain_error.
struct AxisProfile {
  std::function<double(double)> F, dF, d2F;
  Vec3 axis = Vec3::UnitZ();
  double s_min = -2.0, s_max = 2.0;  // beyond [-1,1] means unrestricted

  bool in_domain(double s, double margin = 1e-8) const {
    return s > s_min + margin && s < s_max - margin;
  }
  RadialJet jet(const ChartPoint& cp) const;
  core::AmbientPoint ambient(const Vec3& x) const;
  RadialHypersurface hypersurface(const GridPtr& grid) const;
};

// Principal-intensity data of an axis profile at latitude s: the intensity
// form is kappa = alpha e + beta ds x ds, with frame eigenvalues alpha
// (multiplicity n-1, transverse) and alpha + beta (1-s^2) (meridian).
struct ProfileCurvature {
  double alpha = 0.0, beta = 0.0;
};
ProfileCurvature profile_curvature(const AxisProfile& pr, double s);
// Mean intensity S1 = n alpha + beta (1-s^2).
double profile_mean_intensity(const AxisProfile& pr, int n, double s);
// Top intensity S_n = alpha^{n-1} (alpha + beta (1-s^2)).
double profile_top_intensity(const AxisProfile& pr, int n, double s);

// Conic of revolution with one focus at the origin:
// rho = p / (1 - ecc <x,u>).  ecc = 0: sphere of radius p; 0 < ecc < 1:
// ellipsoid (whole sphere); ecc = 1: paraboloid (domain excludes the axis
// point u); ecc > 1: one hyperboloid sheet (domain <x,u> < 1/ecc).
struct ConicOfRevolution {
  double p = 1.0;
  double ecc = 0.0;
  Vec3 axis = Vec3::UnitZ();

  AxisProfile profile() const;
  RadialHypersurface hypersurface(const GridPtr& grid) const;
  // rho and exact derivatives at a chart point; domain-checked.
  RadialJet radial(const ChartPoint& cp) const;
  // Second focus a = (2 p ecc / (1 - ecc^2)) u; throws for ecc = 1.
  Vec3 second_focus() const;
  // Closed-form intensity form at a point of the domain:
  //   sphere: e;  paraboloid: 0;  ellipsoid: +(rho/|rho x - a|) e;
  //   hyperboloid: -(rho/|rho x - a|) e.
  Mat2 expected_intensity_form(const ChartPoint& cp) const;
  double expected_intensity_factor(const Vec3& x) const;
};

// Piece of a hyperplane <y, d> = c (c > 0): rho = c / <x, d> on the open
// hemisphere <x, d> > 0. Closed-form intensity form is -e.
struct PlanePiece {
  Vec3 d = Vec3::UnitZ();
  double c = 1.0;

  AxisProfile profile() const;
  RadialHypersurface hypersurface(const GridPtr& grid) const;
  Mat2 expected_intensity_form(const ChartPoint& cp) const;
};

// For S^1 grids, shape axes must lie in the circle plane (z = 0).
void validate_axis(int dimension, const Vec3& axis);

}  // namespace kummer::shapes
