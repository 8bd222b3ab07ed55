#pragma once

#include <memory>

#include "kummer/harmonics.hpp"
#include "kummer/types.hpp"

namespace kummer::geom {

// Chart geometry of S^n at one point. For n=1 the chart coordinate is the
// polar angle of the circle embedded in the z=0 plane; for n=2 the chart is
// (colatitude, longitude). Tensor index order: (theta, phi).
struct ChartPoint {
  int n = 2;
  double theta = 0.0, phi = 0.0;
  double sth = 1.0, cth = 0.0;  // sin/cos colatitude (n=2 only)
  Vec3 x = Vec3::Zero();        // point on the unit sphere
  Vec3 x_th = Vec3::Zero();     // chart tangent d x / d theta
  Vec3 x_ph = Vec3::Zero();     // chart tangent d x / d phi (zero for n=1)

  Mat2 e() const;        // metric e_ij (n x n block; padded with identity)
  Mat2 e_inv() const;    // inverse metric
  double det_e() const;  // det of the n x n block
  // Frame-to-chart basis change E with e = E^T E (E = diag(1, sin th)).
  Mat2 frame() const;
  Mat2 frame_inv() const;
  // Covariant correction: covariant Hessian = raw second partials minus
  // Gamma^k_ij partial_k. Returns the subtraction term Gamma^k_ij d1_k.
  Mat2 christoffel_term(const Vec2& d1) const;
  // Ambient vector of a chart covector via the inverse metric: e^{ij} a_j x_i.
  Vec3 ambient_gradient(const Vec2& d1) const;
};

ChartPoint chart_point_s1(double theta);
ChartPoint chart_point_s2(double theta, double phi);
// Chart point from an ambient unit vector (n inferred from the grid dimension).
ChartPoint chart_point_from_ambient(int n, const Vec3& x);

// Collocation grid on S^n with quadrature and spectral transforms.
// n=1: M equispaced angles; n=2: Gauss-Legendre colatitudes x equispaced
// longitudes, row-major point index i*nlon + j. Poles are never collocation
// points.
class SphereGrid {
 public:
  static std::shared_ptr<const SphereGrid> build(int n, int resolution);

  int dimension() const { return n_; }
  int resolution() const { return resolution_; }  // M for n=1, L_max for n=2
  int points() const { return npts_; }
  double volume() const { return n_ == 1 ? kTwoPi : 4.0 * kPi; }

  const ChartPoint& point(int p) const { return pts_[p]; }
  double weight(int p) const { return w_[p]; }
  const ArrayXd& weights() const { return w_; }

  const CircleHarmonics& circle() const { return *circle_; }
  const SphereHarmonics& sphere() const { return *sphere_; }
  int coeff_count() const;
  int coeff_degree(int c) const;

  // Uniform chart-coordinate spacing useful for finite differences (longitude
  // or circle angle).
  double dphi() const { return n_ == 1 ? kTwoPi / resolution_ : kTwoPi / sphere_->nlon(); }

 private:
  SphereGrid() = default;
  int n_ = 0, resolution_ = 0, npts_ = 0;
  std::vector<ChartPoint> pts_;
  ArrayXd w_;
  std::shared_ptr<CircleHarmonics> circle_;
  std::shared_ptr<SphereHarmonics> sphere_;
};

using GridPtr = std::shared_ptr<const SphereGrid>;

}  // namespace kummer::geom
