#include "kummer/grid.hpp"

#include <stdexcept>

namespace kummer::geom {

Mat2 ChartPoint::e() const {
  Mat2 m = Mat2::Identity();
  if (n == 2) m(1, 1) = sth * sth;
  return m;
}

Mat2 ChartPoint::e_inv() const {
  Mat2 m = Mat2::Identity();
  if (n == 2) m(1, 1) = 1.0 / (sth * sth);
  return m;
}

double ChartPoint::det_e() const { return n == 2 ? sth * sth : 1.0; }

Mat2 ChartPoint::frame() const {
  Mat2 m = Mat2::Identity();
  if (n == 2) m(1, 1) = sth;
  return m;
}

Mat2 ChartPoint::frame_inv() const {
  Mat2 m = Mat2::Identity();
  if (n == 2) m(1, 1) = 1.0 / sth;
  return m;
}

Mat2 ChartPoint::christoffel_term(const Vec2& d1) const {
  Mat2 m = Mat2::Zero();
  if (n == 2) {
    // Gamma^th_phph = -sin cos, Gamma^ph_thph = Gamma^ph_phth = cot
    m(1, 1) = -sth * cth * d1[0];
    m(0, 1) = m(1, 0) = cth / sth * d1[1];
  }
  return m;
}

Vec3 ChartPoint::ambient_gradient(const Vec2& d1) const {
  if (n == 1) return d1[0] * x_th;
  return d1[0] * x_th + d1[1] / (sth * sth) * x_ph;
}

ChartPoint chart_point_s1(double theta) {
  ChartPoint p;
  p.n = 1;
  p.theta = theta;
  const double c = std::cos(theta), s = std::sin(theta);
  p.x = Vec3(c, s, 0.0);
  p.x_th = Vec3(-s, c, 0.0);
  return p;
}

ChartPoint chart_point_s2(double theta, double phi) {
  ChartPoint p;
  p.n = 2;
  p.theta = theta;
  p.phi = phi;
  p.sth = std::sin(theta);
  p.cth = std::cos(theta);
  if (p.sth <= 0.0) throw std::domain_error("chart point at a pole");
  const double cp = std::cos(phi), sp = std::sin(phi);
  p.x = Vec3(p.sth * cp, p.sth * sp, p.cth);
  p.x_th = Vec3(p.cth * cp, p.cth * sp, -p.sth);
  p.x_ph = Vec3(-p.sth * sp, p.sth * cp, 0.0);
  return p;
}

ChartPoint chart_point_from_ambient(int n, const Vec3& x) {
  if (n == 1) return chart_point_s1(std::atan2(x[1], x[0]));
  return chart_point_s2(std::acos(std::clamp(x[2], -1.0, 1.0)),
                        std::atan2(x[1], x[0]));
}

std::shared_ptr<const SphereGrid> SphereGrid::build(int n, int resolution) {
  if (n != 1 && n != 2) throw std::invalid_argument("dimension must be 1 or 2");
  auto g = std::shared_ptr<SphereGrid>(new SphereGrid());
  g->n_ = n;
  g->resolution_ = resolution;
  if (n == 1) {
    if (resolution < 8 || resolution > 8192 || resolution % 2 != 0)
      throw std::invalid_argument("circle resolution must be even, in [8, 8192]");
    g->circle_ = std::make_shared<CircleHarmonics>(resolution);
    g->npts_ = resolution;
    g->pts_.reserve(g->npts_);
    g->w_ = ArrayXd::Constant(g->npts_, kTwoPi / resolution);
    for (int k = 0; k < resolution; ++k)
      g->pts_.push_back(chart_point_s1(g->circle_->theta(k)));
  } else {
    if (resolution < 4 || resolution > 128)
      throw std::invalid_argument("sphere band limit must be in [4, 128]");
    g->sphere_ = std::make_shared<SphereHarmonics>(resolution);
    const auto& sh = *g->sphere_;
    g->npts_ = sh.points();
    g->pts_.reserve(g->npts_);
    g->w_.resize(g->npts_);
    const double dph = kTwoPi / sh.nlon();
    for (int i = 0; i < sh.nlat(); ++i)
      for (int j = 0; j < sh.nlon(); ++j) {
        g->pts_.push_back(chart_point_s2(sh.theta(i), sh.phi(j)));
        g->w_[(size_t)i * sh.nlon() + j] = sh.gauss_weight(i) * dph;
      }
  }
  return g;
}

int SphereGrid::coeff_count() const {
  return n_ == 1 ? circle_->coeff_count() : sphere_->coeff_count();
}

int SphereGrid::coeff_degree(int c) const {
  return n_ == 1 ? circle_->degree(c) : sphere_->degree(c);
}

}  // namespace kummer::geom
