#include "kummer/shapes.hpp"

#include <stdexcept>

namespace kummer::shapes {

void validate_axis(int dimension, const Vec3& axis) {
  if (std::abs(axis.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("shape axis must be a unit vector");
  if (dimension == 1 && std::abs(axis[2]) > 1e-14)
    throw std::invalid_argument("S^1 shape axis must lie in the z=0 plane");
}

RadialJet AxisProfile::jet(const ChartPoint& cp) const {
  const double s = cp.x.dot(axis);
  if (!in_domain(s)) throw std::domain_error("point outside the shape domain");
  const double f = F(s), f1 = dF(s), f2 = d2F(s);
  // chart components of ds: s_i = <x_i, axis>
  Vec2 ds(cp.x_th.dot(axis), cp.n == 2 ? cp.x_ph.dot(axis) : 0.0);
  RadialJet rj;
  rj.rho = f;
  rj.d1 = f1 * ds;
  // Hess s = -s e for the ambient-linear function s = <x, axis>
  rj.hess = f2 * (ds * ds.transpose()) - f1 * s * cp.e();
  if (cp.n == 1) {
    rj.hess(0, 1) = rj.hess(1, 0) = rj.hess(1, 1) = 0.0;
    rj.d1[1] = 0.0;
  }
  return rj;
}

core::AmbientPoint AxisProfile::ambient(const Vec3& x) const {
  const double s = x.dot(axis);
  if (!in_domain(s)) throw std::domain_error("point outside the shape domain");
  core::AmbientPoint out;
  out.rho = F(s);
  out.r = out.rho * x;
  out.grad = dF(s) * (axis - s * x);  // tangential part of the axis direction
  const double g2 = out.grad.squaredNorm();
  const double W2 = out.rho * out.rho + g2;
  out.W = std::sqrt(W2);
  out.N = (out.rho * x - out.grad) / out.W;
  // Expanded reflection formula (see ambient_from_jet): exact for constant F.
  out.gamma = ((g2 - out.rho * out.rho) * x + 2.0 * out.rho * out.grad) / W2;
  return out;
}

RadialHypersurface AxisProfile::hypersurface(const GridPtr& grid) const {
  validate_axis(grid->dimension(), axis);
  AxisProfile copy = *this;
  return RadialHypersurface::from_callable(
      grid, [copy](const ChartPoint& cp) { return copy.jet(cp); },
      [copy](const Vec3& x) { return copy.ambient(x); });
}

ProfileCurvature profile_curvature(const AxisProfile& pr, double s) {
  const double f = pr.F(s), f1 = pr.dF(s), f2 = pr.d2F(s);
  const double g2 = f1 * f1 * (1.0 - s * s);  // |grad rho|^2
  const double halfW2 = 0.5 * (f * f + g2);
  ProfileCurvature c;
  c.alpha = (f * f1 * s + 0.5 * (f * f - g2)) / halfW2;
  c.beta = (-f * f2 + 2.0 * f1 * f1) / halfW2;
  return c;
}

double profile_mean_intensity(const AxisProfile& pr, int n, double s) {
  const ProfileCurvature c = profile_curvature(pr, s);
  return n * c.alpha + c.beta * (1.0 - s * s);
}

double profile_top_intensity(const AxisProfile& pr, int n, double s) {
  const ProfileCurvature c = profile_curvature(pr, s);
  const double radial = c.alpha + c.beta * (1.0 - s * s);
  return n == 1 ? radial : c.alpha * radial;
}

AxisProfile ConicOfRevolution::profile() const {
  if (p <= 0.0) throw std::invalid_argument("conic needs p > 0");
  if (ecc < 0.0) throw std::invalid_argument("conic needs ecc >= 0");
  AxisProfile pr;
  pr.axis = axis;
  const double pp = p, e = ecc;
  pr.F = [pp, e](double s) { return pp / (1.0 - e * s); };
  pr.dF = [pp, e](double s) { const double d = 1.0 - e * s; return pp * e / (d * d); };
  pr.d2F = [pp, e](double s) { const double d = 1.0 - e * s; return 2.0 * pp * e * e / (d * d * d); };
  if (ecc >= 1.0) pr.s_max = 1.0 / ecc;  // paraboloid: s=1 (axis point), hyperboloid sheet
  return pr;
}

RadialHypersurface ConicOfRevolution::hypersurface(const GridPtr& grid) const {
  return profile().hypersurface(grid);
}

RadialJet ConicOfRevolution::radial(const ChartPoint& cp) const {
  return profile().jet(cp);
}

Vec3 ConicOfRevolution::second_focus() const {
  if (ecc == 1.0)
    throw std::domain_error("paraboloid: second focus at infinity");
  return (2.0 * p * ecc / (1.0 - ecc * ecc)) * axis;
}

double ConicOfRevolution::expected_intensity_factor(const Vec3& x) const {
  const double s = x.dot(axis);
  if (!profile().in_domain(s))
    throw std::domain_error("point outside the shape domain");
  if (ecc == 0.0) return 1.0;
  if (ecc == 1.0) return 0.0;
  const double rho = p / (1.0 - ecc * s);
  const double d = (rho * x - second_focus()).norm();
  return (ecc < 1.0 ? 1.0 : -1.0) * rho / d;
}

Mat2 ConicOfRevolution::expected_intensity_form(const ChartPoint& cp) const {
  Mat2 m = expected_intensity_factor(cp.x) * cp.e();
  if (cp.n == 1) m(0, 1) = m(1, 0) = m(1, 1) = 0.0;  // circle: only (0,0) live
  return m;
}

AxisProfile PlanePiece::profile() const {
  if (c <= 0.0) throw std::invalid_argument("plane piece needs offset c > 0");
  AxisProfile pr;
  pr.axis = d;
  const double cc = c;
  pr.F = [cc](double s) { return cc / s; };
  pr.dF = [cc](double s) { return -cc / (s * s); };
  pr.d2F = [cc](double s) { return 2.0 * cc / (s * s * s); };
  pr.s_min = 0.0;  // open hemisphere <x, d> > 0
  return pr;
}

RadialHypersurface PlanePiece::hypersurface(const GridPtr& grid) const {
  return profile().hypersurface(grid);
}

Mat2 PlanePiece::expected_intensity_form(const ChartPoint& cp) const {
  if (!profile().in_domain(cp.x.dot(d)))
    throw std::domain_error("point outside the shape domain");
  Mat2 m = -cp.e();
  if (cp.n == 1) m(0, 1) = m(1, 0) = m(1, 1) = 0.0;  // circle: only (0,0) live
  return m;
}

}  // namespace kummer::shapes
