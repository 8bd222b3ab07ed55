// Closed-form reflector shapes: exact radial jets, foci, expected intensity
// forms, and the axisymmetric curvature decomposition.

#include <doctest.h>

#include <cmath>

#include "kummer/kummer_core.hpp"
#include "kummer/shapes.hpp"

using namespace kummer;
using geom::GridPtr;
using geom::SphereGrid;
namespace shapes = kummer::shapes;

namespace {

// Central-difference oracle for the profile derivatives.
void check_profile_derivatives(const shapes::AxisProfile& pr, double s) {
  const double h = 1e-6;
  const double fd1 = (pr.F(s + h) - pr.F(s - h)) / (2.0 * h);
  const double fd2 = (pr.F(s + h) - 2.0 * pr.F(s) + pr.F(s - h)) / (h * h);
  CHECK(std::abs(pr.dF(s) - fd1) < 1e-8 * (1.0 + std::abs(fd1)));
  CHECK(std::abs(pr.d2F(s) - fd2) < 1e-4 * (1.0 + std::abs(fd2)));
}

}  // namespace

TEST_CASE("conic radial values and derivatives") {
  // Degenerate conic: sphere of radius R, gradient zero.
  const shapes::ConicOfRevolution sph{1.4, 0.0, Vec3::UnitZ()};
  const auto cp = geom::chart_point_s2(1.1, 0.3);
  const auto js = sph.radial(cp);
  CHECK(js.rho == doctest::Approx(1.4).epsilon(1e-15));
  CHECK(js.d1.norm() < 1e-15);

  // Ellipsoid on the equator: rho = p.
  const shapes::ConicOfRevolution ell{1.0, 0.5, Vec3::UnitZ()};
  const auto je = ell.radial(geom::chart_point_s2(kPi / 2.0, 2.0));
  CHECK(std::abs(je.rho - 1.0) < 1e-15);

  for (double s : {-0.8, -0.2, 0.3, 0.6})
    check_profile_derivatives(ell.profile(), s);

  // Paraboloid: the axis point is outside the domain.
  const shapes::ConicOfRevolution par{1.0, 1.0, Vec3::UnitZ()};
  CHECK_THROWS_AS(par.radial(geom::chart_point_s2(1e-10, 0.0)),
                  std::domain_error);
  CHECK_FALSE(par.profile().in_domain(1.0));

  // Hyperboloid sheet: domain s < 1/ecc.
  const shapes::ConicOfRevolution hyp{1.0, 2.0, Vec3::UnitZ()};
  CHECK(hyp.profile().in_domain(0.3));
  CHECK_FALSE(hyp.profile().in_domain(0.6));
  CHECK_THROWS_AS(hyp.radial(geom::chart_point_s2(1.0, 0.0)),
                  std::domain_error);
}

TEST_CASE("second focus formula") {
  const Vec3 u = Vec3::UnitX();
  CHECK(shapes::ConicOfRevolution{2.0, 0.0, u}.second_focus().norm() == 0.0);
  CHECK((shapes::ConicOfRevolution{1.0, 0.5, u}.second_focus() -
         Vec3(4.0 / 3.0, 0, 0))
            .norm() < 1e-14);
  CHECK((shapes::ConicOfRevolution{1.0, 2.0, u}.second_focus() -
         Vec3(-4.0 / 3.0, 0, 0))
            .norm() < 1e-14);
  CHECK_THROWS_AS((shapes::ConicOfRevolution{1.0, 1.0, u}.second_focus()),
                  std::domain_error);
  // Focal distance scales linearly with p at fixed eccentricity.
  const Vec3 a1 = shapes::ConicOfRevolution{1.0, 0.7, u}.second_focus();
  const Vec3 a3 = shapes::ConicOfRevolution{3.0, 0.7, u}.second_focus();
  CHECK((a3 - 3.0 * a1).norm() < 1e-13);
}

TEST_CASE("expected intensity forms of the oracle catalog") {
  const auto cp = geom::chart_point_s2(kPi / 2.0, 0.7);
  const Mat2 e = cp.e();

  const shapes::ConicOfRevolution sph{1.0, 0.0, Vec3::UnitZ()};
  CHECK((sph.expected_intensity_form(cp) - e).cwiseAbs().maxCoeff() < 1e-14);

  const shapes::PlanePiece plane{Vec3::UnitX(), 1.0};
  const auto cpx = geom::chart_point_s2(kPi / 2.0, 0.4);  // <x,d> > 0
  CHECK((plane.expected_intensity_form(cpx) + cpx.e()).cwiseAbs().maxCoeff() <
        1e-14);

  const shapes::ConicOfRevolution par{1.0, 1.0, Vec3::UnitZ()};
  CHECK(par.expected_intensity_form(cp).cwiseAbs().maxCoeff() == 0.0);

  const shapes::ConicOfRevolution ell{1.0, 0.5, Vec3::UnitZ()};
  CHECK((ell.expected_intensity_form(cp) - 0.6 * e).cwiseAbs().maxCoeff() <
        1e-13);
  CHECK(ell.expected_intensity_factor(cp.x) == doctest::Approx(0.6));

  // Hyperboloid: negative factor -rho/|rho x - a|.
  const shapes::ConicOfRevolution hyp{1.0, 2.0, Vec3::UnitZ()};
  const double f = hyp.expected_intensity_factor(cp.x);
  const double rho = 1.0;  // equator: 1/(1 - 2*0)
  CHECK(f == doctest::Approx(-rho / (rho * cp.x - hyp.second_focus()).norm()));
}

TEST_CASE("computed intensity form matches the closed forms on grids") {
  for (int n : {1, 2}) {
    const GridPtr g = SphereGrid::build(n, n == 1 ? 128 : 16);
    const Vec3 axis = n == 1 ? Vec3(1, 0, 0) : Vec3(0, 0, 1);
    for (double ecc : {0.0, 0.3, 0.8}) {
      const shapes::ConicOfRevolution conic{1.0, ecc, axis};
      const auto pr = conic.profile();
      double worst = 0.0;
      for (int p = 0; p < g->points(); ++p) {
        const auto& cp = g->point(p);
        const Mat2 diff =
            core::kappa_at(cp, pr.jet(cp)) - conic.expected_intensity_form(cp);
        worst = std::max(worst, diff.cwiseAbs().maxCoeff());
      }
      CHECK(worst < 1e-11);
    }
  }
}

TEST_CASE("rescaling p leaves the intensity form invariant") {
  const auto cp = geom::chart_point_s2(1.9, 0.2);
  for (double ecc : {0.4, 1.0, 1.8}) {
    if (!shapes::ConicOfRevolution{1.0, ecc, Vec3::UnitZ()}.profile().in_domain(
            cp.x.z()))
      continue;
    const shapes::ConicOfRevolution c1{1.0, ecc, Vec3::UnitZ()};
    const shapes::ConicOfRevolution c2{2.5, ecc, Vec3::UnitZ()};
    const Mat2 k1 = core::kappa_at(cp, c1.profile().jet(cp));
    const Mat2 k2 = core::kappa_at(cp, c2.profile().jet(cp));
    CHECK((k1 - k2).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("axisymmetric curvature decomposition matches the full form") {
  const shapes::ConicOfRevolution ell{1.0, 0.6, Vec3::UnitZ()};
  const auto pr = ell.profile();
  for (double th : {0.4, 1.0, 1.6, 2.5}) {
    const auto cp = geom::chart_point_s2(th, 1.1);
    const double s = cp.x.z();
    const auto pc = shapes::profile_curvature(pr, s);
    // kappa = alpha e + beta ds x ds with ds = d<x,u> in chart components.
    const Vec2 ds(cp.x_th.z(), cp.x_ph.z());
    const Mat2 expect = pc.alpha * cp.e() + pc.beta * ds * ds.transpose();
    const Mat2 kap = core::kappa_at(cp, pr.jet(cp));
    CHECK((kap - expect).cwiseAbs().maxCoeff() < 1e-12);
    // S1 and S2 against the trace/determinant of the computed form.
    const double S1 = (cp.e_inv() * kap).trace();
    CHECK(std::abs(shapes::profile_mean_intensity(pr, 2, s) - S1) < 1e-11);
    const double S2 = kap.determinant() / cp.det_e();
    CHECK(std::abs(shapes::profile_top_intensity(pr, 2, s) - S2) < 1e-11);
  }
}

TEST_CASE("plane piece domain is the open hemisphere") {
  const shapes::PlanePiece plane{Vec3::UnitZ(), 2.0};
  const auto pr = plane.profile();
  CHECK(pr.in_domain(0.5));
  CHECK_FALSE(pr.in_domain(0.0));
  CHECK_FALSE(pr.in_domain(-0.5));
  const auto cp = geom::chart_point_s2(0.8, 0.0);
  CHECK(std::abs(pr.jet(cp).rho - 2.0 / std::cos(0.8)) < 1e-13);
}

TEST_CASE("circle-plane shapes require an in-plane axis") {
  CHECK_THROWS_AS(shapes::validate_axis(1, Vec3::UnitZ()),
                  std::invalid_argument);
  shapes::validate_axis(1, Vec3(1, 0, 0));
  shapes::validate_axis(2, Vec3::UnitZ());
}

TEST_CASE("ambient evaluation agrees with chart jets") {
  const shapes::ConicOfRevolution ell{1.0, 0.5, Vec3(0.6, 0.0, 0.8)};
  const auto pr = ell.profile();
  const Vec3 x = Vec3(0.3, -0.7, 0.2).normalized();
  const auto ap = pr.ambient(x);
  const auto cp = geom::chart_point_from_ambient(2, x);
  const auto ap2 = core::ambient_from_jet(cp, pr.jet(cp));
  CHECK(std::abs(ap.rho - ap2.rho) < 1e-13);
  CHECK((ap.N - ap2.N).norm() < 1e-12);
  CHECK((ap.gamma - ap2.gamma).norm() < 1e-12);
  CHECK(std::abs(ap.gamma.norm() - 1.0) < 1e-13);
}
