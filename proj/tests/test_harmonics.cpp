// Grid construction, quadrature, and spectral transform properties.

#include <doctest.h>

#include <cmath>

#include "kummer/field.hpp"
#include "kummer/grid.hpp"

using namespace kummer;
using geom::GridPtr;
using geom::ScalarField;
using geom::SphereGrid;

TEST_CASE("circle grid weights sum to the circumference") {
  const GridPtr g = SphereGrid::build(1, 16);
  CHECK(g->points() == 16);
  CHECK(g->weights().sum() == doctest::Approx(kTwoPi).epsilon(1e-14));
}

TEST_CASE("sphere grid weights sum to the surface area") {
  const GridPtr g = SphereGrid::build(2, 16);
  CHECK(std::abs(g->weights().sum() - 4.0 * kPi) < 1e-12);
}

TEST_CASE("odd linear coordinate integrates to zero on the sphere") {
  const GridPtr g = SphereGrid::build(2, 16);
  const Vec3 u = Vec3(0.3, -0.5, 0.81).normalized();
  double acc = 0.0;
  for (int p = 0; p < g->points(); ++p)
    acc += g->weight(p) * g->point(p).x.dot(u);
  CHECK(std::abs(acc) < 1e-12);
}

TEST_CASE("grid construction rejects unsupported sizes") {
  CHECK_THROWS_AS(SphereGrid::build(3, 16), std::invalid_argument);
  CHECK_THROWS_AS(SphereGrid::build(1, 6), std::invalid_argument);    // < 8
  CHECK_THROWS_AS(SphereGrid::build(1, 15), std::invalid_argument);   // odd
  CHECK_THROWS_AS(SphereGrid::build(1, 16384), std::invalid_argument);
  CHECK_THROWS_AS(SphereGrid::build(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(SphereGrid::build(2, 200), std::invalid_argument);
}

TEST_CASE("sphere grid excludes the poles") {
  const GridPtr g = SphereGrid::build(2, 12);
  for (int p = 0; p < g->points(); ++p) {
    CHECK(g->point(p).sth > 1e-3);
  }
}

TEST_CASE("band-limited round trip values -> coefficients -> values") {
  for (int n : {1, 2}) {
    const GridPtr g = SphereGrid::build(n, n == 1 ? 64 : 20);
    ArrayXd vals(g->points());
    for (int p = 0; p < g->points(); ++p) {
      const Vec3& x = g->point(p).x;
      vals[p] = 1.0 + 0.3 * x.x() - 0.2 * x.y() * x.z() +
                0.1 * (x.x() * x.x() - x.y() * x.y());
    }
    const ScalarField f(g, vals);
    const ScalarField back = ScalarField::from_coeffs(g, f.coeffs());
    CHECK(sup_norm(back.values() - vals) < 1e-11);
  }
}

TEST_CASE("circle transform reproduces a pure mode") {
  const geom::CircleHarmonics ch(32);
  ArrayXd vals(32);
  for (int k = 0; k < 32; ++k) vals[k] = std::cos(3.0 * ch.theta(k));
  const ArrayXd c = ch.analyze(vals);
  // cos(3 th) = sqrt(pi) * Y_5 in the orthonormal trigonometric basis.
  for (int i = 0; i < c.size(); ++i) {
    const double expect = (i == 5) ? std::sqrt(kPi) : 0.0;
    CHECK(std::abs(c[i] - expect) < 1e-13);
  }
  const ArrayXd back = ch.synthesize(c);
  CHECK(sup_norm(back - vals) < 1e-13);
}

TEST_CASE("spherical-harmonic analysis is orthonormal on products") {
  const GridPtr g = SphereGrid::build(2, 10);
  const auto& sh = g->sphere();
  // Synthesize two distinct basis functions and check their quadrature
  // inner products: <Y_a, Y_b> = delta_ab (analysis quadrature is exact for
  // degree <= 2L+1 products).
  const int a = geom::SphereHarmonics::coeff_index(3, 2, false);
  const int b = geom::SphereHarmonics::coeff_index(5, 1, true);
  ArrayXd ca = ArrayXd::Zero(sh.coeff_count());
  ArrayXd cb = ArrayXd::Zero(sh.coeff_count());
  ca[a] = 1.0;
  cb[b] = 1.0;
  const ArrayXd va = sh.synthesize(ca), vb = sh.synthesize(cb);
  double aa = 0.0, ab = 0.0;
  for (int p = 0; p < g->points(); ++p) {
    aa += g->weight(p) * va[p] * va[p];
    ab += g->weight(p) * va[p] * vb[p];
  }
  CHECK(std::abs(aa - 1.0) < 1e-13);
  CHECK(std::abs(ab) < 1e-13);
}

TEST_CASE("off-grid evaluation matches collocation values") {
  const GridPtr g = SphereGrid::build(2, 14);
  ArrayXd vals(g->points());
  for (int p = 0; p < g->points(); ++p) {
    const Vec3& x = g->point(p).x;
    vals[p] = 0.7 + 0.2 * x.z() + 0.1 * x.x() * x.y();
  }
  const ScalarField f(g, vals);
  const auto& sh = g->sphere();
  for (int p = 0; p < g->points(); p += 37) {
    const auto& cp = g->point(p);
    const auto jet = sh.eval(f.coeffs(), cp.theta, cp.phi);
    CHECK(std::abs(jet.f - vals[p]) < 1e-12);
  }
}

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly") {
  ArrayXd x, w;
  geom::gauss_legendre(6, x, w);
  CHECK(std::abs(w.sum() - 2.0) < 1e-14);
  double m2 = 0.0, m10 = 0.0;
  for (int i = 0; i < 6; ++i) {
    m2 += w[i] * x[i] * x[i];
    m10 += w[i] * std::pow(x[i], 10);
  }
  CHECK(std::abs(m2 - 2.0 / 3.0) < 1e-14);
  CHECK(std::abs(m10 - 2.0 / 11.0) < 1e-13);  // degree 10 <= 2*6-1
  for (int i = 1; i < 6; ++i) CHECK(x[i] > x[i - 1]);
}
