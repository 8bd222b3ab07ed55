#include "kummer/field.hpp"

#include <random>
#include <stdexcept>
#include <vector>

namespace kummer::geom {

ScalarField::ScalarField(GridPtr grid, ArrayXd values, Smoothness s)
    : grid_(std::move(grid)), values_(std::move(values)), smooth_(s) {
  if (values_.size() != grid_->points())
    throw std::invalid_argument("field values do not match grid size");
}

ScalarField ScalarField::constant(const GridPtr& grid, double value) {
  return ScalarField(grid, ArrayXd::Constant(grid->points(), value));
}

ScalarField ScalarField::from_coeffs(const GridPtr& grid, const ArrayXd& coeffs) {
  ArrayXd v = grid->dimension() == 1 ? grid->circle().synthesize(coeffs)
                                     : grid->sphere().synthesize(coeffs);
  ScalarField f(grid, std::move(v), Smoothness::BandLimited);
  f.coeffs_ = coeffs;
  return f;
}

const ArrayXd& ScalarField::coeffs() const {
  if (!coeffs_)
    coeffs_ = grid_->dimension() == 1 ? grid_->circle().analyze(values_)
                                      : grid_->sphere().analyze(values_);
  return *coeffs_;
}

ScalarField ScalarField::operator+(const ScalarField& o) const {
  Smoothness s = (smooth_ == Smoothness::BandLimited &&
                  o.smooth_ == Smoothness::BandLimited)
                     ? Smoothness::BandLimited
                     : Smoothness::General;
  return ScalarField(grid_, values_ + o.values_, s);
}

ScalarField ScalarField::operator-(const ScalarField& o) const {
  Smoothness s = (smooth_ == Smoothness::BandLimited &&
                  o.smooth_ == Smoothness::BandLimited)
                     ? Smoothness::BandLimited
                     : Smoothness::General;
  return ScalarField(grid_, values_ - o.values_, s);
}

ScalarField ScalarField::operator*(double s) const {
  return ScalarField(grid_, values_ * s, smooth_);
}

ScalarField ScalarField::operator+(double s) const {
  return ScalarField(grid_, values_ + s, smooth_);
}

// ----------------------------------------------------------------- spectral jet

static FieldJet spectral_jet(const ScalarField& f) {
  FieldJet jet;
  const auto& g = *f.grid();
  if (g.dimension() == 1) {
    g.circle().synthesize_jet(f.coeffs(), jet.f, jet.d_th, jet.d_thth);
    jet.d_ph = jet.d_thph = jet.d_phph = ArrayXd::Zero(g.points());
  } else {
    std::array<ArrayXd, 6> out;
    g.sphere().synthesize_jet(f.coeffs(), out);
    jet.f = std::move(out[0]);
    jet.d_th = std::move(out[1]);
    jet.d_ph = std::move(out[2]);
    jet.d_thth = std::move(out[3]);
    jet.d_thph = std::move(out[4]);
    jet.d_phph = std::move(out[5]);
  }
  return jet;
}

// ---------------------------------------------------------------------- FD jet

// Fornberg weights for derivatives 0..dmax at x0 on arbitrary nodes.
static Eigen::MatrixXd fornberg_weights(double x0, const std::vector<double>& xs,
                                        int dmax) {
  const int m = (int)xs.size();
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(m, dmax + 1);
  double c1 = 1.0, c4 = xs[0] - x0;
  C(0, 0) = 1.0;
  for (int i = 1; i < m; ++i) {
    const int mn = std::min(i, dmax);
    double c2 = 1.0, c5 = c4;
    c4 = xs[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          C(i, k) = c1 * (k * C(i - 1, k - 1) - c5 * C(i - 1, k)) / c2;
        C(i, 0) = -c1 * c5 * C(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; --k)
        C(j, k) = (c4 * C(j, k) - k * C(j, k - 1)) / c3;
      C(j, 0) = c4 * C(j, 0) / c3;
    }
    c1 = c2;
  }
  return C;
}

// Periodic uniform 4th-order stencils along one row.
static void fd4_periodic(const double* f, int n, double h, double* d1,
                         double* d2) {
  const double i12h = 1.0 / (12.0 * h), i12h2 = 1.0 / (12.0 * h * h);
  for (int j = 0; j < n; ++j) {
    const double fm2 = f[(j - 2 + n) % n], fm1 = f[(j - 1 + n) % n];
    const double fp1 = f[(j + 1) % n], fp2 = f[(j + 2) % n];
    d1[j] = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) * i12h;
    d2[j] = (-fm2 + 16.0 * fm1 - 30.0 * f[j] + 16.0 * fp1 - fp2) * i12h2;
  }
}

FieldJet field_jet_fd4(const ScalarField& field) {
  const auto& g = *field.grid();
  const ArrayXd& v = field.values();
  FieldJet jet;
  jet.f = v;
  const int np = g.points();
  jet.d_th.resize(np);
  jet.d_ph = ArrayXd::Zero(np);
  jet.d_thth.resize(np);
  jet.d_thph = ArrayXd::Zero(np);
  jet.d_phph = ArrayXd::Zero(np);

  if (g.dimension() == 1) {
    fd4_periodic(v.data(), np, g.dphi(), jet.d_th.data(), jet.d_thth.data());
    return jet;
  }

  const auto& sh = g.sphere();
  const int nlat = sh.nlat(), nlon = sh.nlon(), half = nlon / 2;
  const double hph = kTwoPi / nlon;

  // Longitude derivatives: uniform periodic per latitude row.
  for (int i = 0; i < nlat; ++i)
    fd4_periodic(v.data() + (size_t)i * nlon, nlon, hph,
                 jet.d_ph.data() + (size_t)i * nlon,
                 jet.d_phph.data() + (size_t)i * nlon);

  // Latitude: 5-row stencils on the Gauss nodes, extended across the poles by
  // the identification (theta, phi) -> (-theta, phi + pi).
  auto ext_theta = [&](int i) -> double {
    if (i < 0) return -sh.theta(-1 - i);
    if (i >= nlat) return 2.0 * kPi - sh.theta(2 * nlat - 1 - i);
    return sh.theta(i);
  };
  auto ext_value = [&](const ArrayXd& a, int i, int j) -> double {
    int ii = i, jj = j;
    if (i < 0) {
      ii = -1 - i;
      jj = (j + half) % nlon;
    } else if (i >= nlat) {
      ii = 2 * nlat - 1 - i;
      jj = (j + half) % nlon;
    }
    return a[(size_t)ii * nlon + jj];
  };
  for (int i = 0; i < nlat; ++i) {
    std::vector<double> xs(5);
    for (int k = -2; k <= 2; ++k) xs[k + 2] = ext_theta(i + k);
    const Eigen::MatrixXd W = fornberg_weights(sh.theta(i), xs, 2);
    for (int j = 0; j < nlon; ++j) {
      double s1 = 0.0, s2 = 0.0, sm = 0.0;
      for (int k = -2; k <= 2; ++k) {
        const double fv = ext_value(v, i + k, j);
        // phi-parity flip across the pole: d/dphi picks up no sign change
        // under (theta,phi)->(-theta,phi+pi), so the extension applies as-is.
        const double fpv = ext_value(jet.d_ph, i + k, j);
        s1 += W(k + 2, 1) * fv;
        s2 += W(k + 2, 2) * fv;
        sm += W(k + 2, 1) * fpv;
      }
      jet.d_th[(size_t)i * nlon + j] = s1;
      jet.d_thth[(size_t)i * nlon + j] = s2;
      jet.d_thph[(size_t)i * nlon + j] = sm;
    }
  }
  return jet;
}

FieldJet field_jet(const ScalarField& f) {
  return f.smoothness() == Smoothness::BandLimited ? spectral_jet(f)
                                                   : field_jet_fd4(f);
}

// ------------------------------------------------------------------- operators

CovectorField gradient(const ScalarField& f) {
  FieldJet jet = field_jet(f);
  CovectorField out(f.grid());
  out.d_th = std::move(jet.d_th);
  out.d_ph = std::move(jet.d_ph);
  return out;
}

Mat2 covariant_hessian_at(const ChartPoint& cp, const Vec2& d1, const Mat2& raw2) {
  return raw2 - cp.christoffel_term(d1);
}

SymTensorField2 covariant_hessian(const ScalarField& f) {
  FieldJet jet = field_jet(f);
  const auto& g = *f.grid();
  SymTensorField2 out(f.grid());
  if (g.dimension() == 1) {
    out.tt() = jet.d_thth;
    return out;
  }
  for (int p = 0; p < g.points(); ++p) {
    const auto& cp = g.point(p);
    out.tt()[p] = jet.d_thth[p];
    out.tp()[p] = jet.d_thph[p] - cp.cth / cp.sth * jet.d_ph[p];
    out.pp()[p] = jet.d_phph[p] + cp.sth * cp.cth * jet.d_th[p];
  }
  return out;
}

ScalarField laplace_beltrami(const ScalarField& f) {
  const auto& g = *f.grid();
  const int n = g.dimension();
  if (f.smoothness() == Smoothness::BandLimited) {
    ArrayXd c = f.coeffs();
    for (int k = 0; k < c.size(); ++k) {
      const double l = g.coeff_degree(k);
      c[k] *= -l * (l + n - 1.0);
    }
    return ScalarField::from_coeffs(f.grid(), c);
  }
  FieldJet jet = field_jet_fd4(f);
  ArrayXd lap(g.points());
  if (n == 1) {
    lap = jet.d_thth;
  } else {
    for (int p = 0; p < g.points(); ++p) {
      const auto& cp = g.point(p);
      lap[p] = jet.d_thth[p] + cp.cth / cp.sth * jet.d_th[p] +
               jet.d_phph[p] / (cp.sth * cp.sth);
    }
  }
  return ScalarField(f.grid(), std::move(lap), Smoothness::General);
}

double integrate(const ScalarField& f) {
  // sequential accumulation: bit-reproducible across runs
  const ArrayXd& w = f.grid()->weights();
  const ArrayXd& v = f.values();
  double s = 0.0;
  for (int p = 0; p < v.size(); ++p) s += w[p] * v[p];
  return s;
}

double mean_value(const ScalarField& f) {
  return integrate(f) / f.grid()->volume();
}

ScalarField solve_shifted_laplacian(const ScalarField& rhs) {
  const auto& g = *rhs.grid();
  const int n = g.dimension();
  ArrayXd c = rhs.coeffs();
  for (int k = 0; k < c.size(); ++k) {
    const double l = g.coeff_degree(k);
    c[k] /= 0.5 * n - l * (l + n - 1.0);
  }
  return ScalarField::from_coeffs(rhs.grid(), c);
}

ScalarField apply_shifted_laplacian(const ScalarField& v) {
  const auto& g = *v.grid();
  const int n = g.dimension();
  ArrayXd c = v.coeffs();
  for (int k = 0; k < c.size(); ++k) {
    const double l = g.coeff_degree(k);
    c[k] *= 0.5 * n - l * (l + n - 1.0);
  }
  return ScalarField::from_coeffs(v.grid(), c);
}

ScalarField random_band_limited(const GridPtr& grid, uint64_t seed,
                                double base, double amplitude, int degree_hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ArrayXd c = ArrayXd::Zero(grid->coeff_count());
  for (int k = 0; k < c.size(); ++k) {
    const int l = grid->coeff_degree(k);
    if (l < 1 || l > degree_hi) continue;
    c[k] = u(rng) / double((1 + l) * (1 + l));
  }
  ArrayXd pert = ScalarField::from_coeffs(grid, c).values();
  const double sup = sup_norm(pert);
  if (sup > 0.0) pert *= amplitude / sup;
  return ScalarField(grid, base + pert, Smoothness::BandLimited);
}

}  // namespace kummer::geom
