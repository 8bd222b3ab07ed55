#pragma once

#include <memory>
#include <vector>

#include "kummer/types.hpp"

namespace kummer::geom {

// Value and first/second chart derivatives of a synthesized function at one
// point. For S^1 only f, d_th, d_thth are populated.
struct SynthJet {
  double f = 0.0;
  double d_th = 0.0, d_ph = 0.0;
  double d_thth = 0.0, d_thph = 0.0, d_phph = 0.0;
};

// Real trigonometric basis on the unit circle, orthonormal w.r.t. arclength:
//   Y_0 = 1/sqrt(2pi), Y_{2j-1} = cos(j th)/sqrt(pi), Y_{2j} = sin(j th)/sqrt(pi),
// for j = 1..K with K = M/2 - 1 (Nyquist mode excluded). Collocation at the M
// equispaced angles th_k = 2 pi k / M; analysis uses the (exact for this band
// limit) trapezoidal quadrature. All trig values come from an integer-reduced
// table cos(2 pi r / M), so transforms are reproducible to the last bit.
class CircleHarmonics {
 public:
  explicit CircleHarmonics(int M);

  int points() const { return M_; }
  int band_limit() const { return K_; }
  int coeff_count() const { return 2 * K_ + 1; }
  double theta(int k) const { return kTwoPi * k / M_; }

  // Harmonic degree j of coefficient index c (0 for the constant).
  int degree(int c) const { return c == 0 ? 0 : (c + 1) / 2; }

  ArrayXd analyze(const ArrayXd& values) const;
  ArrayXd synthesize(const ArrayXd& coeffs) const;
  // Derivative synthesis at the collocation points.
  void synthesize_jet(const ArrayXd& coeffs, ArrayXd& f, ArrayXd& d1,
                      ArrayXd& d2) const;
  // Direct evaluation of the series and its derivatives at an arbitrary angle.
  SynthJet eval(const ArrayXd& coeffs, double theta) const;

 private:
  int M_, K_;
  ArrayXd cos_tab_, sin_tab_;  // cos/sin(2 pi r / M), r = 0..M-1
};

// Real spherical-harmonic basis on S^2, orthonormal w.r.t. surface measure:
//   Y_{l0} = Phat_{l0}(cos th)/sqrt(2pi),
//   Y_{lm}^c = Phat_{lm}(cos th) cos(m ph)/sqrt(pi),
//   Y_{lm}^s = Phat_{lm}(cos th) sin(m ph)/sqrt(pi),
// where Phat_lm are L2-normalized associated Legendre functions (no
// Condon-Shortley phase). Collocation grid: Gauss-Legendre colatitudes
// (nlat = L+1 nodes, poles excluded by construction) x equispaced longitudes
// (nlon = 2(L+1)). Analysis quadrature is exact for integrands of Legendre
// degree <= 2L+1, hence exact for products of two band-limited fields.
// Coefficient layout: degree l occupies indices l^2 .. l^2+2l with order
// (m=0), (m=1 cos), (m=1 sin), ..., (m=l cos), (m=l sin).
class SphereHarmonics {
 public:
  explicit SphereHarmonics(int L_max);

  int L() const { return L_; }
  int nlat() const { return nlat_; }
  int nlon() const { return nlon_; }
  int points() const { return nlat_ * nlon_; }
  int coeff_count() const { return (L_ + 1) * (L_ + 1); }

  double theta(int i) const { return theta_[i]; }
  double phi(int j) const { return kTwoPi * j / nlon_; }
  double gauss_weight(int i) const { return glw_[i]; }  // weight in mu = cos th

  int degree(int c) const { return degree_[c]; }
  static int coeff_index(int l, int m, bool sine) {
    return l * l + (m == 0 ? 0 : 2 * m - 1 + (sine ? 1 : 0));
  }

  // values laid out row-major: index i*nlon + j.
  ArrayXd analyze(const ArrayXd& values) const;
  ArrayXd synthesize(const ArrayXd& coeffs) const;
  void synthesize_jet(const ArrayXd& coeffs, std::array<ArrayXd, 6>& out) const;
  SynthJet eval(const ArrayXd& coeffs, double theta, double phi) const;

 private:
  int L_, nlat_, nlon_;
  ArrayXd mu_, glw_, theta_, sin_th_, cos_th_;
  std::vector<int> degree_;
  // P_[m] is nlat x (L+1-m): normalized Legendre values per node for l >= m.
  std::vector<Eigen::MatrixXd> P_, dP_;  // value and d/dtheta
  ArrayXd cos_tab_, sin_tab_;            // integer-reduced trig on longitudes

  void legendre_row(double mu, std::vector<Eigen::ArrayXd>& P,
                    std::vector<Eigen::ArrayXd>& dP) const;
};

// Gauss-Legendre nodes (ascending) and weights on [-1,1].
void gauss_legendre(int n, ArrayXd& nodes, ArrayXd& weights);

}  // namespace kummer::geom
