#include "kummer/harmonics.hpp"

#include <array>
#include <stdexcept>

namespace kummer::geom {

void gauss_legendre(int n, ArrayXd& nodes, ArrayXd& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi-style initial guess for the i-th root (descending), then Newton.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one clean-up step
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        x -= p1 / dp;
        break;
      }
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[n - 1 - i] = x;  // ascending order
    nodes[i] = -x;
    weights[n - 1 - i] = w;
    weights[i] = w;
  }
  if (n % 2 == 1) {
    // middle node is exactly 0
    double x = 0.0, p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    nodes[n / 2] = 0.0;
    weights[n / 2] = 2.0 / (dp * dp);
  }
}

// ---------------------------------------------------------------- CircleHarmonics

CircleHarmonics::CircleHarmonics(int M) : M_(M), K_(M / 2 - 1) {
  if (M < 8 || M % 2 != 0) throw std::invalid_argument("circle grid needs even M >= 8");
  cos_tab_.resize(M_);
  sin_tab_.resize(M_);
  for (int r = 0; r < M_; ++r) {
    cos_tab_[r] = std::cos(kTwoPi * r / M_);
    sin_tab_[r] = std::sin(kTwoPi * r / M_);
  }
}

ArrayXd CircleHarmonics::analyze(const ArrayXd& values) const {
  if (values.size() != M_) throw std::invalid_argument("value count mismatch");
  ArrayXd c = ArrayXd::Zero(coeff_count());
  const double dth = kTwoPi / M_;
  c[0] = values.sum() * dth / std::sqrt(kTwoPi);
  const double sc = dth / std::sqrt(kPi);
  for (int j = 1; j <= K_; ++j) {
    double ac = 0.0, as = 0.0;
    for (int k = 0; k < M_; ++k) {
      int r = int((long long)(j) * k % M_);
      ac += values[k] * cos_tab_[r];
      as += values[k] * sin_tab_[r];
    }
    c[2 * j - 1] = ac * sc;
    c[2 * j] = as * sc;
  }
  return c;
}

ArrayXd CircleHarmonics::synthesize(const ArrayXd& coeffs) const {
  ArrayXd f, d1, d2;
  synthesize_jet(coeffs, f, d1, d2);
  return f;
}

void CircleHarmonics::synthesize_jet(const ArrayXd& coeffs, ArrayXd& f,
                                     ArrayXd& d1, ArrayXd& d2) const {
  if (coeffs.size() != coeff_count()) throw std::invalid_argument("coeff count mismatch");
  f = ArrayXd::Constant(M_, coeffs[0] / std::sqrt(kTwoPi));
  d1 = ArrayXd::Zero(M_);
  d2 = ArrayXd::Zero(M_);
  const double isp = 1.0 / std::sqrt(kPi);
  for (int j = 1; j <= K_; ++j) {
    const double ac = coeffs[2 * j - 1] * isp, as = coeffs[2 * j] * isp;
    for (int k = 0; k < M_; ++k) {
      int r = int((long long)(j) * k % M_);
      const double cv = cos_tab_[r], sv = sin_tab_[r];
      const double val = ac * cv + as * sv;
      f[k] += val;
      d1[k] += j * (-ac * sv + as * cv);
      d2[k] -= j * j * val;
    }
  }
}

SynthJet CircleHarmonics::eval(const ArrayXd& coeffs, double theta) const {
  if (coeffs.size() != coeff_count()) throw std::invalid_argument("coeff count mismatch");
  SynthJet out;
  out.f = coeffs[0] / std::sqrt(kTwoPi);
  const double isp = 1.0 / std::sqrt(kPi);
  for (int j = 1; j <= K_; ++j) {
    const double cv = std::cos(j * theta), sv = std::sin(j * theta);
    const double ac = coeffs[2 * j - 1] * isp, as = coeffs[2 * j] * isp;
    out.f += ac * cv + as * sv;
    out.d_th += j * (-ac * sv + as * cv);
    out.d_thth -= j * j * (ac * cv + as * sv);
  }
  return out;
}

// ---------------------------------------------------------------- SphereHarmonics

SphereHarmonics::SphereHarmonics(int L_max)
    : L_(L_max), nlat_(L_max + 1), nlon_(2 * (L_max + 1)) {
  if (L_ < 4 || L_ > 128) throw std::invalid_argument("sphere band limit out of range [4,128]");
  ArrayXd mu_asc, w_asc;
  gauss_legendre(nlat_, mu_asc, w_asc);
  mu_.resize(nlat_);
  glw_.resize(nlat_);
  theta_.resize(nlat_);
  sin_th_.resize(nlat_);
  cos_th_.resize(nlat_);
  for (int i = 0; i < nlat_; ++i) {
    // colatitude ascending => mu descending
    mu_[i] = mu_asc[nlat_ - 1 - i];
    glw_[i] = w_asc[nlat_ - 1 - i];
    theta_[i] = std::acos(mu_[i]);
    sin_th_[i] = std::sin(theta_[i]);
    cos_th_[i] = mu_[i];
  }
  degree_.resize(coeff_count());
  for (int l = 0; l <= L_; ++l)
    for (int c = l * l; c < (l + 1) * (l + 1); ++c) degree_[c] = l;

  P_.resize(L_ + 1);
  dP_.resize(L_ + 1);
  for (int m = 0; m <= L_; ++m) {
    P_[m].resize(nlat_, L_ + 1 - m);
    dP_[m].resize(nlat_, L_ + 1 - m);
  }
  std::vector<Eigen::ArrayXd> Prow, dProw;
  for (int i = 0; i < nlat_; ++i) {
    legendre_row(mu_[i], Prow, dProw);
    for (int m = 0; m <= L_; ++m)
      for (int l = m; l <= L_; ++l) {
        P_[m](i, l - m) = Prow[m][l - m];
        dP_[m](i, l - m) = dProw[m][l - m];
      }
  }
  cos_tab_.resize(nlon_);
  sin_tab_.resize(nlon_);
  for (int r = 0; r < nlon_; ++r) {
    cos_tab_[r] = std::cos(kTwoPi * r / nlon_);
    sin_tab_[r] = std::sin(kTwoPi * r / nlon_);
  }
}

// Normalized associated Legendre values and theta-derivatives at one mu.
// Recurrences (no Condon-Shortley phase):
//   Phat_00 = sqrt(1/2)
//   Phat_mm = sqrt((2m+1)/(2m)) * sin(th) * Phat_{m-1,m-1}
//   Phat_lm = a_lm mu Phat_{l-1,m} - b_lm Phat_{l-2,m}
//   d/dth Phat_lm = (l mu Phat_lm - d_lm Phat_{l-1,m}) / sin(th)
void SphereHarmonics::legendre_row(double mu, std::vector<Eigen::ArrayXd>& P,
                                   std::vector<Eigen::ArrayXd>& dP) const {
  const double sth = std::sqrt(std::max(0.0, 1.0 - mu * mu));
  P.resize(L_ + 1);
  dP.resize(L_ + 1);
  for (int m = 0; m <= L_; ++m) {
    P[m].resize(L_ + 1 - m);
    dP[m].resize(L_ + 1 - m);
  }
  P[0][0] = std::sqrt(0.5);
  for (int m = 1; m <= L_; ++m)
    P[m][0] = std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * sth * P[m - 1][0];
  for (int m = 0; m <= L_; ++m) {
    for (int l = m + 1; l <= L_; ++l) {
      const double a = std::sqrt((2.0 * l - 1.0) * (2.0 * l + 1.0) /
                                 ((double)(l - m) * (l + m)));
      double v = a * mu * P[m][l - 1 - m];
      if (l - 2 >= m) {
        const double b =
            std::sqrt((2.0 * l + 1.0) * (l - 1.0 - m) * (l - 1.0 + m) /
                      ((2.0 * l - 3.0) * (l - m) * (l + m)));
        v -= b * P[m][l - 2 - m];
      }
      P[m][l - m] = v;
    }
    for (int l = m; l <= L_; ++l) {
      double num = l * mu * P[m][l - m];
      if (l - 1 >= m) {
        const double d = std::sqrt((2.0 * l + 1.0) / (2.0 * l - 1.0) *
                                   ((double)l * l - (double)m * m));
        num -= d * P[m][l - 1 - m];
      }
      dP[m][l - m] = num / sth;
    }
  }
}

ArrayXd SphereHarmonics::analyze(const ArrayXd& values) const {
  if (values.size() != points()) throw std::invalid_argument("value count mismatch");
  const double dph = kTwoPi / nlon_;
  // Fourier step in longitude: Cm(i), Sm(i) = sum_j f(i,j) cos/sin(m ph_j) dph
  Eigen::MatrixXd C(nlat_, L_ + 1), S(nlat_, L_ + 1);
  for (int m = 0; m <= L_; ++m) {
    for (int i = 0; i < nlat_; ++i) {
      double ac = 0.0, as = 0.0;
      const double* row = values.data() + (size_t)i * nlon_;
      for (int j = 0; j < nlon_; ++j) {
        int r = int((long long)(m) * j % nlon_);
        ac += row[j] * cos_tab_[r];
        as += row[j] * sin_tab_[r];
      }
      C(i, m) = ac * dph;
      S(i, m) = as * dph;
    }
  }
  // Legendre step in latitude.
  ArrayXd c = ArrayXd::Zero(coeff_count());
  const double is2p = 1.0 / std::sqrt(kTwoPi), isp = 1.0 / std::sqrt(kPi);
  for (int m = 0; m <= L_; ++m) {
    for (int l = m; l <= L_; ++l) {
      double ac = 0.0, as = 0.0;
      for (int i = 0; i < nlat_; ++i) {
        const double w = glw_[i] * P_[m](i, l - m);
        ac += w * C(i, m);
        as += w * S(i, m);
      }
      if (m == 0) {
        c[coeff_index(l, 0, false)] = ac * is2p;
      } else {
        c[coeff_index(l, m, false)] = ac * isp;
        c[coeff_index(l, m, true)] = as * isp;
      }
    }
  }
  return c;
}

ArrayXd SphereHarmonics::synthesize(const ArrayXd& coeffs) const {
  std::array<ArrayXd, 6> jet;
  synthesize_jet(coeffs, jet);
  return jet[0];
}

void SphereHarmonics::synthesize_jet(const ArrayXd& coeffs,
                                     std::array<ArrayXd, 6>& out) const {
  if (coeffs.size() != coeff_count()) throw std::invalid_argument("coeff count mismatch");
  for (auto& a : out) a = ArrayXd::Zero(points());
  const double is2p = 1.0 / std::sqrt(kTwoPi), isp = 1.0 / std::sqrt(kPi);
  // Per-latitude accumulators: value, d/dth, d2/dth2 for the cos and sin parts.
  ArrayXd Gc(nlat_), Gs(nlat_), dGc(nlat_), dGs(nlat_), d2Gc(nlat_), d2Gs(nlat_);
  for (int m = 0; m <= L_; ++m) {
    Gc.setZero(); Gs.setZero(); dGc.setZero(); dGs.setZero();
    d2Gc.setZero(); d2Gs.setZero();
    for (int l = m; l <= L_; ++l) {
      double ac, as;
      if (m == 0) {
        ac = coeffs[coeff_index(l, 0, false)] * is2p;
        as = 0.0;
      } else {
        ac = coeffs[coeff_index(l, m, false)] * isp;
        as = coeffs[coeff_index(l, m, true)] * isp;
      }
      if (ac == 0.0 && as == 0.0) continue;
      for (int i = 0; i < nlat_; ++i) {
        const double p = P_[m](i, l - m), dp = dP_[m](i, l - m);
        // second theta-derivative from the associated Legendre ODE
        const double d2p = -cos_th_[i] / sin_th_[i] * dp -
                           (l * (l + 1.0) - (double)m * m / (sin_th_[i] * sin_th_[i])) * p;
        Gc[i] += ac * p;
        dGc[i] += ac * dp;
        d2Gc[i] += ac * d2p;
        if (m > 0) {
          Gs[i] += as * p;
          dGs[i] += as * dp;
          d2Gs[i] += as * d2p;
        }
      }
    }
    for (int i = 0; i < nlat_; ++i) {
      if (m == 0 && Gc[i] == 0.0 && dGc[i] == 0.0 && d2Gc[i] == 0.0) continue;
      double* f = out[0].data() + (size_t)i * nlon_;
      double* ft = out[1].data() + (size_t)i * nlon_;
      double* fp = out[2].data() + (size_t)i * nlon_;
      double* ftt = out[3].data() + (size_t)i * nlon_;
      double* ftp = out[4].data() + (size_t)i * nlon_;
      double* fpp = out[5].data() + (size_t)i * nlon_;
      for (int j = 0; j < nlon_; ++j) {
        int r = int((long long)(m) * j % nlon_);
        const double cv = cos_tab_[r], sv = sin_tab_[r];
        const double val = Gc[i] * cv + Gs[i] * sv;
        const double dval = dGc[i] * cv + dGs[i] * sv;
        f[j] += val;
        ft[j] += dval;
        ftt[j] += d2Gc[i] * cv + d2Gs[i] * sv;
        if (m > 0) {
          fp[j] += m * (-Gc[i] * sv + Gs[i] * cv);
          ftp[j] += m * (-dGc[i] * sv + dGs[i] * cv);
          fpp[j] -= m * m * val;
        }
      }
    }
  }
}

SynthJet SphereHarmonics::eval(const ArrayXd& coeffs, double theta,
                               double phi) const {
  if (coeffs.size() != coeff_count()) throw std::invalid_argument("coeff count mismatch");
  const double mu = std::cos(theta), sth = std::sin(theta);
  if (sth < 1e-12) throw std::domain_error("chart evaluation at a pole");
  std::vector<Eigen::ArrayXd> Prow, dProw;
  legendre_row(mu, Prow, dProw);
  const double is2p = 1.0 / std::sqrt(kTwoPi), isp = 1.0 / std::sqrt(kPi);
  SynthJet out;
  for (int m = 0; m <= L_; ++m) {
    double Gc = 0.0, Gs = 0.0, dGc = 0.0, dGs = 0.0, d2Gc = 0.0, d2Gs = 0.0;
    for (int l = m; l <= L_; ++l) {
      double ac, as;
      if (m == 0) {
        ac = coeffs[coeff_index(l, 0, false)] * is2p;
        as = 0.0;
      } else {
        ac = coeffs[coeff_index(l, m, false)] * isp;
        as = coeffs[coeff_index(l, m, true)] * isp;
      }
      const double p = Prow[m][l - m], dp = dProw[m][l - m];
      const double d2p =
          -mu / sth * dp - (l * (l + 1.0) - (double)m * m / (sth * sth)) * p;
      Gc += ac * p;
      dGc += ac * dp;
      d2Gc += ac * d2p;
      if (m > 0) {
        Gs += as * p;
        dGs += as * dp;
        d2Gs += as * d2p;
      }
    }
    const double cv = std::cos(m * phi), sv = std::sin(m * phi);
    out.f += Gc * cv + Gs * sv;
    out.d_th += dGc * cv + dGs * sv;
    out.d_thth += d2Gc * cv + d2Gs * sv;
    out.d_ph += m * (-Gc * sv + Gs * cv);
    out.d_thph += m * (-dGc * sv + dGs * cv);
    out.d_phph -= m * m * (Gc * cv + Gs * sv);
  }
  return out;
}

}  // namespace kummer::geom
