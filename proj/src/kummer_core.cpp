#include "kummer/kummer_core.hpp"

#include <random>
#include <stdexcept>

namespace kummer::core {

// Zero the unused second chart dimension for circle grids so padded metric
// entries never leak into tensor components.
static void squash_n1(const ChartPoint& cp, Mat2& m) {
  if (cp.n == 1) {
    m(0, 1) = m(1, 0) = m(1, 1) = 0.0;
  }
}

double grad2_at(const ChartPoint& cp, const RadialJet& j) {
  return j.d1.dot(cp.e_inv() * j.d1);
}

Mat2 g_form_at(const ChartPoint& cp, const RadialJet& j) {
  Mat2 m = j.d1 * j.d1.transpose() + j.rho * j.rho * cp.e();
  squash_n1(cp, m);
  return m;
}

Mat2 g_inv_at(const ChartPoint& cp, const RadialJet& j) {
  const double W2 = j.rho * j.rho + grad2_at(cp, j);
  const Vec2 up = cp.e_inv() * j.d1;  // rho^i
  Mat2 m = (cp.e_inv() - up * up.transpose() / W2) / (j.rho * j.rho);
  squash_n1(cp, m);
  return m;
}

Mat2 b_form_at(const ChartPoint& cp, const RadialJet& j) {
  const double W = std::sqrt(j.rho * j.rho + grad2_at(cp, j));
  Mat2 m = (j.rho * j.hess - 2.0 * j.d1 * j.d1.transpose() -
            j.rho * j.rho * cp.e()) /
           W;
  squash_n1(cp, m);
  return m;
}

Mat2 kappa_at(const ChartPoint& cp, const RadialJet& j) {
  const double g2 = grad2_at(cp, j);
  const double halfW2 = 0.5 * (j.rho * j.rho + g2);
  Mat2 m = (-j.rho * j.hess + 2.0 * j.d1 * j.d1.transpose() +
            0.5 * (j.rho * j.rho - g2) * cp.e()) /
           halfW2;
  squash_n1(cp, m);
  return m;
}

Mat2 kappa_via_b_at(const ChartPoint& cp, const RadialJet& j) {
  const double W = std::sqrt(j.rho * j.rho + grad2_at(cp, j));
  Mat2 m = -(cp.e() + (2.0 / W) * b_form_at(cp, j));
  squash_n1(cp, m);
  return m;
}

Mat2 kappa_conformal_at(const ChartPoint& cp, const RadialJet& wj) {
  const double g2 = wj.d1.dot(cp.e_inv() * wj.d1);
  Mat2 m = (wj.hess + wj.d1 * wj.d1.transpose() + 0.5 * (1.0 - g2) * cp.e()) /
           (0.5 * (1.0 + g2));
  squash_n1(cp, m);
  return m;
}

Mat2 ehat_at(const ChartPoint& cp, const RadialJet& j) {
  const Mat2 k = kappa_at(cp, j);
  Mat2 m = k * cp.e_inv() * k;
  squash_n1(cp, m);
  return m;
}

Vec3 gamma_at(const ChartPoint& cp, const RadialJet& j) {
  return ambient_from_jet(cp, j).gamma;
}

// ------------------------------------------------------------------ field data

EmbedData embed(const RadialHypersurface& R) {
  const int np = R.points();
  EmbedData out;
  out.r.resize(np);
  out.N.resize(np);
  out.W.resize(np);
  for (int p = 0; p < np; ++p) {
    const AmbientPoint a = ambient_from_jet(R.grid()->point(p), R.jet(p));
    out.r[p] = a.r;
    out.N[p] = a.N;
    out.W[p] = a.W;
  }
  return out;
}

FundamentalForms fundamental_forms(const RadialHypersurface& R) {
  FundamentalForms out{SymTensorField2(R.grid()), SymTensorField2(R.grid()),
                       ArrayXd(R.points())};
  for (int p = 0; p < R.points(); ++p) {
    const auto& cp = R.grid()->point(p);
    const Mat2 g = g_form_at(cp, R.jet(p));
    out.g.set(p, g);
    out.b.set(p, b_form_at(cp, R.jet(p)));
    out.det_g[p] = cp.n == 1 ? g(0, 0) : g.determinant();
  }
  return out;
}

ReflectionField reflection_map(const RadialHypersurface& R) {
  ReflectionField out;
  out.gamma.resize(R.points());
  for (int p = 0; p < R.points(); ++p)
    out.gamma[p] = gamma_at(R.grid()->point(p), R.jet(p));
  return out;
}

static SymTensorField2 assemble(const RadialHypersurface& R,
                                Mat2 (*fn)(const ChartPoint&, const RadialJet&)) {
  SymTensorField2 out(R.grid());
  for (int p = 0; p < R.points(); ++p)
    out.set(p, fn(R.grid()->point(p), R.jet(p)));
  return out;
}

SymTensorField2 intensity_form(const RadialHypersurface& R) {
  return assemble(R, &kappa_at);
}

SymTensorField2 intensity_form_via_b(const RadialHypersurface& R) {
  return assemble(R, &kappa_via_b_at);
}

SymTensorField2 ehat_form(const RadialHypersurface& R) {
  return assemble(R, &ehat_at);
}

static ConformalResult conformal_from_wjets(const geom::GridPtr& grid,
                                            const std::vector<RadialJet>& wjets) {
  ConformalResult out{SymTensorField2(grid), SymTensorField2(grid)};
  for (int p = 0; p < grid->points(); ++p) {
    const auto& cp = grid->point(p);
    const RadialJet& wj = wjets[p];
    const Mat2 k = kappa_conformal_at(cp, wj);
    out.kappa.set(p, k);
    const double g2 = wj.d1.dot(cp.e_inv() * wj.d1);
    out.schouten.set(p, 0.5 * (1.0 + g2) * k);
  }
  return out;
}

ConformalResult conformal_intensity_form(const ScalarField& w) {
  return conformal_from_wjets(w.grid(), field_chart_jets(w));
}

ConformalResult conformal_intensity_form(const RadialHypersurface& R) {
  // w = -log rho by exact chain rule on the radial jets
  std::vector<RadialJet> wjets(R.points());
  for (int p = 0; p < R.points(); ++p) {
    const RadialJet& j = R.jet(p);
    RadialJet& wj = wjets[p];
    wj.rho = -std::log(j.rho);
    wj.d1 = -j.d1 / j.rho;
    wj.hess = -j.hess / j.rho + j.d1 * j.d1.transpose() / (j.rho * j.rho);
  }
  return conformal_from_wjets(R.grid(), wjets);
}

IntensitySpectrum principal_intensities(const RadialHypersurface& R) {
  const SymTensorField2 kappa = intensity_form(R);
  IntensitySpectrum out;
  out.n = R.grid()->dimension();
  kappa.frame_eigenvalues(out.lam_lo, out.lam_hi);
  if (out.n == 1) {
    out.S1 = out.lam_lo;
    out.Sn = out.lam_lo;
  } else {
    out.S1 = out.lam_lo + out.lam_hi;
    out.Sn = out.lam_lo * out.lam_hi;
  }
  return out;
}

double char_poly_eval(const RadialHypersurface& R, int p, double mu) {
  const auto& cp = R.grid()->point(p);
  const Mat2 F = [&] {
    SymTensorField2 k(R.grid());
    k.set(p, kappa_at(cp, R.jet(p)));
    return k.frame_at(p);
  }();
  if (cp.n == 1) return F(0, 0) - mu;
  return (F - mu * Mat2::Identity()).determinant();
}

ScalarField mean_intensity(const RadialHypersurface& R) {
  return ScalarField(R.grid(), intensity_form(R).trace_e(),
                     geom::Smoothness::General);
}

ScalarField mean_intensity_operator(const RadialHypersurface& R) {
  const int n = R.grid()->dimension();
  ArrayXd out(R.points());
  for (int p = 0; p < R.points(); ++p) {
    const auto& cp = R.grid()->point(p);
    const RadialJet& j = R.jet(p);
    // Lap rho = e^ij Hess_ij
    const double lap = cp.n == 1 ? j.hess(0, 0)
                                 : j.hess(0, 0) + j.hess(1, 1) / (cp.sth * cp.sth);
    const double g2 = grad2_at(cp, j);
    const double W2 = j.rho * j.rho + g2;
    out[p] = (-j.rho * lap + n * j.rho * j.rho + 2.0 * g2 - 0.5 * n * W2) /
             (0.5 * W2);
  }
  return ScalarField(R.grid(), std::move(out), geom::Smoothness::General);
}

DirectionalIntensity directional_intensity(const RadialHypersurface& R, int p,
                                           const Vec2& xdot) {
  const auto& cp = R.grid()->point(p);
  Vec2 v = xdot;
  if (cp.n == 1) v[1] = 0.0;
  const double ev = v.dot(cp.e() * v);
  if (ev <= 0.0) throw std::invalid_argument("zero tangent vector");
  const RadialJet& j = R.jet(p);
  DirectionalIntensity out;
  out.unsigned_value = std::sqrt(std::max(0.0, v.dot(ehat_at(cp, j) * v)) / ev);
  out.signed_value = v.dot(kappa_at(cp, j) * v) / ev;
  return out;
}

StrictionResult striction_distance(const RadialHypersurface& R, int p,
                                   const Vec2& xdot) {
  const auto& cp = R.grid()->point(p);
  Vec2 v = xdot;
  if (cp.n == 1) v[1] = 0.0;
  const double ev = v.dot(cp.e() * v);
  if (ev <= 0.0) throw std::invalid_argument("zero tangent vector");
  const RadialJet& j = R.jet(p);
  const double kv = v.dot(kappa_at(cp, j) * v);
  const double ehv = v.dot(ehat_at(cp, j) * v);
  StrictionResult out;
  if (ehv / ev < 1e-10) {
    // degenerate direction: dgamma(xdot) = 0, striction point at infinity;
    // kappa(xdot) must vanish with it (Cauchy-Schwarz bound)
    if (std::abs(kv) / ev > 1e-5)
      throw std::runtime_error("degenerate ehat with nonvanishing kappa");
    out.finite = false;
    out.h = std::numeric_limits<double>::infinity();
    return out;
  }
  out.h = j.rho * kv / ehv;
  const AmbientPoint a = ambient_from_jet(cp, j);
  out.point = a.r + out.h * a.gamma;
  return out;
}

// ------------------------------------------------ finite-difference diagnostics

static ChartPoint shifted(const ChartPoint& cp, int dir, double h) {
  if (cp.n == 1) return geom::chart_point_s1(cp.theta + h);
  if (dir == 0) return geom::chart_point_s2(cp.theta + h, cp.phi);
  return geom::chart_point_s2(cp.theta, cp.phi + h);
}

// Centered difference of gamma along chart direction dir.
static Vec3 gamma_fd(const RadialHypersurface& R, const ChartPoint& cp, int dir,
                     double h) {
  const ChartPoint plus = shifted(cp, dir, h), minus = shifted(cp, dir, -h);
  return (gamma_at(plus, R.jet_at(plus)) - gamma_at(minus, R.jet_at(minus))) /
         (2.0 * h);
}

double normal_component_defect(const RadialHypersurface& R, double h,
                               const std::vector<ChartPoint>& samples) {
  const int n = R.grid()->dimension();
  double sup = 0.0;
  for (const auto& cp : samples) {
    const RadialJet j = R.jet_at(cp);
    const AmbientPoint a = ambient_from_jet(cp, j);
    const Vec2 rhs = -(kappa_at(cp, j) * (cp.e_inv() * j.d1)) / a.W;
    for (int dir = 0; dir < n; ++dir) {
      const double lhs = gamma_fd(R, cp, dir, h).dot(a.N);
      sup = std::max(sup, std::abs(lhs - rhs[dir]));
    }
  }
  return sup;
}

double reflection_symmetry_defect(const RadialHypersurface& R, double h,
                                  const std::vector<ChartPoint>& samples) {
  if (R.grid()->dimension() == 1) return 0.0;
  double sup = 0.0;
  for (const auto& cp : samples) {
    const RadialJet j = R.jet_at(cp);
    const Vec3 r_th = j.d1[0] * cp.x + j.rho * cp.x_th;
    const Vec3 r_ph = j.d1[1] * cp.x + j.rho * cp.x_ph;
    const Vec3 g_th = gamma_fd(R, cp, 0, h), g_ph = gamma_fd(R, cp, 1, h);
    sup = std::max(sup, std::abs(r_th.dot(g_ph) - r_ph.dot(g_th)));
  }
  return sup;
}

double ehat_fd_defect(const RadialHypersurface& R, double h,
                      const std::vector<ChartPoint>& samples) {
  const int n = R.grid()->dimension();
  double sup = 0.0;
  for (const auto& cp : samples) {
    const RadialJet j = R.jet_at(cp);
    const Mat2 eh = ehat_at(cp, j);
    Vec3 g[2] = {gamma_fd(R, cp, 0, h),
                 n == 2 ? gamma_fd(R, cp, 1, h) : Vec3::Zero()};
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        sup = std::max(sup, std::abs(g[a].dot(g[b]) - eh(a, b)));
  }
  return sup;
}

double normal_component_check(const RadialHypersurface& R, double h) {
  std::vector<ChartPoint> pts;
  pts.reserve(R.points());
  for (int p = 0; p < R.points(); ++p) {
    const auto& cp = R.grid()->point(p);
    // keep the theta-step inside the chart
    if (cp.n == 2 && (cp.theta - h <= 0.0 || cp.theta + h >= kPi)) continue;
    pts.push_back(cp);
  }
  return normal_component_defect(R, h, pts);
}

std::vector<ChartPoint> interior_sample_points(const geom::SphereGrid& grid,
                                               int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uth(0.5, kPi - 0.5);
  std::uniform_real_distribution<double> uph(0.0, kTwoPi);
  std::vector<ChartPoint> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    if (grid.dimension() == 1)
      out.push_back(geom::chart_point_s1(uph(rng)));
    else
      out.push_back(geom::chart_point_s2(uth(rng), uph(rng)));
  }
  return out;
}

}  // namespace kummer::core
