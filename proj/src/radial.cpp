#include "kummer/radial.hpp"

#include <stdexcept>

namespace kummer::core {

AmbientPoint ambient_from_jet(const ChartPoint& cp, const RadialJet& jet) {
  AmbientPoint out;
  out.rho = jet.rho;
  out.r = jet.rho * cp.x;
  out.grad = cp.ambient_gradient(jet.d1);
  const double g2 = out.grad.squaredNorm();
  const double W2 = jet.rho * jet.rho + g2;
  out.W = std::sqrt(W2);
  out.N = (jet.rho * cp.x - out.grad) / out.W;
  // gamma = x - 2<x,N>N expanded with <x, grad> = 0; the expanded form keeps
  // gamma exactly antipodal for constant rho.
  out.gamma = ((g2 - jet.rho * jet.rho) * cp.x + 2.0 * jet.rho * out.grad) / W2;
  return out;
}

RadialHypersurface RadialHypersurface::from_callable(GridPtr grid, JetFn jet,
                                                     AmbientFn ambient) {
  RadialHypersurface R;
  R.grid_ = std::move(grid);
  R.jet_fn_ = std::move(jet);
  R.ambient_fn_ = std::move(ambient);
  R.analytic_ = true;
  R.cache_from_fn();
  R.validate_positive();
  return R;
}

void RadialHypersurface::cache_from_fn() {
  const int np = grid_->points();
  cached_.resize(np);
  rho_.resize(np);
  for (int p = 0; p < np; ++p) {
    cached_[p] = jet_fn_(grid_->point(p));
    rho_[p] = cached_[p].rho;
  }
}

void RadialHypersurface::validate_positive() const {
  if (rho_.minCoeff() <= 0.0)
    throw std::domain_error("radial function must be positive");
}

std::vector<RadialJet> field_chart_jets(const ScalarField& f) {
  geom::FieldJet jet = geom::field_jet(f);
  const auto& g = *f.grid();
  std::vector<RadialJet> out(g.points());
  for (int p = 0; p < g.points(); ++p) {
    const auto& cp = g.point(p);
    RadialJet& rj = out[p];
    rj.rho = jet.f[p];
    rj.d1 = Vec2(jet.d_th[p], g.dimension() == 2 ? jet.d_ph[p] : 0.0);
    Mat2 raw;
    raw << jet.d_thth[p], jet.d_thph[p], jet.d_thph[p], jet.d_phph[p];
    rj.hess = geom::covariant_hessian_at(cp, rj.d1, raw);
  }
  return out;
}

static RadialJet jet_of_coeffs_at(const GridPtr& grid, const ArrayXd& coeffs,
                                  const ChartPoint& cp) {
  geom::SynthJet sj = grid->dimension() == 1
                          ? grid->circle().eval(coeffs, cp.theta)
                          : grid->sphere().eval(coeffs, cp.theta, cp.phi);
  RadialJet rj;
  rj.rho = sj.f;
  rj.d1 = Vec2(sj.d_th, grid->dimension() == 2 ? sj.d_ph : 0.0);
  Mat2 raw;
  raw << sj.d_thth, sj.d_thph, sj.d_thph, sj.d_phph;
  rj.hess = geom::covariant_hessian_at(cp, rj.d1, raw);
  return rj;
}

RadialHypersurface RadialHypersurface::from_field(const ScalarField& rho) {
  RadialHypersurface R;
  R.grid_ = rho.grid();
  R.cached_ = field_chart_jets(rho);
  R.rho_ = rho.values();
  if (rho.smoothness() == geom::Smoothness::BandLimited) {
    ArrayXd coeffs = rho.coeffs();
    GridPtr grid = rho.grid();
    R.jet_fn_ = [grid, coeffs](const ChartPoint& cp) {
      return jet_of_coeffs_at(grid, coeffs, cp);
    };
  }
  R.validate_positive();
  return R;
}

// rho = 1/w:  rho_i = -w_i / w^2,  Hess rho = -Hess w / w^2 + 2 (dw x dw) / w^3
static RadialJet reciprocal_jet(const RadialJet& wj) {
  RadialJet rj;
  const double w = wj.rho, w2 = w * w, w3 = w2 * w;
  rj.rho = 1.0 / w;
  rj.d1 = -wj.d1 / w2;
  rj.hess = -wj.hess / w2 + 2.0 / w3 * (wj.d1 * wj.d1.transpose());
  return rj;
}

// rho = exp(-w):  rho_i = -rho w_i,  Hess rho = rho (dw x dw - Hess w)
static RadialJet exp_neg_jet(const RadialJet& wj) {
  RadialJet rj;
  rj.rho = std::exp(-wj.rho);
  rj.d1 = -rj.rho * wj.d1;
  rj.hess = rj.rho * (wj.d1 * wj.d1.transpose() - wj.hess);
  return rj;
}

RadialHypersurface RadialHypersurface::from_reciprocal(const ScalarField& w) {
  if (w.values().minCoeff() <= 0.0)
    throw std::domain_error("reciprocal backend needs w > 0");
  RadialHypersurface R;
  R.grid_ = w.grid();
  auto wjets = field_chart_jets(w);
  R.cached_.resize(wjets.size());
  R.rho_.resize((int)wjets.size());
  for (size_t p = 0; p < wjets.size(); ++p) {
    R.cached_[p] = reciprocal_jet(wjets[p]);
    R.rho_[(int)p] = R.cached_[p].rho;
  }
  if (w.smoothness() == geom::Smoothness::BandLimited) {
    ArrayXd coeffs = w.coeffs();
    GridPtr grid = w.grid();
    R.jet_fn_ = [grid, coeffs](const ChartPoint& cp) {
      return reciprocal_jet(jet_of_coeffs_at(grid, coeffs, cp));
    };
  }
  R.validate_positive();
  return R;
}

RadialHypersurface RadialHypersurface::from_exp_neg(const ScalarField& w) {
  RadialHypersurface R;
  R.grid_ = w.grid();
  auto wjets = field_chart_jets(w);
  R.cached_.resize(wjets.size());
  R.rho_.resize((int)wjets.size());
  for (size_t p = 0; p < wjets.size(); ++p) {
    R.cached_[p] = exp_neg_jet(wjets[p]);
    R.rho_[(int)p] = R.cached_[p].rho;
  }
  if (w.smoothness() == geom::Smoothness::BandLimited) {
    ArrayXd coeffs = w.coeffs();
    GridPtr grid = w.grid();
    R.jet_fn_ = [grid, coeffs](const ChartPoint& cp) {
      return exp_neg_jet(jet_of_coeffs_at(grid, coeffs, cp));
    };
  }
  R.validate_positive();
  return R;
}

RadialJet RadialHypersurface::jet_at(const ChartPoint& cp) const {
  if (!jet_fn_)
    throw std::logic_error(
        "off-grid evaluation unavailable for this backend (general field)");
  return jet_fn_(cp);
}

AmbientPoint RadialHypersurface::ambient(const Vec3& x) const {
  if (ambient_fn_) return ambient_fn_(x);
  const ChartPoint cp = geom::chart_point_from_ambient(grid_->dimension(), x);
  return ambient_from_jet(cp, jet_at(cp));
}

}  // namespace kummer::core
