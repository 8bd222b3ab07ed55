#include "kummer/tensor.hpp"

namespace kummer::geom {

ArrayXd CovectorField::norm2() const {
  const int np = grid->points();
  ArrayXd out(np);
  if (grid->dimension() == 1) {
    out = d_th * d_th;
  } else {
    for (int p = 0; p < np; ++p) {
      const double s = grid->point(p).sth;
      out[p] = d_th[p] * d_th[p] + d_ph[p] * d_ph[p] / (s * s);
    }
  }
  return out;
}

SymTensorField2::SymTensorField2(GridPtr g)
    : grid_(std::move(g)),
      c_tt_(ArrayXd::Zero(grid_->points())),
      c_tp_(ArrayXd::Zero(grid_->points())),
      c_pp_(ArrayXd::Zero(grid_->points())) {}

Mat2 SymTensorField2::at(int p) const {
  Mat2 m;
  m << c_tt_[p], c_tp_[p], c_tp_[p], c_pp_[p];
  return m;
}

void SymTensorField2::set(int p, const Mat2& m) {
  c_tt_[p] = m(0, 0);
  c_tp_[p] = 0.5 * (m(0, 1) + m(1, 0));
  c_pp_[p] = m(1, 1);
}

Mat2 SymTensorField2::frame_at(int p) const {
  Mat2 m;
  if (grid_->dimension() == 1) {
    m << c_tt_[p], 0.0, 0.0, c_tt_[p];
    return m;
  }
  const double s = grid_->point(p).sth;
  m << c_tt_[p], c_tp_[p] / s, c_tp_[p] / s, c_pp_[p] / (s * s);
  return m;
}

void SymTensorField2::frame_eigenvalues(ArrayXd& lo, ArrayXd& hi) const {
  const int np = points();
  lo.resize(np);
  hi.resize(np);
  if (grid_->dimension() == 1) {
    lo = c_tt_;
    hi = c_tt_;
    return;
  }
  for (int p = 0; p < np; ++p) {
    const double s = grid_->point(p).sth;
    const double a = c_tt_[p], b = c_tp_[p] / s, c = c_pp_[p] / (s * s);
    const double mean = 0.5 * (a + c);
    const double disc = std::hypot(0.5 * (a - c), b);
    lo[p] = mean - disc;
    hi[p] = mean + disc;
  }
}

ArrayXd SymTensorField2::trace_e() const {
  const int np = points();
  ArrayXd out(np);
  if (grid_->dimension() == 1) return c_tt_;
  for (int p = 0; p < np; ++p) {
    const double s = grid_->point(p).sth;
    out[p] = c_tt_[p] + c_pp_[p] / (s * s);
  }
  return out;
}

ArrayXd SymTensorField2::det_ratio() const {
  const int np = points();
  ArrayXd out(np);
  if (grid_->dimension() == 1) return c_tt_;
  for (int p = 0; p < np; ++p) {
    const double s = grid_->point(p).sth;
    out[p] = (c_tt_[p] * c_pp_[p] - c_tp_[p] * c_tp_[p]) / (s * s);
  }
  return out;
}

SymTensorField2 SymTensorField2::operator+(const SymTensorField2& o) const {
  SymTensorField2 r(grid_);
  r.c_tt_ = c_tt_ + o.c_tt_;
  r.c_tp_ = c_tp_ + o.c_tp_;
  r.c_pp_ = c_pp_ + o.c_pp_;
  return r;
}

SymTensorField2 SymTensorField2::operator-(const SymTensorField2& o) const {
  SymTensorField2 r(grid_);
  r.c_tt_ = c_tt_ - o.c_tt_;
  r.c_tp_ = c_tp_ - o.c_tp_;
  r.c_pp_ = c_pp_ - o.c_pp_;
  return r;
}

SymTensorField2 SymTensorField2::operator*(double s) const {
  SymTensorField2 r(grid_);
  r.c_tt_ = c_tt_ * s;
  r.c_tp_ = c_tp_ * s;
  r.c_pp_ = c_pp_ * s;
  return r;
}

double SymTensorField2::frame_sup_diff(const SymTensorField2& o) const {
  double m = 0.0;
  for (int p = 0; p < points(); ++p) {
    const Mat2 d = frame_at(p) - o.frame_at(p);
    m = std::max(m, d.cwiseAbs().maxCoeff());
  }
  return m;
}

double SymTensorField2::chart_sup_diff(const SymTensorField2& o) const {
  double m = (c_tt_ - o.c_tt_).abs().maxCoeff();
  if (grid_->dimension() == 2) {
    m = std::max(m, (c_tp_ - o.c_tp_).abs().maxCoeff());
    m = std::max(m, (c_pp_ - o.c_pp_).abs().maxCoeff());
  }
  return m;
}

SymTensorField2 metric_tensor(const GridPtr& grid) {
  SymTensorField2 t(grid);
  for (int p = 0; p < grid->points(); ++p) {
    const auto& cp = grid->point(p);
    t.tt()[p] = 1.0;
    t.tp()[p] = 0.0;
    t.pp()[p] = grid->dimension() == 2 ? cp.sth * cp.sth : 0.0;
  }
  return t;
}

}  // namespace kummer::geom
