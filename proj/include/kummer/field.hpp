#pragma once

#include <optional>

#include "kummer/tensor.hpp"

namespace kummer::geom {

// How a field's derivatives are obtained: band-limited fields use exact
// spectral differentiation; general fields (e.g. nonlinear functions of
// iterates) fall back to 4th-order centered finite differences in the chart.
enum class Smoothness { BandLimited, General };

// Chart-derivative bundle of a field at all collocation points.
struct FieldJet {
  ArrayXd f, d_th, d_ph, d_thth, d_thph, d_phph;
};

// Immutable scalar field on a sphere grid with lazily computed spectral
// coefficients.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(GridPtr grid, ArrayXd values,
              Smoothness s = Smoothness::BandLimited);
  static ScalarField constant(const GridPtr& grid, double value);
  static ScalarField from_coeffs(const GridPtr& grid, const ArrayXd& coeffs);

  const GridPtr& grid() const { return grid_; }
  const ArrayXd& values() const { return values_; }
  double operator[](int p) const { return values_[p]; }
  Smoothness smoothness() const { return smooth_; }
  int points() const { return grid_->points(); }

  // Spectral coefficients (projection to the grid's band limit).
  const ArrayXd& coeffs() const;

  ScalarField operator+(const ScalarField& o) const;
  ScalarField operator-(const ScalarField& o) const;
  ScalarField operator*(double s) const;
  ScalarField operator+(double s) const;

 private:
  GridPtr grid_;
  ArrayXd values_;
  Smoothness smooth_ = Smoothness::BandLimited;
  mutable std::optional<ArrayXd> coeffs_;
};

// Chart first and second partial derivatives (spectral or FD4 per smoothness).
FieldJet field_jet(const ScalarField& f);
// 4th-order finite-difference jet, available for any field (used as the
// fallback path and testable directly).
FieldJet field_jet_fd4(const ScalarField& f);

CovectorField gradient(const ScalarField& f);
SymTensorField2 covariant_hessian(const ScalarField& f);
ScalarField laplace_beltrami(const ScalarField& f);
double integrate(const ScalarField& f);
double mean_value(const ScalarField& f);  // integrate / volume

// Unique solution of (Delta + n/2) v = rhs, solved diagonally per harmonic
// degree (eigenvalue n/2 - l(l+n-1) never vanishes).
ScalarField solve_shifted_laplacian(const ScalarField& rhs);
// The forward operator Delta v + (n/2) v on a band-limited field.
ScalarField apply_shifted_laplacian(const ScalarField& v);

// Covariant pieces assembled from a raw-partial jet at one point.
Mat2 covariant_hessian_at(const ChartPoint& cp, const Vec2& d1, const Mat2& raw2);

// Seeded random band-limited field: base plus a perturbation built from
// harmonics of degree 1..degree_hi with 1/(1+l)^2 coefficient decay, rescaled
// so the perturbation's sup norm equals amplitude. With base > amplitude > 0
// the result is a valid (positive) radial function.
ScalarField random_band_limited(const GridPtr& grid, uint64_t seed,
                                double base, double amplitude,
                                int degree_hi = 8);

}  // namespace kummer::geom
