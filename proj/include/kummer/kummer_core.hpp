#pragma once

#include "kummer/radial.hpp"

namespace kummer::core {

using geom::ScalarField;
using geom::SymTensorField2;

// ------------------------------------------------------------------ pointwise

// First fundamental form g_ij = rho_i rho_j + rho^2 e_ij.
Mat2 g_form_at(const ChartPoint& cp, const RadialJet& j);
// Its inverse g^ij = (e^ij - rho^i rho^j / W^2) / rho^2.
Mat2 g_inv_at(const ChartPoint& cp, const RadialJet& j);
// Second fundamental form b_ij = (rho Hess_ij - 2 rho_i rho_j - rho^2 e_ij)/W.
Mat2 b_form_at(const ChartPoint& cp, const RadialJet& j);
// Intensity form, radial formula:
// kappa = (-rho Hess + 2 drho x drho + ((rho^2-|drho|^2)/2) e) / (W^2/2).
Mat2 kappa_at(const ChartPoint& cp, const RadialJet& j);
// Intensity form via the second fundamental form: -kappa = e + (2/W) b.
Mat2 kappa_via_b_at(const ChartPoint& cp, const RadialJet& j);
// Conformal formula for rho = exp(-w), from the jet of w:
// kappa = (Hess w + dw x dw + ((1-|dw|^2)/2) e) / ((1+|dw|^2)/2).
Mat2 kappa_conformal_at(const ChartPoint& cp, const RadialJet& wj);
// ehat_ij = kappa_ik e^kl kappa_lj = <gamma_i, gamma_j>.
Mat2 ehat_at(const ChartPoint& cp, const RadialJet& j);
// Reflected direction at a chart point.
Vec3 gamma_at(const ChartPoint& cp, const RadialJet& j);
// |grad rho|^2 = e^ij rho_i rho_j.
double grad2_at(const ChartPoint& cp, const RadialJet& j);

// ------------------------------------------------------------------ field data

struct EmbedData {
  std::vector<Vec3> r;  // positions rho x
  ArrayXd W;
  std::vector<Vec3> N;  // outward unit normals
};
EmbedData embed(const RadialHypersurface& R);

struct FundamentalForms {
  SymTensorField2 g, b;
  ArrayXd det_g;  // determinant of g_ij (n x n block)
};
FundamentalForms fundamental_forms(const RadialHypersurface& R);

struct ReflectionField {
  std::vector<Vec3> gamma;
};
ReflectionField reflection_map(const RadialHypersurface& R);

SymTensorField2 intensity_form(const RadialHypersurface& R);
SymTensorField2 intensity_form_via_b(const RadialHypersurface& R);
SymTensorField2 ehat_form(const RadialHypersurface& R);

struct ConformalResult {
  SymTensorField2 kappa;
  SymTensorField2 schouten;  // kappa * (1+|dw|^2)/2, Schouten tensor of e^{-2w} e
};
// From a band-limited conformal factor w (rho = exp(-w)).
ConformalResult conformal_intensity_form(const ScalarField& w);
// Same formula routed through w = -log rho by exact chain rule on R's jets.
ConformalResult conformal_intensity_form(const RadialHypersurface& R);

// Principal intensities (frame eigenvalues of kappa against e) and the
// elementary symmetric functions S_m.
struct IntensitySpectrum {
  int n = 2;
  ArrayXd lam_lo, lam_hi;  // ascending; equal for n=1
  ArrayXd S1, Sn;          // mean and top intensity (S1 == Sn for n=1)
};
IntensitySpectrum principal_intensities(const RadialHypersurface& R);
// Characteristic polynomial det(a - mu I) of the mixed operator a = e^{-1}kappa
// at point p, evaluated directly (for the coefficient identity test).
double char_poly_eval(const RadialHypersurface& R, int p, double mu);

// Mean intensity via the trace e^ij kappa_ij.
ScalarField mean_intensity(const RadialHypersurface& R);
// Mean intensity via the radial operator
// M[rho] = (-rho Lap rho + n rho^2 + 2|drho|^2 - (n/2) W^2) / (W^2/2).
ScalarField mean_intensity_operator(const RadialHypersurface& R);

// Intensity in a tangent direction xdot (chart components):
// unsigned = sqrt(ehat(xdot)/e(xdot)), signed = kappa(xdot)/e(xdot).
// |signed| equals unsigned exactly when xdot is a principal direction or kappa
// is isotropic at the point (always for n=1).
struct DirectionalIntensity {
  double unsigned_value = 0.0;
  double signed_value = 0.0;
};
DirectionalIntensity directional_intensity(const RadialHypersurface& R, int p,
                                           const Vec2& xdot);

// Striction point of the reflected ray against its infinitesimal neighbor in
// direction xdot: h = rho kappa(xdot)/ehat(xdot), infinite when ehat(xdot)
// vanishes (then kappa(xdot) = 0 up to tolerance).
struct StrictionResult {
  double h = 0.0;
  bool finite = true;
  Vec3 point = Vec3::Zero();  // r + h gamma when finite
};
StrictionResult striction_distance(const RadialHypersurface& R, int p,
                                   const Vec2& xdot);

// ------------------------------------------------ finite-difference diagnostics
// These differentiate gamma numerically (2nd-order centered differences with
// chart step h at the given sample points) and report sup defects against the
// closed-form right-hand sides; defects decay as O(h^2).

// | <gamma_i, N> + (rho^j/W) kappa_ji |
double normal_component_defect(const RadialHypersurface& R, double h,
                               const std::vector<ChartPoint>& samples);
// | <r_i, gamma_j> - <r_j, gamma_i> |  (identically 0 for n=1)
double reflection_symmetry_defect(const RadialHypersurface& R, double h,
                                  const std::vector<ChartPoint>& samples);
// | <gamma_i, gamma_j> - ehat_ij |
double ehat_fd_defect(const RadialHypersurface& R, double h,
                      const std::vector<ChartPoint>& samples);
// Convenience: sup of normal_component_defect over all grid points with a
// conservative default step.
double normal_component_check(const RadialHypersurface& R, double h = 1e-3);

// Deterministic interior sample points (colatitude kept away from the poles).
std::vector<ChartPoint> interior_sample_points(const geom::SphereGrid& grid,
                                               int count, uint64_t seed);

}  // namespace kummer::core
