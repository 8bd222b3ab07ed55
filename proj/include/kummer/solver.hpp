#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kummer/kummer_core.hpp"

namespace kummer::s1 {

using core::RadialHypersurface;
using geom::GridPtr;
using geom::ScalarField;
using geom::SphereGrid;

// Prescribed-mean-intensity data on the annulus S^n x [R1, R2]: solve
// S_1(rho) = n g(x, rho) for a radial function rho with R1 <= rho <= R2.
struct AnnulusProblem {
  int dimension = 2;
  double R1 = 0.5;
  double R2 = 2.0;
  std::function<double(const Vec3&, double)> g;        // g(x, rho) > 0
  std::function<double(const Vec3&, double)> dg_drho;  // optional analytic
  std::string name = "problem";

  // n g(x, rho).
  double gbar(const Vec3& x, double rho) const;
  // dg/drho: analytic when provided, else central differences with step
  // (R2 - R1) * 1e-5.
  double dg(const Vec3& x, double rho) const;
  void validate() const;
};

// Continuation/iteration parameters. Zeros mean "use the default for the
// problem dimension".
struct HomotopyConfig {
  double eps = 1.0;    // model-term exponent, q(w) = n w^{1+eps} Rbar^eps / 2
  double Rbar = 0.0;   // <= 0: geometric mean sqrt(R1 R2)
  double tau = 0.5;    // Picard damping
  double dt = 0.1;     // initial continuation step in t
  double dt_min = 1e-4;
  double tol = 0.0;    // <= 0: 1e-10 on S^1, 1e-8 on S^2 (sup iterate change)
  int max_picard = 400;
  // Project the constant mode out of the damped step and solve for it by a
  // safeguarded secant instead: the plain damped map amplifies the constant
  // mode (multiplier 1 + tau eps at t = 0), so this is on by default.
  bool stabilize_mean_mode = true;
  bool force = false;  // proceed even if the barrier hypothesis fails

  double rbar_for(const AnnulusProblem& pb) const;
  double tol_for(int dimension) const;
};

// One recorded iteration of the inner fixed-point loop.
struct TraceRow {
  double t = 0.0;
  int iteration = 0;
  double step = 0.0;      // sup |w_{k+1} - w_k|
  double residual = 0.0;  // sup |shifted-Laplacian(w) - P Q^t(w)|
};

// Pointwise Q^t(x, w, grad w) = t Q + (1-t) q on the grid; w is clamped into
// [1/R2, 1/R1] before g is evaluated (g lives on the annulus only).
ArrayXd rhs_Q_t(const AnnulusProblem& pb, const HomotopyConfig& cfg,
                const GridPtr& grid, const ArrayXd& w, double t);

// One linear solve v = (Delta + n/2)^{-1} Q^t(w): the fixed-point map T(w,t).
ArrayXd linear_step_T(const AnnulusProblem& pb, const HomotopyConfig& cfg,
                      const GridPtr& grid, const ArrayXd& w, double t);

struct PicardResult {
  ArrayXd w;
  int iterations = 0;
  double last_step = 0.0;
  double residual = 0.0;
  bool converged = false;
  bool diverged = false;  // aborted on 10x residual growth
  std::vector<TraceRow> rows;
};

// Damped fixed-point iteration at fixed t from w_init until the sup step and
// the equation residual both pass tolerance.
PicardResult picard_at_t(const AnnulusProblem& pb, const HomotopyConfig& cfg,
                         const GridPtr& grid, ArrayXd w_init, double t);

struct HomotopyState {
  GridPtr grid;
  ArrayXd w;    // final iterate of v = 1/rho
  ArrayXd rho;  // 1 / w
  double t_reached = 0.0;
  bool converged = false;
  double residual = 0.0;
  int total_iterations = 0;
  std::vector<TraceRow> trace;

  ScalarField rho_field() const;
  RadialHypersurface hypersurface() const;
};

// Continuation t: 0 -> 1 with adaptive steps (halve on failure, double after
// two consecutive easy stages, floor cfg.dt_min), warm-starting each stage.
// w0 overrides the default constant start 1/Rbar.
HomotopyState homotopy_solve(const AnnulusProblem& pb, const GridPtr& grid,
                             const HomotopyConfig& cfg = {},
                             const ArrayXd* w0 = nullptr);

// Both residual forms of the prescribed-intensity equation for a candidate
// rho: the v-substitution form Delta v + n v - n V - V gbar(x, 1/v) with
// v = 1/rho, V = (v^2 + |grad v|^2)/(2v), and the direct form
// S_1(rho) - n g(x, rho). They vanish together exactly.
struct ResidualReport {
  ScalarField v_form;
  ScalarField direct;
  double sup_v = 0.0;
  double sup_direct = 0.0;
};
ResidualReport residual(const RadialHypersurface& rho,
                        const AnnulusProblem& pb);

// Barrier inequalities g(x, R1) >= 1 >= g(x, R2) with witnesses, and the
// monotonicity of g in rho (uniqueness condition dg/drho <= 0).
struct HypothesisReport {
  bool satisfied = false;
  bool strict = false;  // additionally g(.,R1) and g(.,R2) not identically 1
  double min_g_R1 = 0.0, max_g_R1 = 0.0;
  double min_g_R2 = 0.0, max_g_R2 = 0.0;
  int witness_R1 = -1;  // grid point attaining min g(x, R1)
  int witness_R2 = -1;  // grid point attaining max g(x, R2)
  double max_dg = 0.0;  // max of dg/drho over annulus samples
  bool monotone = false;
  bool strictly_monotone = false;
};
HypothesisReport hypothesis_check(const AnnulusProblem& pb,
                                  const SphereGrid& grid);

// Classification of a converged iterate against the barrier alternative:
// either a constant at a bound, or strictly inside the band; touching a bound
// without being constant indicates a solver bug.
enum class BarrierClass {
  kConstantAtR1,
  kConstantAtR2,
  kStrictlyInterior,
  kViolation,
};
const char* to_string(BarrierClass c);
BarrierClass barrier_check(const ArrayXd& w, const AnnulusProblem& pb,
                           double tol = 1e-7);

// min/max of S_1 over the closed hypersurface; on any closed hypersurface
// they straddle n, with equality only for concentric spheres.
struct BoundsReport {
  double min_S1 = 0.0, max_S1 = 0.0;
  double rho_spread = 0.0;  // max rho - min rho
  bool straddles = false;
};
BoundsReport mean_intensity_bounds_check(const RadialHypersurface& R,
                                         double tol = 1e-6);

// Repeated solves from perturbed initializations; reports the worst pairwise
// sup distance of the solutions, raw and after normalizing each by its mean
// (the homothety-invariant comparison).
struct UniquenessReport {
  int trials = 0;
  bool all_converged = false;
  double max_raw = 0.0;
  double max_normalized = 0.0;
};
UniquenessReport uniqueness_check(const AnnulusProblem& pb,
                                  const GridPtr& grid,
                                  const HomotopyConfig& cfg, int trials,
                                  uint64_t seed = 1234);

// Smallest |eigenvalue| of the t=0 linearization Delta - (n eps / 2) Id over
// harmonic degrees 0..l_max; equals n eps / 2 exactly (degree 0).
double linearization_kernel_check(int dimension, double eps, int l_max = 64);

// ----------------------------------------------------------- problem files

// Problem specification JSON: {n, R1, R2, g: {kind: ...}, solver: {...}}.
// g kinds: "constant" {value}; "power" {coefficient, exponent} for
// g = coefficient * rho^exponent; "table" {rho: [...], value: [...]} linearly
// interpolated in rho; "manufactured" {family: "exp-axis" | "inverse-axis"}.
struct ProblemSpec {
  AnnulusProblem problem;
  HomotopyConfig config;
  // For manufactured families: the exact solution, else empty.
  std::function<double(const Vec3&)> rho_star;
};
ProblemSpec load_problem_file(const std::string& path);
ProblemSpec problem_from_json_text(const std::string& text);

// Built-in manufactured problems g(x, rho) = (S1(rho*)(x)/n) (rho*(x)/rho),
// which have the exact solution rho* and dg/drho < 0.
// rho* = exp(0.1 <x,u>) on the annulus [0.5, 2].
ProblemSpec manufactured_exp_axis(int dimension);
// rho* = 1 + 0.3/(1.5 - <x,u>) on the annulus [0.5, 4.5] (S^2 refinement
// study; rho* is smooth but not band-limited).
ProblemSpec manufactured_inverse_axis(int dimension);

// Convergence trace CSV (t, iteration, step, residual).
std::string trace_csv(const std::vector<TraceRow>& rows);

}  // namespace kummer::s1
