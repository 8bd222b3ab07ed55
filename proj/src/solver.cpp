#include "kummer/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "kummer/io.hpp"
#include "kummer/shapes.hpp"

namespace kummer::s1 {

using geom::Smoothness;
using nlohmann::json;

// ----------------------------------------------------------------- problem

double AnnulusProblem::gbar(const Vec3& x, double rho) const {
  return dimension * g(x, rho);
}

double AnnulusProblem::dg(const Vec3& x, double rho) const {
  if (dg_drho) return dg_drho(x, rho);
  const double h = (R2 - R1) * 1e-5;
  return (g(x, rho + h) - g(x, rho - h)) / (2.0 * h);
}

void AnnulusProblem::validate() const {
  if (dimension != 1 && dimension != 2)
    throw std::invalid_argument("AnnulusProblem: dimension must be 1 or 2");
  if (!(R1 > 0.0 && R1 < R2))
    throw std::invalid_argument("AnnulusProblem: need 0 < R1 < R2");
  if (!g) throw std::invalid_argument("AnnulusProblem: g is not set");
}

double HomotopyConfig::rbar_for(const AnnulusProblem& pb) const {
  if (Rbar > 0.0) {
    if (!(Rbar > pb.R1 && Rbar < pb.R2))
      throw std::invalid_argument("HomotopyConfig: Rbar must lie in (R1, R2)");
    return Rbar;
  }
  return std::sqrt(pb.R1 * pb.R2);
}

double HomotopyConfig::tol_for(int dimension) const {
  if (tol > 0.0) return tol;
  return dimension == 1 ? 1e-10 : 1e-8;
}

// ------------------------------------------------------------- iteration

namespace {

double quad_mean(const SphereGrid& grid, const ArrayXd& f) {
  const ArrayXd& w = grid.weights();
  double acc = 0.0;
  for (int p = 0; p < grid.points(); ++p) acc += w[p] * f[p];
  return acc / grid.volume();
}

// Q^t from precomputed |grad w|^2 (adding a constant to w leaves it valid).
ArrayXd qt_pointwise(const AnnulusProblem& pb, const SphereGrid& grid,
                     double eps, double rbar, const ArrayXd& w,
                     const ArrayXd& grad2, double t) {
  const int n = pb.dimension;
  const double wlo = 1.0 / pb.R2, whi = 1.0 / pb.R1;
  ArrayXd out(grid.points());
  for (int p = 0; p < grid.points(); ++p) {
    const double wp = w[p];
    if (!(wp > 0.0))
      throw std::domain_error("rhs_Q_t: iterate left the positive cone");
    const double q = 0.5 * n * std::pow(wp, 1.0 + eps) * std::pow(rbar, eps);
    if (t == 0.0) {
      out[p] = q;
      continue;
    }
    const double g2 = grad2[p];
    const double wc = std::clamp(wp, wlo, whi);
    const double gb = pb.gbar(grid.point(p).x, 1.0 / wc);
    const double Q = 0.5 * n * g2 / wp + (wp * wp + g2) / (2.0 * wp) * gb;
    out[p] = t * Q + (1.0 - t) * q;
  }
  return out;
}

ArrayXd grad_squared(const GridPtr& grid, const ArrayXd& w) {
  return geom::gradient(ScalarField(grid, w, Smoothness::BandLimited)).norm2();
}

// Spectral projection of grid values onto the band-limited space.
ArrayXd project(const GridPtr& grid, const ArrayXd& values) {
  ScalarField f(grid, values, Smoothness::General);
  return ScalarField::from_coeffs(grid, f.coeffs()).values();
}

// sup | (Delta + n/2) w - P Q^t |: the strong residual of the projected
// equation, which is what the discrete fixed point satisfies.
double projected_residual(const GridPtr& grid, const ArrayXd& w,
                          const ArrayXd& qt) {
  const ArrayXd lhs =
      geom::apply_shifted_laplacian(
          ScalarField(grid, w, Smoothness::BandLimited))
          .values();
  return sup_norm(lhs - project(grid, qt));
}

}  // namespace

ArrayXd rhs_Q_t(const AnnulusProblem& pb, const HomotopyConfig& cfg,
                const GridPtr& grid, const ArrayXd& w, double t) {
  pb.validate();
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("rhs_Q_t: t must lie in [0, 1]");
  const ArrayXd grad2 =
      t == 0.0 ? ArrayXd::Zero(grid->points()).eval() : grad_squared(grid, w);
  return qt_pointwise(pb, *grid, cfg.eps, cfg.rbar_for(pb), w, grad2, t);
}

ArrayXd linear_step_T(const AnnulusProblem& pb, const HomotopyConfig& cfg,
                      const GridPtr& grid, const ArrayXd& w, double t) {
  const ArrayXd qt = rhs_Q_t(pb, cfg, grid, w, t);
  return geom::solve_shifted_laplacian(
             ScalarField(grid, qt, Smoothness::General))
      .values();
}

PicardResult picard_at_t(const AnnulusProblem& pb, const HomotopyConfig& cfg,
                         const GridPtr& grid, ArrayXd w, double t) {
  pb.validate();
  const int n = pb.dimension;
  const double tol = cfg.tol_for(n);
  const double rbar = cfg.rbar_for(pb);
  const double tau = cfg.tau;
  PicardResult out;
  double base_residual = -1.0;

  for (int k = 0; k < cfg.max_picard; ++k) {
    const ArrayXd grad2 =
        t == 0.0 ? ArrayXd::Zero(grid->points()).eval() : grad_squared(grid, w);
    const ArrayXd qt = qt_pointwise(pb, *grid, cfg.eps, rbar, w, grad2, t);
    const ArrayXd v =
        geom::solve_shifted_laplacian(
            ScalarField(grid, qt, Smoothness::General))
            .values();
    const ArrayXd d = v - w;

    ArrayXd w_new;
    if (cfg.stabilize_mean_mode) {
      // Damped update on the mean-free part only.
      const double dmean = quad_mean(*grid, d);
      const ArrayXd w_half = w + tau * (d - dmean);
      const double mu = quad_mean(*grid, w_half);
      const ArrayXd what = w_half - mu;
      // Scalar equation for the constant mode: the mean of the fixed-point
      // equation reads (n/2) c = mean Q^t(what + c).  Safeguarded secant.
      const ArrayXd gh = t == 0.0 ? ArrayXd::Zero(grid->points()).eval()
                                  : grad_squared(grid, w_half);
      auto mres = [&](double c) {
        const ArrayXd qc =
            qt_pointwise(pb, *grid, cfg.eps, rbar, what + c, gh, t);
        return 0.5 * n * c - quad_mean(*grid, qc);
      };
      const double clo = 0.25 / pb.R2, chi = 4.0 / pb.R1;
      double c0 = std::clamp(mu, clo, chi);
      double f0 = mres(c0);
      double c1 = std::clamp(c0 + (f0 > 0.0 ? 1e-6 : -1e-6), clo, chi);
      double f1 = mres(c1);
      for (int it = 0; it < 60 && f1 != f0; ++it) {
        double c2 = c1 - f1 * (c1 - c0) / (f1 - f0);
        c2 = std::clamp(c2, clo, chi);
        c0 = c1;
        f0 = f1;
        c1 = c2;
        f1 = mres(c1);
        if (std::abs(f1) < 1e-14) break;
      }
      w_new = what + c1;
    } else {
      w_new = w + tau * d;
    }

    out.last_step = sup_norm(w_new - w);
    w.swap(w_new);
    out.iterations = k + 1;
    if (!w.allFinite()) {
      out.diverged = true;
      break;
    }

    const ArrayXd g2r =
        t == 0.0 ? ArrayXd::Zero(grid->points()).eval() : grad_squared(grid, w);
    const ArrayXd qtr = qt_pointwise(pb, *grid, cfg.eps, rbar, w, g2r, t);
    out.residual = projected_residual(grid, w, qtr);
    out.rows.push_back({t, k, out.last_step, out.residual});
    if (base_residual < 0.0) base_residual = std::max(out.residual, tol);
    if (k >= 3 && out.residual > 10.0 * base_residual) {
      out.diverged = true;  // residual grew an order of magnitude: abort
      break;
    }
    if (out.last_step < tol && out.residual < 10.0 * tol) {
      out.converged = true;
      break;
    }
  }
  out.w = std::move(w);
  return out;
}

ScalarField HomotopyState::rho_field() const {
  return ScalarField(grid, rho, Smoothness::General);
}

RadialHypersurface HomotopyState::hypersurface() const {
  return RadialHypersurface::from_reciprocal(
      ScalarField(grid, w, Smoothness::BandLimited));
}

HomotopyState homotopy_solve(const AnnulusProblem& pb, const GridPtr& grid,
                             const HomotopyConfig& cfg, const ArrayXd* w0) {
  pb.validate();
  const auto hyp = hypothesis_check(pb, *grid);
  if (!hyp.satisfied && !cfg.force)
    throw std::invalid_argument(
        "homotopy_solve: barrier hypothesis g(x,R1) >= 1 >= g(x,R2) fails "
        "(min g(.,R1) = " +
        std::to_string(hyp.min_g_R1) +
        ", max g(.,R2) = " + std::to_string(hyp.max_g_R2) +
        "); pass force to attempt anyway");

  HomotopyState st;
  st.grid = grid;
  const double rbar = cfg.rbar_for(pb);
  ArrayXd w = w0 ? *w0 : ArrayXd::Constant(grid->points(), 1.0 / rbar).eval();

  // Stage t = 0 first (unique solution 1/Rbar), then continue toward t = 1.
  double t = 0.0, dt = cfg.dt;
  int easy_streak = 0;
  for (;;) {
    PicardResult r = picard_at_t(pb, cfg, grid, w, t);
    st.total_iterations += r.iterations;
    for (const auto& row : r.rows) st.trace.push_back(row);
    if (r.converged) {
      w = std::move(r.w);
      st.t_reached = t;
      st.residual = r.residual;
      if (t >= 1.0) {
        st.converged = true;
        break;
      }
      if (r.iterations <= cfg.max_picard / 4) {
        if (++easy_streak >= 2) {
          dt = std::min(2.0 * dt, 0.5);
          easy_streak = 0;
        }
      } else {
        easy_streak = 0;
      }
      t = std::min(1.0, t + dt);
    } else {
      if (t == 0.0)
        throw std::runtime_error(
            "homotopy_solve: the t = 0 model problem did not converge");
      // Retreat: halve the step and retry from the last accepted iterate.
      const double t_prev = st.t_reached;
      dt *= 0.5;
      easy_streak = 0;
      if (dt < cfg.dt_min) break;  // step underflow: report failure + trace
      t = std::min(1.0, t_prev + dt);
    }
  }
  st.w = std::move(w);
  st.rho = 1.0 / st.w;
  return st;
}

// ---------------------------------------------------------------- residual

ResidualReport residual(const RadialHypersurface& R,
                        const AnnulusProblem& pb) {
  pb.validate();
  const GridPtr& grid = R.grid();
  const int n = pb.dimension;
  ArrayXd vf(grid->points()), df(grid->points());
  const ScalarField S1 = core::mean_intensity(R);
  for (int p = 0; p < grid->points(); ++p) {
    const auto& cp = grid->point(p);
    const auto& j = R.jet(p);
    const double rho = j.rho;
    // v = 1/rho by exact chain rule on the cached jets.
    const double v = 1.0 / rho;
    const double g2_rho = core::grad2_at(cp, j);
    const double g2_v = g2_rho / std::pow(rho, 4);
    double lap_rho = j.hess(0, 0);
    if (grid->dimension() == 2)
      lap_rho += j.hess(1, 1) / (cp.sth * cp.sth);
    const double lap_v = -lap_rho / (rho * rho) + 2.0 * g2_rho / std::pow(rho, 3);
    const double V = (v * v + g2_v) / (2.0 * v);
    vf[p] = lap_v + n * v - n * V - V * pb.gbar(cp.x, rho);
    df[p] = S1[p] - n * pb.g(cp.x, rho);
  }
  ResidualReport rep;
  rep.v_form = ScalarField(grid, vf, Smoothness::General);
  rep.direct = ScalarField(grid, df, Smoothness::General);
  rep.sup_v = sup_norm(vf);
  rep.sup_direct = sup_norm(df);
  return rep;
}

// -------------------------------------------------------------- diagnostics

HypothesisReport hypothesis_check(const AnnulusProblem& pb,
                                  const SphereGrid& grid) {
  pb.validate();
  HypothesisReport rep;
  rep.min_g_R1 = rep.min_g_R2 = 1e300;
  rep.max_g_R1 = rep.max_g_R2 = -1e300;
  for (int p = 0; p < grid.points(); ++p) {
    const Vec3& x = grid.point(p).x;
    const double g1 = pb.g(x, pb.R1), g2 = pb.g(x, pb.R2);
    if (g1 < rep.min_g_R1) {
      rep.min_g_R1 = g1;
      rep.witness_R1 = p;
    }
    rep.max_g_R1 = std::max(rep.max_g_R1, g1);
    if (g2 > rep.max_g_R2) {
      rep.max_g_R2 = g2;
      rep.witness_R2 = p;
    }
    rep.min_g_R2 = std::min(rep.min_g_R2, g2);
  }
  constexpr double kEq = 1e-12;
  rep.satisfied = rep.min_g_R1 >= 1.0 - kEq && rep.max_g_R2 <= 1.0 + kEq;
  rep.strict = rep.satisfied && rep.max_g_R1 > 1.0 + kEq &&
               rep.min_g_R2 < 1.0 - kEq;
  rep.max_dg = -1e300;
  for (int p = 0; p < grid.points(); ++p) {
    const Vec3& x = grid.point(p).x;
    for (int k = 0; k <= 4; ++k) {
      const double rho = pb.R1 + (pb.R2 - pb.R1) * k / 4.0;
      rep.max_dg = std::max(rep.max_dg, pb.dg(x, rho));
    }
  }
  rep.monotone = rep.max_dg <= 1e-10;
  rep.strictly_monotone = rep.max_dg < -1e-10;
  return rep;
}

const char* to_string(BarrierClass c) {
  switch (c) {
    case BarrierClass::kConstantAtR1:
      return "constant at 1/R1";
    case BarrierClass::kConstantAtR2:
      return "constant at 1/R2";
    case BarrierClass::kStrictlyInterior:
      return "strictly interior";
    case BarrierClass::kViolation:
      return "VIOLATION";
  }
  return "?";
}

BarrierClass barrier_check(const ArrayXd& w, const AnnulusProblem& pb,
                           double tol) {
  const double whi = 1.0 / pb.R1, wlo = 1.0 / pb.R2;
  if (sup_norm(w - whi) <= tol) return BarrierClass::kConstantAtR1;
  if (sup_norm(w - wlo) <= tol) return BarrierClass::kConstantAtR2;
  if (w.minCoeff() > wlo + tol && w.maxCoeff() < whi - tol)
    return BarrierClass::kStrictlyInterior;
  return BarrierClass::kViolation;
}

BoundsReport mean_intensity_bounds_check(const RadialHypersurface& R,
                                         double tol) {
  const ScalarField S1 = core::mean_intensity(R);
  BoundsReport rep;
  rep.min_S1 = S1.values().minCoeff();
  rep.max_S1 = S1.values().maxCoeff();
  rep.rho_spread = R.rho_values().maxCoeff() - R.rho_values().minCoeff();
  const int n = R.grid()->dimension();
  rep.straddles = rep.min_S1 <= n + tol && rep.max_S1 >= n - tol;
  return rep;
}

UniquenessReport uniqueness_check(const AnnulusProblem& pb,
                                  const GridPtr& grid,
                                  const HomotopyConfig& cfg, int trials,
                                  uint64_t seed) {
  if (trials < 2)
    throw std::invalid_argument("uniqueness_check: need at least 2 trials");
  const double rbar = cfg.rbar_for(pb);
  std::vector<ArrayXd> solutions;
  bool all_ok = true;
  for (int trial = 0; trial < trials; ++trial) {
    ArrayXd w0 = ArrayXd::Constant(grid->points(), 1.0 / rbar);
    if (trial > 0) {
      // Low-harmonic perturbation, kept well inside the admissible band.
      std::mt19937_64 rng(seed + trial);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      const double amp = 0.2 * (1.0 / pb.R1 - 1.0 / pb.R2);
      ArrayXd pert(grid->points());
      const double a1 = u(rng), a2 = u(rng), a3 = u(rng);
      for (int p = 0; p < grid->points(); ++p) {
        const Vec3& x = grid->point(p).x;
        pert[p] = a1 * x.x() + a2 * x.y() + a3 * x.z();
      }
      const double scale = std::max(1.0, sup_norm(pert));
      w0 += (amp / scale) * pert;
      const double wlo = 1.0 / pb.R2, whi = 1.0 / pb.R1;
      for (int p = 0; p < grid->points(); ++p)
        w0[p] = std::clamp(w0[p], wlo * 1.05, whi * 0.95);
    }
    HomotopyState st = homotopy_solve(pb, grid, cfg, &w0);
    all_ok = all_ok && st.converged;
    solutions.push_back(st.rho);
  }
  UniquenessReport rep;
  rep.trials = trials;
  rep.all_converged = all_ok;
  for (int a = 0; a < trials; ++a) {
    const double ma = quad_mean(*grid, solutions[a]);
    for (int b = a + 1; b < trials; ++b) {
      const double mb = quad_mean(*grid, solutions[b]);
      rep.max_raw = std::max(rep.max_raw, sup_norm(solutions[a] - solutions[b]));
      rep.max_normalized = std::max(
          rep.max_normalized, sup_norm(solutions[a] / ma - solutions[b] / mb));
    }
  }
  return rep;
}

double linearization_kernel_check(int dimension, double eps, int l_max) {
  if (dimension != 1 && dimension != 2)
    throw std::invalid_argument("linearization_kernel_check: dimension");
  if (!(eps > 0.0))
    throw std::invalid_argument("linearization_kernel_check: eps must be > 0");
  double best = 1e300;
  for (int l = 0; l <= l_max; ++l) {
    const double lam = -double(l) * (l + dimension - 1) - dimension * eps / 2.0;
    best = std::min(best, std::abs(lam));
  }
  return best;
}

// ------------------------------------------------------------ problem files

namespace {

ProblemSpec manufactured_from_profile(int dimension,
                                      const shapes::AxisProfile& pr,
                                      double R1, double R2,
                                      const std::string& name) {
  ProblemSpec spec;
  spec.problem.dimension = dimension;
  spec.problem.R1 = R1;
  spec.problem.R2 = R2;
  spec.problem.name = name;
  const int n = dimension;
  auto base = [pr, n](const Vec3& x) {
    const double s = std::clamp(x.dot(pr.axis), -1.0, 1.0);
    const double S1 = shapes::profile_mean_intensity(pr, n, s);
    return (S1 / n) * pr.F(s);
  };
  spec.problem.g = [base](const Vec3& x, double rho) {
    return base(x) / rho;
  };
  spec.problem.dg_drho = [base](const Vec3& x, double rho) {
    return -base(x) / (rho * rho);
  };
  spec.rho_star = [pr](const Vec3& x) {
    return pr.F(std::clamp(x.dot(pr.axis), -1.0, 1.0));
  };
  return spec;
}

}  // namespace

ProblemSpec manufactured_exp_axis(int dimension) {
  shapes::AxisProfile pr;
  pr.F = [](double s) { return std::exp(0.1 * s); };
  pr.dF = [](double s) { return 0.1 * std::exp(0.1 * s); };
  pr.d2F = [](double s) { return 0.01 * std::exp(0.1 * s); };
  pr.axis = Vec3::UnitX();  // in-plane, so the same profile serves S^1 and S^2
  return manufactured_from_profile(dimension, pr, 0.5, 2.0,
                                   "manufactured-exp-axis");
}

ProblemSpec manufactured_inverse_axis(int dimension) {
  shapes::AxisProfile pr;
  pr.F = [](double s) { return 1.0 + 0.3 / (1.5 - s); };
  pr.dF = [](double s) { return 0.3 / ((1.5 - s) * (1.5 - s)); };
  pr.d2F = [](double s) { return 0.6 / ((1.5 - s) * (1.5 - s) * (1.5 - s)); };
  pr.axis = Vec3::UnitX();
  return manufactured_from_profile(dimension, pr, 0.5, 4.5,
                                   "manufactured-inverse-axis");
}

namespace {

ProblemSpec problem_from_json(const json& j) {
  ProblemSpec spec;
  spec.problem.dimension = j.at("n").get<int>();
  spec.problem.R1 = j.at("R1").get<double>();
  spec.problem.R2 = j.at("R2").get<double>();
  const auto& gj = j.at("g");
  const std::string kind = gj.at("kind").get<std::string>();
  if (kind == "constant") {
    const double value = gj.at("value").get<double>();
    spec.problem.g = [value](const Vec3&, double) { return value; };
    spec.problem.dg_drho = [](const Vec3&, double) { return 0.0; };
    spec.problem.name = "constant";
  } else if (kind == "power") {
    const double c = gj.at("coefficient").get<double>();
    const double e = gj.at("exponent").get<double>();
    spec.problem.g = [c, e](const Vec3&, double rho) {
      return c * std::pow(rho, e);
    };
    spec.problem.dg_drho = [c, e](const Vec3&, double rho) {
      return c * e * std::pow(rho, e - 1.0);
    };
    spec.problem.name = "power";
  } else if (kind == "table") {
    std::vector<double> rho = gj.at("rho").get<std::vector<double>>();
    std::vector<double> val = gj.at("value").get<std::vector<double>>();
    if (rho.size() != val.size() || rho.size() < 2)
      throw std::invalid_argument("table g needs matching rho/value arrays");
    if (!std::is_sorted(rho.begin(), rho.end()))
      throw std::invalid_argument("table g needs ascending rho");
    spec.problem.g = [rho, val](const Vec3&, double r) {
      if (r <= rho.front()) return val.front();
      if (r >= rho.back()) return val.back();
      const auto it = std::upper_bound(rho.begin(), rho.end(), r);
      const size_t i = size_t(it - rho.begin());
      const double f = (r - rho[i - 1]) / (rho[i] - rho[i - 1]);
      return val[i - 1] + f * (val[i] - val[i - 1]);
    };
    spec.problem.name = "table";
  } else if (kind == "manufactured") {
    const std::string family = gj.at("family").get<std::string>();
    ProblemSpec built;
    if (family == "exp-axis") {
      built = manufactured_exp_axis(spec.problem.dimension);
    } else if (family == "inverse-axis") {
      built = manufactured_inverse_axis(spec.problem.dimension);
    } else {
      throw std::invalid_argument("unknown manufactured family: " + family);
    }
    // Keep the file's annulus only if it still contains the manufactured one.
    if (spec.problem.R1 > built.problem.R1 || spec.problem.R2 < built.problem.R2)
      throw std::invalid_argument(
          "manufactured problem needs R1 <= " +
          std::to_string(built.problem.R1) +
          " and R2 >= " + std::to_string(built.problem.R2));
    built.problem.R1 = spec.problem.R1;
    built.problem.R2 = spec.problem.R2;
    const int dim = spec.problem.dimension;
    spec = std::move(built);
    spec.problem.dimension = dim;
  } else {
    throw std::invalid_argument("unknown g kind: " + kind);
  }
  if (j.contains("name")) spec.problem.name = j.at("name").get<std::string>();
  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    spec.config.eps = s.value("eps", spec.config.eps);
    spec.config.Rbar = s.value("Rbar", spec.config.Rbar);
    spec.config.tau = s.value("tau", spec.config.tau);
    spec.config.dt = s.value("dt", spec.config.dt);
    spec.config.dt_min = s.value("dt_min", spec.config.dt_min);
    spec.config.tol = s.value("tol", spec.config.tol);
    spec.config.max_picard = s.value("max_picard", spec.config.max_picard);
    spec.config.stabilize_mean_mode =
        s.value("stabilize_mean_mode", spec.config.stabilize_mean_mode);
    spec.config.force = s.value("force", spec.config.force);
  }
  if (!(spec.config.tau > 0.0 && spec.config.tau <= 1.0))
    throw std::invalid_argument("solver.tau must lie in (0, 1]");
  if (!(spec.config.eps > 0.0))
    throw std::invalid_argument("solver.eps must be positive");
  spec.problem.validate();
  return spec;
}

}  // namespace

ProblemSpec problem_from_json_text(const std::string& text) {
  return problem_from_json(json::parse(text));
}

ProblemSpec load_problem_file(const std::string& path) {
  return problem_from_json(io::read_json_file(path));
}

std::string trace_csv(const std::vector<TraceRow>& rows) {
  std::ostringstream out;
  out << "t,iteration,step,residual\n";
  for (const auto& r : rows)
    out << io::format_double(r.t) << ',' << r.iteration << ','
        << io::format_double(r.step) << ',' << io::format_double(r.residual)
        << '\n';
  return out.str();
}

}  // namespace kummer::s1
