#include "kummer/raytrace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kummer/harmonics.hpp"

namespace kummer::rt {

namespace {

inline uint32_t mulhi32(uint32_t a, uint32_t b, uint32_t& lo) {
  const uint64_t p = uint64_t(a) * uint64_t(b);
  lo = uint32_t(p);
  return uint32_t(p >> 32);
}

}  // namespace

std::array<uint32_t, 4> Philox4x32::block(
    uint64_t key, const std::array<uint32_t, 4>& counter) {
  constexpr uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
  constexpr uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
  uint32_t k0 = uint32_t(key), k1 = uint32_t(key >> 32);
  std::array<uint32_t, 4> c = counter;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k0 += kW0;
      k1 += kW1;
    }
    uint32_t lo0, lo1;
    const uint32_t hi0 = mulhi32(kM0, c[0], lo0);
    const uint32_t hi1 = mulhi32(kM1, c[2], lo1);
    c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
  }
  return c;
}

std::array<double, 2> Philox4x32::uniforms(
    uint64_t key, const std::array<uint32_t, 4>& counter) {
  const auto b = block(key, counter);
  auto unit = [](uint32_t hi, uint32_t lo) {
    const uint64_t v = (uint64_t(hi) << 32) | lo;
    return double(v >> 11) * 0x1p-53 + 0x1p-54;  // in (0,1)
  };
  return {unit(b[0], b[1]), unit(b[2], b[3])};
}

// ----------------------------------------------------------------- binning

EqualAreaBins EqualAreaBins::build(int dimension, int total_bins) {
  if (dimension != 1 && dimension != 2)
    throw std::invalid_argument("EqualAreaBins: dimension must be 1 or 2");
  if (total_bins < 1)
    throw std::invalid_argument("EqualAreaBins: need at least one bin");
  EqualAreaBins eb;
  eb.dim_ = dimension;
  eb.total_ = total_bins;
  if (dimension == 1) {
    eb.area_ = kTwoPi / total_bins;
    eb.rings_ = 1;
    eb.ring_count_ = {total_bins};
    eb.ring_cum_ = {0, total_bins};
    return eb;
  }
  int rings = std::max(
      1, int(std::lround(std::sqrt(double(total_bins) * kPi) / 2.0)));
  rings = std::min(rings, total_bins);
  // Provisional counts proportional to equal-colatitude band areas, then
  // nudged so they sum to the requested total.
  std::vector<double> ideal(rings);
  std::vector<int> m(rings);
  int assigned = 0;
  for (int k = 0; k < rings; ++k) {
    const double z0 = std::cos(kPi * k / rings);
    const double z1 = std::cos(kPi * (k + 1) / rings);
    ideal[k] = total_bins * (z0 - z1) / 2.0;
    m[k] = std::max(1, int(std::lround(ideal[k])));
    assigned += m[k];
  }
  while (assigned != total_bins) {
    const int dir = assigned < total_bins ? 1 : -1;
    int best = -1;
    double best_gap = -1e300;
    for (int k = 0; k < rings; ++k) {
      if (dir < 0 && m[k] <= 1) continue;
      const double gap = dir * (ideal[k] - m[k]);
      if (gap > best_gap) {
        best_gap = gap;
        best = k;
      }
    }
    m[best] += dir;
    assigned += dir;
  }
  eb.rings_ = rings;
  eb.ring_count_ = std::move(m);
  eb.ring_cum_.assign(rings + 1, 0);
  for (int k = 0; k < rings; ++k)
    eb.ring_cum_[k + 1] = eb.ring_cum_[k] + eb.ring_count_[k];
  // Ring edges at cumulative-count fractions of z make every bin area exactly
  // 4 pi / total.
  eb.z_edge_.resize(rings + 1);
  for (int k = 0; k <= rings; ++k)
    eb.z_edge_[k] = 1.0 - 2.0 * double(eb.ring_cum_[k]) / total_bins;
  eb.area_ = 2.0 * kTwoPi / total_bins;
  return eb;
}

int EqualAreaBins::find(const Vec3& y) const {
  double lon = std::atan2(y.y(), y.x());
  if (lon < 0.0) lon += kTwoPi;
  if (dim_ == 1) return std::min(int(lon / kTwoPi * total_), total_ - 1);
  const double z = std::clamp(y.z(), -1.0, 1.0);
  auto it = std::upper_bound(z_edge_.begin(), z_edge_.end(), z,
                             std::greater<double>());
  const int k = std::clamp(int(it - z_edge_.begin()) - 1, 0, rings_ - 1);
  const int mk = ring_count_[k];
  const int j = std::min(int(lon / kTwoPi * mk), mk - 1);
  return ring_cum_[k] + j;
}

void EqualAreaBins::center(int b, double& colat, double& lon) const {
  if (b < 0 || b >= total_) throw std::out_of_range("EqualAreaBins::center");
  if (dim_ == 1) {
    colat = kPi / 2.0;
    lon = (b + 0.5) * kTwoPi / total_;
    return;
  }
  auto it = std::upper_bound(ring_cum_.begin(), ring_cum_.end(), b);
  const int k = int(it - ring_cum_.begin()) - 1;
  const int j = b - ring_cum_[k];
  const double zc = 0.5 * (z_edge_[k] + z_edge_[k + 1]);
  colat = std::acos(std::clamp(zc, -1.0, 1.0));
  lon = (j + 0.5) * kTwoPi / ring_count_[k];
}

double EqualAreaBins::integrate(
    int b, const std::function<double(const Vec3&)>& f) const {
  if (b < 0 || b >= total_)
    throw std::out_of_range("EqualAreaBins::integrate");
  constexpr int q = 5;
  ArrayXd xs, ws;
  geom::gauss_legendre(q, xs, ws);
  if (dim_ == 1) {
    const double t0 = b * kTwoPi / total_, t1 = (b + 1) * kTwoPi / total_;
    const double mid = 0.5 * (t0 + t1), half = 0.5 * (t1 - t0);
    double acc = 0.0;
    for (int i = 0; i < q; ++i) {
      const double th = mid + half * xs[i];
      acc += ws[i] * half * f(Vec3(std::cos(th), std::sin(th), 0.0));
    }
    return acc;
  }
  auto it = std::upper_bound(ring_cum_.begin(), ring_cum_.end(), b);
  const int k = int(it - ring_cum_.begin()) - 1;
  const int j = b - ring_cum_[k];
  const double zlo = z_edge_[k + 1], zhi = z_edge_[k];
  const double p0 = j * kTwoPi / ring_count_[k];
  const double p1 = (j + 1) * kTwoPi / ring_count_[k];
  const double zmid = 0.5 * (zlo + zhi), zhalf = 0.5 * (zhi - zlo);
  const double pmid = 0.5 * (p0 + p1), phalf = 0.5 * (p1 - p0);
  double acc = 0.0;  // area element is dz dphi
  for (int a = 0; a < q; ++a) {
    const double z = zmid + zhalf * xs[a];
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int c = 0; c < q; ++c) {
      const double ph = pmid + phalf * xs[c];
      const Vec3 y(s * std::cos(ph), s * std::sin(ph), z);
      acc += ws[a] * zhalf * ws[c] * phalf * f(y);
    }
  }
  return acc;
}

// ----------------------------------------------------------------- tracing

RayBatch trace_batch(
    const std::function<core::AmbientPoint(const Vec3&)>& surface,
    int dimension, const SourceDensity& g, int count, uint64_t seed) {
  if (count < 0) throw std::invalid_argument("trace_batch: negative count");
  if (g.fn && !(g.bound > 0.0))
    throw std::invalid_argument("trace_batch: density bound must be positive");
  const int n = dimension;
  RayBatch batch;
  batch.seed = seed;
  batch.count = count;
  batch.x.reserve(count);
  batch.r.reserve(count);
  batch.gamma.reserve(count);
  constexpr uint32_t kMaxAttempts = 1u << 16;
  for (int i = 0; i < count; ++i) {
    Vec3 x;
    for (uint32_t attempt = 0;; ++attempt) {
      if (attempt >= kMaxAttempts)
        throw std::runtime_error(
            "trace_batch: rejection sampling stalled; check the density "
            "bound");
      const auto u = Philox4x32::uniforms(seed, {uint32_t(i), attempt, 0u, 0u});
      if (n == 1) {
        const double th = kTwoPi * u[0];
        x = Vec3(std::cos(th), std::sin(th), 0.0);
      } else {
        const double z = 2.0 * u[0] - 1.0;
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double ph = kTwoPi * u[1];
        x = Vec3(s * std::cos(ph), s * std::sin(ph), z);
      }
      if (!g.fn) break;
      const double gv = g.fn(x);
      if (gv < 0.0 || gv > g.bound * (1.0 + 1e-12))
        throw std::runtime_error("trace_batch: density escapes [0, bound]");
      const auto ua =
          Philox4x32::uniforms(seed, {uint32_t(i), attempt, 1u, 0u});
      if (ua[0] * g.bound <= gv) break;
    }
    const core::AmbientPoint ap = surface(x);
    batch.x.push_back(x);
    batch.r.push_back(ap.r);
    batch.gamma.push_back(ap.gamma);
  }
  return batch;
}

RayBatch trace_batch(const RadialHypersurface& R, const SourceDensity& g,
                     int count, uint64_t seed) {
  return trace_batch([&R](const Vec3& x) { return R.ambient(x); },
                     R.grid()->dimension(), g, count, seed);
}

FarFieldHistogram farfield_density(const RayBatch& batch,
                                   const EqualAreaBins& bins) {
  FarFieldHistogram h;
  h.bins = bins;
  h.counts.assign(bins.total(), 0);
  for (const Vec3& y : batch.gamma) ++h.counts[bins.find(y)];
  const double N = std::max(batch.count, 1);
  h.density.resize(bins.total());
  h.stderr_.resize(bins.total());
  for (int b = 0; b < bins.total(); ++b) {
    const double p = double(h.counts[b]) / N;
    h.density[b] = p / bins.bin_area();
    h.stderr_[b] = std::sqrt(std::max(0.0, p * (1.0 - p) / N)) /
                   bins.bin_area();
  }
  return h;
}

HistogramTest compare_histogram(const FarFieldHistogram& hist,
                                const ArrayXd& expected_p) {
  const int B = hist.bins.total();
  if (int(expected_p.size()) != B)
    throw std::invalid_argument("compare_histogram: probability size");
  int64_t N = 0;
  for (const int64_t c : hist.counts) N += c;
  HistogramTest t;
  t.z.resize(B);
  t.dof = B - 1;
  for (int b = 0; b < B; ++b) {
    const double p = expected_p[b];
    const double mean = double(N) * p;
    const double var = double(N) * p * (1.0 - p);
    t.z[b] = (double(hist.counts[b]) - mean) / std::sqrt(std::max(var, 1e-300));
    const double d = double(hist.counts[b]) - mean;
    t.chi2 += d * d / std::max(mean, 1e-300);
  }
  t.max_abs_z = t.z.abs().maxCoeff();
  t.chi2_z = (t.chi2 - t.dof) / std::sqrt(2.0 * t.dof);
  return t;
}

ArrayXd expected_bin_probabilities(
    const EqualAreaBins& bins, const std::function<double(const Vec3&)>& p) {
  ArrayXd out(bins.total());
  for (int b = 0; b < bins.total(); ++b) out[b] = bins.integrate(b, p);
  const double total = out.sum();
  if (!(total > 0.0))
    throw std::runtime_error("expected_bin_probabilities: density vanishes");
  return out / total;
}

// ------------------------------------------------------------------ oracles

std::function<double(const Vec3&)> axis_pushforward_density(
    int dimension, const shapes::AxisProfile& profile,
    const std::function<double(double)>& g_s) {
  const int n = dimension;
  const Vec3 u = profile.axis;
  Vec3 v;  // a unit vector orthogonal to the axis (in-plane for S^1)
  if (n == 1) {
    v = Vec3(-u.y(), u.x(), 0.0);
  } else {
    v = std::abs(u.z()) < 0.9 ? u.cross(Vec3::UnitZ()) : u.cross(Vec3::UnitX());
  }
  v.normalize();
  const double slo = std::max(-1.0, profile.s_min + 1e-9);
  const double shi = std::min(1.0, profile.s_max - 1e-9);
  auto psi = [=](double s) {
    const double c = std::sqrt(std::max(0.0, 1.0 - s * s));
    return profile.ambient(s * u + c * v).gamma.dot(u);
  };
  // Source normalization over the sphere of directions.
  double Z = 0.0;
  if (!g_s) {
    Z = n == 1 ? kTwoPi : 2.0 * kTwoPi;
  } else if (n == 1) {
    const int m = 2048;  // trapezoid on the circle: spectrally accurate
    for (int i = 0; i < m; ++i) Z += g_s(std::cos(kTwoPi * i / m));
    Z *= kTwoPi / m;
  } else {
    ArrayXd xs, ws;
    geom::gauss_legendre(96, xs, ws);
    for (int i = 0; i < xs.size(); ++i) Z += ws[i] * g_s(xs[i]);
    Z *= kTwoPi;
  }
  return [=](const Vec3& y) {
    const double t = std::clamp(y.dot(u), -1.0, 1.0);
    double lo = slo, hi = shi;
    double flo = psi(lo) - t, fhi = psi(hi) - t;
    if (flo * fhi > 0.0)
      throw std::runtime_error(
          "axis_pushforward_density: latitude outside the reflected range");
    for (int it = 0; it < 110 && hi - lo > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = psi(mid) - t;
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((fm > 0.0) == (flo > 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
        fhi = fm;
      }
    }
    const double s = 0.5 * (lo + hi);
    const double Sn = shapes::profile_top_intensity(profile, n, s);
    if (std::abs(Sn) < 1e-14)
      throw std::runtime_error("axis_pushforward_density: degenerate Jacobian");
    const double gv = g_s ? g_s(s) : 1.0;
    return gv / (Z * std::abs(Sn));
  };
}

double focal_concentration(const RayBatch& batch, const Vec3& focus) {
  double worst = 0.0;
  for (int i = 0; i < batch.count; ++i) {
    const Vec3 d = focus - batch.r[i];
    // Distance from the full reflected line to the focus; the cross-product
    // form is exact (0.0) when gamma is exactly anti-parallel to d.
    const double dist = d.cross(batch.gamma[i]).norm() / batch.gamma[i].norm();
    worst = std::max(worst, dist);
  }
  return worst;
}

double jacobian_consistency(const RadialHypersurface& R) {
  const auto spec = core::principal_intensities(R);
  const ArrayXd det_ehat = core::ehat_form(R).det_ratio();
  double worst = 0.0;
  for (int p = 0; p < R.points(); ++p) {
    const double a = std::sqrt(std::max(0.0, det_ehat[p]));
    const double b = std::abs(spec.Sn[p]);
    worst = std::max(worst, std::abs(a - b) / (1.0 + b));
  }
  return worst;
}

}  // namespace kummer::rt
