#pragma once

#include <cstdint>
#include <functional>

#include "kummer/kummer_core.hpp"
#include "kummer/shapes.hpp"

namespace kummer::rt {

using core::RadialHypersurface;

// Counter-based RNG (Philox 4x32, 10 rounds). A (key, counter) pair maps to
// four 32-bit words; the generator is stateless, so any ray/attempt index can
// be generated independently of thread or call order, and a seed fully
// determines every stream.
struct Philox4x32 {
  static std::array<uint32_t, 4> block(uint64_t key,
                                       const std::array<uint32_t, 4>& counter);
  // Two doubles in (0,1) from one block.
  static std::array<double, 2> uniforms(uint64_t key,
                                        const std::array<uint32_t, 4>& counter);
};

// Equal-area binning of S^n. For S^2: latitude rings, each split into equal
// longitude sectors; ring boundaries are placed at cumulative-count fractions
// of z = cos(colatitude), which makes every bin area exactly vol/total. For
// S^1: uniform arcs.
class EqualAreaBins {
 public:
  static EqualAreaBins build(int dimension, int total_bins);

  int dimension() const { return dim_; }
  int total() const { return total_; }
  double bin_area() const { return area_; }
  int find(const Vec3& y) const;
  // Representative center (colatitude, longitude) of a bin.
  void center(int b, double& colat, double& lon) const;
  // Integral of a density over bin b by Gauss quadrature (exact enough for
  // smooth densities).
  double integrate(int b, const std::function<double(const Vec3&)>& f) const;

 private:
  int dim_ = 2, total_ = 0, rings_ = 0;
  double area_ = 0.0;
  std::vector<int> ring_count_, ring_cum_;  // bins per ring, cumulative
  std::vector<double> z_edge_;              // rings_+1 descending z edges (S^2)
};

struct RayBatch {
  uint64_t seed = 0;
  int count = 0;
  std::vector<Vec3> x;      // source directions
  std::vector<Vec3> r;      // reflection points rho(x) x
  std::vector<Vec3> gamma;  // reflected unit directions
};

// Emission density on the sphere of source directions; uniform when fn is
// empty. bound must dominate fn for rejection sampling.
struct SourceDensity {
  std::function<double(const Vec3&)> fn;
  double bound = 1.0;
};

// Sample source directions (uniform, or rejection-thinned per g), reflect
// each off the surface, and record the reflected congruence. The surface is
// any chart-free ambient evaluator; restricted-domain shapes pair with an
// emission density supported inside their domain.
RayBatch trace_batch(const std::function<core::AmbientPoint(const Vec3&)>& surface,
                     int dimension, const SourceDensity& g, int count,
                     uint64_t seed);
RayBatch trace_batch(const RadialHypersurface& R, const SourceDensity& g,
                     int count, uint64_t seed);

struct FarFieldHistogram {
  EqualAreaBins bins{};
  std::vector<int64_t> counts;
  ArrayXd density;  // count/(rays * bin area): probability density estimate
  ArrayXd stderr_;  // binomial standard error of the density estimate
};

FarFieldHistogram farfield_density(const RayBatch& batch,
                                   const EqualAreaBins& bins);

// Comparison of a histogram against expected per-bin probabilities.
struct HistogramTest {
  ArrayXd z;          // per-bin (count - N p)/sqrt(N p (1-p))
  double max_abs_z = 0.0;
  double chi2 = 0.0;
  int dof = 0;
  double chi2_z = 0.0;  // (chi2 - dof)/sqrt(2 dof)
};
HistogramTest compare_histogram(const FarFieldHistogram& hist,
                                const ArrayXd& expected_p);

// Expected per-bin probabilities of a smooth density (integrated per bin and
// normalized to sum to one).
ArrayXd expected_bin_probabilities(const EqualAreaBins& bins,
                                   const std::function<double(const Vec3&)>& p);

// Exact pushforward density of emission g under the reflection of an
// axisymmetric profile: p(y) = g_norm(x(y)) / |S_n(x(y))| with x(y) the
// preimage of y under gamma (solved per latitude; azimuths map rigidly).
// g_s is the emission density as a function of s = <x,axis>; empty = uniform.
std::function<double(const Vec3&)> axis_pushforward_density(
    int dimension, const shapes::AxisProfile& profile,
    const std::function<double(double)>& g_s);

// Max over rays of the distance from the full reflected line to a point.
double focal_concentration(const RayBatch& batch, const Vec3& focus);

// sup over grid of | sqrt(det ehat/det e) - |S_n| | / (1 + |S_n|): the
// congruence Jacobian computed along two independent code paths.
double jacobian_consistency(const RadialHypersurface& R);

}  // namespace kummer::rt
