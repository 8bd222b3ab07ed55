#include "kummer/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kummer::io {

using geom::ScalarField;
using geom::SphereGrid;

json field_to_json(const ScalarField& f) {
  const auto& grid = *f.grid();
  json j;
  j["dimension"] = grid.dimension();
  if (grid.dimension() == 1) {
    j["grid"] = json{{"points", grid.resolution()}};
  } else {
    j["grid"] = json{{"l_max", grid.resolution()},
                     {"nlat", grid.resolution() + 1},
                     {"nlon", 2 * (grid.resolution() + 1)}};
  }
  std::vector<double> vals(f.values().data(),
                           f.values().data() + f.values().size());
  j["values"] = vals;  // row-major (latitude-major for the sphere)
  return j;
}

ScalarField field_from_json(const json& j) {
  const int dim = j.at("dimension").get<int>();
  int res = 0;
  if (dim == 1) {
    res = j.at("grid").at("points").get<int>();
  } else if (dim == 2) {
    res = j.at("grid").at("l_max").get<int>();
  } else {
    throw std::invalid_argument("field_from_json: dimension must be 1 or 2");
  }
  auto grid = SphereGrid::build(dim, res);
  const auto& vj = j.at("values");
  if (int(vj.size()) != grid->points())
    throw std::invalid_argument("field_from_json: value count mismatch");
  ArrayXd vals(grid->points());
  for (int p = 0; p < grid->points(); ++p) vals[p] = vj[p].get<double>();
  return ScalarField(grid, vals, geom::Smoothness::General);
}

json tensor_to_json(const geom::SymTensorField2& T, const std::string& name) {
  const auto& grid = *T.grid();
  ArrayXd lo, hi;
  T.frame_eigenvalues(lo, hi);
  json j;
  j["name"] = name;
  j["dimension"] = grid.dimension();
  if (grid.dimension() == 1) {
    j["grid"] = json{{"points", grid.resolution()}};
  } else {
    j["grid"] = json{{"l_max", grid.resolution()}};
  }
  auto dump = [](const ArrayXd& a) {
    return std::vector<double>(a.data(), a.data() + a.size());
  };
  j["chart"] = json{{"tt", dump(T.tt())}};
  if (grid.dimension() == 2) {
    j["chart"]["tp"] = dump(T.tp());
    j["chart"]["pp"] = dump(T.pp());
  }
  j["frame_eigenvalues"] = json{{"lo", dump(lo)}, {"hi", dump(hi)}};
  return j;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string intensity_csv(const core::RadialHypersurface& R) {
  const auto& grid = *R.grid();
  const int n = grid.dimension();
  const auto spec = core::principal_intensities(R);
  std::ostringstream out;
  if (n == 1) {
    out << "point,theta,rho,S1,lambda1\n";
    for (int p = 0; p < grid.points(); ++p) {
      const auto& cp = grid.point(p);
      out << p << ',' << format_double(cp.theta) << ','
          << format_double(R.jet(p).rho) << ',' << format_double(spec.S1[p])
          << ',' << format_double(spec.lam_lo[p]) << '\n';
    }
  } else {
    out << "point,theta,phi,rho,S1,S2,lambda1,lambda2\n";
    for (int p = 0; p < grid.points(); ++p) {
      const auto& cp = grid.point(p);
      out << p << ',' << format_double(cp.theta) << ','
          << format_double(cp.phi) << ',' << format_double(R.jet(p).rho) << ','
          << format_double(spec.S1[p]) << ',' << format_double(spec.Sn[p])
          << ',' << format_double(spec.lam_lo[p]) << ','
          << format_double(spec.lam_hi[p]) << '\n';
    }
  }
  return out.str();
}

std::string histogram_csv(const rt::FarFieldHistogram& h) {
  std::ostringstream out;
  out << "bin,colat,lon,area,count,density,stderr\n";
  for (int b = 0; b < h.bins.total(); ++b) {
    double colat, lon;
    h.bins.center(b, colat, lon);
    out << b << ',' << format_double(colat) << ',' << format_double(lon) << ','
        << format_double(h.bins.bin_area()) << ',' << h.counts[b] << ','
        << format_double(h.density[b]) << ',' << format_double(h.stderr_[b])
        << '\n';
  }
  return out.str();
}

json histogram_sidecar(const rt::FarFieldHistogram& h, uint64_t seed, int rays,
                       const json& extra) {
  json j;
  j["seed"] = seed;
  j["rays"] = rays;
  j["bins"] = h.bins.total();
  j["dimension"] = h.bins.dimension();
  j["bin_area"] = h.bins.bin_area();
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = *it;
  return j;
}

shapes::AxisProfile shape_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  Vec3 axis = Vec3::UnitZ();
  if (j.contains("axis")) {
    const auto& a = j.at("axis");
    if (a.size() != 3)
      throw std::invalid_argument("shape axis must have three components");
    axis = Vec3(a[0].get<double>(), a[1].get<double>(), a[2].get<double>());
    const double len = axis.norm();
    if (!(len > 0)) throw std::invalid_argument("shape axis must be nonzero");
    axis /= len;
  }
  const double p = j.value("p", 1.0);
  if (kind == "sphere") {
    return shapes::ConicOfRevolution{p, 0.0, axis}.profile();
  }
  if (kind == "paraboloid") {
    return shapes::ConicOfRevolution{p, 1.0, axis}.profile();
  }
  if (kind == "ellipsoid" || kind == "hyperboloid") {
    const double ecc = j.at("ecc").get<double>();
    if (kind == "ellipsoid" && !(ecc > 0.0 && ecc < 1.0))
      throw std::invalid_argument("ellipsoid needs 0 < ecc < 1");
    if (kind == "hyperboloid" && !(ecc > 1.0))
      throw std::invalid_argument("hyperboloid needs ecc > 1");
    return shapes::ConicOfRevolution{p, ecc, axis}.profile();
  }
  if (kind == "plane") {
    return shapes::PlanePiece{axis, j.value("c", 1.0)}.profile();
  }
  if (kind == "perturbed-sphere") {
    const double amp = j.value("amp", 0.05);
    const double base = j.value("base", 1.0);
    if (!(base > std::abs(amp)))
      throw std::invalid_argument("perturbed-sphere needs base > |amp|");
    shapes::AxisProfile pr;
    pr.F = [base, amp](double s) { return base + amp * s; };
    pr.dF = [amp](double) { return amp; };
    pr.d2F = [](double) { return 0.0; };
    pr.axis = axis;
    return pr;
  }
  throw std::invalid_argument("unknown shape kind: " + kind);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), std::streamsize(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::string& path) {
  return json::parse(read_text_file(path));
}

}  // namespace kummer::io
