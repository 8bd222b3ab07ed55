#pragma once

#include <string>

#include <json.hpp>

#include "kummer/kummer_core.hpp"
#include "kummer/raytrace.hpp"
#include "kummer/shapes.hpp"

namespace kummer::io {

using nlohmann::json;

// ScalarField <-> JSON: {dimension, grid sizes, row-major values}. Values
// survive a round trip exactly (shortest round-trip decimal serialization).
json field_to_json(const geom::ScalarField& f);
geom::ScalarField field_from_json(const json& j);

// Tensor field export: per-point chart components and frame eigenvalues.
json tensor_to_json(const geom::SymTensorField2& T, const std::string& name);

// Per-point analysis table: point id, chart coordinates, rho, S_1..S_n,
// lambda_1..lambda_n (one row per collocation point).
std::string intensity_csv(const core::RadialHypersurface& R);

// Far-field histogram table: bin center (colatitude, longitude), area, count,
// density, stderr.
std::string histogram_csv(const rt::FarFieldHistogram& h);
// Run-parameter sidecar for a histogram (echoes the seed and sizes).
json histogram_sidecar(const rt::FarFieldHistogram& h, uint64_t seed, int rays,
                       const json& extra = json::object());

// Shape catalog: {kind, p, ecc, axis, ...} -> an axis profile. Known kinds:
// sphere, plane, paraboloid, ellipsoid, hyperboloid, perturbed-sphere.
shapes::AxisProfile shape_from_json(const json& j);

// Plain file helpers (binary-exact).
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);
json read_json_file(const std::string& path);

// Fixed CSV number format (17 significant digits, round-trip exact).
std::string format_double(double v);

}  // namespace kummer::io
