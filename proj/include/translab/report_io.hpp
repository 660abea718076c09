#pragma once

// JSON and CSV artifacts: report serialization with fixed 17-significant-digit
// floats and atomic file writes.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "translab/bowl.hpp"
#include "translab/cones.hpp"
#include "translab/estimates.hpp"
#include "translab/matrix_calculus.hpp"
#include "translab/speeds.hpp"

namespace translab {

using Json = nlohmann::ordered_json;

/// Indented JSON with every float printed as %.17g; non-finite floats become
/// null. Ends with a newline.
std::string dump_json(const Json& j);

/// Writes to a sibling temp file and renames it over path.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

Json to_json(const EstimateReport& r);
Json to_json(const QuadraticFormReport& r);
Json to_json(const Beta2Estimate& e, const Speed& speed, PinchMode mode,
             const Beta2Validation* validation);
Json to_json(const FaceProbeReport& r, const Speed& speed, PinchMode mode);
Json to_json(const AdmissibilityReport& r, const Speed& speed);
Json to_json(const ConcavityReport& r, const Speed& speed);
/// Profile sidecar: speed, n, tol, residual_max, eps, plus node count and range.
Json profile_sidecar(const Profile& p);

}  // namespace translab
