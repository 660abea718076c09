#include "translab/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include <unistd.h>

#include "translab/errors.hpp"

namespace translab {

namespace {

void indent(std::string& out, int depth) { out.append(static_cast<std::size_t>(2 * depth), ' '); }

void dump_value(const Json& j, std::string& out, int depth) {
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        indent(out, depth + 1);
        out += Json(it.key()).dump();
        out += ": ";
        dump_value(it.value(), out, depth + 1);
      }
      out += "\n";
      indent(out, depth);
      out += "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        indent(out, depth + 1);
        dump_value(j[i], out, depth + 1);
      }
      out += "\n";
      indent(out, depth);
      out += "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

Json vec(const std::vector<double>& v) { return Json(v); }

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  dump_value(j, out, 0);
  out += "\n";
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw DomainError("cannot open " + tmp.string() + " for writing");
    f << contents;
    f.flush();
    if (!f) throw DomainError("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw DomainError("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                      ec.message());
  }
}

Json to_json(const EstimateReport& r) {
  Json j;
  j["lemma_id"] = r.lemma_id;
  j["passed"] = r.passed;
  j["bound_constant"] = r.bound_constant;
  j["tolerance"] = r.tolerance;
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"value", c.value}, {"bound", c.bound}, {"passed", c.passed}});
  j["checks"] = checks;
  Json measured = Json::array();
  for (const auto& [h, v] : r.measured) measured.push_back(Json::array({h, v}));
  j["measured"] = measured;
  j["details"] = r.details;
  return j;
}

Json to_json(const QuadraticFormReport& r) {
  Json j;
  j["speed"] = r.speed;
  j["n"] = r.n;
  j["z_face"] = vec(r.z_face);
  j["min_eigenvalue"] = r.min_eigenvalue;
  j["tolerance"] = r.tolerance;
  j["speed_value"] = r.speed_value;
  j["passed"] = r.passed();
  return j;
}

Json to_json(const Beta2Estimate& e, const Speed& speed, PinchMode mode,
             const Beta2Validation* validation) {
  Json j;
  j["speed"] = speed.name();
  j["n"] = speed.dim();
  j["mode"] = std::string(pinch_mode_name(mode));
  j["beta1"] = e.beta1;
  j["beta2"] = e.beta2;
  j["witness"] = vec(e.witness);
  j["samples"] = e.samples;
  j["in_closure"] = e.in_closure;
  j["in_lambda"] = e.in_lambda;
  Json violations = Json::array();
  if (e.outside_positive_cone > 0)
    violations.push_back({{"kind", "lambda outside positive cone"},
                          {"count", e.outside_positive_cone}});
  if (validation) {
    j["validation"] = {{"samples", validation->samples},
                       {"checked", validation->checked},
                       {"violations", validation->violations},
                       {"worst_excess", validation->worst_excess}};
    if (validation->violations > 0)
      violations.push_back({{"kind", "validation sample above beta2 min z"},
                            {"count", validation->violations}});
  }
  j["violations"] = violations;
  j["passed"] = violations.empty();
  return j;
}

Json to_json(const FaceProbeReport& r, const Speed& speed, PinchMode mode) {
  Json j;
  j["speed"] = speed.name();
  j["n"] = speed.dim();
  j["mode"] = std::string(pinch_mode_name(mode));
  j["points"] = r.points;
  j["diagonal_points"] = r.diagonal_points;
  j["max_abs_on_diagonal"] = r.max_abs_on_diagonal;
  j["max_off_diagonal"] = r.max_off_diagonal;
  j["zero_on_diagonal"] = r.zero_on_diagonal;
  j["negative_off_diagonal"] = r.negative_off_diagonal;
  j["scaling_ok"] = r.scaling_ok;
  j["violations"] = r.violations;
  j["passed"] = r.passed();
  return j;
}

Json to_json(const AdmissibilityReport& r, const Speed& speed) {
  Json j;
  j["speed"] = speed.name();
  j["n"] = speed.dim();
  j["symmetry_ok"] = r.symmetry_ok;
  j["monotone_ok"] = r.monotone_ok;
  j["homogeneous_ok"] = r.homogeneous_ok;
  j["symmetry_violation"] = r.symmetry_violation;
  j["monotone_violation"] = r.monotone_violation;
  j["homogeneity_violation"] = r.homogeneity_violation;
  j["min_gradient"] = r.min_gradient;
  j["tolerance"] = r.tolerance;
  j["samples"] = r.samples_used;
  j["passed"] = r.all_ok();
  return j;
}

Json to_json(const ConcavityReport& r, const Speed& speed) {
  Json j;
  j["speed"] = speed.name();
  j["n"] = speed.dim();
  j["mode"] = std::string(concavity_mode_name(r.mode));
  j["extremal_eigenvalue"] = r.extremal_eigenvalue;
  j["extremal_point"] = vec(r.extremal_point);
  j["tolerance"] = r.tolerance;
  j["samples"] = r.samples_used;
  j["passed"] = r.passed;
  return j;
}

Json profile_sidecar(const Profile& p) {
  Json j;
  j["speed"] = p.speed().name();
  j["n"] = p.dim();
  j["tol"] = p.tol();
  j["residual_max"] = p.residual_max();
  j["eps"] = p.eps();
  j["kappa0"] = p.kappa0();
  j["nodes"] = p.size();
  j["r_max"] = p.r_max();
  j["h_max"] = p.h_max();
  return j;
}

}  // namespace translab
