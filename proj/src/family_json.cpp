#include "h2r/family_json.hpp"

#include <cmath>

namespace h2r {

namespace {

const Json& need(const Json& j, const std::string& key,
                 const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) {
    raise(ErrorCode::InvalidArgument,
          "family spec: missing field '" + key + "' in " + where);
  }
  return *it;
}

double need_num(const Json& j, const std::string& key,
                const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_number()) {
    raise(ErrorCode::InvalidArgument,
          "family spec: field '" + key + "' in " + where + " must be a number");
  }
  return v.get<double>();
}

std::string need_str(const Json& j, const std::string& key,
                     const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_string()) {
    raise(ErrorCode::InvalidArgument,
          "family spec: field '" + key + "' in " + where + " must be a string");
  }
  return v.get<std::string>();
}

LorentzVec3 vec3_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3 || !j[0].is_number() ||
      !j[1].is_number() || !j[2].is_number()) {
    raise(ErrorCode::InvalidArgument,
          "family spec: " + where + " must be an array of 3 numbers");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

AngleProfile theta_from_json(const Json& j) {
  const std::string type = need_str(j, "type", "theta");
  const double x0 = need_num(j, "x0", "theta");
  const double x1 = need_num(j, "x1", "theta");
  AngleProfile p;
  if (type == "linear") {
    p = theta_linear(need_num(j, "slope", "theta"),
                     need_num(j, "intercept", "theta"), x0, x1);
  } else if (type == "constant") {
    p = theta_constant(need_num(j, "value", "theta"), x0, x1);
  } else {
    raise(ErrorCode::InvalidArgument,
          "family spec: theta.type must be 'linear' or 'constant'");
  }
  if (j.contains("anchor")) p.anchor = need_num(j, "anchor", "theta");
  return p;
}

RealFn psi_from_json(const Json& j) {
  const std::string type = need_str(j, "type", "psi");
  if (type == "constant") {
    const double v = need_num(j, "value", "psi");
    return [v](double) { return v; };
  }
  if (type == "linear") {
    const double s = need_num(j, "slope", "psi");
    const double c = need_num(j, "intercept", "psi");
    return [s, c](double y) { return s * y + c; };
  }
  raise(ErrorCode::InvalidArgument,
        "family spec: psi.type must be 'constant' or 'linear'");
}

std::optional<Rect> optional_rect(const Json& spec) {
  if (!spec.contains("domain")) return std::nullopt;
  return rect_from_json(spec.at("domain"), "domain");
}

}  // namespace

Rect rect_from_json(const Json& j, const std::string& where) {
  Rect r{need_num(j, "x0", where), need_num(j, "x1", where),
         need_num(j, "y0", where), need_num(j, "y1", where)};
  if (!(r.x0 < r.x1) || !(r.y0 < r.y1)) {
    raise(ErrorCode::EmptyDomain, "family spec: " + where + " is empty");
  }
  return r;
}

Json rect_to_json(const Rect& r) {
  return Json{{"x0", r.x0}, {"x1", r.x1}, {"y0", r.y0}, {"y1", r.y1}};
}

bool is_angle_field_spec(const Json& spec) {
  return spec.is_object() && spec.contains("family") &&
         spec.at("family").is_string() &&
         spec.at("family").get<std::string>() == "angle_field";
}

Field2 build_angle_field(const Json& spec, Rect* rect_out) {
  const std::string kind = need_str(spec, "kind", "angle_field");
  if (rect_out != nullptr) {
    *rect_out = rect_from_json(need(spec, "domain", "angle_field"), "domain");
  }
  if (kind == "am") {
    const double k = need_num(spec, "k", "angle_field");
    const double c = need_num(spec, "c", "angle_field");
    const int sign =
        spec.contains("sign") ? spec.at("sign").get<int>() : 1;
    return minimal_angle_field(k, c, sign);
  }
  if (kind == "linear") {
    const double a = need_num(spec, "a", "angle_field");
    const double b = need_num(spec, "b", "angle_field");
    return [a, b](double x, double y) { return a * x + b * y; };
  }
  raise(ErrorCode::InvalidArgument,
        "family spec: angle_field.kind must be 'am' or 'linear'");
}

Immersion build_family(const Json& spec) {
  if (!spec.is_object()) {
    raise(ErrorCode::InvalidArgument, "family spec: document must be an object");
  }
  const std::string family = need_str(spec, "family", "spec");

  if (family == "minimal") {
    return make_minimal_family(need_num(spec, "c1", "minimal"),
                               need_num(spec, "c2", "minimal"),
                               optional_rect(spec));
  }
  if (family == "flat") {
    return make_flat_family(need_num(spec, "c", "flat"), optional_rect(spec));
  }
  if (family == "named") {
    return make_named_example(need_str(spec, "id", "named"));
  }
  if (family == "pair") {
    const CurvePair pair = curve_pair_catalog(need_str(spec, "pair", "pair"));
    const AngleProfile angle = theta_from_json(need(spec, "theta", "pair"));
    const Rect rect = rect_from_json(need(spec, "domain", "pair"), "domain");
    const double off =
        spec.contains("phi_offset") ? need_num(spec, "phi_offset", "pair") : 0.0;
    return make_pair_surface(pair, angle, rect, off);
  }
  if (family == "curve") {
    const double radius =
        spec.contains("radius") ? need_num(spec, "radius", "curve") : 1.0;
    const auto [f, fp] =
        h2_curve_catalog(need_str(spec, "curve", "curve"), radius);
    const AngleProfile angle = theta_from_json(need(spec, "theta", "curve"));
    const Rect rect = rect_from_json(need(spec, "domain", "curve"), "domain");
    return make_curve_surface(f, fp, angle, rect);
  }
  if (family == "frame") {
    const std::string kind = need_str(spec, "kind", "frame");
    const AngleProfile angle = theta_from_json(need(spec, "theta", "frame"));
    const Rect rect = rect_from_json(need(spec, "domain", "frame"), "domain");
    if (kind == "lightlike") {
      const int sign = spec.contains("sign") ? spec.at("sign").get<int>() : 1;
      return make_null_frame_family(
          vec3_from_json(need(spec, "c1", "frame"), "frame.c1"),
          vec3_from_json(need(spec, "c2", "frame"), "frame.c2"),
          vec3_from_json(need(spec, "c3", "frame"), "frame.c3"), sign, angle,
          rect);
    }
    FrameKind fk;
    if (kind == "spacelike") {
      fk = FrameKind::Spacelike;
    } else if (kind == "timelike") {
      fk = FrameKind::Timelike;
    } else {
      raise(ErrorCode::InvalidArgument,
            "family spec: frame.kind must be spacelike/timelike/lightlike");
    }
    const Json& init = need(spec, "init", "frame");
    FrameState st{vec3_from_json(need(init, "A", "frame.init"), "frame.init.A"),
                  vec3_from_json(need(init, "B", "frame.init"), "frame.init.B"),
                  vec3_from_json(need(init, "H", "frame.init"), "frame.init.H")};
    const double step =
        spec.contains("step") ? need_num(spec, "step", "frame") : kRk4Step;
    return make_frame_family(fk, psi_from_json(need(spec, "psi", "frame")), st,
                             angle, rect, step);
  }
  if (family == "perturbed_sheared") {
    return make_perturbed_sheared(need_num(spec, "epsilon", family),
                                  optional_rect(spec));
  }
  if (family == "perturbed_graph") {
    return make_perturbed_graph(need_num(spec, "epsilon", family),
                                optional_rect(spec));
  }
  if (family == "off_h2") {
    const Immersion base = build_family(need(spec, "base", "off_h2"));
    return make_off_h2(base, need_num(spec, "scale", "off_h2"));
  }
  if (family == "angle_field") {
    raise(ErrorCode::InvalidArgument,
          "family spec: angle_field describes a scalar field, not a surface; "
          "it is only valid with the minimal_angle_pde check");
  }
  raise(ErrorCode::InvalidArgument,
        "family spec: unknown family '" + family + "'");
}

Json report_to_json(const ResidualReport& r) {
  Json j{{"name", r.name},
         {"grid",
          {{"nx", r.nx},
           {"ny", r.ny},
           {"x0", r.rect.x0},
           {"x1", r.rect.x1},
           {"y0", r.rect.y0},
           {"y1", r.rect.y1}}},
         {"max_abs", r.max_abs},
         {"mean_abs", r.mean_abs},
         {"tolerance", r.tolerance},
         {"pass", r.pass},
         {"argmax", {{"x", r.argmax_x}, {"y", r.argmax_y}}}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json reports_to_json(const std::vector<ResidualReport>& rs) {
  Json arr = Json::array();
  for (const auto& r : rs) arr.push_back(report_to_json(r));
  return arr;
}

std::vector<std::string> canonical_checks_for_example(const std::string& id) {
  std::vector<std::string> checks{"principal_direction", "h2_membership",
                                  "f4_x_only",           "normal_flatness",
                                  "gauss_codazzi",       "structure_equations"};
  if (id == "cmc") checks.push_back("cmc_half");
  return checks;
}

}  // namespace h2r
