#ifndef H2R_FAMILY_JSON_HPP
#define H2R_FAMILY_JSON_HPP

#include <json.hpp>

#include <string>
#include <vector>

#include "h2r/families.hpp"
#include "h2r/verifiers.hpp"

namespace h2r {

using Json = nlohmann::json;

/// Builds the immersion described by a family spec document. Every error
/// names the offending field. Schemas:
///   {"family":"minimal","c1":1,"c2":0[,"domain":RECT]}
///   {"family":"flat","c":0[,"domain":RECT]}
///   {"family":"named","id":"cmc"}
///   {"family":"pair","pair":"geodesic","theta":THETA,"domain":RECT
///     [,"phi_offset":0]}
///   {"family":"curve","curve":"circle","radius":1.5,"theta":THETA,
///     "domain":RECT}
///   {"family":"frame","kind":"spacelike"|"timelike","psi":PSI,
///     "init":{"A":[..],"B":[..],"H":[..]},"theta":THETA,"domain":RECT}
///   {"family":"frame","kind":"lightlike","c1":[..],"c2":[..],"c3":[..],
///     "sign":1,"theta":THETA,"domain":RECT}
///   {"family":"perturbed_sheared","epsilon":0.1[,"domain":RECT]}
///   {"family":"perturbed_graph","epsilon":0.1[,"domain":RECT]}
///   {"family":"off_h2","scale":1.1,"base":{..family spec..}}
/// RECT = {"x0":..,"x1":..,"y0":..,"y1":..}
/// THETA = {"type":"linear","slope":..,"intercept":..,"x0":..,"x1":..}
///       | {"type":"constant","value":..,"x0":..,"x1":..}   [+"anchor"]
/// PSI = {"type":"constant","value":..} | {"type":"linear","slope":..,
///        "intercept":..}
Immersion build_family(const Json& spec);

/// True when the spec is the angle-field pseudo family
/// {"family":"angle_field","kind":"am","k":..,"c":..,"sign":..,
///  "domain":RECT} or {"kind":"linear","a":..,"b":..,"domain":RECT}
/// (usable only with the minimal_angle_pde check).
bool is_angle_field_spec(const Json& spec);
Field2 build_angle_field(const Json& spec, Rect* rect_out);

Json rect_to_json(const Rect& r);
Rect rect_from_json(const Json& j, const std::string& where);

Json report_to_json(const ResidualReport& r);
Json reports_to_json(const std::vector<ResidualReport>& rs);

/// The default verifier set run by the `example` command.
std::vector<std::string> canonical_checks_for_example(const std::string& id);

}  // namespace h2r

#endif
