#pragma once

// JSON encodings of the library's artifacts.

#include <json.hpp>

#include "orelp/pictures.hpp"
#include "orelp/sorep.hpp"
#include "orelp/tracesolve.hpp"
#include "orelp/words.hpp"

namespace orelp::io {

using nlohmann::json;

/// [{"id": "a", "order": 2}, ...]
json context_to_json(const FreeProduct& g);
Context context_from_json(const json& j);

json angle_to_json(const sorep::ExactAngle& a);
sorep::ExactAngle angle_from_json(const json& j);

json certificate_to_json(const sorep::Certificate& cert);
sorep::Certificate certificate_from_json(const json& j);

json tree_to_json(const sorep::CertificateTree& tree);
sorep::CertificateTree tree_from_json(const json& j);

json report_to_json(const sorep::VerificationReport& rep);

/// Complex numbers are [re, im]; plain numbers are accepted on input.
json complex_to_json(const trace::Complex& c);
trace::Complex complex_from_json(const json& j);
json matrix_to_json(const trace::Mat2& m);
trace::Mat2 matrix_from_json(const json& j);
json coords_to_json(const trace::TraceCoords& c);
trace::TraceCoords coords_from_json(const json& j);
/// Keys trX, trZ, trXZ, trY, trXYZ, trXYZYinv.
trace::AbcdTargets targets_from_json(const json& j);
json targets_to_json(const trace::AbcdTargets& t);
json abcd_to_json(const trace::AbcdRepresentation& rep);

/// Arc ends are vertex indices, "boundary" or "closed"; labels are strings
/// such as "C:c1". Missing "arcs" are rebuilt from the rotations.
json picture_to_json(const pictures::PictureMap& p);
pictures::PictureMap picture_from_json(const json& j);
/// Curvatures are strings in units of pi, e.g. "-2pi/3".
json curvature_to_json(const pictures::CurvatureReport& r);
json news4_audit_to_json(const pictures::News4Audit& a);

}  // namespace orelp::io
