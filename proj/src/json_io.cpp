#include "orelp/json_io.hpp"

namespace orelp::io {

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed ") + what + ": " + e.what());
  }
}

json vec_to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

Vec3 vec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ParseError("expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

json context_to_json(const FreeProduct& g) {
  json out = json::array();
  for (const auto& f : g.factors()) out.push_back({{"id", f.id}, {"order", f.order}});
  return out;
}

Context context_from_json(const json& j) {
  return guarded("factor list", [&] {
    std::vector<FactorSpec> specs;
    for (const auto& f : j) specs.push_back({f.at("id").get<std::string>(), f.at("order").get<std::int64_t>()});
    return make_context(std::move(specs));
  });
}

json angle_to_json(const sorep::ExactAngle& a) { return {{"num", a.num()}, {"den", a.den()}}; }

sorep::ExactAngle angle_from_json(const json& j) {
  return guarded("angle", [&] {
    return sorep::ExactAngle(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
  });
}

json certificate_to_json(const sorep::Certificate& cert) {
  json gens = json::array();
  for (const auto& g : cert.generators) {
    gens.push_back({{"factor", g.factor},
                    {"order", g.order},
                    {"exponent_sum", g.exponent_sum},
                    {"multiplier", g.multiplier},
                    {"reduced_sum", g.reduced_sum},
                    {"base_angle", angle_to_json(g.base_angle)},
                    {"angle", angle_to_json(g.angle)},
                    {"theta_flagged", g.theta_flagged},
                    {"theta_note", g.theta_note},
                    {"axis", vec_to_json(g.axis)},
                    {"order_exact", g.order_exact}});
  }
  return {{"factors", context_to_json(cert.relator.group())},
          {"relator", to_string(cert.relator)},
          {"generators", gens},
          {"t", cert.t},
          {"v", vec_to_json(cert.v)},
          {"residual", cert.residual},
          {"sign", cert.sign},
          {"grid", cert.grid},
          {"seed", cert.seed}};
}

sorep::Certificate certificate_from_json(const json& j) {
  return guarded("certificate", [&] {
    Context ctx = context_from_json(j.at("factors"));
    sorep::Certificate cert{parse_word(j.at("relator").get<std::string>(), ctx), {}};
    for (const auto& g : j.at("generators")) {
      sorep::GeneratorRecord rec;
      rec.factor = g.at("factor").get<std::string>();
      rec.order = g.at("order").get<std::int64_t>();
      rec.exponent_sum = g.value("exponent_sum", std::int64_t{0});
      rec.multiplier = g.value("multiplier", std::int64_t{1});
      rec.reduced_sum = g.value("reduced_sum", std::int64_t{0});
      rec.base_angle = angle_from_json(g.at("base_angle"));
      rec.angle = angle_from_json(g.at("angle"));
      rec.theta_flagged = g.value("theta_flagged", false);
      rec.theta_note = g.value("theta_note", std::string{});
      rec.axis = vec_from_json(g.at("axis"));
      rec.order_exact = g.value("order_exact", false);
      cert.generators.push_back(std::move(rec));
    }
    cert.t = j.value("t", 0.0);
    if (j.contains("v")) cert.v = vec_from_json(j.at("v"));
    cert.residual = j.value("residual", 0.0);
    cert.sign = j.value("sign", 1);
    cert.grid = j.value("grid", std::size_t{0});
    cert.seed = j.value("seed", std::uint64_t{0});
    return cert;
  });
}

json tree_to_json(const sorep::CertificateTree& tree) {
  if (tree.kind == sorep::CertificateTree::Kind::Leaf) {
    json out = {{"kind", "leaf"}};
    if (tree.leaf) out["certificate"] = certificate_to_json(*tree.leaf);
    return out;
  }
  json children = json::array();
  for (const auto& c : tree.children) children.push_back(tree_to_json(c));
  return {{"kind", "crt"},
          {"factors", context_to_json(tree.relator.group())},
          {"relator", to_string(tree.relator)},
          {"factor", tree.factor},
          {"order", tree.order},
          {"exponent_sum", tree.exponent_sum},
          {"split", json::array({tree.modulus_m, tree.modulus_n})},
          {"branch_moduli", tree.branch_moduli},
          {"children", children},
          {"notes", tree.notes}};
}

sorep::CertificateTree tree_from_json(const json& j) {
  return guarded("certificate tree", [&] {
    sorep::CertificateTree tree;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "leaf") {
      tree.kind = sorep::CertificateTree::Kind::Leaf;
      if (j.contains("certificate")) {
        tree.leaf = certificate_from_json(j.at("certificate"));
        tree.relator = tree.leaf->relator;
      }
      return tree;
    }
    if (kind != "crt") throw ParseError("unknown tree node kind '" + kind + "'");
    tree.kind = sorep::CertificateTree::Kind::Crt;
    tree.relator = parse_word(j.at("relator").get<std::string>(), context_from_json(j.at("factors")));
    tree.factor = j.at("factor").get<std::string>();
    tree.order = j.at("order").get<std::int64_t>();
    tree.exponent_sum = j.at("exponent_sum").get<std::int64_t>();
    const auto& split = j.at("split");
    tree.modulus_m = split.at(0).get<std::int64_t>();
    tree.modulus_n = split.at(1).get<std::int64_t>();
    tree.branch_moduli = j.at("branch_moduli").get<std::vector<std::int64_t>>();
    for (const auto& c : j.at("children")) tree.children.push_back(tree_from_json(c));
    tree.notes = j.value("notes", std::vector<std::string>{});
    return tree;
  });
}

json report_to_json(const sorep::VerificationReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"passed", rep.passed()}, {"checks", checks}};
}

json complex_to_json(const trace::Complex& c) { return json::array({c.real(), c.imag()}); }

trace::Complex complex_from_json(const json& j) {
  return guarded("complex number", [&] {
    if (j.is_number()) return trace::Complex(j.get<double>(), 0.0);
    if (!j.is_array() || j.size() != 2) throw ParseError("complex numbers are [re, im] pairs");
    return trace::Complex(j[0].get<double>(), j[1].get<double>());
  });
}

json matrix_to_json(const trace::Mat2& m) {
  return json::array({json::array({complex_to_json(m(0, 0)), complex_to_json(m(0, 1))}),
                      json::array({complex_to_json(m(1, 0)), complex_to_json(m(1, 1))})});
}

trace::Mat2 matrix_from_json(const json& j) {
  return guarded("matrix", [&] {
    trace::Mat2 m;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) m(r, c) = complex_from_json(j.at(r).at(c));
    }
    return m;
  });
}

json coords_to_json(const trace::TraceCoords& c) {
  return {{"trX", complex_to_json(c.x)},   {"trY", complex_to_json(c.y)},   {"trZ", complex_to_json(c.z)},
          {"trXY", complex_to_json(c.xy)}, {"trXZ", complex_to_json(c.xz)}, {"trYZ", complex_to_json(c.yz)},
          {"trXYZ", complex_to_json(c.xyz)}};
}

trace::TraceCoords coords_from_json(const json& j) {
  return guarded("trace coordinates", [&] {
    return trace::TraceCoords{complex_from_json(j.at("trX")),  complex_from_json(j.at("trY")),
                              complex_from_json(j.at("trZ")),  complex_from_json(j.at("trXY")),
                              complex_from_json(j.at("trXZ")), complex_from_json(j.at("trYZ")),
                              complex_from_json(j.at("trXYZ"))};
  });
}

trace::AbcdTargets targets_from_json(const json& j) {
  return guarded("trace targets", [&] {
    return trace::AbcdTargets{complex_from_json(j.at("trX")),   complex_from_json(j.at("trZ")),
                              complex_from_json(j.at("trXZ")),  complex_from_json(j.at("trY")),
                              complex_from_json(j.at("trXYZ")), complex_from_json(j.at("trXYZYinv"))};
  });
}

json targets_to_json(const trace::AbcdTargets& t) {
  return {{"trX", complex_to_json(t.trX)},     {"trZ", complex_to_json(t.trZ)},
          {"trXZ", complex_to_json(t.trXZ)},   {"trY", complex_to_json(t.trY)},
          {"trXYZ", complex_to_json(t.trXYZ)}, {"trXYZYinv", complex_to_json(t.trXYZYinv)}};
}

json abcd_to_json(const trace::AbcdRepresentation& rep) {
  json roots = json::array();
  for (const auto& r : rep.roots) roots.push_back({{"alpha", complex_to_json(r.alpha)}, {"beta", complex_to_json(r.beta)}});
  const auto& q = rep.pair;
  return {{"pair", {{"c1", complex_to_json(q.c1)},
                    {"c2", complex_to_json(q.c2)},
                    {"c3", complex_to_json(q.c3)},
                    {"c4", complex_to_json(q.c4)},
                    {"c5", complex_to_json(q.c5)}}},
          {"roots", roots},
          {"chosen_root", rep.chosen},
          {"coords", coords_to_json(rep.coords)},
          {"matrices",
           {{"a", matrix_to_json(rep.a)}, {"b", matrix_to_json(rep.b)}, {"c", matrix_to_json(rep.c)}, {"d", matrix_to_json(rep.d)}}},
          {"verification",
           {{"target_error", rep.target_error}, {"relator_error", rep.relator_error}, {"fricke_residual", rep.fricke}}}};
}

namespace {

json end_to_json(std::int64_t e) {
  if (e == pictures::kBoundary) return "boundary";
  if (e == pictures::kClosed) return "closed";
  return e;
}

std::int64_t end_from_json(const json& j) {
  if (j.is_string()) {
    if (j == "boundary") return pictures::kBoundary;
    if (j == "closed") return pictures::kClosed;
    throw ParseError("unknown arc end " + j.dump());
  }
  return j.get<std::int64_t>();
}

json labels_to_json(const std::vector<pictures::Label>& ls) {
  json out = json::array();
  for (const auto& l : ls) out.push_back(pictures::to_string(l));
  return out;
}

std::vector<pictures::Label> labels_from_json(const json& j) {
  std::vector<pictures::Label> out;
  for (const auto& x : j) out.push_back(pictures::parse_label(x.get<std::string>()));
  return out;
}

json rationals_to_json(const std::vector<pictures::Rational>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(pictures::format_pi(x));
  return out;
}

}  // namespace

json picture_to_json(const pictures::PictureMap& p) {
  json vertices = json::array();
  for (const auto& v : p.vertices) vertices.push_back({{"rotation", v.rotation}, {"corners", labels_to_json(v.corners)}});
  json arcs = json::array();
  for (const auto& a : p.arcs) arcs.push_back({end_to_json(a[0]), end_to_json(a[1])});
  json out = {{"surface", pictures::to_string(p.surface)},
              {"relator", labels_to_json(p.relator)},
              {"vertices", vertices},
              {"arcs", arcs}};
  if (p.surface == pictures::Surface::Disc) {
    out["boundary"] = {{"rotation", p.boundary.rotation}, {"labels", labels_to_json(p.boundary.labels)}};
  }
  if (p.exceptional) out["exceptional"] = {{"vertex", p.exceptional->vertex}, {"corner", p.exceptional->corner}};
  return out;
}

pictures::PictureMap picture_from_json(const json& j) {
  return guarded("picture", [&] {
    pictures::PictureMap p;
    std::string surface = j.value("surface", std::string("sphere"));
    if (surface == "sphere") {
      p.surface = pictures::Surface::Sphere;
    } else if (surface == "disc") {
      p.surface = pictures::Surface::Disc;
    } else {
      throw ParseError("unknown surface '" + surface + "'");
    }
    if (j.contains("relator")) p.relator = labels_from_json(j.at("relator"));
    for (const auto& v : j.at("vertices")) {
      pictures::Vertex vx;
      vx.rotation = v.at("rotation").get<std::vector<std::size_t>>();
      vx.corners = labels_from_json(v.at("corners"));
      p.vertices.push_back(std::move(vx));
    }
    if (j.contains("boundary")) {
      const auto& b = j.at("boundary");
      p.boundary.rotation = b.value("rotation", std::vector<std::size_t>{});
      if (b.contains("labels")) p.boundary.labels = labels_from_json(b.at("labels"));
    }
    if (j.contains("arcs")) {
      for (const auto& a : j.at("arcs")) {
        if (!a.is_array() || a.size() != 2) throw ParseError("arc must be a pair of ends");
        p.arcs.push_back({end_from_json(a[0]), end_from_json(a[1])});
      }
    } else {
      pictures::rebuild_arcs(p);
    }
    if (j.contains("exceptional")) {
      const auto& e = j.at("exceptional");
      p.exceptional = pictures::CornerRef{e.at("vertex").get<std::size_t>(), e.at("corner").get<std::size_t>()};
    }
    if (p.relator.empty() && !p.vertices.empty()) p.relator = p.vertices.front().corners;
    return p;
  });
}

json curvature_to_json(const pictures::CurvatureReport& r) {
  json transfers = json::array();
  for (const auto& t : r.transfers) {
    transfers.push_back({{"from", t.from}, {"to", t.to}, {"edge", t.edge}, {"amount", pictures::format_pi(t.amount)}});
  }
  return {{"vertices", rationals_to_json(r.vertices)},
          {"boundary_points", rationals_to_json(r.boundary_points)},
          {"regions", rationals_to_json(r.regions)},
          {"regions_after_transfer", rationals_to_json(r.regions_after)},
          {"transfers", transfers},
          {"total", pictures::format_pi(r.total)},
          {"expected", pictures::format_pi(r.expected)}};
}

json news4_audit_to_json(const pictures::News4Audit& a) {
  json regions = json::array();
  for (const auto& r : a.c_regions) {
    regions.push_back({{"region", r.region},
                       {"p", r.p},
                       {"q", r.q},
                       {"r", r.r},
                       {"before", pictures::format_pi(r.before)},
                       {"after", pictures::format_pi(r.after)},
                       {"bound", pictures::format_pi(r.bound)},
                       {"interior", r.interior},
                       {"holds", r.holds()}});
  }
  return {{"c_factor", a.c_factor},
          {"curvature", curvature_to_json(a.report)},
          {"c_regions", regions},
          {"vertices_flat", a.vertices_flat},
          {"bounds_hold", a.bounds_hold},
          {"conserved", a.conserved}};
}

}  // namespace orelp::io
