#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "orelp/json_io.hpp"
#include "orelp/pictures.hpp"

using namespace orelp;
using namespace orelp::pictures;

namespace {

std::vector<Label> labels(std::initializer_list<const char*> xs) {
  std::vector<Label> out;
  for (const char* x : xs) out.push_back(parse_label(x));
  return out;
}

std::vector<Label> hexagon_relator() { return labels({"A:a", "B:b", "A:a^2", "B:b^-1", "A:a", "B:b^3"}); }

// Oracle for sphere pictures: faces as cycles of (rotation successor ∘ twin),
// with angles from the oracle's own face degrees.
struct SphereOracle {
  std::size_t faces = 0;
  Rational standard_total;
};

SphereOracle sphere_oracle(const PictureMap& p) {
  std::map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>> ends;
  for (std::size_t v = 0; v < p.vertices.size(); ++v)
    for (std::size_t i = 0; i < p.vertices[v].rotation.size(); ++i) ends[p.vertices[v].rotation[i]].push_back({v, i});
  auto other = [&](std::size_t v, std::size_t i) {
    auto& e = ends.at(p.vertices[v].rotation[i]);
    return e[0] == std::pair{v, i} ? e[1] : e[0];
  };
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> degree_at;  // corner → face degree
  SphereOracle out;
  for (std::size_t v = 0; v < p.vertices.size(); ++v) {
    for (std::size_t i = 0; i < p.vertices[v].rotation.size(); ++i) {
      if (seen.count({v, i})) continue;
      std::vector<std::pair<std::size_t, std::size_t>> corners;
      std::pair<std::size_t, std::size_t> cur{v, i};
      while (!seen.count(cur)) {
        seen.insert(cur);
        auto [w, j] = other(cur.first, cur.second);
        corners.push_back({w, j});
        cur = {w, (j + 1) % p.vertices[w].rotation.size()};
      }
      ++out.faces;
      for (auto c : corners) degree_at[c] = corners.size();
    }
  }
  if (p.vertices.empty()) out.faces = 1;
  out.standard_total = p.vertices.empty() ? 4 : 0;
  for (std::size_t v = 0; v < p.vertices.size(); ++v) {
    Rational k = 2;
    for (std::size_t i = 0; i < p.vertices[v].rotation.size(); ++i) {
      long d = static_cast<long>(degree_at.at({v, i}));
      k -= Rational(d - 2, d);
    }
    out.standard_total += k;
  }
  return out;
}

std::size_t arc_count(const PictureMap& p) {
  std::size_t n = 0;
  for (const auto& v : p.vertices) n += v.rotation.size();
  return n / 2;
}

// One vertex reading r⁻¹ with every arc running out to the boundary.
PictureMap single_vertex_disc(const std::vector<Label>& r) {
  auto d = dipole(r);
  const Vertex cut = d.vertices[0];
  std::size_t n = r.size();
  d.surface = Surface::Disc;
  for (std::size_t k = 0; k < n; ++k) {
    d.boundary.rotation.push_back(cut.rotation[n - 1 - k]);
    d.boundary.labels.push_back(cut.corners[(2 * n - 2 - k) % n]);
  }
  d.vertices.erase(d.vertices.begin());
  rebuild_arcs(d);
  return d;
}

bool mentions(const ValidationReport& r, const std::string& text) {
  for (const auto& v : r.violations)
    if (v.find(text) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("labels parse and print") {
  auto l = parse_label("AB:U^-1");
  CHECK(l.factor == "AB");
  CHECK(l.name == "U");
  CHECK(l.power == -1);
  CHECK(to_string(l) == "AB:U^-1");
  CHECK(to_string(l.inverse()) == "AB:U");
  CHECK_THROWS_AS(parse_label("c1"), ParseError);
  CHECK_THROWS_AS(parse_label("C:"), ParseError);
  CHECK_THROWS_AS(parse_label("C:c^x"), ParseError);
}

TEST_CASE("validation examples") {
  for (const auto& r : {news4_relator(), hexagon_relator()}) {
    auto d = dipole(r);
    auto rep = validate(d);
    CHECK(rep.valid());
    CHECK(rep.faces == r.size());
    CHECK(rep.euler == 2);
  }

  PictureMap empty;
  empty.surface = Surface::Disc;
  auto e = validate(empty);
  CHECK(e.valid());
  CHECK(e.vertices == 0);
  CHECK(e.edges == 0);
  CHECK(e.faces == 1);

  SUBCASE("a region holding both factors") {
    auto d = dipole(news4_relator());
    auto& v1 = d.vertices[1];
    std::rotate(v1.corners.begin(), v1.corners.begin() + 1, v1.corners.end());
    auto rep = validate(d);
    CHECK_FALSE(rep.valid());
    CHECK(mentions(rep, "mixes factors"));
  }
  SUBCASE("labels that do not spell the relator") {
    auto d = dipole(news4_relator());
    std::swap(d.vertices[0].corners[0], d.vertices[0].corners[2]);
    CHECK(mentions(validate(d), "does not read the relator"));
  }
  SUBCASE("an arc end missing") {
    auto d = dipole(hexagon_relator());
    d.vertices[1].rotation.pop_back();
    d.vertices[1].corners.pop_back();
    CHECK_FALSE(validate(d).valid());
  }
  SUBCASE("a rotation of the wrong orientation") {
    auto d = dipole(hexagon_relator());
    std::reverse(d.vertices[1].rotation.begin(), d.vertices[1].rotation.end());
    CHECK(mentions(validate(d), "Euler"));
  }
  SUBCASE("a disconnected picture") {
    auto a = dipole(news4_relator());
    auto b = dipole(news4_relator());
    for (auto& v : b.vertices) {
      for (auto& x : v.rotation) x += 4;
      a.vertices.push_back(v);
    }
    rebuild_arcs(a);
    CHECK(mentions(validate(a), "not connected"));
  }
  SUBCASE("a reversed disc boundary") {
    auto d = single_vertex_disc(hexagon_relator());
    CHECK(validate(d).valid());
    std::reverse(d.boundary.rotation.begin(), d.boundary.rotation.end());
    std::reverse(d.boundary.labels.begin(), d.boundary.labels.end());
    CHECK_FALSE(validate(d).valid());
  }
}

TEST_CASE("closed arcs") {
  PictureMap d;
  d.surface = Surface::Disc;
  d.arcs = {{kClosed, kClosed}};
  auto rep = validate(d);
  CHECK(rep.valid());
  CHECK(rep.faces == 2);
  auto fs = faces(d);
  CHECK(fs[0].euler + fs[1].euler == 1);
  CHECK(gauss_bonnet_check(d, AngleScheme{}));

  PictureMap s;
  s.arcs = {{kClosed, kClosed}, {kClosed, kClosed}, {kClosed, kClosed}};
  CHECK(validate(s).valid());
  CHECK(faces(s).size() == 4);
  CHECK(gauss_bonnet_check(s, AngleScheme{}));

  auto mixed = dipole(news4_relator());
  mixed.arcs.push_back({kClosed, kClosed});
  CHECK(mentions(validate(mixed), "closed arcs"));
}

TEST_CASE("faces and zones of a dipole") {
  auto r = hexagon_relator();
  auto d = dipole(r);
  auto fs = faces(d);
  REQUIRE(fs.size() == r.size());
  for (const auto& f : fs) {
    CHECK(f.degree() == 2);
    CHECK(f.interior());
    CHECK_FALSE(f.color.empty());
  }
  CHECK(fs.size() == arc_count(d) - d.vertices.size() + 2);
  auto zs = zones(d);
  REQUIRE(zs.size() == 1);
  CHECK(zs[0].width() == r.size());
  CHECK(zs[0].ends == std::array<std::int64_t, 2>{0, 1});

  // A single arc would have the same region on both sides.
  CHECK(mentions(validate(dipole(labels({"A:a"}))), "separates two A-regions"));
}

TEST_CASE("direct reducedness") {
  CHECK_FALSE(is_reduced_direct(dipole(news4_relator())));
  CHECK_FALSE(is_reduced_direct(dipole(hexagon_relator())));

  auto single = single_vertex_disc(hexagon_relator());
  REQUIRE(validate(single).valid());
  CHECK(is_reduced_direct(single));

  auto shifted = dipole(news4_relator());
  auto& v1 = shifted.vertices[1];
  std::rotate(v1.corners.begin(), v1.corners.begin() + 2, v1.corners.end());
  REQUIRE(validate(shifted).valid());
  CHECK(is_reduced_direct(shifted));
}

TEST_CASE("curvature examples") {
  auto d = dipole(hexagon_relator());
  auto scheme = standard_scheme(d);
  CHECK(curvature_vertex(d, 0, scheme) == 2);
  CHECK(curvature_vertex(d, 1, scheme) == 2);
  auto rep = curvature(d, scheme);
  CHECK(rep.total == 4);
  CHECK(rep.expected == 4);
  for (const auto& k : rep.regions) CHECK(k == 0);

  Region square;
  square.corners = {0, 1, 2, 3};
  square.edges = {0, 1, 2, 3};
  AngleScheme flat(4, Rational(1, 2));
  CHECK(curvature_region(square, flat) == 0);

  auto single = single_vertex_disc(hexagon_relator());
  auto s = curvature(single, standard_scheme(single));
  CHECK(s.expected == 2);
  CHECK(s.total == 2);
  CHECK(s.boundary_points.size() == 6);
  // Every region is a triangle, so each boundary point keeps 1 − 2/3.
  for (const auto& k : s.boundary_points) CHECK(k == Rational(1, 3));
  auto halves = standard_scheme(single);
  for (std::size_t c = corner_count(single) - 12; c < corner_count(single); ++c) halves[c] = Rational(1, 2);
  for (const auto& k : curvature(single, halves).boundary_points) CHECK(k == 0);

  CHECK_THROWS_AS(curvature(d, AngleScheme(3)), Error);
}

TEST_CASE("gauss-bonnet catches a corrupted report") {
  auto d = dipole(news4_relator());
  auto rep = curvature(d, standard_scheme(d));
  CHECK(gauss_bonnet_check(rep));
  auto bumped = rep;
  bumped.vertices[0] += Rational(1, 7);
  bumped.total += Rational(1, 7);
  CHECK_FALSE(gauss_bonnet_check(bumped));
  auto stale = rep;
  stale.regions_after[0] += Rational(1, 7);
  CHECK_FALSE(gauss_bonnet_check(stale));

  // A corner angle moves its vertex and its region by opposite amounts.
  auto scheme = standard_scheme(d);
  scheme[0] += Rational(1, 7);
  auto moved = curvature(d, scheme);
  CHECK(moved.vertices[0] == rep.vertices[0] - Rational(1, 7));
  CHECK(moved.total == 4);
}

TEST_CASE("random pictures") {
  auto r = news4_relator();
  CHECK(random_picture(0, 0, r).vertices.empty());
  CHECK(io::picture_to_json(random_picture(0, 1, r)) == io::picture_to_json(dipole(r)));
  CHECK(io::picture_to_json(random_picture(9, 15, r)) == io::picture_to_json(random_picture(9, 15, r)));

  std::size_t largest = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    auto p = random_picture(seed, 1 + seed % 12, seed % 2 ? r : hexagon_relator());
    auto rep = validate(p);
    REQUIRE_MESSAGE(rep.valid(), "seed " << seed << ": " << rep.violations.front());
    auto oracle = sphere_oracle(p);
    CHECK(faces(p).size() == oracle.faces);
    auto k = curvature(p, standard_scheme(p));
    CHECK(k.total == 4);
    CHECK(k.total == oracle.standard_total);
    for (const auto& x : k.regions) CHECK(x == 0);
    largest = std::max(largest, p.vertices.size());
  }
  CHECK(largest >= 10);
}

TEST_CASE("random disc pictures") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto p = random_disc_picture(seed, 1 + seed % 10, hexagon_relator());
    auto rep = validate(p);
    REQUIRE_MESSAGE(rep.valid(), "seed " << seed << ": " << rep.violations.front());
    CHECK(rep.euler == 1);
    auto k = curvature(p, standard_scheme(p));
    CHECK(k.expected == 2);
    CHECK(k.total == 2);
    CHECK(gauss_bonnet_check(k));
  }
  auto empty = random_disc_picture(0, 0, hexagon_relator());
  CHECK(empty.vertices.empty());
  CHECK(validate(empty).valid());
}

TEST_CASE("arbitrary schemes satisfy gauss-bonnet") {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto p = seed % 3 ? random_picture(seed, 8, news4_relator()) : random_disc_picture(seed, 8, news4_relator());
    AngleScheme scheme(corner_count(p));
    for (auto& a : scheme) a = Rational(static_cast<long>(rng() % 23) - 11, static_cast<long>(rng() % 9) + 1);
    CHECK(gauss_bonnet_check(p, scheme));
  }
}

TEST_CASE("news4 scheme on a single region") {
  // Four corners c1 c1 c2 c2: angles 0, 0, 1/3, 1/3, two transfers of 1/3.
  Region r;
  r.corners = {0, 1, 2, 3};
  r.edges = {0, 1, 2, 3};
  AngleScheme s = {0, 0, Rational(1, 3), Rational(1, 3)};
  Rational before = curvature_region(r, s);
  CHECK(before == Rational(-4, 3));
  Rational after = before + 2 * Rational(1, 3);
  CHECK(after == Rational(-2, 3));
  CHECK(after <= Rational(6 - 2 * 2 - 2, 3));
}

TEST_CASE("news4 audit over random pictures") {
  auto r = news4_relator();
  std::size_t transfers = 0, c_regions = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto p = seed % 4 ? random_picture(seed, 2 + seed % 14, r) : random_disc_picture(seed, 2 + seed % 14, r);
    auto audit = news4_audit(p);
    CHECK(audit.c_factor == "C");
    CHECK(audit.vertices_flat);
    CHECK(audit.bounds_hold);
    CHECK(audit.conserved);
    CHECK(audit.report.total == audit.report.expected);
    for (const auto& v : audit.report.vertices) CHECK(v == 0);
    for (const auto& a : audit.c_regions) {
      // Independent evaluation: 2 − d + q/3 before, +1/3 per transfer after.
      Rational before = 2 - static_cast<long>(a.p + a.q) + Rational(static_cast<long>(a.q), 3);
      CHECK(a.before == before);
      CHECK(a.after == before + Rational(static_cast<long>(a.r), 3));
      CHECK(a.r <= a.p + a.q);
      if (a.p == 0 || a.q == 0) CHECK(a.r == 0);
      if (a.interior) CHECK(a.holds());
      ++c_regions;
      transfers += a.r;
    }
  }
  CHECK(c_regions > 100);
  CHECK(transfers > 0);
}

TEST_CASE("news4 needs tagged corners") {
  CHECK_THROWS_AS(news4_scheme(dipole(hexagon_relator())), Error);
  CHECK_THROWS_AS(news4_audit(dipole(hexagon_relator())), Error);
}

TEST_CASE("exceptional region is not interior") {
  auto p = dipole(news4_relator());
  p.exceptional = CornerRef{0, 1};
  auto fs = faces(p);
  std::size_t flagged = 0;
  for (const auto& f : fs) flagged += f.exceptional;
  CHECK(flagged == 1);
  p.exceptional = CornerRef{0, 9};
  CHECK(mentions(validate(p), "exceptional"));
}

TEST_CASE("picture json round trip") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto p = seed % 2 ? random_picture(seed, 6, news4_relator()) : random_disc_picture(seed, 6, news4_relator());
    auto j = io::picture_to_json(p);
    auto q = io::picture_from_json(nlohmann::json::parse(j.dump()));
    CHECK(io::picture_to_json(q) == j);
    CHECK(validate(q).valid());
  }
  auto j = nlohmann::json::parse(R"({"surface": "sphere",
    "vertices": [{"rotation": [0, 1], "corners": ["A:a", "B:b"]},
                 {"rotation": [0, 1], "corners": ["B:b^-1", "A:a^-1"]}]})");
  auto p = io::picture_from_json(j);
  CHECK(p.arcs.size() == 2);
  CHECK(validate(p).valid());
  CHECK_THROWS_AS(io::picture_from_json(nlohmann::json::parse(R"({"surface": "torus", "vertices": []})")), ParseError);
  CHECK_THROWS_AS(io::picture_from_json(nlohmann::json::parse(R"({"vertices": [{"rotation": [0]}]})")), ParseError);
}

TEST_CASE("pi formatting") {
  CHECK(format_pi(0) == "0");
  CHECK(format_pi(1) == "pi");
  CHECK(format_pi(-1) == "-pi");
  CHECK(format_pi(Rational(-2, 3)) == "-2pi/3");
  CHECK(format_pi(Rational(5, 6)) == "5pi/6");
  CHECK(format_pi(4) == "4pi");
}
