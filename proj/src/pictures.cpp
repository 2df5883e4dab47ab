#include "orelp/pictures.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace orelp::pictures {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;

  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

struct Dart {
  std::size_t node = 0, slot = 0, edge = 0;
};

// Vertices are nodes 0..nv-1; boundary point k is node nv+k with rotation
// [arc, previous segment, next segment]. Segment k is edge arc_count+k.
struct Layout {
  std::size_t nv = 0, nb = 0, arc_count = 0, closed = 0;
  std::vector<std::size_t> start, degree;
  std::vector<Dart> darts;
  std::vector<std::size_t> twin;
  std::vector<std::optional<std::size_t>> corner;  // of (node, slot); none on the exterior
  std::vector<std::string> problems;

  std::size_t node_count() const { return nv + nb; }
  std::size_t edge_count() const { return arc_count + nb; }
  std::size_t dart(std::size_t node, std::size_t slot) const { return start[node] + slot; }
  std::size_t next(std::size_t d) const {
    const Dart& x = darts[d];
    return dart(x.node, (x.slot + 1) % degree[x.node]);
  }
};

Layout build_layout(const PictureMap& p) {
  Layout l;
  l.nv = p.vertices.size();
  l.nb = p.boundary.rotation.size();
  l.arc_count = p.arcs.size();
  if (p.surface == Surface::Sphere && l.nb > 0) l.problems.push_back("sphere picture has a boundary");

  std::size_t corner_base = 0;
  for (std::size_t v = 0; v < l.nv; ++v) {
    const auto& rot = p.vertices[v].rotation;
    l.start.push_back(l.darts.size());
    l.degree.push_back(rot.size());
    for (std::size_t i = 0; i < rot.size(); ++i) {
      l.darts.push_back({v, i, rot[i]});
      l.corner.push_back(corner_base + i);
    }
    corner_base += rot.size();
  }
  for (std::size_t k = 0; k < l.nb; ++k) {
    std::size_t node = l.nv + k;
    l.start.push_back(l.darts.size());
    l.degree.push_back(3);
    l.darts.push_back({node, 0, p.boundary.rotation[k]});
    l.darts.push_back({node, 1, l.arc_count + (k + l.nb - 1) % l.nb});
    l.darts.push_back({node, 2, l.arc_count + k});
    l.corner.push_back(corner_base + 2 * k);
    l.corner.push_back(std::nullopt);
    l.corner.push_back(corner_base + 2 * k + 1);
  }

  std::vector<std::vector<std::size_t>> occ(l.arc_count);
  for (std::size_t d = 0; d < l.darts.size(); ++d) {
    std::size_t e = l.darts[d].edge;
    bool is_arc = l.darts[d].node < l.nv || l.darts[d].slot == 0;
    if (!is_arc) continue;
    if (e >= l.arc_count) {
      l.problems.push_back("arc id " + std::to_string(e) + " out of range");
      continue;
    }
    occ[e].push_back(d);
  }
  l.twin.assign(l.darts.size(), 0);
  for (std::size_t e = 0; e < l.arc_count; ++e) {
    if (occ[e].empty() && p.arcs[e] == std::array<std::int64_t, 2>{kClosed, kClosed}) {
      ++l.closed;
      continue;
    }
    if (occ[e].size() != 2) {
      l.problems.push_back("arc " + std::to_string(e) + " occurs " + std::to_string(occ[e].size()) + " times");
      continue;
    }
    l.twin[occ[e][0]] = occ[e][1];
    l.twin[occ[e][1]] = occ[e][0];
  }
  for (std::size_t k = 0; k < l.nb; ++k) {
    std::size_t a = l.dart(l.nv + k, 2), b = l.dart(l.nv + (k + 1) % l.nb, 1);
    l.twin[a] = b;
    l.twin[b] = a;
  }
  return l;
}

std::optional<Label> label_of(const PictureMap& p, const Layout& l, std::size_t corner) {
  std::size_t base = 0;
  for (const auto& v : p.vertices) {
    if (corner < base + v.corners.size()) return v.corners[corner - base];
    base += v.rotation.size();
  }
  if (p.boundary.labels.empty() || l.nb == 0) return std::nullopt;
  std::size_t k = (corner - base) / 2;
  bool after = (corner - base) % 2 == 1;
  return p.boundary.labels[after ? k : (k + l.nb - 1) % l.nb];
}

struct Analysis {
  Layout layout;
  std::vector<Region> regions;
  std::vector<std::vector<std::size_t>> region_darts;  // darts[k] leaves corners[k-1] along edges[k-1]
  std::vector<std::optional<std::size_t>> dart_region;
  std::vector<std::string> violations;
  std::size_t faces = 0;
  long euler = 0;
};

bool is_rotation_of(const std::vector<Label>& a, const std::vector<Label>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t s = 0; s < a.size(); ++s) {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) ok = a[(s + i) % a.size()] == b[i];
    if (ok) return true;
  }
  return false;
}

std::vector<Label> inverse_reading(const std::vector<Label>& r) {
  std::vector<Label> out;
  for (auto it = r.rbegin(); it != r.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Analysis analyze(const PictureMap& p) {
  Analysis a;
  a.layout = build_layout(p);
  const Layout& l = a.layout;
  auto& bad = a.violations;
  bad = l.problems;

  for (std::size_t v = 0; v < l.nv; ++v) {
    const auto& vx = p.vertices[v];
    std::string name = "vertex " + std::to_string(v);
    if (vx.rotation.empty()) bad.push_back(name + " has no arcs");
    if (vx.corners.size() != vx.rotation.size()) {
      bad.push_back(name + " has " + std::to_string(vx.corners.size()) + " corner labels for degree " +
                    std::to_string(vx.rotation.size()));
    } else if (!is_rotation_of(vx.corners, p.relator) && !is_rotation_of(vx.corners, inverse_reading(p.relator))) {
      bad.push_back(name + " does not read the relator or its inverse");
    }
  }
  if (!p.boundary.labels.empty() && p.boundary.labels.size() != l.nb) {
    bad.push_back("boundary has " + std::to_string(p.boundary.labels.size()) + " labels for " +
                  std::to_string(l.nb) + " arc ends");
  }
  if (p.surface == Surface::Disc && l.nv > 0 && l.nb == 0) bad.push_back("disc picture has vertices but no boundary arcs");
  if (p.exceptional) {
    if (p.exceptional->vertex >= l.nv || p.exceptional->corner >= p.vertices[p.exceptional->vertex].rotation.size()) {
      bad.push_back("exceptional corner out of range");
    }
  }

  std::vector<std::vector<std::int64_t>> seen(l.arc_count);
  for (std::size_t d = 0; d < l.darts.size(); ++d) {
    const Dart& x = l.darts[d];
    if (x.edge >= l.arc_count || (x.node >= l.nv && x.slot != 0)) continue;
    seen[x.edge].push_back(x.node < l.nv ? static_cast<std::int64_t>(x.node) : kBoundary);
  }
  for (std::size_t e = 0; e < l.arc_count; ++e) {
    auto want = seen[e];
    std::vector<std::int64_t> have{p.arcs[e][0], p.arcs[e][1]};
    std::sort(want.begin(), want.end());
    std::sort(have.begin(), have.end());
    if (want.size() != 2) continue;
    if (want != have) bad.push_back("arc " + std::to_string(e) + " endpoints disagree with rotations");
  }
  if (l.closed > 0 && l.node_count() > 0) bad.push_back("closed arcs are only supported in pictures without arc ends");
  if (!l.problems.empty() || !bad.empty()) return a;

  std::size_t nodes = l.node_count(), edges = l.edge_count();
  if (nodes > 0) {
    UnionFind uf(nodes);
    for (std::size_t d = 0; d < l.darts.size(); ++d) uf.unite(l.darts[d].node, l.darts[l.twin[d]].node);
    for (std::size_t n = 1; n < nodes; ++n) {
      if (uf.find(n) != uf.find(0)) {
        bad.push_back("picture is not connected");
        break;
      }
    }
  }

  std::optional<std::size_t> exceptional_corner;
  if (p.exceptional) exceptional_corner = corner_id(p, *p.exceptional);

  a.dart_region.assign(l.darts.size(), std::nullopt);
  std::vector<bool> visited(l.darts.size(), false);
  for (std::size_t d0 = 0; d0 < l.darts.size(); ++d0) {
    if (visited[d0]) continue;
    std::vector<std::size_t> ds;
    std::vector<std::optional<std::size_t>> cs;
    std::size_t d = d0;
    do {
      visited[d] = true;
      ds.push_back(d);
      std::size_t t = l.twin[d];
      cs.push_back(l.corner[t]);
      d = l.next(t);
    } while (d != d0);
    std::size_t outside = std::count(cs.begin(), cs.end(), std::nullopt);
    if (outside == cs.size()) continue;
    if (outside > 0) {
      bad.push_back("exterior face meets the interior");
      continue;
    }
    Region r;
    for (std::size_t k = 0; k < ds.size(); ++k) {
      r.corners.push_back(*cs[k]);
      r.edges.push_back(l.darts[ds[(k + 1) % ds.size()]].edge);
    }
    for (std::size_t e : r.edges) r.touches_boundary |= e >= l.arc_count;
    for (std::size_t c : r.corners) r.touches_boundary |= c >= corner_count(p) - 2 * l.nb;
    r.exceptional = exceptional_corner && std::find(r.corners.begin(), r.corners.end(), *exceptional_corner) != r.corners.end();
    std::vector<std::size_t> rd;
    for (std::size_t k = 0; k < ds.size(); ++k) rd.push_back(ds[(k + 1) % ds.size()]);
    for (std::size_t x : rd) a.dart_region[x] = a.regions.size();
    a.regions.push_back(std::move(r));
    a.region_darts.push_back(std::move(rd));
  }
  if (nodes == 0) {
    // Concentric closed arcs: region 0 is outermost, the last is the innermost disc.
    for (std::size_t i = 0; i <= l.closed; ++i) {
      Region r;
      bool outer = i == 0, inner = i == l.closed;
      r.euler = (outer && p.surface == Surface::Sphere ? 1 : 0) + (inner ? 1 : 0);
      r.touches_boundary = outer && p.surface == Surface::Disc;
      a.regions.push_back(r);
      a.region_darts.emplace_back();
    }
  }
  a.faces = a.regions.size();
  long region_euler = 0;
  for (const Region& r : a.regions) region_euler += r.euler;
  a.euler = static_cast<long>(nodes + l.closed) - static_cast<long>(edges) + region_euler;
  if (a.euler != p.euler_characteristic()) {
    bad.push_back("Euler characteristic " + std::to_string(a.euler) + " != " + std::to_string(p.euler_characteristic()));
  }

  for (std::size_t i = 0; i < a.regions.size(); ++i) {
    Region& r = a.regions[i];
    for (std::size_t c : r.corners) {
      auto lab = label_of(p, l, c);
      if (!lab) continue;
      if (r.color.empty()) {
        r.color = lab->factor;
      } else if (r.color != lab->factor) {
        bad.push_back("region " + std::to_string(i) + " mixes factors " + r.color + " and " + lab->factor);
        break;
      }
    }
  }
  for (std::size_t d = 0; d < l.darts.size(); ++d) {
    std::size_t t = l.twin[d];
    if (d > t || l.darts[d].edge >= l.arc_count) continue;
    if (!a.dart_region[d] || !a.dart_region[t]) continue;
    const auto& c1 = a.regions[*a.dart_region[d]].color;
    const auto& c2 = a.regions[*a.dart_region[t]].color;
    if (!c1.empty() && c1 == c2) bad.push_back("arc " + std::to_string(l.darts[d].edge) + " separates two " + c1 + "-regions");
  }
  return a;
}

Analysis checked(const PictureMap& p) {
  Analysis a = analyze(p);
  if (!a.violations.empty()) throw Error("invalid picture: " + a.violations.front());
  return a;
}

Rational third(long n) { return Rational(n, 3); }

}  // namespace

std::string to_string(Surface s) { return s == Surface::Sphere ? "sphere" : "disc"; }

Label parse_label(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0) throw ParseError("label '" + text + "' needs factor:name");
  Label l;
  l.factor = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  auto caret = rest.find('^');
  l.name = rest.substr(0, caret);
  if (l.name.empty()) throw ParseError("label '" + text + "' has no name");
  if (caret != std::string::npos) {
    std::string exp = rest.substr(caret + 1);
    try {
      std::size_t used = 0;
      l.power = std::stoll(exp, &used);
      if (used != exp.size()) throw ParseError("");
    } catch (const std::exception&) {
      throw ParseError("label '" + text + "' has a bad exponent");
    }
  }
  return l;
}

std::string to_string(const Label& l) {
  std::string s = l.factor + ":" + l.name;
  if (l.power != 1) s += "^" + std::to_string(l.power);
  return s;
}

void rebuild_arcs(PictureMap& p) {
  std::size_t count = 0;
  for (std::size_t e = 0; e < p.arcs.size(); ++e)
    if (p.arcs[e] == std::array<std::int64_t, 2>{kClosed, kClosed}) count = e + 1;
  for (const auto& v : p.vertices)
    for (std::size_t e : v.rotation) count = std::max(count, e + 1);
  for (std::size_t e : p.boundary.rotation) count = std::max(count, e + 1);
  std::vector<std::vector<std::int64_t>> ends(count);
  for (std::size_t v = 0; v < p.vertices.size(); ++v)
    for (std::size_t e : p.vertices[v].rotation) ends[e].push_back(static_cast<std::int64_t>(v));
  for (std::size_t e : p.boundary.rotation) ends[e].push_back(kBoundary);
  p.arcs.assign(count, {kClosed, kClosed});
  for (std::size_t e = 0; e < count; ++e) {
    if (ends[e].size() > 0) p.arcs[e][0] = ends[e][0];
    if (ends[e].size() > 1) p.arcs[e][1] = ends[e][1];
  }
}

ValidationReport validate(const PictureMap& p) {
  Analysis a = analyze(p);
  ValidationReport r;
  r.violations = a.violations;
  r.vertices = a.layout.node_count() + a.layout.closed;
  r.edges = a.layout.edge_count();
  r.faces = a.faces;
  r.euler = a.euler;
  return r;
}

std::size_t corner_count(const PictureMap& p) {
  std::size_t n = 2 * p.boundary.rotation.size();
  for (const auto& v : p.vertices) n += v.rotation.size();
  return n;
}

std::size_t corner_id(const PictureMap& p, CornerRef c) {
  if (c.vertex >= p.vertices.size() || c.corner >= p.vertices[c.vertex].rotation.size()) {
    throw Error("corner reference out of range");
  }
  std::size_t base = 0;
  for (std::size_t v = 0; v < c.vertex; ++v) base += p.vertices[v].rotation.size();
  return base + c.corner;
}

std::vector<Region> faces(const PictureMap& p) { return checked(p).regions; }

std::vector<Zone> zones(const PictureMap& p) {
  Analysis a = checked(p);
  std::size_t arcs = a.layout.arc_count;
  UnionFind uf(arcs);
  for (const Region& r : a.regions) {
    std::vector<std::size_t> sides;
    std::size_t segments = 0;
    for (std::size_t e : r.edges) (e < arcs ? sides.push_back(e) : void(++segments));
    if (sides.size() == 2 && segments <= 1) uf.unite(sides[0], sides[1]);
  }
  std::map<std::size_t, Zone> by_root;
  for (std::size_t e = 0; e < arcs; ++e) by_root[uf.find(e)].arcs.push_back(e);
  std::vector<Zone> out;
  for (auto& [root, z] : by_root) {
    z.ends = p.arcs[z.arcs.front()];
    std::sort(z.ends.begin(), z.ends.end());
    out.push_back(std::move(z));
  }
  std::sort(out.begin(), out.end(), [](const Zone& x, const Zone& y) { return x.arcs.front() < y.arcs.front(); });
  return out;
}

bool is_reduced_direct(const PictureMap& p) {
  std::map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>> occ;
  for (std::size_t v = 0; v < p.vertices.size(); ++v)
    for (std::size_t i = 0; i < p.vertices[v].rotation.size(); ++i) occ[p.vertices[v].rotation[i]].push_back({v, i});
  for (const auto& [arc, ends] : occ) {
    if (ends.size() != 2 || ends[0].first == ends[1].first) continue;
    const auto& lv = p.vertices[ends[0].first].corners;
    const auto& lw = p.vertices[ends[1].first].corners;
    std::size_t n = lv.size();
    if (n == 0 || lw.size() != n) continue;
    std::size_t i = ends[0].second, j = ends[1].second;
    bool cancels = true;
    for (std::size_t t = 0; t < n && cancels; ++t) cancels = lv[(i + t) % n] == lw[(j + 2 * n - 1 - t) % n].inverse();
    if (cancels) return false;
  }
  return true;
}

CurvatureReport curvature(const PictureMap& p, const AngleScheme& scheme, const std::vector<Transfer>& transfers) {
  Analysis a = checked(p);
  if (scheme.size() != corner_count(p)) {
    throw Error("angle scheme covers " + std::to_string(scheme.size()) + " of " + std::to_string(corner_count(p)) +
                " corners");
  }
  CurvatureReport out;
  for (std::size_t v = 0; v < p.vertices.size(); ++v) out.vertices.push_back(curvature_vertex(p, v, scheme));
  std::size_t base = corner_count(p) - 2 * a.layout.nb;
  for (std::size_t k = 0; k < a.layout.nb; ++k) {
    out.boundary_points.push_back(Rational(1) - scheme[base + 2 * k] - scheme[base + 2 * k + 1]);
  }
  for (const Region& r : a.regions) out.regions.push_back(curvature_region(r, scheme));
  out.regions_after = out.regions;
  for (const Transfer& t : transfers) {
    if (t.from >= out.regions.size() || t.to >= out.regions.size()) throw Error("transfer names a missing region");
    out.regions_after[t.from] -= t.amount;
    out.regions_after[t.to] += t.amount;
  }
  out.transfers = transfers;
  for (const auto& x : out.vertices) out.total += x;
  for (const auto& x : out.boundary_points) out.total += x;
  for (const auto& x : out.regions_after) out.total += x;
  out.expected = 2 * p.euler_characteristic();
  return out;
}

Rational curvature_vertex(const PictureMap& p, std::size_t v, const AngleScheme& scheme) {
  Rational k = 2;
  for (std::size_t i = 0; i < p.vertices.at(v).rotation.size(); ++i) k -= scheme.at(corner_id(p, {v, i}));
  return k;
}

Rational curvature_region(const Region& r, const AngleScheme& scheme) {
  Rational k = 2 * r.euler - static_cast<long>(r.degree());
  for (std::size_t c : r.corners) k += scheme.at(c);
  return k;
}

bool gauss_bonnet_check(const PictureMap& p, const AngleScheme& scheme) { return gauss_bonnet_check(curvature(p, scheme)); }

bool gauss_bonnet_check(const CurvatureReport& r) {
  Rational sum;
  for (const auto& x : r.vertices) sum += x;
  for (const auto& x : r.boundary_points) sum += x;
  for (const auto& x : r.regions_after) sum += x;
  return sum == r.expected && r.total == r.expected;
}

AngleScheme standard_scheme(const PictureMap& p) {
  Analysis a = checked(p);
  AngleScheme s(corner_count(p));
  for (const Region& r : a.regions) {
    long d = static_cast<long>(r.degree());
    for (std::size_t c : r.corners) s[c] = Rational(d - 2, d);
  }
  return s;
}

AngleScheme news4_scheme(const PictureMap& p) {
  Analysis a = checked(p);
  AngleScheme s(corner_count(p));
  for (std::size_t c = 0; c < s.size(); ++c) {
    auto lab = label_of(p, a.layout, c);
    if (!lab) throw Error("corner " + std::to_string(c) + " is unlabelled");
    if (lab->name == "c1") {
      s[c] = 0;
    } else if (lab->name == "c2") {
      s[c] = third(1);
    } else if (lab->name == "U" || lab->name == "V") {
      s[c] = Rational(5, 6);
    } else {
      throw Error("no angle for label " + to_string(*lab));
    }
  }
  return s;
}

std::vector<Transfer> news4_transfers(const PictureMap& p, const std::string& c_factor) {
  Analysis a = checked(p);
  const Layout& l = a.layout;
  auto name = [&](std::size_t c) {
    auto lab = label_of(p, l, c);
    return lab ? lab->name : std::string();
  };
  std::vector<Transfer> out;
  for (std::size_t i = 0; i < a.regions.size(); ++i) {
    const Region& r = a.regions[i];
    if (r.color != c_factor) continue;
    std::size_t m = r.degree();
    for (std::size_t k = 0; k < m; ++k) {
      std::size_t e = r.edges[k];
      if (e >= l.arc_count) continue;
      std::string x = name(r.corners[k]), y = name(r.corners[(k + 1) % m]);
      bool qualifies = (x == "c1" && y == "c2") || (x == "c2" && y == "c1");
      if (!qualifies) continue;
      auto other = a.dart_region[l.twin[a.region_darts[i][k]]];
      if (!other || *other == i) continue;
      const Region& o = a.regions[*other];
      if (!o.interior() || o.color == c_factor) continue;
      out.push_back({*other, i, e, third(1)});
    }
  }
  return out;
}

News4Audit news4_audit(const PictureMap& p) {
  News4Audit out;
  for (const Label& l : p.relator) {
    if (l.name == "c1") {
      out.c_factor = l.factor;
      break;
    }
  }
  if (out.c_factor.empty()) throw Error("relator has no c1 label");
  auto scheme = news4_scheme(p);
  auto transfers = news4_transfers(p, out.c_factor);
  out.report = curvature(p, scheme, transfers);
  auto regions = faces(p);
  Analysis a = checked(p);

  for (const auto& k : out.report.vertices) out.vertices_flat &= k == 0;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const Region& r = regions[i];
    if (r.color != out.c_factor) continue;
    RegionAudit ra;
    ra.region = i;
    for (std::size_t c : r.corners) {
      auto lab = label_of(p, a.layout, c);
      if (lab && lab->name == "c1") ++ra.p;
      if (lab && lab->name == "c2") ++ra.q;
    }
    ra.r = static_cast<std::size_t>(std::count_if(transfers.begin(), transfers.end(), [&](const Transfer& t) { return t.to == i; }));
    ra.before = out.report.regions[i];
    ra.after = out.report.regions_after[i];
    ra.bound = third(6 - 2 * static_cast<long>(ra.p) - static_cast<long>(ra.q));
    ra.interior = r.interior();
    if (ra.interior) out.bounds_hold &= ra.holds();
    out.c_regions.push_back(ra);
  }
  Rational before, after;
  for (const auto& x : out.report.regions) before += x;
  for (const auto& x : out.report.regions_after) after += x;
  out.conserved = before == after;
  return out;
}

PictureMap dipole(const std::vector<Label>& relator) {
  std::size_t n = relator.size();
  if (n == 0) throw Error("dipole needs a non-empty relator");
  PictureMap p;
  p.relator = relator;
  Vertex v0, v1;
  v1.corners.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    v0.rotation.push_back(t);
    v1.rotation.push_back((n - t) % n);
    v0.corners.push_back(relator[t]);
    v1.corners[(n - t - 1) % n] = relator[t].inverse();
  }
  p.vertices = {v0, v1};
  rebuild_arcs(p);
  return p;
}

namespace {

using Slot = std::pair<std::size_t, std::size_t>;  // vertex, position in rotation

Slot far_end(const PictureMap& p, Slot s) {
  std::size_t e = p.vertices[s.first].rotation[s.second];
  for (std::size_t v = 0; v < p.vertices.size(); ++v)
    for (std::size_t i = 0; i < p.vertices[v].rotation.size(); ++i)
      if (p.vertices[v].rotation[i] == e && Slot{v, i} != s) return {v, i};
  throw Error("arc has no far end");
}

bool swap_far_ends(PictureMap& p, Slot a, Slot b) {
  std::size_t ea = p.vertices[a.first].rotation[a.second];
  std::size_t eb = p.vertices[b.first].rotation[b.second];
  if (ea == eb) return false;
  Slot fa = far_end(p, a), fb = far_end(p, b);
  p.vertices[fa.first].rotation[fa.second] = eb;
  p.vertices[fb.first].rotation[fb.second] = ea;
  rebuild_arcs(p);
  return true;
}

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

bool insert_dipole(PictureMap& p, std::mt19937_64& rng) {
  PictureMap d = dipole(p.relator);
  std::size_t offset = p.arcs.size(), base = p.vertices.size();
  for (auto& v : d.vertices) {
    for (auto& e : v.rotation) e += offset;
    p.vertices.push_back(v);
  }
  std::size_t v = pick(rng, base);
  Slot a{v, pick(rng, p.vertices[v].rotation.size())};
  std::size_t w = base + pick(rng, 2);
  Slot b{w, pick(rng, p.vertices[w].rotation.size())};
  return swap_far_ends(p, a, b);
}

bool bridge_move(PictureMap& p, std::mt19937_64& rng) {
  Analysis a = analyze(p);
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < a.regions.size(); ++i)
    if (a.region_darts[i].size() >= 2) usable.push_back(i);
  if (usable.empty()) return false;
  const auto& ds = a.region_darts[usable[pick(rng, usable.size())]];
  const Dart& x = a.layout.darts[ds[pick(rng, ds.size())]];
  const Dart& y = a.layout.darts[ds[pick(rng, ds.size())]];
  if (x.edge == y.edge) return false;
  return swap_far_ends(p, {x.node, x.slot}, {y.node, y.slot});
}

}  // namespace

PictureMap random_picture(std::uint64_t seed, std::size_t ops, const std::vector<Label>& relator) {
  PictureMap p;
  p.relator = relator;
  if (ops == 0) return p;
  p = dipole(relator);
  std::mt19937_64 rng(seed);
  for (std::size_t op = 1; op < ops; ++op) {
    for (int attempt = 0; attempt < 32; ++attempt) {
      PictureMap next = p;
      bool changed = pick(rng, 2) == 0 ? insert_dipole(next, rng) : bridge_move(next, rng);
      if (changed && validate(next).valid()) {
        p = std::move(next);
        break;
      }
    }
  }
  return p;
}

PictureMap random_disc_picture(std::uint64_t seed, std::size_t ops, const std::vector<Label>& relator) {
  PictureMap s = random_picture(seed, ops, relator);
  PictureMap d;
  d.surface = Surface::Disc;
  d.relator = relator;
  if (s.vertices.empty()) return d;
  const Vertex& cut = s.vertices.front();
  std::size_t n = cut.rotation.size();
  for (std::size_t k = 0; k < n; ++k) {
    d.boundary.rotation.push_back(cut.rotation[n - 1 - k]);
    d.boundary.labels.push_back(cut.corners[(2 * n - 2 - k) % n]);
  }
  d.vertices.assign(s.vertices.begin() + 1, s.vertices.end());
  rebuild_arcs(d);
  return d;
}

std::vector<Label> news4_relator() {
  return {{"C", "c1", 1}, {"AB", "U", 1}, {"C", "c2", 1}, {"AB", "V", 1}};
}

std::string format_pi(const Rational& r) {
  if (r == 0) return "0";
  auto num = boost::multiprecision::numerator(r);
  auto den = boost::multiprecision::denominator(r);
  std::ostringstream os;
  if (num < 0) {
    os << '-';
    num = -num;
  }
  if (num != 1) os << num;
  os << "pi";
  if (den != 1) os << '/' << den;
  return os.str();
}

}  // namespace orelp::pictures
