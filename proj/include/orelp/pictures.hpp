#pragma once

// Pictures over one-relator products as rotation systems on the sphere or the
// disc, with exact angle schemes and combinatorial Gauss–Bonnet audits.
//
// All angles and curvatures are rational multiples of π and are stored as the
// rational coefficient of π.

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orelp/error.hpp"

namespace orelp::pictures {

using Rational = boost::multiprecision::cpp_rational;

enum class Surface { Disc, Sphere };

std::string to_string(Surface s);

/// A corner label `factor:name^power`, e.g. `C:c1` or `AB:U^-1`.
struct Label {
  std::string factor;
  std::string name;
  std::int64_t power = 1;

  Label inverse() const { return {factor, name, -power}; }
  bool operator==(const Label&) const = default;
};

Label parse_label(const std::string& text);
std::string to_string(const Label& l);

struct Vertex {
  std::vector<std::size_t> rotation;  // arc ids, counterclockwise
  std::vector<Label> corners;         // corners[i] sits between rotation[i] and rotation[i+1]
};

struct Boundary {
  std::vector<std::size_t> rotation;  // arc ids in boundary order, interior on the left
  std::vector<Label> labels;          // optional; labels[k] lies between rotation[k] and rotation[k+1]
};

/// Arc endpoint: a vertex index, or kBoundary. A closed arc has both ends kClosed.
inline constexpr std::int64_t kBoundary = -1;
inline constexpr std::int64_t kClosed = -2;

struct CornerRef {
  std::size_t vertex = 0, corner = 0;
};

struct PictureMap {
  Surface surface = Surface::Sphere;
  std::vector<Label> relator;
  std::vector<Vertex> vertices;
  std::vector<std::array<std::int64_t, 2>> arcs;
  Boundary boundary;
  std::optional<CornerRef> exceptional;  // a corner of the exceptional region

  int euler_characteristic() const { return surface == Surface::Sphere ? 2 : 1; }
};

/// Recomputes `arcs` from the rotations.
void rebuild_arcs(PictureMap& p);

struct ValidationReport {
  std::vector<std::string> violations;
  std::size_t vertices = 0, edges = 0, faces = 0;
  long euler = 0;  // V − E + Σχ(face); a closed arc counts as one vertex and one edge

  bool valid() const { return violations.empty(); }
};

ValidationReport validate(const PictureMap& p);

/// Corner ids: vertex corners in order, then two per boundary point
/// (before and after its arc).
std::size_t corner_count(const PictureMap& p);
std::size_t corner_id(const PictureMap& p, CornerRef c);

struct Region {
  std::vector<std::size_t> corners;  // corner ids in traversal order
  std::vector<std::size_t> edges;    // edges[k] joins corners[k] and corners[k+1]; ids ≥ arc count are boundary segments
  std::string color;                 // factor of the labels, empty if unlabelled
  int euler = 1;
  bool touches_boundary = false;
  bool exceptional = false;

  std::size_t degree() const { return corners.size(); }
  bool interior() const { return !touches_boundary && !exceptional; }
};

/// Throws Error on an invalid picture.
std::vector<Region> faces(const PictureMap& p);

struct Zone {
  std::vector<std::size_t> arcs;
  std::array<std::int64_t, 2> ends{};

  std::size_t width() const { return arcs.size(); }
};

std::vector<Zone> zones(const PictureMap& p);

/// False iff some arc joins two vertices whose labels, read from that arc,
/// are mutually inverse.
bool is_reduced_direct(const PictureMap& p);

/// Angle per corner id, as a multiple of π.
using AngleScheme = std::vector<Rational>;

struct Transfer {
  std::size_t from = 0, to = 0;  // region indices
  std::size_t edge = 0;
  Rational amount;
};

struct CurvatureReport {
  std::vector<Rational> vertices;         // interior vertices
  std::vector<Rational> boundary_points;  // arc ends on the disc boundary
  std::vector<Rational> regions;          // before transfer
  std::vector<Rational> regions_after;    // after transfer
  std::vector<Transfer> transfers;
  Rational total;     // Σκ, in units of π
  Rational expected;  // 2χ
};

/// Throws Error when the scheme does not cover every corner.
CurvatureReport curvature(const PictureMap& p, const AngleScheme& scheme, const std::vector<Transfer>& transfers = {});

Rational curvature_vertex(const PictureMap& p, std::size_t v, const AngleScheme& scheme);
Rational curvature_region(const Region& r, const AngleScheme& scheme);

bool gauss_bonnet_check(const PictureMap& p, const AngleScheme& scheme);
/// Σκ = 2χ on a report as given, so edited or corrupted reports are caught.
bool gauss_bonnet_check(const CurvatureReport& r);

/// Every corner of a degree-k region gets (k − 2)/k.
AngleScheme standard_scheme(const PictureMap& p);

/// c1-corners 0, c2-corners 1/3, U- and V-corners 5/6. Throws Error on any
/// other label.
AngleScheme news4_scheme(const PictureMap& p);

/// 1/3 from each interior region of the other factor into a C-region across
/// every edge of the C-region that joins a c1-corner to a c2-corner.
std::vector<Transfer> news4_transfers(const PictureMap& p, const std::string& c_factor);

struct RegionAudit {
  std::size_t region = 0;
  std::size_t p = 0, q = 0, r = 0;  // c1-corners, c2-corners, transfers received
  Rational before, after, bound;    // bound = (6 − 2p − q)/3
  bool interior = true;

  bool holds() const { return after <= bound; }
};

struct News4Audit {
  std::string c_factor;
  CurvatureReport report;
  std::vector<RegionAudit> c_regions;
  bool vertices_flat = true;
  bool bounds_hold = true;   // over interior C-regions
  bool conserved = true;     // Σ after transfer = Σ before
};

News4Audit news4_audit(const PictureMap& p);

/// Two vertices reading r and r⁻¹, joined by |r| parallel arcs.
PictureMap dipole(const std::vector<Label>& relator);

/// Spherical picture grown from a dipole by dipole insertions and bridge
/// moves; every intermediate picture is valid.
PictureMap random_picture(std::uint64_t seed, std::size_t ops, const std::vector<Label>& relator);

/// A random spherical picture with its first vertex cut out, leaving a disc.
PictureMap random_disc_picture(std::uint64_t seed, std::size_t ops, const std::vector<Label>& relator);

/// c1 U c2 V over C and AB.
std::vector<Label> news4_relator();

std::string format_pi(const Rational& r);

}  // namespace orelp::pictures
