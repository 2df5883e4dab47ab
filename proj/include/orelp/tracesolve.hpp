#pragma once

// Trace coordinates for representations of the rank-3 free group ⟨X, Y, Z⟩ in
// SL(2, ℂ): the Fricke relation, reduction of arbitrary word traces to the
// seven coordinates, the quadratic pair in α = Tr(XY), β = Tr(YZ), and
// realisation of coordinates by concrete matrices.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <string>
#include <vector>

#include "orelp/error.hpp"
#include "orelp/words.hpp"

namespace orelp::trace {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

struct TraceCoords {
  Complex x, y, z;     // Tr X, Tr Y, Tr Z
  Complex xy, xz, yz;  // Tr XY, Tr XZ, Tr YZ
  Complex xyz;         // Tr XYZ

  std::array<Complex, 7> as_array() const { return {x, y, z, xy, xz, yz, xyz}; }
};

struct Triple {
  Mat2 X, Y, Z;
};

/// Left side of the Fricke relation minus 4.
Complex fricke_residual(const TraceCoords& c);

TraceCoords coords_of(const Triple& m);

/// Tr(XZY), the trace of the other cyclic order.
Complex trace_xzy(const TraceCoords& c);

/// Context with infinite factors X, Y, Z for trace words.
Context trace_context();

class DepthExceeded : public Error {
 public:
  using Error::Error;
};

/// Trace polynomial of a word over X, Y, Z evaluated at the coordinates, by
/// repeated use of Tr(MN) = Tr(M)Tr(N) − Tr(MN⁻¹).
Complex trace_of_word(const Word& w, const TraceCoords& c, int max_depth = 2000);

/// αβ = c1 and α² + β² + c2·αβ + c3·α + c4·β = c5.
struct QuadraticPair {
  Complex c1, c2, c3, c4, c5;
};

struct FixedTraces {
  Complex x, y, z, xz, xyz;
};

/// Target is the required value of Tr(XYZY⁻¹).
QuadraticPair derive_pair(const FixedTraces& fixed, Complex target);

struct Root {
  Complex alpha, beta;
};

/// All solutions with multiplicity: four when c1 ≠ 0.
std::vector<Root> solve_pair(const QuadraticPair& pair);

/// Larger of the two relation residuals at a root.
double pair_residual(const QuadraticPair& pair, const Root& r);

class GenericityError : public Error {
 public:
  using Error::Error;
};

/// Matrices with the given seven traces. Throws GenericityError on the
/// reducible locus when no diagonal realisation fits.
Triple realize(const TraceCoords& coords, double tol = 1e-8);

/// Largest absolute deviation between the traces of m and coords.
double trace_error(const Triple& m, const TraceCoords& coords);

Mat2 random_unimodular(std::uint64_t seed);

struct AbcdTargets {
  Complex trX, trZ, trXZ;          // A = ⟨a, c⟩ with a ↦ X, c ↦ Z
  Complex trY, trXYZ, trXYZYinv;   // B = ⟨b, d⟩ with b ↦ Y, d ↦ (XYZ)⁻¹
};

struct AbcdRepresentation {
  Mat2 a, b, c, d;
  TraceCoords coords;
  QuadraticPair pair;
  std::vector<Root> roots;
  std::size_t chosen = 0;
  double target_error = 0.0;    // worst deviation among the six targets
  double relator_error = 0.0;   // distance of a·b·c·d from ±I
  double fricke = 0.0;          // |Fricke residual| of the chosen coordinates
};

AbcdRepresentation build_abcd(const AbcdTargets& targets, double tol = 1e-8);

/// Min over signs of the largest entry of M ∓ I.
double distance_to_pm_identity(const Mat2& m);

}  // namespace orelp::trace
