#pragma once

// SO(3) representation certificates for one-relator products of three finite
// cyclic groups.
//
// Every generator is sent to a unit quaternion cos θ + sin θ·axis whose angle θ
// is carried exactly as a rational multiple of π. The search looks for axes
// that send the relator to ±1; verification recomputes everything from the
// exact angles and stored axes.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orelp/error.hpp"
#include "orelp/quaternion.hpp"
#include "orelp/words.hpp"

namespace orelp::sorep {

struct PrimePower {
  std::int64_t prime = 0;
  int exponent = 0;
};

/// Decomposes n = prime^exponent, or nullopt when n is not a prime power.
std::optional<PrimePower> prime_power(std::int64_t n);

/// num·π/den with gcd(|num|, den) = 1 and den ≥ 1.
class ExactAngle {
 public:
  ExactAngle() = default;
  ExactAngle(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const;

  ExactAngle times(std::int64_t k) const { return {num_ * k, den_}; }
  /// Representative in [0, 2π).
  ExactAngle mod_two_pi() const;
  /// Angle in [0, π] with the same cosine.
  ExactAngle folded() const;

  bool operator==(const ExactAngle&) const = default;

  std::string to_string() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Rational comparison of a·π/b against c·π/d.
bool angle_less_equal(const ExactAngle& a, const ExactAngle& b);

/// cos θ + sin θ·axis has order p in SO(3): θ is a multiple of π/p but not of
/// π/τ^(t−1) for p = τ^t. Throws Error when p is not a prime power.
bool order_p_valid(const ExactAngle& angle, std::int64_t p);

/// n·θ folded into [0, π].
ExactAngle psi_of(const ExactAngle& theta, std::int64_t n);
/// psi_of(theta, n) lies in [π/4, π/2].
bool psi_in_range(const ExactAngle& theta, std::int64_t n);

struct ThetaChoice {
  ExactAngle angle;        // the angle to use
  ExactAngle closed_form;  // the closed-form proposal
  bool flagged = false;    // closed form failed a check; angle came from the search
  std::string note;
};

/// Closed-form θ for p = τ^t and exponent sum n = τ^s (0 ≤ s < t), with the
/// search fallback when the closed form is not admissible.
ThetaChoice theta_for(std::int64_t p, std::int64_t n);

/// Smallest k in 1..p−1 such that kπ/p has order p and ψ = n·kπ/p folds into
/// [π/4, π/2]; nullopt when none exists.
std::optional<ExactAngle> valid_angle_search(std::int64_t p, std::int64_t n);

/// m coprime to p with m·n ≡ gcd(n, p) (mod p). Throws when n ≡ 0 (mod p).
std::int64_t bezout_reduce(std::int64_t p, std::int64_t n);

struct ExponentNormalization {
  Word word;                     // letters g^e of the factor replaced by g^(m·e)
  std::int64_t multiplier = 1;   // m
  std::int64_t original_sum = 0; // exponent sum before, as an integer
  std::int64_t reduced_sum = 0;  // gcd(n, p): the new exponent sum modulo p
};

/// The automorphism g ↦ g^m of the factor, chosen so the exponent sum becomes
/// gcd(n, p) modulo p. Appending g^(−tp) is trivial in the free product, so the
/// word itself is unaffected by that adjustment; reduced_sum records its effect.
ExponentNormalization exponent_normalize(const Word& w, std::size_t factor);

/// Ordered quaternion product of the letter images. Images must be unit
/// quaternions; missing images throw.
Quaternion eval(const Word& w, std::span<const std::optional<Quaternion>> images);

/// Great-circle arc from −i (t = 0) through j (t = ½) to i (t = 1).
Vec3 path_point(double t);

/// The homotopy family: first factor along i, second along P(t), third along v.
class SphereFamily {
 public:
  SphereFamily(Word relator, std::vector<ExactAngle> angles);

  Quaternion operator()(double t, const Vec3& v) const;
  /// Same evaluation with an arbitrary axis for the second factor.
  Quaternion evaluate(const Vec3& axis_a, const Vec3& axis_b, const Vec3& axis_c) const;

  const Word& relator() const { return relator_; }
  const std::vector<ExactAngle>& angles() const { return angles_; }

 private:
  struct Step {
    std::size_t factor;
    double c;
    double s;
  };
  Word relator_;
  std::vector<ExactAngle> angles_;
  std::vector<Step> steps_;
};

struct GeneratorRecord {
  std::string factor;
  std::int64_t order = 0;
  std::int64_t exponent_sum = 0;   // integer exponent sum in the relator
  std::int64_t multiplier = 1;     // automorphism exponent m
  std::int64_t reduced_sum = 0;    // gcd(exponent_sum, order)
  ExactAngle base_angle;           // θ chosen for the normalised word
  ExactAngle angle;                // m·θ mod 2π, the image angle of the generator
  bool theta_flagged = false;
  std::string theta_note;
  Vec3 axis{1.0, 0.0, 0.0};
  bool order_exact = false;

  Quaternion image() const;
};

struct Certificate {
  Word relator;
  std::vector<GeneratorRecord> generators;
  double t = 0.0;
  Vec3 v{0.0, 0.0, 1.0};
  double residual = 0.0;  // |Im(image of relator)|
  int sign = 1;           // real part sign of the relator image
  std::size_t grid = 0;   // grid resolution that produced it
  std::uint64_t seed = 0;
};

struct SearchOptions {
  std::size_t grid = 32;  // t samples; the sphere gets grid × grid/2 samples
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  int max_doublings = 3;
  std::size_t candidates = 128;  // grid minima handed to local refinement per round
};

class SearchExhausted : public Error {
 public:
  SearchExhausted(const std::string& what, double best) : Error(what), best_residual(best) {}
  double best_residual;
};

/// Checks the exponent-sum preconditions and returns per-factor records with
/// angles fixed but axes unset.
std::vector<GeneratorRecord> prepare_generators(const Word& w);

/// Orders must all be prime powers and every exponent sum nonzero mod its order.
Certificate search_representation(const Word& w, const SearchOptions& options = {});

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<Check> checks;
  bool passed() const;
};

VerificationReport verify(const Certificate& cert, double tol = 1e-9);

/// Node of the Chinese-remainder induction over composite factor orders.
struct CertificateTree {
  enum class Kind { Leaf, Crt };
  Kind kind = Kind::Leaf;

  std::optional<Certificate> leaf;  // Leaf

  // Crt
  Word relator{make_context("a:2")};
  std::string factor;
  std::int64_t order = 0;
  std::int64_t exponent_sum = 0;
  std::int64_t modulus_m = 0;
  std::int64_t modulus_n = 0;
  std::vector<std::int64_t> branch_moduli;  // moduli with a child tree
  std::vector<CertificateTree> children;
  std::vector<std::string> notes;
};

/// Replaces the order of one factor by a divisor, reducing the word.
Word quotient_word(const Word& w, std::size_t factor, std::int64_t modulus);

CertificateTree crt_certify(const Word& w, const SearchOptions& options = {});

VerificationReport verify(const CertificateTree& tree, double tol = 1e-9);

}  // namespace orelp::sorep
