#pragma once

// Nielsen reduction of generating pairs in a free product of two cyclic
// groups, classification of the two-generator subgroup, and the index and
// enumeration machinery for relators written in the abstract symbols U, V.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orelp/error.hpp"
#include "orelp/words.hpp"

namespace orelp::nielsen {

struct GenPair {
  Word u, v;

  std::size_t total_length() const { return u.length() + v.length(); }
  bool operator==(const GenPair&) const = default;
};

/// Throws Error unless both words are non-empty and share a context.
void check_pair(const GenPair& p);

struct Move {
  enum class Kind { Swap, Invert, LeftMultiply, RightMultiply, Conjugate };

  Kind kind = Kind::Swap;
  int target = 0;         // 0 for U, 1 for V
  int exponent = 1;       // ±1, power of the other generator
  std::optional<Word> by;  // conjugating element: both w ↦ by⁻¹·w·by

  std::string to_string() const;
};

using NielsenTrace = std::vector<Move>;

GenPair apply(const GenPair& p, const Move& m);
GenPair replay(GenPair p, const NielsenTrace& trace);

struct Reduction {
  GenPair pair;
  NielsenTrace trace;
};

/// Greedy descent: applies the single multiply move that lowers the total
/// length most until none does. V-moves are tried before U-moves.
Reduction reduce_pair(const GenPair& p);

enum class Tag {
  ConjugateIntoFactor,
  FreeRank1,
  FreeRank2,
  FiniteCyclicFreeProduct,
  Mixed,
  Unresolved,
};

std::string to_string(Tag t);

struct Classification {
  Tag tag = Tag::Unresolved;
  /// Rank 1: the generator. Rank 2 and the cyclic free products: a basis
  /// Nielsen equivalent to the input. Conjugate-into-factor: empty.
  std::vector<Word> witnesses;
  std::vector<std::int64_t> orders;  // of the witnesses, kInfinite for ℤ
  std::optional<Word> conjugator;    // conjugator⁻¹·{U,V}·conjugator lie in `factor`
  std::string factor;
  Reduction reduction;  // includes any common conjugations
  std::string note;
};

/// Never returns a wrong tag; pairs of total length above 8, or pairs the
/// syllable criterion cannot settle, are Unresolved.
Classification classify(const GenPair& p);

/// True when every non-empty reduced product of the syllables of u and v
/// keeps a letter of every syllable, which makes ⟨u, v⟩ = ⟨u⟩ * ⟨v⟩.
bool syllables_untouched(const Word& u, const Word& v);

enum class Symbol : int { U = 1, Uinv = -1, V = 2, Vinv = -2 };

Symbol inverse(Symbol s);
std::string to_string(Symbol s);

struct UVWord {
  std::vector<Symbol> symbols;
  bool cyclic = true;

  std::size_t length() const { return symbols.size(); }
  bool operator==(const UVWord&) const = default;
  auto operator<=>(const UVWord&) const = default;
};

/// Parses `U V^-1 U U`; `u`/`v` are accepted and exponents may be any integer.
UVWord parse_uv(const std::string& text);
std::string to_string(const UVWord& r);

bool is_reduced(const UVWord& r);
UVWord invert(const UVWord& r);
/// Least rotation of r and of its inverse, whichever is smaller.
UVWord canonical(const UVWord& r);

struct IndexReport {
  std::size_t index = 0;
  std::size_t sign_index = 0;
  std::size_t length = 0;
};

/// Throws Error on input that is not cyclically reduced.
IndexReport index(const UVWord& r);

Word substitute(const UVWord& r, const GenPair& p);

struct ShapeInfo {
  Letter alpha, beta, beta2;
  std::size_t factor_a = 0, factor_b = 1;
  bool u_inverted = false;
};

/// Checks U = αβ or β⁻¹α⁻¹, V = αβαβ₂ with (β⁻¹β₂)² ≠ 1. Throws Error otherwise.
ShapeInfo check_enumeration_shape(const GenPair& p);

struct EnumerationResult {
  std::vector<UVWord> trivial;   // canonical representatives
  std::size_t candidates = 0;    // canonical classes examined
};

/// Every cyclically reduced R with 2·index(R) + ℓ(R) < bound, one per class
/// under rotation and inversion, whose substitution is trivial.
EnumerationResult enumerate_trivial(const GenPair& p, std::size_t bound = 12);

/// enumerate_trivial after check_enumeration_shape.
EnumerationResult enumerate_and_check(const GenPair& p, std::size_t bound = 12);

/// The canonical classes themselves, in lexicographic order.
std::vector<UVWord> enumerate_candidates(std::size_t bound);

struct CaseVerdict {
  std::string shape;  // e.g. "ab|aba"
  std::string label;
};

/// The syntactic case split for short U, V over A*B (factor 0 is A). Returns
/// the argument each branch appeals to; asserts nothing about the group.
CaseVerdict decide_case(const GenPair& p, bool c1_equals_c2);

}  // namespace orelp::nielsen
