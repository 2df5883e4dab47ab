#pragma once

// Exact word algebra in free products of cyclic groups.
//
// A FreeProduct is the factor context (ids and orders). Words carry a shared
// pointer to their context and are always kept in alternating normal form:
// adjacent letters lie in distinct factors, exponents of finite factors sit in
// 1..order-1, and no letter is trivial.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orelp/error.hpp"

namespace orelp {

/// Order value denoting an infinite cyclic factor (matches the `c:0` grammar).
inline constexpr std::int64_t kInfinite = 0;

struct FactorSpec {
  std::string id;
  std::int64_t order = kInfinite;

  bool operator==(const FactorSpec&) const = default;
};

class FreeProduct {
 public:
  FreeProduct() = default;
  explicit FreeProduct(std::vector<FactorSpec> factors);

  /// Parses `a:5 b:2 c:0`; commas are accepted as separators too.
  static FreeProduct parse(std::string_view decl);

  std::size_t size() const { return factors_.size(); }
  const FactorSpec& factor(std::size_t i) const { return factors_.at(i); }
  const std::vector<FactorSpec>& factors() const { return factors_; }
  std::int64_t order(std::size_t i) const { return factors_.at(i).order; }
  bool is_finite(std::size_t i) const { return order(i) != kInfinite; }

  std::optional<std::size_t> find(std::string_view id) const;
  /// Throws Error for an unknown id.
  std::size_t index_of(std::string_view id) const;

  /// Reduces e into 1..order-1 for finite factors; returns 0 when e is trivial.
  std::int64_t canonical_exponent(std::size_t factor, std::int64_t e) const;

  std::string to_string() const;

  bool operator==(const FreeProduct&) const = default;

 private:
  std::vector<FactorSpec> factors_;
};

using Context = std::shared_ptr<const FreeProduct>;

Context make_context(std::vector<FactorSpec> factors);
Context make_context(std::string_view decl);

struct Letter {
  std::size_t factor = 0;
  std::int64_t exponent = 0;

  auto operator<=>(const Letter&) const = default;
};

class Word {
 public:
  explicit Word(Context ctx);

  static Word identity(Context ctx) { return Word(std::move(ctx)); }

  /// Normal form of an arbitrary letter sequence. Throws on unknown factors.
  static Word normalize(std::span<const Letter> raw, Context ctx);

  /// A single generator power, e.g. letter(ctx, "a", 2) for a^2.
  static Word letter(Context ctx, std::string_view id, std::int64_t exponent = 1);

  const Context& context() const { return ctx_; }
  const FreeProduct& group() const { return *ctx_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  const Letter& front() const { return letters_.front(); }
  const Letter& back() const { return letters_.back(); }

  /// Contiguous sub-word [pos, pos+count); already in normal form.
  Word slice(std::size_t pos, std::size_t count) const;

  bool operator==(const Word& other) const;

 private:
  Context ctx_;
  std::vector<Letter> letters_;
};

/// True when the two contexts describe the same factors.
bool same_context(const Word& u, const Word& v);

Word multiply(const Word& u, const Word& v);
Word operator*(const Word& u, const Word& v);
Word invert(const Word& u);
/// g·u·g⁻¹
Word conjugate(const Word& u, const Word& g);
Word power(const Word& u, std::int64_t n);

struct CyclicReduction {
  Word core;
  Word conjugator;  // u = conjugator · core · conjugator⁻¹
};

CyclicReduction cyclic_reduce(const Word& u);

bool is_cyclically_reduced(const Word& u);

std::int64_t exponent_sum(const Word& u, std::size_t factor);
std::int64_t exponent_sum(const Word& u, std::string_view factor_id);

bool is_trivial(const Word& u);

/// Cyclically reduced word canonicalised to its least rotation under
/// (factor index, exponent) ordering.
class CyclicWord {
 public:
  explicit CyclicWord(const Word& u);

  const Word& representative() const { return rep_; }
  std::size_t length() const { return rep_.length(); }

  bool operator==(const CyclicWord& other) const { return rep_ == other.rep_; }

 private:
  Word rep_;
};

/// Returns kInfinite for infinite order, otherwise the (finite) order.
std::int64_t order_of(const CyclicWord& u);

/// Words grammar: whitespace separated tokens `a`, `a^3`, `a^-2`; `1` is the
/// identity. Throws ParseError.
Word parse_word(std::string_view text, Context ctx);
std::string to_string(const Word& w);

}  // namespace orelp
