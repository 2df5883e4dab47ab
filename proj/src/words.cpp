#include "orelp/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>

namespace orelp {

namespace {

bool is_separator(char c) { return std::isspace(static_cast<unsigned char>(c)) || c == ','; }

std::vector<std::string_view> split_tokens(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_separator(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_separator(text[j])) ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::int64_t parse_int(std::string_view s, std::string_view what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("bad integer '" + std::string(s) + "' in " + std::string(what));
  }
  return value;
}

bool valid_id(std::string_view id) {
  if (id.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(id.front())) || id.front() == '-') return false;
  return std::none_of(id.begin(), id.end(), [](char c) {
    return c == '^' || c == ':' || is_separator(c);
  });
}

}  // namespace

FreeProduct::FreeProduct(std::vector<FactorSpec> factors) : factors_(std::move(factors)) {
  std::set<std::string> seen;
  for (const auto& f : factors_) {
    if (!valid_id(f.id)) throw Error("invalid factor id '" + f.id + "'");
    if (!seen.insert(f.id).second) throw Error("duplicate factor id '" + f.id + "'");
    if (f.order < 0 || f.order == 1) {
      throw Error("factor '" + f.id + "' must have order >= 2 or 0 (infinite)");
    }
  }
}

FreeProduct FreeProduct::parse(std::string_view decl) {
  std::vector<FactorSpec> factors;
  for (auto tok : split_tokens(decl)) {
    auto colon = tok.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("factor declaration '" + std::string(tok) + "' lacks ':order'");
    }
    factors.push_back({std::string(tok.substr(0, colon)),
                       parse_int(tok.substr(colon + 1), "factor declaration")});
  }
  try {
    return FreeProduct(std::move(factors));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

std::optional<std::size_t> FreeProduct::find(std::string_view id) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].id == id) return i;
  }
  return std::nullopt;
}

std::size_t FreeProduct::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw Error("unknown factor '" + std::string(id) + "'");
}

std::int64_t FreeProduct::canonical_exponent(std::size_t factor, std::int64_t e) const {
  const std::int64_t n = order(factor);
  if (n == kInfinite) return e;
  return ((e % n) + n) % n;
}

std::string FreeProduct::to_string() const {
  std::string out;
  for (const auto& f : factors_) {
    if (!out.empty()) out += ' ';
    out += f.id + ":" + std::to_string(f.order);
  }
  return out;
}

Context make_context(std::vector<FactorSpec> factors) {
  return std::make_shared<const FreeProduct>(std::move(factors));
}

Context make_context(std::string_view decl) {
  return std::make_shared<const FreeProduct>(FreeProduct::parse(decl));
}

Word::Word(Context ctx) : ctx_(std::move(ctx)) {
  if (!ctx_) throw Error("word requires a factor context");
}

Word Word::normalize(std::span<const Letter> raw, Context ctx) {
  Word w(std::move(ctx));
  auto& stack = w.letters_;
  for (const Letter& l : raw) {
    if (l.factor >= w.ctx_->size()) {
      throw Error("unknown factor index " + std::to_string(l.factor));
    }
    std::int64_t e = w.ctx_->canonical_exponent(l.factor, l.exponent);
    if (e == 0) continue;
    if (!stack.empty() && stack.back().factor == l.factor) {
      e = w.ctx_->canonical_exponent(l.factor, stack.back().exponent + e);
      stack.pop_back();
      if (e != 0) stack.push_back({l.factor, e});
    } else {
      stack.push_back({l.factor, e});
    }
  }
  return w;
}

Word Word::letter(Context ctx, std::string_view id, std::int64_t exponent) {
  const std::size_t f = ctx->index_of(id);
  const Letter l{f, exponent};
  return normalize(std::span<const Letter>(&l, 1), std::move(ctx));
}

Word Word::slice(std::size_t pos, std::size_t count) const {
  Word w(ctx_);
  w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                    letters_.begin() + static_cast<std::ptrdiff_t>(pos + count));
  return w;
}

bool Word::operator==(const Word& other) const {
  return letters_ == other.letters_ && (ctx_ == other.ctx_ || *ctx_ == *other.ctx_);
}

bool same_context(const Word& u, const Word& v) {
  return u.context() == v.context() || u.group() == v.group();
}

Word multiply(const Word& u, const Word& v) {
  if (!same_context(u, v)) throw Error("cannot multiply words from different factor contexts");
  std::vector<Letter> raw;
  raw.reserve(u.length() + v.length());
  raw.insert(raw.end(), u.letters().begin(), u.letters().end());
  raw.insert(raw.end(), v.letters().begin(), v.letters().end());
  return Word::normalize(raw, u.context());
}

Word operator*(const Word& u, const Word& v) { return multiply(u, v); }

Word invert(const Word& u) {
  std::vector<Letter> raw(u.letters().rbegin(), u.letters().rend());
  for (auto& l : raw) l.exponent = -l.exponent;
  return Word::normalize(raw, u.context());
}

Word conjugate(const Word& u, const Word& g) { return g * u * invert(g); }

Word power(const Word& u, std::int64_t n) {
  Word base = n < 0 ? invert(u) : u;
  std::uint64_t k = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
  Word result = Word::identity(u.context());
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

bool is_cyclically_reduced(const Word& u) {
  return u.length() <= 1 || u.front().factor != u.back().factor;
}

CyclicReduction cyclic_reduce(const Word& u) {
  const auto& ctx = u.context();
  std::vector<Letter> core = u.letters();
  std::vector<Letter> conj;
  // Strip matching ends; a non-cancelling pair x…y is rotated into x·(…·yx)·x⁻¹.
  while (core.size() >= 2 && core.front().factor == core.back().factor) {
    const Letter x = core.front();
    const Letter y = core.back();
    const std::int64_t merged = ctx->canonical_exponent(x.factor, x.exponent + y.exponent);
    conj.push_back(x);
    core.pop_back();
    core.erase(core.begin());
    if (merged != 0) core.push_back({x.factor, merged});
  }
  return {Word::normalize(core, ctx), Word::normalize(conj, ctx)};
}

std::int64_t exponent_sum(const Word& u, std::size_t factor) {
  if (factor >= u.group().size()) throw Error("unknown factor index " + std::to_string(factor));
  std::int64_t sum = 0;
  for (const auto& l : u.letters()) {
    if (l.factor == factor) sum += l.exponent;
  }
  return sum;
}

std::int64_t exponent_sum(const Word& u, std::string_view factor_id) {
  return exponent_sum(u, u.group().index_of(factor_id));
}

bool is_trivial(const Word& u) { return u.empty(); }

CyclicWord::CyclicWord(const Word& u) : rep_(cyclic_reduce(u).core) {
  const auto& ls = rep_.letters();
  const std::size_t n = ls.size();
  if (n < 2) return;
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      const Letter& a = ls[(r + i) % n];
      const Letter& b = ls[(best + i) % n];
      if (a != b) {
        if (a < b) best = r;
        break;
      }
    }
  }
  std::vector<Letter> rotated;
  rotated.reserve(n);
  for (std::size_t i = 0; i < n; ++i) rotated.push_back(ls[(best + i) % n]);
  rep_ = Word::normalize(rotated, rep_.context());
}

std::int64_t order_of(const CyclicWord& u) {
  const Word& w = u.representative();
  if (w.empty()) return 1;
  if (w.length() >= 2) return kInfinite;
  const Letter& l = w.front();
  const std::int64_t n = w.group().order(l.factor);
  if (n == kInfinite) return kInfinite;
  return n / std::gcd(n, l.exponent);
}

Word parse_word(std::string_view text, Context ctx) {
  std::vector<Letter> raw;
  for (auto tok : split_tokens(text)) {
    if (tok == "1") continue;
    const auto caret = tok.find('^');
    const std::string_view id = tok.substr(0, caret);
    std::int64_t e = 1;
    if (caret != std::string_view::npos) e = parse_int(tok.substr(caret + 1), "word token");
    auto f = ctx->find(id);
    if (!f) throw ParseError("unknown factor '" + std::string(id) + "' in word");
    raw.push_back({*f, e});
  }
  return Word::normalize(raw, std::move(ctx));
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& l : w.letters()) {
    if (!first) os << ' ';
    first = false;
    os << w.group().factor(l.factor).id;
    if (l.exponent != 1) os << '^' << l.exponent;
  }
  return os.str();
}

}  // namespace orelp
