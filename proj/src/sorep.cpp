#include "orelp/sorep.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace orelp::sorep {

namespace {

constexpr double kPi = std::numbers::pi;

std::int64_t mod_positive(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

// a/b <= c/d for b, d > 0.
bool rational_le(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return a * d <= c * b;
}

}  // namespace

std::optional<PrimePower> prime_power(std::int64_t n) {
  if (n < 2) return std::nullopt;
  std::int64_t prime = 0;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      prime = d;
      break;
    }
  }
  if (prime == 0) return PrimePower{n, 1};
  int exponent = 0;
  while (n % prime == 0) {
    n /= prime;
    ++exponent;
  }
  if (n != 1) return std::nullopt;
  return PrimePower{prime, exponent};
}

ExactAngle::ExactAngle(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error("angle denominator must be nonzero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
  if (num_ == 0) den_ = 1;
}

double ExactAngle::value() const { return static_cast<double>(num_) * kPi / static_cast<double>(den_); }

ExactAngle ExactAngle::mod_two_pi() const { return {mod_positive(num_, 2 * den_), den_}; }

ExactAngle ExactAngle::folded() const {
  const ExactAngle a = mod_two_pi();
  if (a.num_ <= a.den_) return a;
  return {2 * a.den_ - a.num_, a.den_};
}

std::string ExactAngle::to_string() const {
  std::ostringstream os;
  os << num_ << "pi/" << den_;
  return os.str();
}

bool angle_less_equal(const ExactAngle& a, const ExactAngle& b) {
  return rational_le(a.num(), a.den(), b.num(), b.den());
}

bool order_p_valid(const ExactAngle& angle, std::int64_t p) {
  if (!prime_power(p)) throw Error("order " + std::to_string(p) + " is not a prime power");
  // A multiple of π/p has reduced denominator dividing p; it avoids every
  // multiple of π/τ^(t−1) exactly when that denominator is p itself.
  return angle.den() == p;
}

ExactAngle psi_of(const ExactAngle& theta, std::int64_t n) { return theta.times(n).folded(); }

bool psi_in_range(const ExactAngle& theta, std::int64_t n) {
  const ExactAngle psi = psi_of(theta, n);
  return angle_less_equal(ExactAngle(1, 4), psi) && angle_less_equal(psi, ExactAngle(1, 2));
}

std::optional<ExactAngle> valid_angle_search(std::int64_t p, std::int64_t n) {
  if (!prime_power(p)) throw Error("order " + std::to_string(p) + " is not a prime power");
  for (std::int64_t k = 1; k < p; ++k) {
    const ExactAngle theta(k, p);
    if (order_p_valid(theta, p) && psi_in_range(theta, n)) return theta;
  }
  return std::nullopt;
}

ThetaChoice theta_for(std::int64_t p, std::int64_t n) {
  const auto pp = prime_power(p);
  if (!pp) throw Error("order " + std::to_string(p) + " is not a prime power");
  const std::int64_t tau = pp->prime;
  const int t = pp->exponent;
  int s = 0;
  std::int64_t rest = n;
  while (rest > 1 && rest % tau == 0) {
    rest /= tau;
    ++s;
  }
  if (n < 1 || rest != 1 || s >= t) {
    throw Error("exponent sum " + std::to_string(n) + " is not a power of " + std::to_string(tau) +
                " below " + std::to_string(p));
  }
  auto ipow = [](std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
  };

  ThetaChoice out;
  if (tau != 2) {
    out.closed_form = ExactAngle(ipow(tau, t - s) - 1, 2 * p);
  } else if (s < t - 1) {
    out.closed_form = ExactAngle(ipow(2, t - s - 1) - 1, p);
  } else {
    out.closed_form = ExactAngle(1, 2);
  }
  out.angle = out.closed_form;
  if (order_p_valid(out.closed_form, p) && psi_in_range(out.closed_form, n)) return out;

  out.flagged = true;
  auto fallback = valid_angle_search(p, n);
  if (!fallback) {
    throw Error("no admissible angle for order " + std::to_string(p) + " and exponent sum " +
                std::to_string(n));
  }
  out.angle = *fallback;
  std::ostringstream note;
  note << "closed form " << out.closed_form.to_string() << " fails the order-" << p
       << " criterion or the psi range; using " << out.angle.to_string();
  out.note = note.str();
  return out;
}

std::int64_t bezout_reduce(std::int64_t p, std::int64_t n) {
  if (p < 2) throw Error("modulus must be at least 2");
  const std::int64_t r = mod_positive(n, p);
  if (r == 0) throw Error("exponent sum is divisible by the order");
  const std::int64_t g = std::gcd(r, p);
  const std::int64_t q = p / g;
  std::int64_t m0 = 1;
  if (q > 1) {
    const std::int64_t target = (r / g) % q;
    for (m0 = 1; m0 < q; ++m0) {
      if ((target * m0) % q == 1) break;
    }
  }
  // Lift the inverse mod p/g to a unit mod p; some lift always is one.
  for (std::int64_t m = m0; m < m0 + p * q + 1; m += q) {
    if (std::gcd(m, p) == 1) return m % p == 0 ? 1 : m % p;
  }
  throw Error("no unit lift found");
}

ExponentNormalization exponent_normalize(const Word& w, std::size_t factor) {
  const std::int64_t p = w.group().order(factor);
  if (p == kInfinite) throw Error("cannot normalise an infinite factor");
  const std::int64_t n = exponent_sum(w, factor);
  if (mod_positive(n, p) == 0) {
    throw Error("exponent sum of '" + w.group().factor(factor).id + "' is 0 mod " + std::to_string(p));
  }
  ExponentNormalization out{w, bezout_reduce(p, n), n, std::gcd(mod_positive(n, p), p)};
  std::vector<Letter> raw = w.letters();
  for (auto& l : raw) {
    if (l.factor == factor) l.exponent *= out.multiplier;
  }
  out.word = Word::normalize(raw, w.context());
  return out;
}

namespace {

Quaternion letter_power(const Quaternion& q, std::int64_t e) {
  // Unit quaternion cos θ + sin θ·u raised to e, via its angle.
  const double s = q.imag_norm();
  if (s < 1e-300) {
    return e % 2 == 0 || q.w > 0 ? Quaternion{} : Quaternion{-1.0, 0.0, 0.0, 0.0};
  }
  const double theta = std::atan2(s, q.w);
  const Vec3 axis{q.x / s, q.y / s, q.z / s};
  const double a = theta * static_cast<double>(e);
  return Quaternion::from_axis(std::cos(a), std::sin(a), axis);
}

}  // namespace

Quaternion eval(const Word& w, std::span<const std::optional<Quaternion>> images) {
  Quaternion acc;
  for (const auto& l : w.letters()) {
    if (l.factor >= images.size() || !images[l.factor]) {
      throw Error("no image for factor '" + w.group().factor(l.factor).id + "'");
    }
    const Quaternion& q = *images[l.factor];
    if (std::abs(q.norm() - 1.0) > 1e-12) throw Error("generator image is not a unit quaternion");
    acc = (acc * letter_power(q, l.exponent)).normalized();
  }
  return acc;
}

Vec3 path_point(double t) { return {-std::cos(kPi * t), std::sin(kPi * t), 0.0}; }

SphereFamily::SphereFamily(Word relator, std::vector<ExactAngle> angles)
    : relator_(std::move(relator)), angles_(std::move(angles)) {
  if (angles_.size() != relator_.group().size() || angles_.size() != 3) {
    throw Error("the sphere family needs exactly three factor angles");
  }
  for (const auto& l : relator_.letters()) {
    const double a = angles_[l.factor].value() * static_cast<double>(l.exponent);
    steps_.push_back({l.factor, std::cos(a), std::sin(a)});
  }
}

Quaternion SphereFamily::evaluate(const Vec3& axis_a, const Vec3& axis_b, const Vec3& axis_c) const {
  const Vec3* axes[3] = {&axis_a, &axis_b, &axis_c};
  Quaternion acc;
  for (const auto& st : steps_) acc = acc * Quaternion::from_axis(st.c, st.s, *axes[st.factor]);
  return acc.normalized();
}

Quaternion SphereFamily::operator()(double t, const Vec3& v) const {
  return evaluate({1.0, 0.0, 0.0}, path_point(t), v);
}

Quaternion GeneratorRecord::image() const {
  const double a = angle.value();
  return Quaternion::from_axis(std::cos(a), std::sin(a), axis);
}

std::vector<GeneratorRecord> prepare_generators(const Word& w) {
  const FreeProduct& g = w.group();
  if (g.size() != 3) throw Error("expected exactly three factors");
  std::vector<GeneratorRecord> out;
  for (std::size_t f = 0; f < g.size(); ++f) {
    const std::int64_t p = g.order(f);
    if (!prime_power(p)) {
      throw Error("order of '" + g.factor(f).id + "' (" + std::to_string(p) + ") is not a prime power");
    }
    GeneratorRecord rec;
    rec.factor = g.factor(f).id;
    rec.order = p;
    rec.exponent_sum = exponent_sum(w, f);
    if (mod_positive(rec.exponent_sum, p) == 0) {
      throw Error("exponent sum of '" + rec.factor + "' is " + std::to_string(rec.exponent_sum) +
                  ", which is 0 mod " + std::to_string(p));
    }
    rec.multiplier = bezout_reduce(p, rec.exponent_sum);
    rec.reduced_sum = std::gcd(mod_positive(rec.exponent_sum, p), p);
    const ThetaChoice th = theta_for(p, rec.reduced_sum);
    rec.base_angle = th.angle;
    rec.theta_flagged = th.flagged;
    rec.theta_note = th.note;
    rec.angle = th.angle.times(rec.multiplier).mod_two_pi();
    rec.order_exact = order_p_valid(rec.angle, p);
    out.push_back(std::move(rec));
  }
  return out;
}

namespace {

// Spherical chart with the given pole; singular only at ±pole.
struct Chart {
  Vec3 pole, e1, e2;

  Vec3 point(double polar, double azimuth) const {
    const double sp = std::sin(polar), cp = std::cos(polar);
    const double sa = std::sin(azimuth), ca = std::cos(azimuth);
    return {cp * pole[0] + sp * (ca * e1[0] + sa * e2[0]),
            cp * pole[1] + sp * (ca * e1[1] + sa * e2[1]),
            cp * pole[2] + sp * (ca * e1[2] + sa * e2[2])};
  }

  std::pair<double, double> coords(const Vec3& v) const {
    return {std::acos(std::clamp(dot(v, pole), -1.0, 1.0)), std::atan2(dot(v, e2), dot(v, e1))};
  }

  bool near_pole(const Vec3& v) const {
    const Vec3 a{v[0] - pole[0], v[1] - pole[1], v[2] - pole[2]};
    const Vec3 b{v[0] + pole[0], v[1] + pole[1], v[2] + pole[2]};
    return norm(a) < 0.5 || norm(b) < 0.5;
  }
};

const Chart kCharts[2] = {
    {{0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}},
    {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}},
};

struct Refined {
  double t = 0.0;
  Vec3 v{};
  double residual = 0.0;
};

Refined levenberg_marquardt(const SphereFamily& family, double t0, const Vec3& v0, double tol) {
  int chart = kCharts[0].near_pole(v0) ? 1 : 0;
  auto [polar, azimuth] = kCharts[chart].coords(v0);
  Eigen::Vector3d x(t0, polar, azimuth);

  auto residual_vec = [&](const Eigen::Vector3d& y) {
    const Quaternion q = family(y[0], kCharts[chart].point(y[1], y[2]));
    return Eigen::Vector3d(q.x, q.y, q.z);
  };

  Eigen::Vector3d r = residual_vec(x);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  constexpr double h = 1e-7;
  for (int iter = 0; iter < 200 && std::sqrt(cost) > tol * 1e-3; ++iter) {
    Eigen::Matrix3d jac;
    for (int k = 0; k < 3; ++k) {
      Eigen::Vector3d xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      jac.col(k) = (residual_vec(xp) - residual_vec(xm)) / (2.0 * h);
    }
    const Eigen::Matrix3d jtj = jac.transpose() * jac;
    const Eigen::Vector3d g = jac.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 12 && !improved; ++tries) {
      Eigen::Matrix3d a = jtj;
      a.diagonal() += lambda * (jtj.diagonal().array() + 1e-12).matrix();
      const Eigen::Vector3d step = a.ldlt().solve(-g);
      if (!step.allFinite()) {
        lambda *= 4.0;
        continue;
      }
      const Eigen::Vector3d xn = x + step;
      const Eigen::Vector3d rn = residual_vec(xn);
      if (rn.squaredNorm() < cost) {
        x = xn;
        r = rn;
        cost = rn.squaredNorm();
        lambda = std::max(lambda / 3.0, 1e-12);
        improved = true;
      } else {
        lambda *= 4.0;
      }
    }
    if (!improved) break;
    const Vec3 v = kCharts[chart].point(x[1], x[2]);
    if (kCharts[chart].near_pole(v)) {
      chart = 1 - chart;
      auto [p2, a2] = kCharts[chart].coords(v);
      x[1] = p2;
      x[2] = a2;
    }
  }
  Refined out;
  out.t = x[0];
  out.v = normalized(kCharts[chart].point(x[1], x[2]));
  out.residual = family(out.t, out.v).imag_norm();
  return out;
}

struct Sample {
  double residual;
  std::size_t index;
  double t;
  Vec3 v;
};

// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
double unit_from(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Certificate search_representation(const Word& w, const SearchOptions& options) {
  if (options.grid < 2) throw Error("grid resolution must be at least 2");
  std::vector<GeneratorRecord> gens = prepare_generators(w);
  std::vector<ExactAngle> angles;
  for (const auto& g : gens) angles.push_back(g.angle);
  const SphereFamily family(w, angles);

  std::mt19937_64 rng(options.seed);
  const double azimuth_offset = unit_from(rng);
  const double polar_offset = unit_from(rng);

  double best_residual = std::numeric_limits<double>::infinity();
  std::size_t n = options.grid;
  for (int round = 0; round <= options.max_doublings; ++round, n *= 2) {
    const std::size_t nt = n, naz = n, npol = std::max<std::size_t>(n / 2, 1);
    std::vector<Sample> samples;
    samples.reserve(nt * naz * npol);
    std::size_t index = 0;
    for (std::size_t i = 0; i < nt; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(nt - 1);
      const Vec3 pt = path_point(t);
      for (std::size_t k = 0; k < npol; ++k) {
        const double polar = kPi * (static_cast<double>(k) + 0.25 + 0.5 * polar_offset) /
                             static_cast<double>(npol);
        for (std::size_t j = 0; j < naz; ++j, ++index) {
          const double az = 2.0 * kPi * (static_cast<double>(j) + azimuth_offset) / static_cast<double>(naz);
          const Vec3 v = kCharts[0].point(polar, az);
          const double res = family.evaluate({1.0, 0.0, 0.0}, pt, v).imag_norm();
          samples.push_back({res, index, t, v});
        }
      }
    }
    const std::size_t keep = std::min(options.candidates, samples.size());
    auto by_residual = [](const Sample& a, const Sample& b) {
      return a.residual != b.residual ? a.residual < b.residual : a.index < b.index;
    };
    std::partial_sort(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(keep), samples.end(),
                      by_residual);
    for (std::size_t c = 0; c < keep; ++c) {
      const Refined r = levenberg_marquardt(family, samples[c].t, samples[c].v, options.tolerance);
      best_residual = std::min(best_residual, r.residual);
      if (r.residual >= options.tolerance) continue;

      Certificate cert{w, gens};
      cert.t = r.t;
      cert.v = r.v;
      cert.generators[0].axis = {1.0, 0.0, 0.0};
      cert.generators[1].axis = path_point(r.t);
      cert.generators[2].axis = r.v;
      std::vector<std::optional<Quaternion>> images;
      for (const auto& g : cert.generators) images.emplace_back(g.image());
      const Quaternion value = eval(w, images);
      cert.residual = value.imag_norm();
      if (cert.residual >= options.tolerance) continue;
      cert.sign = value.w >= 0.0 ? 1 : -1;
      cert.grid = n;
      cert.seed = options.seed;
      return cert;
    }
  }
  std::ostringstream msg;
  msg << "search exhausted at grid " << n / 2 << "; best residual " << best_residual;
  throw SearchExhausted(msg.str(), best_residual);
}

bool VerificationReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

VerificationReport verify(const Certificate& cert, double tol) {
  VerificationReport rep;
  auto add = [&](std::string name, bool pass, std::string detail = {}) {
    rep.checks.push_back({std::move(name), pass, std::move(detail)});
  };
  const FreeProduct& g = cert.relator.group();
  const bool shape = g.size() == 3 && cert.generators.size() == 3;
  add("three-factors", shape);
  if (!shape) return rep;

  std::vector<std::optional<Quaternion>> images;
  bool all_unit = true;
  for (std::size_t f = 0; f < 3; ++f) {
    const GeneratorRecord& rec = cert.generators[f];
    const std::string& id = g.factor(f).id;
    const std::int64_t p = g.order(f);
    add("factor-match:" + id, rec.factor == id && rec.order == p);

    const double axis_norm = norm(rec.axis);
    const bool unit = std::abs(axis_norm - 1.0) <= 1e-12;
    all_unit = all_unit && unit;
    std::ostringstream nd;
    nd << "|axis| = " << axis_norm;
    add("unit-axis:" + id, unit, nd.str());

    const bool pp = prime_power(p).has_value();
    add("prime-power-order:" + id, pp, std::to_string(p));
    if (!pp) continue;
    add("order-exact:" + id, order_p_valid(rec.angle, p), rec.angle.to_string());

    const std::int64_t n = exponent_sum(cert.relator, f);
    const std::int64_t nr = mod_positive(n, p);
    const bool sums = nr != 0 && std::gcd(rec.multiplier, p) == 1 &&
                      mod_positive(rec.multiplier * nr, p) == rec.reduced_sum &&
                      rec.reduced_sum == std::gcd(nr, p);
    add("exponent-reduction:" + id, sums,
        "sum " + std::to_string(n) + ", m " + std::to_string(rec.multiplier));
    add("angle-is-multiple:" + id, rec.base_angle.times(rec.multiplier).mod_two_pi() == rec.angle.mod_two_pi(),
        rec.base_angle.to_string() + " x " + std::to_string(rec.multiplier));
    add("psi-range:" + id, sums && psi_in_range(rec.base_angle, rec.reduced_sum),
        psi_of(rec.base_angle, rec.reduced_sum).to_string());
    images.emplace_back(rec.image());
  }
  if (images.size() != 3 || !all_unit) {
    add("relator-killed", false, "images unavailable");
    return rep;
  }
  const double residual = eval(cert.relator, images).imag_norm();
  std::ostringstream rd;
  rd << "residual " << residual;
  add("relator-killed", residual < tol, rd.str());
  return rep;
}

Word quotient_word(const Word& w, std::size_t factor, std::int64_t modulus) {
  std::vector<FactorSpec> specs = w.group().factors();
  if (factor >= specs.size()) throw Error("unknown factor index");
  const std::int64_t p = specs[factor].order;
  if (modulus < 2 || p == kInfinite || p % modulus != 0) {
    throw Error("quotient modulus must be a divisor > 1 of the factor order");
  }
  specs[factor].order = modulus;
  return Word::normalize(w.letters(), make_context(std::move(specs)));
}

namespace {

std::vector<std::int64_t> prime_power_components(std::int64_t p) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= p; ++d) {
    if (p % d != 0) continue;
    std::int64_t q = 1;
    while (p % d == 0) {
      p /= d;
      q *= d;
    }
    out.push_back(q);
  }
  if (p > 1) out.push_back(p);
  return out;
}

}  // namespace

CertificateTree crt_certify(const Word& w, const SearchOptions& options) {
  const FreeProduct& g = w.group();
  if (g.size() != 3) throw Error("expected exactly three factors");
  for (std::size_t f = 0; f < g.size(); ++f) {
    const std::int64_t p = g.order(f);
    if (p == kInfinite) throw Error("factor '" + g.factor(f).id + "' must have finite order");
    if (mod_positive(exponent_sum(w, f), p) == 0) {
      throw Error("exponent sum of '" + g.factor(f).id + "' is 0 mod " + std::to_string(p));
    }
  }
  for (std::size_t f = 0; f < g.size(); ++f) {
    const std::int64_t p = g.order(f);
    if (prime_power(p)) continue;
    const std::int64_t n = exponent_sum(w, f);
    CertificateTree node;
    node.kind = CertificateTree::Kind::Crt;
    node.relator = w;
    node.factor = g.factor(f).id;
    node.order = p;
    node.exponent_sum = n;
    for (std::int64_t m : prime_power_components(p)) {
      if (mod_positive(n, m) != 0) {
        node.modulus_m = m;
        node.modulus_n = p / m;
        break;
      }
    }
    node.branch_moduli.push_back(node.modulus_m);
    node.children.push_back(crt_certify(quotient_word(w, f, node.modulus_m), options));
    std::ostringstream km;
    km << "the kernel of the quotient of order " << node.modulus_n << " lies in <" << node.factor << "^"
       << node.modulus_m << ">";
    node.notes.push_back(km.str());
    if (mod_positive(n, node.modulus_n) != 0) {
      node.branch_moduli.push_back(node.modulus_n);
      node.children.push_back(crt_certify(quotient_word(w, f, node.modulus_n), options));
    } else {
      std::ostringstream dn;
      dn << "exponent sum " << n << " is divisible by " << node.modulus_n
         << ", so the order-" << node.modulus_m << " branch alone determines the embedding";
      node.notes.push_back(dn.str());
    }
    return node;
  }
  CertificateTree leaf;
  leaf.kind = CertificateTree::Kind::Leaf;
  leaf.relator = w;
  leaf.leaf = search_representation(w, options);
  return leaf;
}

namespace {

void verify_tree(const CertificateTree& tree, double tol, const std::string& path, VerificationReport& rep) {
  auto add = [&](const std::string& name, bool pass, std::string detail = {}) {
    rep.checks.push_back({path + name, pass, std::move(detail)});
  };
  if (tree.kind == CertificateTree::Kind::Leaf) {
    if (!tree.leaf) {
      add("leaf-present", false);
      return;
    }
    bool all_pp = true;
    for (const auto& f : tree.leaf->relator.group().factors()) all_pp = all_pp && prime_power(f.order).has_value();
    add("leaf-prime-powers", all_pp);
    add("leaf-relator", tree.leaf->relator == tree.relator);
    for (auto& c : verify(*tree.leaf, tol).checks) {
      rep.checks.push_back({path + c.name, c.pass, std::move(c.detail)});
    }
    return;
  }
  const FreeProduct& g = tree.relator.group();
  const auto f = g.find(tree.factor);
  if (!f) {
    add("crt-factor", false, tree.factor);
    return;
  }
  const std::int64_t p = g.order(*f);
  const std::int64_t n = exponent_sum(tree.relator, *f);
  const std::int64_t m1 = tree.modulus_m, m2 = tree.modulus_n;
  const bool split = m1 > 1 && m2 > 1 && m1 * m2 == p && std::gcd(m1, m2) == 1 && p == tree.order;
  add("crt-split", split, std::to_string(p) + " = " + std::to_string(m1) + " x " + std::to_string(m2));
  add("crt-exponent-sum", n == tree.exponent_sum && split && mod_positive(n, m1) != 0);
  std::vector<std::int64_t> expected{m1};
  if (split && mod_positive(n, m2) != 0) expected.push_back(m2);
  const bool branches = tree.branch_moduli == expected && tree.children.size() == expected.size();
  add("crt-branches", branches,
      std::to_string(tree.children.size()) + " children for " + std::to_string(expected.size()) + " branches");
  if (!branches || !split) return;
  for (std::size_t i = 0; i < tree.children.size(); ++i) {
    const CertificateTree& child = tree.children[i];
    const std::string sub = path + tree.factor + "/" + std::to_string(expected[i]) + ".";
    add(tree.factor + "/" + std::to_string(expected[i]) + ".quotient",
        child.relator == quotient_word(tree.relator, *f, expected[i]));
    verify_tree(child, tol, sub, rep);
  }
}

}  // namespace

VerificationReport verify(const CertificateTree& tree, double tol) {
  VerificationReport rep;
  verify_tree(tree, tol, "", rep);
  return rep;
}

}  // namespace orelp::sorep
