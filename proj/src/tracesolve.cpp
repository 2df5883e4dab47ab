#include "orelp/tracesolve.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace orelp::trace {

namespace {

// Letters are ±1, ±2, ±3 for X, Y, Z and their inverses.
using Sym = std::vector<int>;

Sym free_reduce(const Sym& s) {
  Sym out;
  for (int l : s) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  // Cyclic reduction: traces are conjugation invariant.
  std::size_t lo = 0, hi = out.size();
  while (hi - lo >= 2 && out[lo] == -out[hi - 1]) {
    ++lo;
    --hi;
  }
  return Sym(out.begin() + static_cast<std::ptrdiff_t>(lo), out.begin() + static_cast<std::ptrdiff_t>(hi));
}

Sym least_rotation(const Sym& s) {
  Sym best = s;
  for (std::size_t r = 1; r < s.size(); ++r) {
    Sym rot(s.begin() + static_cast<std::ptrdiff_t>(r), s.end());
    rot.insert(rot.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(r));
    best = std::min(best, rot);
  }
  return best;
}

Sym inverse(const Sym& s) {
  Sym out(s.rbegin(), s.rend());
  for (int& l : out) l = -l;
  return out;
}

std::size_t inverse_count(const Sym& s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](int l) { return l < 0; }));
}

// Tr(W) = Tr(W⁻¹) and traces are invariant under rotation; the orientation
// with fewer inverse letters wins so that reduction steps make progress.
Sym canonical(const Sym& s) {
  const Sym a = least_rotation(s), b = least_rotation(inverse(s));
  const auto ka = inverse_count(a), kb = inverse_count(b);
  if (ka != kb) return ka < kb ? a : b;
  return std::min(a, b);
}

Sym concat(const Sym& a, const Sym& b) {
  Sym out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Sym rotate(const Sym& s, std::size_t r) {
  Sym out(s.begin() + static_cast<std::ptrdiff_t>(r), s.end());
  out.insert(out.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(r));
  return out;
}

class Reducer {
 public:
  Reducer(const TraceCoords& c, int max_depth) : c_(c), max_depth_(max_depth) {}

  Complex trace(const Sym& raw) {
    const Sym w = canonical(free_reduce(raw));
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    if (++depth_ > max_depth_) throw DepthExceeded("trace reduction exceeded its depth limit");
    const Complex value = compute(w);
    --depth_;
    memo_.emplace(w, value);
    return value;
  }

 private:
  Complex compute(const Sym& w) {
    if (w.empty()) return 2.0;
    // Remove an inverse letter: Tr(W x⁻¹) = Tr(W) Tr(x) − Tr(W x).
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] < 0) {
        const Sym r = rotate(w, (i + 1) % w.size());  // ends with w[i]
        const Sym head(r.begin(), r.end() - 1);
        return trace(head) * base(-w[i]) - trace(concat(head, Sym{-w[i]}));
      }
    }
    // Positive word with a repeated letter: Tr(xA·xB) = Tr(xA) Tr(xB) − Tr(A B⁻¹).
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::size_t j = i + 1; j < w.size(); ++j) {
        if (w[i] != w[j]) continue;
        const Sym r = rotate(w, i);
        const std::size_t k = j - i;
        const Sym xa(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(k));
        const Sym xb(r.begin() + static_cast<std::ptrdiff_t>(k), r.end());
        const Sym a(xa.begin() + 1, xa.end());
        const Sym b(xb.begin() + 1, xb.end());
        return trace(xa) * trace(xb) - trace(concat(a, inverse(b)));
      }
    }
    // Positive word with distinct letters: length at most 3.
    if (w.size() == 1) return base(w[0]);
    if (w.size() == 2) {
      const int lo = std::min(w[0], w[1]), hi = std::max(w[0], w[1]);
      if (lo == 1 && hi == 2) return c_.xy;
      if (lo == 1 && hi == 3) return c_.xz;
      return c_.yz;
    }
    // Least rotation starts with X; XYZ or XZY.
    if (w == Sym{1, 2, 3}) return c_.xyz;
    return trace_xzy(c_);
  }

  Complex base(int letter) const {
    switch (letter) {
      case 1: return c_.x;
      case 2: return c_.y;
      default: return c_.z;
    }
  }

  const TraceCoords& c_;
  int max_depth_;
  int depth_ = 0;
  std::map<Sym, Complex> memo_;
};

double max_abs(std::initializer_list<Complex> v) {
  double m = 0.0;
  for (const Complex& c : v) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

Complex fricke_residual(const TraceCoords& c) {
  const Complex lhs = c.x * c.x + c.y * c.y + c.z * c.z + c.xy * c.xy + c.xz * c.xz + c.yz * c.yz +
                      c.xyz * c.xyz + c.xy * c.xz * c.yz - c.x * c.y * c.xy - c.x * c.z * c.xz -
                      c.y * c.z * c.yz + c.x * c.y * c.z * c.xyz - c.x * c.yz * c.xyz -
                      c.y * c.xz * c.xyz - c.z * c.xy * c.xyz;
  return lhs - 4.0;
}

TraceCoords coords_of(const Triple& m) {
  return {m.X.trace(),         m.Y.trace(),         m.Z.trace(),
          (m.X * m.Y).trace(), (m.X * m.Z).trace(), (m.Y * m.Z).trace(),
          (m.X * m.Y * m.Z).trace()};
}

Complex trace_xzy(const TraceCoords& c) {
  return c.x * c.yz + c.y * c.xz + c.z * c.xy - c.x * c.y * c.z - c.xyz;
}

Context trace_context() {
  static const Context ctx = make_context("X:0 Y:0 Z:0");
  return ctx;
}

Complex trace_of_word(const Word& w, const TraceCoords& c, int max_depth) {
  if (w.group().size() != 3) throw Error("trace words use exactly three generators");
  for (const auto& f : w.group().factors()) {
    if (f.order != kInfinite) throw Error("trace words need free generators");
  }
  Sym s;
  for (const auto& l : w.letters()) {
    const int sym = static_cast<int>(l.factor) + 1;
    for (std::int64_t k = 0; k < (l.exponent < 0 ? -l.exponent : l.exponent); ++k) {
      s.push_back(l.exponent < 0 ? -sym : sym);
    }
  }
  Reducer r(c, max_depth);
  return r.trace(s);
}

QuadraticPair derive_pair(const FixedTraces& f, Complex target) {
  QuadraticPair q;
  q.c1 = f.y * f.xyz + f.x * f.z - f.xz - target;
  q.c2 = f.xz;
  q.c3 = -(f.x * f.y + f.z * f.xyz);
  q.c4 = -(f.y * f.z + f.x * f.xyz);
  const Complex k = f.x * f.x + f.y * f.y + f.z * f.z + f.xz * f.xz + f.xyz * f.xyz - f.x * f.z * f.xz +
                    f.x * f.y * f.z * f.xyz - f.y * f.xz * f.xyz;
  q.c5 = 4.0 - k;
  return q;
}

namespace {

// Value of the d-th derivative of the monic polynomial with low-to-high
// coefficients a at r.
Complex derivative_at(const std::vector<Complex>& a, int d, Complex r) {
  const int n = static_cast<int>(a.size());
  auto coef = [&](int i) { return i == n ? Complex(1.0) : a[static_cast<std::size_t>(i)]; };
  Complex acc = 0.0;
  for (int i = n; i >= d; --i) {
    double falling = 1.0;
    for (int k = 0; k < d; ++k) falling *= static_cast<double>(i - k);
    acc = acc * r + coef(i) * falling;
  }
  return acc;
}

// Roots of the monic polynomial with coefficients (low to high) a[0..n-1].
std::vector<Complex> monic_roots(const std::vector<Complex>& a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -a[static_cast<std::size_t>(i)];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<Complex> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);

  // A root of multiplicity m is computed only to about eps^(1/m); the mean of
  // its cluster is far more accurate, and is then a simple root of the
  // (m−1)-th derivative.
  std::vector<int> cluster(static_cast<std::size_t>(n), -1);
  int clusters = 0;
  for (int i = 0; i < n; ++i) {
    if (cluster[static_cast<std::size_t>(i)] >= 0) continue;
    cluster[static_cast<std::size_t>(i)] = clusters;
    for (int j = i + 1; j < n; ++j) {
      const double scale = 1.0 + std::abs(roots[static_cast<std::size_t>(i)]);
      if (cluster[static_cast<std::size_t>(j)] < 0 &&
          std::abs(roots[static_cast<std::size_t>(i)] - roots[static_cast<std::size_t>(j)]) < 1e-3 * scale) {
        cluster[static_cast<std::size_t>(j)] = clusters;
      }
    }
    ++clusters;
  }
  for (int c = 0; c < clusters; ++c) {
    Complex mean = 0.0;
    int m = 0;
    for (int i = 0; i < n; ++i) {
      if (cluster[static_cast<std::size_t>(i)] == c) {
        mean += roots[static_cast<std::size_t>(i)];
        ++m;
      }
    }
    Complex r = mean / static_cast<double>(m);
    for (int it = 0; it < 4; ++it) {
      const Complex f = derivative_at(a, m - 1, r);
      const Complex df = derivative_at(a, m, r);
      if (std::abs(df) < 1e-14) break;
      const Complex next = r - f / df;
      if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
      r = next;
    }
    // Keep the refined value only when it does not worsen the polynomial residual.
    const Complex before = mean / static_cast<double>(m);
    if (std::abs(derivative_at(a, 0, r)) > std::abs(derivative_at(a, 0, before))) r = before;
    for (int i = 0; i < n; ++i) {
      if (cluster[static_cast<std::size_t>(i)] == c) roots[static_cast<std::size_t>(i)] = r;
    }
  }
  return roots;
}

std::vector<Complex> quadratic_roots(Complex b, Complex c) { return monic_roots({c, b}); }

}  // namespace

std::vector<Root> solve_pair(const QuadraticPair& q) {
  std::vector<Root> out;
  if (std::abs(q.c1) > 0.0) {
    const auto alphas = monic_roots({q.c1 * q.c1, q.c4 * q.c1, q.c2 * q.c1 - q.c5, q.c3});
    for (const Complex& a : alphas) out.push_back({a, q.c1 / a});
    return out;
  }
  // αβ = 0: either α = 0 with β² + c4β = c5, or β = 0 with α² + c3α = c5.
  for (const Complex& b : quadratic_roots(q.c4, -q.c5)) out.push_back({0.0, b});
  for (const Complex& a : quadratic_roots(q.c3, -q.c5)) out.push_back({a, 0.0});
  return out;
}

double pair_residual(const QuadraticPair& q, const Root& r) {
  const Complex e1 = r.alpha * r.beta - q.c1;
  const Complex e2 = r.alpha * r.alpha + r.beta * r.beta + q.c2 * r.alpha * r.beta + q.c3 * r.alpha +
                     q.c4 * r.beta - q.c5;
  return std::max(std::abs(e1), std::abs(e2));
}

double trace_error(const Triple& m, const TraceCoords& coords) {
  const auto a = coords_of(m).as_array();
  const auto b = coords.as_array();
  double e = 0.0;
  for (std::size_t i = 0; i < 7; ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

namespace {

// Root s of s² − tr·s + 1.
Complex eigenvalue(Complex tr) { return 0.5 * (tr + std::sqrt(tr * tr - 4.0)); }

// (P, Q, R) realisation where P, Q generate an irreducible pair.
struct PairTraces {
  Complex p, q, r, pq, pr, qr, pqr;
};

std::array<Mat2, 3> realize_generic(const PairTraces& t) {
  const Complex lam = eigenvalue(t.p);
  Mat2 P;
  P << lam, 1.0, 0.0, 1.0 / lam;
  const Complex mu = eigenvalue(t.q);
  const Complex mu2 = 1.0 / mu;
  const Complex q21 = t.pq - lam * mu - mu2 / lam;
  Mat2 Q;
  Q << mu, 0.0, q21, mu2;
  const Mat2 PQ = P * Q;
  // Tr(W R) for W ∈ {I, P, Q, PQ} is linear in the entries of R.
  const Mat2 basis[4] = {Mat2::Identity(), P, Q, PQ};
  const Complex rhs[4] = {t.r, t.pr, t.qr, t.pqr};
  Eigen::Matrix4cd A;
  Eigen::Vector4cd b;
  for (int i = 0; i < 4; ++i) {
    const Mat2& W = basis[i];
    A(i, 0) = W(0, 0);
    A(i, 1) = W(1, 0);
    A(i, 2) = W(0, 1);
    A(i, 3) = W(1, 1);
    b(i) = rhs[i];
  }
  const Eigen::Vector4cd r = A.fullPivLu().solve(b);
  Mat2 R;
  R << r(0), r(1), r(2), r(3);
  const Complex det = R.determinant();
  if (std::abs(det) < 1e-300) throw GenericityError("solved third generator is singular");
  R /= std::sqrt(det);
  return {P, Q, R};
}

Complex commutator_defect(Complex p, Complex q, Complex pq) { return p * p + q * q + pq * pq - p * q * pq - 4.0; }

}  // namespace

Triple realize(const TraceCoords& c, double tol) {
  if (std::abs(fricke_residual(c)) > tol) {
    throw GenericityError("coordinates are off the character variety (Fricke residual " +
                          std::to_string(std::abs(fricke_residual(c))) + ")");
  }
  // Tr[P, Q] − 2 for each pair; nonzero means I, P, Q, PQ span all 2×2 matrices.
  const Complex k_xy = commutator_defect(c.x, c.y, c.xy);
  const Complex k_xz = commutator_defect(c.x, c.z, c.xz);
  const Complex k_yz = commutator_defect(c.y, c.z, c.yz);
  const double best = std::max({std::abs(k_xy), std::abs(k_xz), std::abs(k_yz)});

  if (best > 1e-9) {
    Triple out;
    if (std::abs(k_xy) == best) {
      auto m = realize_generic({c.x, c.y, c.z, c.xy, c.xz, c.yz, c.xyz});
      out = {m[0], m[1], m[2]};
    } else if (std::abs(k_xz) == best) {
      auto m = realize_generic({c.x, c.z, c.y, c.xz, c.xy, c.yz, trace_xzy(c)});
      out = {m[0], m[2], m[1]};
    } else {
      auto m = realize_generic({c.y, c.z, c.x, c.yz, c.xy, c.xz, c.xyz});
      out = {m[2], m[0], m[1]};
    }
    if (trace_error(out, c) <= tol) return out;
  }

  // Reducible locus: look for simultaneously diagonal matrices.
  const Complex l = eigenvalue(c.x);
  for (int sy = 0; sy < 2; ++sy) {
    for (int sz = 0; sz < 2; ++sz) {
      Complex m = eigenvalue(c.y), n = eigenvalue(c.z);
      if (sy) m = 1.0 / m;
      if (sz) n = 1.0 / n;
      Triple d;
      d.X << l, 0.0, 0.0, 1.0 / l;
      d.Y << m, 0.0, 0.0, 1.0 / m;
      d.Z << n, 0.0, 0.0, 1.0 / n;
      if (trace_error(d, c) <= tol) return d;
    }
  }
  throw GenericityError(
      "every pair commutator has trace 2 (reducible locus) and no diagonal triple matches the traces");
}

Mat2 random_unimodular(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  for (;;) {
    Mat2 m;
    m << Complex(g(rng), g(rng)), Complex(g(rng), g(rng)), Complex(g(rng), g(rng)), Complex(g(rng), g(rng));
    const Complex det = m.determinant();
    if (std::abs(det) > 0.1) return m / std::sqrt(det);
  }
}

double distance_to_pm_identity(const Mat2& m) {
  const Mat2 id = Mat2::Identity();
  return std::min((m - id).cwiseAbs().maxCoeff(), (m + id).cwiseAbs().maxCoeff());
}

AbcdRepresentation build_abcd(const AbcdTargets& t, double tol) {
  AbcdRepresentation out;
  out.pair = derive_pair({t.trX, t.trY, t.trZ, t.trXZ, t.trXYZ}, t.trXYZYinv);
  out.roots = solve_pair(out.pair);

  double best = std::numeric_limits<double>::infinity();
  std::string last_error = "no roots";
  for (std::size_t i = 0; i < out.roots.size(); ++i) {
    const Root& r = out.roots[i];
    const TraceCoords c{t.trX, t.trY, t.trZ, r.alpha, t.trXZ, r.beta, t.trXYZ};
    Triple m;
    try {
      m = realize(c, tol);
    } catch (const GenericityError& e) {
      last_error = e.what();
      continue;
    }
    const Mat2 D = (m.X * m.Y * m.Z).inverse();
    const Mat2 Yinv = m.Y.inverse();
    const double target_error =
        max_abs({m.X.trace() - t.trX, m.Z.trace() - t.trZ, (m.X * m.Z).trace() - t.trXZ, m.Y.trace() - t.trY,
                 D.trace() - t.trXYZ, (m.X * m.Y * m.Z * Yinv).trace() - t.trXYZYinv});
    if (target_error < best) {
      best = target_error;
      out.a = m.X;
      out.b = m.Y;
      out.c = m.Z;
      out.d = D;
      out.coords = c;
      out.chosen = i;
      out.target_error = target_error;
      out.relator_error = distance_to_pm_identity(m.X * m.Y * m.Z * D);
      out.fricke = std::abs(fricke_residual(c));
    }
  }
  if (!std::isfinite(best)) throw GenericityError("no root could be realised: " + last_error);
  return out;
}

}  // namespace orelp::trace
