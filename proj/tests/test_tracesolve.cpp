#include <doctest.h>

#include <random>

#include "orelp/json_io.hpp"
#include "orelp/tracesolve.hpp"

using namespace orelp;
using namespace orelp::trace;

namespace {

Triple random_triple(std::uint64_t seed) {
  return {random_unimodular(3 * seed + 1), random_unimodular(3 * seed + 2), random_unimodular(3 * seed + 3)};
}

// Oracle: multiply the matrices letter by letter.
Mat2 evaluate(const Word& w, const Triple& m) {
  const Mat2* gens[3] = {&m.X, &m.Y, &m.Z};
  Mat2 acc = Mat2::Identity();
  for (const auto& l : w.letters()) {
    const Mat2 g = l.exponent < 0 ? Mat2(gens[l.factor]->inverse()) : *gens[l.factor];
    for (std::int64_t k = 0; k < std::abs(l.exponent); ++k) acc = acc * g;
  }
  return acc;
}

Word random_trace_word(std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len), f(0, 2), sign(0, 1);
  std::vector<Letter> raw;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) raw.push_back({static_cast<std::size_t>(f(rng)), sign(rng) ? 1 : -1});
  return Word::normalize(raw, trace_context());
}

TraceCoords all(Complex v) { return {v, v, v, v, v, v, v}; }

bool near(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("fricke residual values") {
  CHECK(fricke_residual(all(2.0)) == Complex(0.0, 0.0));
  CHECK(fricke_residual({0, 0, 0, 0, 0, 0, 2.0}) == Complex(0.0, 0.0));
  CHECK(fricke_residual(all(0.0)) == Complex(-4.0, 0.0));
}

TEST_CASE("fricke relation holds for genuine matrices") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const TraceCoords c = coords_of(random_triple(s));
    CHECK(std::abs(fricke_residual(c)) < 1e-10);
  }
}

TEST_CASE("coordinates are conjugation invariant") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Triple t = random_triple(s);
    const Mat2 m = random_unimodular(1000 + s);
    const Mat2 mi = m.inverse();
    const Triple u{m * t.X * mi, m * t.Y * mi, m * t.Z * mi};
    const auto a = coords_of(t).as_array(), b = coords_of(u).as_array();
    for (std::size_t i = 0; i < 7; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10 * (1.0 + std::abs(a[i])));
  }
}

TEST_CASE("trace engine base cases") {
  const TraceCoords c{1.5, -0.5, 2.5, Complex(0.3, 1), 0.7, Complex(-1, 2), 0.25};
  auto tr = [&](const char* text) { return trace_of_word(parse_word(text, trace_context()), c); };
  CHECK(tr("X") == c.x);
  CHECK(tr("Y^-1") == c.y);
  CHECK(tr("Z Y") == c.yz);
  CHECK(tr("Y Z X") == c.xyz);
  CHECK(tr("1") == Complex(2.0));
  const Complex expected = c.y * c.xyz - c.xy * c.yz + c.x * c.z - c.xz;
  CHECK(near(tr("X Y Z Y^-1"), expected, 1e-12));

  const TraceCoords id = all(2.0);
  CHECK(trace_of_word(parse_word("X^2", trace_context()), id) == Complex(2.0));
}

TEST_CASE("trace engine agrees with matrix traces") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const Triple m = random_triple(static_cast<std::uint64_t>(trial) + 500);
    const Word w = random_trace_word(rng, 8);
    const Complex direct = evaluate(w, m).trace();
    const Complex reduced = trace_of_word(w, coords_of(m));
    CHECK_MESSAGE(std::abs(direct - reduced) < 1e-8 * (1.0 + std::abs(direct)), to_string(w));
  }
  // The displayed formula for Tr(XYZY⁻¹) as a matrix identity.
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Triple m = random_triple(s + 900);
    const TraceCoords c = coords_of(m);
    const Complex direct = (m.X * m.Y * m.Z * m.Y.inverse()).trace();
    CHECK(std::abs(direct - (c.y * c.xyz - c.xy * c.yz + c.x * c.z - c.xz)) < 1e-8);
    // Tr(Y·(XYZ)⁻¹) is the same trace.
    CHECK(std::abs(direct - (m.Y * (m.X * m.Y * m.Z).inverse()).trace()) < 1e-8);
  }
}

TEST_CASE("derived pair coefficients") {
  CHECK(derive_pair({2, 2, 2, 2, 2}, 2.0).c1 == Complex(4.0));
  CHECK(derive_pair({0, 0, 0, 0, 0}, 0.0).c1 == Complex(0.0));

  // The quadratic form reproduces the Fricke residual in α, β.
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  auto rc = [&] { return Complex(g(rng), g(rng)); };
  const FixedTraces f{rc(), rc(), rc(), rc(), rc()};
  const QuadraticPair q = derive_pair(f, rc());
  for (int i = 0; i < 20; ++i) {
    const Complex a = rc(), b = rc();
    const Complex form = a * a + b * b + q.c2 * a * b + q.c3 * a + q.c4 * b - q.c5;
    const Complex fr = fricke_residual({f.x, f.y, f.z, a, f.xz, b, f.xyz});
    CHECK(std::abs(form - fr) < 1e-9);
  }
  // c1 matches the Tr(XYZY⁻¹) formula on genuine matrices.
  const Triple m = random_triple(77);
  const TraceCoords c = coords_of(m);
  const Complex target = (m.X * m.Y * m.Z * m.Y.inverse()).trace();
  CHECK(std::abs(derive_pair({c.x, c.y, c.z, c.xz, c.xyz}, target).c1 - c.xy * c.yz) < 1e-9);
}

TEST_CASE("solving the pair") {
  auto contains = [](const std::vector<Root>& roots, Complex a, Complex b) {
    return std::any_of(roots.begin(), roots.end(),
                       [&](const Root& r) { return near(r.alpha, a, 1e-6) && near(r.beta, b, 1e-6); });
  };
  const auto unit = solve_pair({0, 0, 0, 0, 1});
  CHECK(unit.size() == 4);
  CHECK(contains(unit, 0, 1));
  CHECK(contains(unit, 0, -1));
  CHECK(contains(unit, 1, 0));
  CHECK(contains(unit, -1, 0));

  const auto dbl = solve_pair({1, 0, 0, 0, 2});
  CHECK(dbl.size() == 4);
  CHECK(contains(dbl, 1, 1));
  CHECK(contains(dbl, -1, -1));
  for (const auto& r : dbl) CHECK(pair_residual({1, 0, 0, 0, 2}, r) < 1e-8);

  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    const QuadraticPair q{{g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}};
    const auto roots = solve_pair(q);
    CHECK(roots.size() == 4);
    for (const auto& r : roots) CHECK(pair_residual(q, r) < 1e-8);
  }
}

TEST_CASE("realisation round trip") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const TraceCoords c = coords_of(random_triple(s + 200));
    const Triple m = realize(c);
    CHECK(trace_error(m, c) < 1e-8);
    CHECK(std::abs(m.X.determinant() - 1.0) < 1e-10);
    CHECK(std::abs(m.Y.determinant() - 1.0) < 1e-10);
    CHECK(std::abs(m.Z.determinant() - 1.0) < 1e-10);
  }
}

TEST_CASE("realisation of special coordinates") {
  const Triple id = realize(all(2.0));
  CHECK(trace_error(id, all(2.0)) < 1e-12);
  CHECK(distance_to_pm_identity(id.X) < 1e-12);

  // Quaternion-group type coordinates: Tr X = Tr Y = Tr XY = 0.
  Mat2 qi, qj;
  qi << Complex(0, 1), 0.0, 0.0, Complex(0, -1);
  qj << 0.0, 1.0, -1.0, 0.0;
  const TraceCoords c = coords_of({qi, qj, random_unimodular(5)});
  CHECK(trace_error(realize(c), c) < 1e-8);

  // Off the variety: a named error, never silent output.
  CHECK_THROWS_AS(realize(all(0.0)), GenericityError);
  // Pairwise reducible but jointly irreducible: every commutator trace is 2,
  // yet no diagonal triple has these traces.
  const double mu = 2.0;
  const double nu = 0.5 * (-2.0 / 3.0 + std::sqrt(4.0 / 9.0 + 4.0));
  Mat2 x, y, z;
  x << 3.0, 0.0, 0.0, 1.0 / 3.0;
  y << mu, 1.0, 0.0, 1.0 / mu;
  z << nu, 0.0, 1.0, 1.0 / nu;
  const TraceCoords pairwise = coords_of({x, y, z});
  CHECK(std::abs((y * z * y.inverse() * z.inverse()).trace() - 2.0) < 1e-12);
  CHECK_THROWS_AS(realize(pairwise), GenericityError);
}

TEST_CASE("abcd representation from concrete matrices") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Triple m = random_triple(s + 300);
    const TraceCoords c = coords_of(m);
    const AbcdTargets t{c.x, c.z, c.xz, c.y, c.xyz, (m.X * m.Y * m.Z * m.Y.inverse()).trace()};
    const AbcdRepresentation rep = build_abcd(t);
    CHECK(rep.target_error < 1e-8);
    CHECK(rep.relator_error < 1e-8);
    CHECK(rep.fricke < 1e-8);
    CHECK(distance_to_pm_identity(rep.a * rep.b * rep.c * rep.d) < 1e-8);
    for (const auto& r : rep.roots) {
      CHECK(std::abs(fricke_residual({c.x, c.y, c.z, r.alpha, c.xz, r.beta, c.xyz})) < 1e-8);
    }
  }
  const AbcdRepresentation id = build_abcd({2, 2, 2, 2, 2, 2});
  CHECK(distance_to_pm_identity(id.a) < 1e-8);
  CHECK(id.target_error < 1e-8);
  CHECK(distance_to_pm_identity(id.a * id.b * id.c * id.d) < 1e-12);
}

TEST_CASE("trace json round trip") {
  const TraceCoords c = coords_of(random_triple(1));
  const auto back = io::coords_from_json(io::coords_to_json(c));
  CHECK(back.as_array() == c.as_array());
  const auto t = io::targets_from_json(io::json::parse(
      R"({"trX": 2, "trZ": [2, 0], "trXZ": 2, "trY": 2, "trXYZ": 2, "trXYZYinv": 2})"));
  CHECK(t.trZ == Complex(2.0));
  CHECK_THROWS_AS(io::targets_from_json(io::json::parse(R"({"trX": 2})")), ParseError);
}
