#include <doctest.h>

#include <cmath>

#include "h2r/lorentz.hpp"
#include "oracles.hpp"

using namespace h2r;

TEST_CASE("inner3 on the coordinate axes") {
  CHECK(inner3({1, 0, 0}, {1, 0, 0}) == doctest::Approx(1.0));
  CHECK(inner3({0, 0, 1}, {0, 0, 1}) == doctest::Approx(-1.0));
  // B(1) = (0, sinh 1, cosh 1) is a point of H^2
  const LorentzVec3 b{0.0, std::sinh(1.0), std::cosh(1.0)};
  CHECK(inner3(b, b) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("inner3 symmetry and bilinearity on random vectors") {
  oracles::Rng rng(12345);
  for (int i = 0; i < 200; ++i) {
    const LorentzVec3 u{rng.uniform(-10, 10), rng.uniform(-10, 10),
                        rng.uniform(-10, 10)};
    const LorentzVec3 v{rng.uniform(-10, 10), rng.uniform(-10, 10),
                        rng.uniform(-10, 10)};
    const LorentzVec3 w{rng.uniform(-10, 10), rng.uniform(-10, 10),
                        rng.uniform(-10, 10)};
    const double a = rng.uniform(-3, 3);
    CHECK(inner3(u, v) == doctest::Approx(inner3(v, u)).epsilon(1e-14));
    CHECK(inner3(a * u + w, v) ==
          doctest::Approx(a * inner3(u, v) + inner3(w, v)).epsilon(1e-12));
  }
}

TEST_CASE("cross_l matches the defining formula and is antisymmetric") {
  const LorentzVec3 ex{1, 0, 0}, ey{0, 1, 0};
  const LorentzVec3 c = cross_l(ex, ey);
  CHECK(c.x1 == 0.0);
  CHECK(c.x2 == 0.0);
  CHECK(c.x3 == -1.0);

  const LorentzVec3 u{0.3, -1.2, 2.5};
  const LorentzVec3 uu = cross_l(u, u);
  CHECK(uu.x1 == 0.0);
  CHECK(uu.x2 == 0.0);
  CHECK(uu.x3 == 0.0);
}

TEST_CASE("cross_l of a geodesic and its speed is constant") {
  for (double y : {-1.5, 0.0, 0.7, 2.0}) {
    const LorentzVec3 f{0.0, std::sinh(y), std::cosh(y)};
    const LorentzVec3 fp{0.0, std::cosh(y), std::sinh(y)};
    const LorentzVec3 c = cross_l(f, fp);
    CHECK(c.x1 == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(std::abs(c.x2) < 1e-14);
    CHECK(std::abs(c.x3) < 1e-14);
  }
}

TEST_CASE("cross_l output is Lorentz-orthogonal to both factors") {
  oracles::Rng rng(777);
  for (int i = 0; i < 300; ++i) {
    const LorentzVec3 u{rng.uniform(-10, 10), rng.uniform(-10, 10),
                        rng.uniform(-10, 10)};
    const LorentzVec3 v{rng.uniform(-10, 10), rng.uniform(-10, 10),
                        rng.uniform(-10, 10)};
    const LorentzVec3 c = cross_l(u, v);
    CHECK(std::abs(inner3(c, u)) <= 1e-12);
    CHECK(std::abs(inner3(c, v)) <= 1e-12);
  }
}

TEST_CASE("causal character classification") {
  CHECK(causal_character({1, 0, 0}, 1e-12).kind == CausalKind::Spacelike);
  CHECK(causal_character({1, 0, 1}, 1e-12).kind == CausalKind::Lightlike);
  CHECK(causal_character({0, 0, 1}, 1e-12).kind == CausalKind::Timelike);
  // lightlike frame velocity: H' = c2 - c1 with <c1,c1>=1, <c2,c2>=-1,
  // <c1,c2>=0 gives <H',H'> = 0 exactly
  const LorentzVec3 c1{0, 1, 0}, c2{0, 0, 1};
  CHECK(causal_character(c2 - c1, 1e-12).kind == CausalKind::Lightlike);
  CHECK_THROWS_AS(causal_character({1, 0, 0}, 0.0), Error);
}

TEST_CASE("hyperboloid and de Sitter membership") {
  CHECK(in_h2({0, 0, 1}, 1e-12));
  CHECK_FALSE(in_h2({0, 0, -1}, 1e-12));  // lower sheet
  CHECK(in_h2({0, std::sinh(2.0), std::cosh(2.0)}, 1e-9));

  CHECK(in_desitter({1, 0, 0}, 1e-12));
  CHECK_FALSE(in_desitter({0, 0, 1}, 1e-12));
  for (double y : {-2.0, 0.3, 1.0}) {
    CHECK(in_desitter({std::sin(y), std::cos(y), 0.0}, 1e-12));
  }
}

TEST_CASE("in_h2 points are timelike") {
  oracles::Rng rng(42);
  for (int i = 0; i < 100; ++i) {
    const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
    const LorentzVec3 p{std::sinh(a), std::cosh(a) * std::sinh(b),
                        std::cosh(a) * std::cosh(b)};
    REQUIRE(in_h2(p, 1e-9));
    CHECK(causal_character(p).kind == CausalKind::Timelike);
  }
}

TEST_CASE("curve_normal of the geodesic") {
  const double y = 0.8;
  const LorentzVec3 f{0.0, std::sinh(y), std::cosh(y)};
  const LorentzVec3 fp{0.0, std::cosh(y), std::sinh(y)};
  const LorentzVec3 n = curve_normal(f, fp);
  CHECK(n.x1 == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(n.x2) < 1e-14);
  CHECK(std::abs(n.x3) < 1e-14);
}

TEST_CASE("curve_normal contract: unit spacelike, orthogonal to f and f'") {
  oracles::Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    // random H^2 point and tangent direction
    const double a = rng.uniform(-1.5, 1.5), b = rng.uniform(-1.5, 1.5);
    const LorentzVec3 f{std::sinh(a), std::cosh(a) * std::sinh(b),
                        std::cosh(a) * std::cosh(b)};
    // tangent: combination of the coordinate fields, spacelike since in T_f H^2
    const LorentzVec3 t1{std::cosh(a), std::sinh(a) * std::sinh(b),
                         std::sinh(a) * std::cosh(b)};
    const LorentzVec3 t2{0.0, std::cosh(a) * std::cosh(b),
                         std::cosh(a) * std::sinh(b)};
    const double u = rng.uniform(-2, 2), v = rng.uniform(-2, 2);
    if (std::abs(u) + std::abs(v) < 0.1) continue;
    const LorentzVec3 fp = u * t1 + v * t2;
    const LorentzVec3 n = curve_normal(f, fp);
    CHECK(in_desitter(n, 1e-10));
    CHECK(std::abs(inner3(n, f)) <= 1e-10);
    CHECK(std::abs(inner3(n, fp)) <= 1e-9);
  }
}

TEST_CASE("curve_normal rejects degenerate speed") {
  CHECK_THROWS_AS(curve_normal({0, 0, 1}, {0, 0, 0}), Error);
  try {
    curve_normal({0, 0, 1}, {0, 0, 0});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonSpacelikeSpeed);
  }
}

TEST_CASE("finite-component invariant") {
  CHECK_THROWS_AS(LorentzVec3(std::nan(""), 0.0, 0.0), Error);
  CHECK_THROWS_AS(LorentzVec3(0.0, std::numeric_limits<double>::infinity(), 0.0),
                  Error);
}
