#include <doctest.h>

#include <cmath>
#include <numbers>

#include "h2r/numerics.hpp"
#include "oracles.hpp"

using namespace h2r;

TEST_CASE("integrate basics") {
  CHECK(integrate([](double) { return 1.0; }, 0.0, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // chi of the flat family at c=0 has the closed form sqrt(x^2+1)-1
  const double v = integrate(
      [](double t) { return t / std::sqrt(t * t + 1.0); }, 0.0, 1.0, 1e-12);
  CHECK(v == doctest::Approx(std::numbers::sqrt2 - 1.0).epsilon(1e-12));
  // empty interval, integrand of the minimal-family fourth component
  CHECK(integrate([](double t) { return 1.0 / std::sqrt(std::cosh(t) * std::cosh(t) + 1.0); },
                  0.0, 0.0) == 0.0);
  // antisymmetry
  auto f = [](double t) { return std::exp(-t) * std::cos(3.0 * t); };
  CHECK(integrate(f, 0.0, 2.0) == doctest::Approx(-integrate(f, 2.0, 0.0)));
}

TEST_CASE("integrate additivity on random smooth integrands") {
  oracles::Rng rng(31337);
  const double tol = 1e-10;
  for (int i = 0; i < 25; ++i) {
    const double a0 = rng.uniform(-2, 2), w = rng.uniform(0.5, 3.0);
    const double p = rng.uniform(-1, 1), q = rng.uniform(-1, 1);
    auto f = [=](double t) {
      return p * std::sin(w * t) + q * t * t + std::exp(-0.5 * t * t);
    };
    const double a = rng.uniform(-2, 0), b = a0, c = rng.uniform(0, 2);
    const double whole = integrate(f, a, c, tol);
    const double split = integrate(f, a, b, tol) + integrate(f, b, c, tol);
    CHECK(std::abs(whole - split) <= 3.0 * tol);
  }
}

TEST_CASE("cumulative primitives") {
  const Grid1D g(0.0, std::numbers::pi / 2.0, 2);
  const auto vals = cumulative([](double t) { return std::cos(t); }, 0.0, g);
  REQUIRE(vals.size() == 2);
  CHECK(vals[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(vals[1] == doctest::Approx(1.0).epsilon(1e-10));

  // theta(x) = x: the primitive of cos(theta) at pi/2 is sin(pi/2) = 1
  const auto phi = cumulative([](double t) { return std::cos(t); }, 0.0,
                              Grid1D(0.0, std::numbers::pi / 2.0, 11));
  CHECK(phi.back() == doctest::Approx(1.0).epsilon(1e-10));

  const auto zeros = cumulative([](double) { return 0.0; }, 0.0, Grid1D(0, 1, 5));
  for (double z : zeros) CHECK(z == 0.0);
}

TEST_CASE("cumulative is consistent with integrate at every node") {
  const Grid1D g(-1.0, 2.0, 17);
  auto f = [](double t) { return std::sin(2.0 * t) + 0.3 * t; };
  const auto vals = cumulative(f, 0.5, g, 1e-11);
  for (int i = 0; i < g.n; ++i) {
    CHECK(std::abs(vals[static_cast<std::size_t>(i)] -
                   integrate(f, 0.5, g.node(i), 1e-12)) <= 1e-11);
  }
}

TEST_CASE("diff1 and diff2 basics") {
  CHECK(diff1([](double x) { return x * x; }, 3.0, 1e-3) ==
        doctest::Approx(6.0).epsilon(1e-9));
  CHECK(std::abs(diff2([](double x) { return std::sinh(x); }, 0.0, 1e-3)) <=
        1e-8);
  // theta of the minimal family (c1=1, c2=0) is even in x
  auto th = [](double x) { return std::atan(1.0 / std::cosh(x)); };
  CHECK(std::abs(diff1(th, 0.0, 1e-3)) <= 1e-10);
}

TEST_CASE("diff1 matches quintic derivatives to relative 1e-10") {
  oracles::Rng rng(2024);
  for (int i = 0; i < 40; ++i) {
    double c[6];
    for (double& ci : c) ci = rng.uniform(-2, 2);
    auto p = [&c](double x) {
      return ((((c[5] * x + c[4]) * x + c[3]) * x + c[2]) * x + c[1]) * x + c[0];
    };
    auto dp = [&c](double x) {
      return (((5 * c[5] * x + 4 * c[4]) * x + 3 * c[3]) * x + 2 * c[2]) * x +
             c[1];
    };
    const double x = rng.uniform(-1.5, 1.5);
    const double got = diff1(p, x, 1e-2);
    const double want = dp(x);
    CHECK(std::abs(got - want) <=
          1e-10 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("diff guards the declared domain") {
  Interval dom{0.0, 1.0};
  CHECK_THROWS_AS(diff1([](double x) { return x; }, 0.0005, 1e-3, dom), Error);
  try {
    diff1([](double x) { return x; }, 0.9999, 1e-3, dom);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainClip);
  }
}

TEST_CASE("rk4 fixed-step flows") {
  // zero field: constant trajectory
  const Trajectory tz = rk4(
      [](double, std::span<const double>, std::span<double> d) { d[0] = 0.0; },
      0.0, {3.5}, 1.0, 1e-2);
  CHECK(tz.params.front() == 0.0);
  CHECK(tz.params.back() == 1.0);
  for (const auto& st : tz.states) CHECK(st[0] == 3.5);

  // x' = x reaches e
  const Trajectory te = rk4(
      [](double, std::span<const double> s, std::span<double> d) {
        d[0] = s[0];
      },
      0.0, {1.0}, 1.0, 1e-3);
  CHECK(te.states.back()[0] ==
        doctest::Approx(std::numbers::e).epsilon(1e-10));
}

TEST_CASE("rk4 matches hand-computed matrix exponentials") {
  // rotation generator: exp(t J) with J = [[0,1],[-1,0]]
  const Trajectory tr = rk4(
      [](double, std::span<const double> s, std::span<double> d) {
        d[0] = s[1];
        d[1] = -s[0];
      },
      0.0, {1.0, 0.0}, 1.0, 1e-3);
  CHECK(std::abs(tr.states.back()[0] - std::cos(1.0)) <= 1e-8);
  CHECK(std::abs(tr.states.back()[1] + std::sin(1.0)) <= 1e-8);

  // nilpotent generator: exp(t N) = I + t N
  const Trajectory tn = rk4(
      [](double, std::span<const double> s, std::span<double> d) {
        d[0] = s[1];
        d[1] = 0.0;
      },
      0.0, {0.25, 2.0}, 1.0, 1e-3);
  CHECK(std::abs(tn.states.back()[0] - 2.25) <= 1e-10);
}

TEST_CASE("rk4 integrates the spacelike frame system to the rotation curve") {
  // psi = 0; state = [A, B, H]; A' = H, B' = 0, H' = -A
  auto field = [](double, std::span<const double> s, std::span<double> d) {
    for (int i = 0; i < 3; ++i) {
      d[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(6 + i)];       // A' = H
      d[static_cast<std::size_t>(3 + i)] = 0.0;                                  // B' = 0
      d[static_cast<std::size_t>(6 + i)] = -s[static_cast<std::size_t>(i)];      // H' = -A
    }
  };
  const Trajectory t =
      rk4(field, 0.0, {0, 1, 0, 0, 0, 1, 1, 0, 0}, std::numbers::pi / 2, 1e-3);
  const auto& last = t.states.back();
  CHECK(std::abs(last[0] - 1.0) <= 1e-8);  // A = (1, 0, 0)
  CHECK(std::abs(last[1]) <= 1e-8);
  CHECK(std::abs(last[2]) <= 1e-8);
}

TEST_CASE("rk4 rejects bad spans") {
  CHECK_THROWS_AS(
      rk4([](double, std::span<const double>, std::span<double> d) { d[0] = 0.0; },
          1.0, {0.0}, 0.0, 1e-3),
      Error);
}

TEST_CASE("HermiteTable reproduces a primitive with its derivative") {
  const Grid1D g(0.0, 3.0, 301);
  const HermiteTable table = HermiteTable::primitive(
      [](double x) { return std::cos(x); }, 0.0, g, 1e-12);
  for (double x : {0.01, 0.5, 1.234, 2.999}) {
    CHECK(table(x) == doctest::Approx(std::sin(x)).epsilon(1e-10));
    CHECK(table.derivative(x) == doctest::Approx(std::cos(x)).epsilon(1e-8));
  }
}
