#include <doctest.h>

#include <cmath>
#include <random>

#include "mono/normed_space.hpp"
#include "oracles.hpp"

using namespace mono;

TEST_SUITE("normed_space") {

TEST_CASE("construction rejects bad exponents and dimensions") {
  CHECK_THROWS_AS(NormedSpace(0, 2.0), Error);
  CHECK_THROWS_AS(NormedSpace(2, 1.0), Error);
  CHECK_THROWS_AS(NormedSpace(2, 0.5), Error);
  CHECK_THROWS_AS(NormedSpace(2, std::numeric_limits<double>::infinity()), Error);
  const NormedSpace s(3, 1.5);
  CHECK(s.q() == doctest::Approx(3.0));
  CHECK(1.0 / s.p() + 1.0 / s.q() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("duality map: Euclidean case is the identity") {
  const NormedSpace s(2, 2.0);
  Vec x(2);
  x << 3.0, 4.0;
  CHECK((s.duality_map(x) - x).norm() == 0.0);
}

TEST_CASE("duality map: J(0) = 0 for any p") {
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const NormedSpace s(3, p);
    CHECK(s.duality_map(Vec::Zero(3)).norm() == 0.0);
  }
}

TEST_CASE("duality map: p=3 diagonal point") {
  const NormedSpace s(2, 3.0);
  Vec x(2);
  x << 1.0, 1.0;
  const Covec j = s.duality_map(x);
  const double expected = 0.7937005259840997;  // 2^(-1/3)
  CHECK(j[0] == doctest::Approx(expected).epsilon(1e-14));
  CHECK(j[1] == doctest::Approx(expected).epsilon(1e-14));
  // <x, J(x)> = ||x||_3^2 = 2^(2/3) and ||J(x)||_{3/2} = ||x||_3 = 2^(1/3).
  CHECK(pairing(x, j) == doctest::Approx(1.5874010519681994).epsilon(1e-14));
  CHECK(s.dual_norm(j) == doctest::Approx(1.2599210498948732).epsilon(1e-14));
}

TEST_CASE("eps duality gap examples") {
  const NormedSpace s(2, 2.0);
  Vec u(2), w(2);
  u << 1.0, 0.0;
  w << 1.0, 0.0;
  CHECK(s.eps_duality_gap(u, w) == doctest::Approx(0.0).epsilon(1e-15));

  const double t = 0.7;
  Vec z = Vec::Zero(2), wt(2);
  wt << t, 0.0;
  CHECK(s.eps_duality_gap(z, wt) == doctest::Approx(t * t / 2.0).epsilon(1e-14));

  Vec e2(2);
  e2 << 0.0, 1.0;
  CHECK(s.eps_duality_gap(u, e2) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("dimension mismatches throw") {
  const NormedSpace s(2, 2.0);
  CHECK_THROWS_AS(s.norm(Vec::Zero(3)), DimensionError);
  CHECK_THROWS_AS(s.duality_map(Vec::Zero(1)), DimensionError);
  CHECK_THROWS_AS(s.eps_duality_gap(Vec::Zero(2), Vec::Zero(3)), DimensionError);
}

TEST_CASE("duality map identities on random points") {
  std::mt19937 rng(7);
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    for (int dim : {1, 2, 3, 5}) {
      const NormedSpace s(dim, p);
      for (int it = 0; it < 50; ++it) {
        Vec x = oracle::random_vec(rng, dim, 3.0);
        if (x.norm() == 0.0) continue;
        const Covec j = s.duality_map(x);
        const double nx = s.norm(x);
        CHECK(std::abs(pairing(x, j) - nx * nx) <= 1e-10 * nx * nx);
        CHECK(std::abs(s.dual_norm(j) - nx) <= 1e-10 * nx);
      }
    }
  }
}

TEST_CASE("Fenchel-Young gap is nonnegative on random pairs") {
  std::mt19937 rng(11);
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const NormedSpace s(3, p);
    for (int it = 0; it < 200; ++it) {
      CHECK(s.eps_duality_gap(oracle::random_vec(rng, 3, 2.0), oracle::random_vec(rng, 3, 2.0)) >=
            -1e-12);
    }
  }
}

TEST_CASE("monotonicity and homogeneity of J") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> tdist(0.05, 4.0);
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const NormedSpace s(2, p);
    for (int it = 0; it < 100; ++it) {
      const Vec x = oracle::random_vec(rng, 2, 2.0);
      const Vec y = oracle::random_vec(rng, 2, 2.0);
      CHECK(pairing(x - y, s.duality_map(x) - s.duality_map(y)) >= -1e-12);

      const double t = tdist(rng);
      const Covec lhs = s.duality_map(t * x);
      const Covec rhs = t * s.duality_map(x);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + rhs.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("duality map inverse round-trips") {
  std::mt19937 rng(17);
  for (double p : {1.5, 2.0, 3.0}) {
    const NormedSpace s(3, p);
    for (int it = 0; it < 50; ++it) {
      const Vec x = oracle::random_vec(rng, 3, 2.0);
      const Vec back = s.duality_map_inverse(s.duality_map(x));
      CHECK((back - x).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + x.cwiseAbs().maxCoeff()));
    }
  }
}

}  // TEST_SUITE
