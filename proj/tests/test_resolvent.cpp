#include <doctest.h>

#include <random>

#include "mono/resolvent.hpp"
#include "mono/zoo.hpp"
#include "oracles.hpp"

using namespace mono;

namespace {

Vec v1(double a) {
  Vec v(1);
  v[0] = a;
  return v;
}

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

// Independent re-verification of the inclusion rhs in lambda*T(z) + J(z - x):
// evaluate T at z, measure the set distance in the dual norm.
double reverify(const Operator& T, const Vec& x, const Covec& rhs, double lambda,
                const InclusionSolution& sol) {
  const NormedSpace& s = T.space();
  const Covec w = s.duality_map(sol.z - x);
  const SetDescription S = T.eval(sol.z);
  if (S.is_empty()) return SetDescription::kInf;
  return lambda * S.distance((rhs - w) / lambda, s);
}

Operator random_zoo_op(std::mt19937& rng, const NormedSpace& space) {
  std::uniform_int_distribution<int> pick(0, 5);
  const int dim = space.dim();
  switch (pick(rng)) {
    case 0:
      return zoo::zero(space);
    case 1:
      return zoo::identity(space);
    case 2: {
      Matrix m = Matrix::Identity(dim, dim);
      if (dim >= 2) {
        m(0, 1) += 0.5;
        m(1, 0) -= 0.5;  // monotone: PSD symmetric part + skew
      }
      return zoo::linear(space, m);
    }
    case 3:
      return zoo::abs_shifted(space, oracle::random_vec(rng, dim, 0.5));
    case 4:
      return zoo::indicator_ball(space, oracle::random_vec(rng, dim, 0.3), 1.0);
    default:
      return zoo::indicator_box(space, Vec::Constant(dim, -1.0), Vec::Constant(dim, 1.0));
  }
}

}  // namespace

TEST_SUITE("resolvent_engine") {

TEST_CASE("zero operator: z = x for any lambda and p") {
  for (double p : {1.5, 2.0, 3.0}) {
    const NormedSpace s(2, p);
    const Operator T = zoo::zero(s);
    const Vec x = v2(0.7, -1.3);
    for (double lambda : {0.3, 1.0, 5.0}) {
      const InclusionSolution sol = solve_my_system(T, x, lambda);
      REQUIRE(sol.converged);
      CHECK((sol.z - x).cwiseAbs().maxCoeff() <= 1e-9);
      CHECK(sol.t_star.cwiseAbs().maxCoeff() <= 1e-8);
    }
  }
}

TEST_CASE("identity map, Euclidean: closed-form resolvent x/(1+lambda)") {
  const NormedSpace s(2, 2.0);
  const Operator T = zoo::identity(s);
  const InclusionSolution sol = solve_my_system(T, v2(2.0, 0.0), 1.0);
  REQUIRE(sol.converged);
  CHECK(sol.z[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sol.z[1] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(sol.t_star[0] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("|.|': soft-thresholding resolvent") {
  const NormedSpace s(1, 2.0);
  const Operator T = zoo::abs(s);
  const double x = 3.0, lambda = 1.0;
  const double z_oracle = std::copysign(1.0, x) * std::max(std::abs(x) - lambda, 0.0);
  CHECK(z_oracle == 2.0);
  const InclusionSolution sol = solve_my_system(T, v1(x), lambda);
  REQUIRE(sol.converged);
  CHECK(sol.z[0] == doctest::Approx(z_oracle).epsilon(1e-12));
  CHECK(sol.t_star[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sol.w_star[0] == doctest::Approx(-1.0).epsilon(1e-10));  // w* = -lambda t*
}

TEST_CASE("moreau_yosida examples") {
  const NormedSpace s1(1, 2.0);
  CHECK(moreau_yosida(zoo::zero(s1), 0.7, v1(1.3)).cwiseAbs().maxCoeff() <= 1e-9);

  // Euclidean Yosida of |.|': sign(x) * min(|x|/lambda, 1).
  const Covec y = moreau_yosida(zoo::abs(s1), 0.5, v1(0.2));
  CHECK(y[0] == doctest::Approx(0.4).epsilon(1e-9));

  const NormedSpace s2(2, 2.0);
  const Covec yi = moreau_yosida(zoo::identity(s2), 1.0, v2(2.0, 0.0));
  CHECK(yi[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(yi[1] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("translated inclusions") {
  const NormedSpace s(1, 2.0);
  const Operator id = zoo::identity(s);

  InclusionSolution sol = solve_translated_inclusion(id, v1(0.0), v1(0.0));
  REQUIRE(sol.converged);
  CHECK(std::abs(sol.z[0]) <= 1e-10);
  CHECK(std::abs(sol.w_star[0]) <= 1e-10);

  // 0.5 lies inside [-1,1] = |.|'(0), so z = 0 with w* = 0.
  sol = solve_translated_inclusion(zoo::abs(s), v1(0.0), v1(0.5));
  REQUIRE(sol.converged);
  CHECK(sol.z[0] == 0.0);
  CHECK(sol.t_star[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sol.w_star[0] == doctest::Approx(0.0).epsilon(1e-12));

  // 0 = z + (z - 1) -> z = 1/2, w* = -1/2.
  sol = solve_translated_inclusion(id, v1(1.0), v1(0.0));
  REQUIRE(sol.converged);
  CHECK(sol.z[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(sol.w_star[0] == doctest::Approx(-0.5).epsilon(1e-10));
}

TEST_CASE("brute-force oracle agrees on a 1-D sample") {
  // rhs in sign(z) + z - x for the shifted absolute value.
  const NormedSpace s(1, 2.0);
  const Operator T = zoo::abs_shifted(s, v1(0.3));
  auto bounds = [](double z) -> std::pair<double, double> {
    if (std::abs(z - 0.3) < 1e-12) return {-1.0, 1.0};
    const double sg = z > 0.3 ? 1.0 : -1.0;
    return {sg, sg};
  };
  for (double x : {-2.0, 0.0, 0.31, 1.7}) {
    for (double rhs : {-1.5, 0.2, 2.0}) {
      const double z_star = oracle::brute_force_inclusion_1d(x, rhs, 1.0, bounds, -6.0, 6.0);
      const InclusionSolution sol = solve_inclusion(T, v1(x), v1(rhs), 1.0);
      REQUIRE(sol.converged);
      CHECK(sol.z[0] == doctest::Approx(z_star).epsilon(5e-4));
    }
  }
}

TEST_CASE("residual contract across the zoo") {
  std::mt19937 rng(101);
  const double tol = 1e-8;
  int checked = 0;
  for (int it = 0; checked < 200; ++it) {
    REQUIRE(it < 400);
    const double p = std::vector<double>{1.5, 2.0, 3.0}[it % 3];
    const int dim = 1 + (it % 2);
    const NormedSpace space(dim, p);
    const Operator T = random_zoo_op(rng, space);
    const Vec x = oracle::random_vec(rng, dim, 2.0);
    const Covec rhs = oracle::random_vec(rng, dim, 2.0);
    std::uniform_real_distribution<double> lam(0.05, 2.0);
    const double lambda = lam(rng);
    SolveOptions opts;
    opts.tol = tol;
    const InclusionSolution sol = solve_inclusion(T, x, rhs, lambda, opts);
    REQUIRE(sol.converged);                                // no silent failures
    CHECK(reverify(T, x, rhs, lambda, sol) <= tol);        // independent re-check
    CHECK((lambda * sol.t_star + sol.w_star - rhs).cwiseAbs().maxCoeff() <= 1e-14);
    // eps-membership of the w-part.
    CHECK(space.eps_duality_gap(sol.z - x, sol.w_star) <= tol);
    ++checked;
  }
}

TEST_CASE("Hilbert consistency of the Yosida value") {
  std::mt19937 rng(55);
  const NormedSpace s(1, 2.0);
  const Operator Tabs = zoo::abs(s);
  const Operator Tbox = zoo::indicator_box(s, v1(-1.0), v1(1.0));
  SolveOptions opts;
  opts.tol = 1e-10;
  for (int i = 0; i < 100; ++i) {
    const Vec x = oracle::random_vec(rng, 1, 3.0);
    for (double lambda : {1.0, 0.1, 0.01}) {
      const Covec ya = moreau_yosida(Tabs, lambda, x, opts);
      const Covec ya_ref = oracle::classical_yosida(
          x, lambda, [](const Vec& v, double l) { return v1(oracle::soft_threshold(v[0], l)); });
      CHECK(std::abs(ya[0] - ya_ref[0]) <= 1e-6);

      const Covec yb = moreau_yosida(Tbox, lambda, x, opts);
      const Covec yb_ref = oracle::classical_yosida(
          x, lambda, [](const Vec& v, double) { return v1(oracle::clamp_interval(v[0], -1, 1)); });
      CHECK(std::abs(yb[0] - yb_ref[0]) <= 1e-6);
    }
  }
}

TEST_CASE("Yosida regularization is monotone") {
  std::mt19937 rng(77);
  for (double p : {1.5, 2.0, 3.0}) {
    const NormedSpace s(2, p);
    const Operator T = zoo::abs(s);
    SolveOptions opts;
    opts.tol = 1e-9;
    for (int i = 0; i < 30; ++i) {
      const Vec x = oracle::random_vec(rng, 2, 2.0);
      const Vec y = oracle::random_vec(rng, 2, 2.0);
      const Covec tx = moreau_yosida(T, 0.5, x, opts);
      const Covec ty = moreau_yosida(T, 0.5, y, opts);
      CHECK(pairing(x - y, tx - ty) >= -1e-8);
    }
  }
}

TEST_CASE("non-convergence is explicit, never silent") {
  const NormedSpace s(2, 2.0);
  const Operator T = zoo::identity(s);
  SolveOptions opts;
  opts.max_iterations = 0;
  const InclusionSolution sol = solve_my_system(T, v2(2.0, 0.0), 1.0, opts);
  CHECK_FALSE(sol.converged);
  CHECK(sol.residual > 0.0);
  CHECK_FALSE(sol.diagnostic.empty());
  CHECK_THROWS_AS(moreau_yosida(T, 1.0, v2(2.0, 0.0), opts), SolverFailure);
}

TEST_CASE("lambda and dimension validation") {
  const NormedSpace s(1, 2.0);
  const Operator T = zoo::identity(s);
  CHECK_THROWS_AS(solve_my_system(T, v1(0.0), 0.0), Error);
  CHECK_THROWS_AS(solve_my_system(T, v2(0.0, 1.0), 1.0), DimensionError);
}

TEST_CASE("graph operators solve by nearest sample") {
  const NormedSpace s(1, 2.0);
  std::vector<std::pair<Vec, Covec>> pairs;
  for (double t : {-1.0, 0.0, 1.0, 2.0}) pairs.emplace_back(v1(t), v1(t));
  const Operator T = zoo::graph(s, SampledGraph(std::move(pairs)));
  // 0 in z + (z - 2): exact solution z = 1 is a sample.
  const InclusionSolution sol = solve_my_system(T, v1(2.0), 1.0);
  CHECK(sol.converged);
  CHECK(sol.z[0] == 1.0);
}

}  // TEST_SUITE
