#include <doctest.h>

#include "mono/set_description.hpp"
#include "mono/simplex_lp.hpp"

using namespace mono;

TEST_SUITE("simplex_lp") {

TEST_CASE("small optimal LP") {
  // min -x1 s.t. x1 + x2 = 1, x >= 0  ->  x = (1, 0), objective -1.
  Matrix A(1, 2);
  A << 1.0, 1.0;
  Vec b(1), c(2);
  b << 1.0;
  c << -1.0, 0.0;
  const LpResult r = solve_equality_lp(A, b, c);
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.objective == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("infeasible LP") {
  Matrix A(1, 1);
  A << 1.0;
  Vec b(1), c(1);
  b << -1.0;  // x = -1 with x >= 0
  c << 1.0;
  CHECK(solve_equality_lp(A, b, c).status == LpResult::Status::Infeasible);
}

TEST_CASE("unbounded LP") {
  // min -x1 s.t. x1 - x2 = 0: x1 = x2 can grow without bound.
  Matrix A(1, 2);
  A << 1.0, -1.0;
  Vec b(1), c(2);
  b << 0.0;
  c << -1.0, 0.0;
  CHECK(solve_equality_lp(A, b, c).status == LpResult::Status::Unbounded);
}

TEST_CASE("redundant constraints are tolerated") {
  // Same row twice: degenerate phase 1 must pivot or drop the dead row.
  Matrix A(2, 2);
  A << 1.0, 1.0, 1.0, 1.0;
  Vec b(2), c(2);
  b << 1.0, 1.0;
  c << 2.0, 1.0;
  const LpResult r = solve_equality_lp(A, b, c);
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("simplex-constrained LP (representative form)") {
  // min sum mu_i c_i with barycentric constraints; vertex optimum.
  Matrix A(2, 3);
  A << -1.0, 0.0, 1.0,  // coordinates of three 1-D graph points
      1.0, 1.0, 1.0;    // simplex row
  Vec b(2), c(3);
  b << 0.5, 1.0;
  c << 1.0, 0.0, 1.0;
  const LpResult r = solve_equality_lp(A, b, c);
  REQUIRE(r.status == LpResult::Status::Optimal);
  // mu = (0, 1/2, 1/2) reaches 0.5 with objective 1/2.
  CHECK(r.objective == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("affine box feasibility") {
  Matrix M(1, 2);
  M << 1.0, 1.0;
  Vec v(1), lo(2), hi(2);
  v << 1.5;
  lo << 0.0, 0.0;
  hi << 1.0, 1.0;
  CHECK(affine_box_feasible(M, v, lo, hi));
  v << 2.5;
  CHECK_FALSE(affine_box_feasible(M, v, lo, hi));

  // Free coordinates (infinite bounds both sides).
  Vec lo2(2), hi2(2);
  lo2 << -SetDescription::kInf, 0.0;
  hi2 << SetDescription::kInf, 0.0;
  v << -7.25;
  CHECK(affine_box_feasible(M, v, lo2, hi2));

  // One-sided bounds: w1, w2 >= 1 forces w1 + w2 >= 2.
  Vec lo3(2), hi3(2);
  lo3 << 1.0, 1.0;
  hi3 << SetDescription::kInf, SetDescription::kInf;
  v << 10.0;
  CHECK(affine_box_feasible(M, v, lo3, hi3));
  v << 1.5;
  CHECK_FALSE(affine_box_feasible(M, v, lo3, hi3));
}

}  // TEST_SUITE
