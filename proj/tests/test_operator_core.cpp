#include <doctest.h>

#include <random>

#include "mono/zoo.hpp"
#include "oracles.hpp"

using namespace mono;

namespace {

Vec v1(double a) {
  Vec v(1);
  v[0] = a;
  return v;
}

SampledGraph identity_samples3() {
  std::vector<std::pair<Vec, Covec>> pairs;
  for (double t : {-1.0, 0.0, 1.0}) pairs.emplace_back(v1(t), v1(t));
  return SampledGraph(std::move(pairs));
}

}  // namespace

TEST_SUITE("operator_core") {

TEST_CASE("eval of |.|' at the kink is the interval [-1, 1]") {
  const NormedSpace s(1, 2.0);
  const Operator T = zoo::abs(s);
  const SetDescription S = T.eval(v1(0.0));
  REQUIRE(S.kind() == SetDescription::Kind::Box);
  CHECK(S.lower_1d() == -1.0);
  CHECK(S.upper_1d() == 1.0);
  CHECK(T.eval(v1(0.5)).is_singleton());
  CHECK(T.eval(v1(0.5)).any_element()[0] == 1.0);
}

TEST_CASE("normal cone to [-1,1] at the boundary is a half-line") {
  const NormedSpace s(1, 2.0);
  const Operator T = zoo::indicator_box(s, v1(-1.0), v1(1.0));
  const SetDescription S = T.eval(v1(1.0));
  CHECK(S.lower_1d() == 0.0);
  CHECK(S.upper_1d() == SetDescription::kInf);
  CHECK(T.eval(v1(0.2)).is_singleton());
  CHECK(T.eval(v1(1.5)).is_empty());
}

TEST_CASE("linear operator evaluation and PSD check") {
  const NormedSpace s(2, 2.0);
  Matrix rot(2, 2);
  rot << 0.0, 1.0, -1.0, 0.0;  // skew: symmetric part 0, monotone
  const Operator T = zoo::linear(s, rot);
  Vec x(2);
  x << 1.0, 0.0;
  const SetDescription S = T.eval(x);
  REQUIRE(S.is_singleton());
  CHECK(S.any_element()[0] == 0.0);
  CHECK(S.any_element()[1] == -1.0);

  Matrix bad(2, 2);
  bad << -1.0, 0.0, 0.0, 0.0;
  CHECK_THROWS_AS(zoo::linear(s, bad), Error);
}

TEST_CASE("min monotonicity gap examples") {
  SampledGraph origin({{v1(0.0), v1(0.0)}});
  CHECK(origin.min_monotonicity_gap(v1(1.0), v1(1.0)) == 1.0);

  // Identity samples vs z=(1,-1): products are 0, -1, 0 -> min = -1.
  const SampledGraph idg = identity_samples3();
  double brute = SetDescription::kInf;
  for (const auto& [y, ys] : idg.pairs()) {
    brute = std::min(brute, (v1(1.0) - y).dot(v1(-1.0) - ys));
  }
  CHECK(brute == -1.0);
  CHECK(idg.min_monotonicity_gap(v1(1.0), v1(-1.0)) == brute);

  // Dense sign graph vs the polar member (0, 0.5): minimum attained at the
  // vertical samples, value 0.
  const SampledGraph sg = oracle::sign_graph();
  CHECK(sg.min_monotonicity_gap(v1(0.0), v1(0.5)) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("is_monotone examples") {
  CHECK(identity_samples3().is_monotone());
  SampledGraph bad({{v1(0.0), v1(1.0)}, {v1(1.0), v1(0.0)}});
  CHECK_FALSE(bad.is_monotone());
  CHECK(oracle::sign_graph().is_monotone());
  CHECK_THROWS_AS(bad.ensure_monotone(), NonMonotoneGraphError);
}

TEST_CASE("graph members attain a zero gap") {
  const SampledGraph sg = oracle::sign_graph(1.0, 0.1);
  for (const auto& [y, ys] : sg.pairs()) {
    CHECK(std::abs(sg.min_monotonicity_gap(y, ys)) <= 1e-12);
  }
}

TEST_CASE("sampled graph eval returns stored covectors") {
  const NormedSpace s(1, 2.0);
  SampledGraph g({{v1(0.0), v1(-1.0)}, {v1(0.0), v1(1.0)}, {v1(2.0), v1(1.0)}});
  const Operator T = zoo::graph(s, g);
  CHECK(T.eval(v1(0.0)).finite_points().size() == 2);
  CHECK(T.eval(v1(1.0)).is_empty());
}

TEST_CASE("subdifferential eval matches finite differences off the kinks") {
  std::mt19937 rng(23);
  const NormedSpace s(3, 2.0);
  const Operator T = zoo::abs(s);
  auto f = [](const Vec& x) { return x.cwiseAbs().sum(); };
  int tested = 0;
  while (tested < 25) {
    Vec x = oracle::random_vec(rng, 3, 2.0);
    if (x.cwiseAbs().minCoeff() < 0.1) continue;
    ++tested;
    const Vec g_fd = oracle::fd_gradient(f, x);
    const SetDescription S = T.eval(x);
    REQUIRE(S.is_singleton());
    CHECK((S.any_element() - g_fd).cwiseAbs().maxCoeff() <= 1e-4);
  }
}

TEST_CASE("oracle-only subdifferentials still answer eval") {
  // No structural description and no subgradient selection: the prox-based
  // approximation should recover the gradient where f is smooth.
  const NormedSpace s(1, 2.0);
  SubdiffOracle f;
  f.value = [](const Vec& x) { return 0.5 * x.squaredNorm(); };
  f.prox = [](const Vec& v, double step) { return Vec(v / (1.0 + step)); };
  const Operator T(s, std::move(f), "half_square");
  Vec x(1);
  x << 1.3;
  const SetDescription S = T.eval(x);
  REQUIRE(S.is_singleton());
  CHECK(S.any_element()[0] == doctest::Approx(1.3).epsilon(1e-5));
}

TEST_CASE("normal cone to a ball") {
  const NormedSpace s(2, 2.0);
  Vec c = Vec::Zero(2);
  const Operator T = zoo::indicator_ball(s, c, 1.0);
  Vec inside(2), boundary(2), outside(2);
  inside << 0.2, 0.1;
  boundary << 1.0, 0.0;
  outside << 2.0, 0.0;
  CHECK(T.eval(inside).is_singleton());
  CHECK(T.eval(inside).any_element().norm() == 0.0);
  const SetDescription S = T.eval(boundary);
  REQUIRE(S.kind() == SetDescription::Kind::Ray);
  CHECK(S.ray_dir()[0] > 0.0);
  CHECK(T.eval(outside).is_empty());
}

TEST_CASE("set description nearest under the dual norm") {
  const NormedSpace s(2, 3.0);  // q = 1.5
  Covec lo(2), hi(2);
  lo << -1.0, -1.0;
  hi << 1.0, 1.0;
  const SetDescription box = SetDescription::box(lo, hi);
  Covec target(2);
  target << 2.0, 0.5;
  const auto near = box.nearest(target, s);
  CHECK(near.point[0] == 1.0);
  CHECK(near.point[1] == 0.5);
  CHECK(near.distance == doctest::Approx(1.0).epsilon(1e-12));

  Covec apex = Covec::Zero(2), dir(2);
  dir << 1.0, 0.0;
  const SetDescription ray = SetDescription::ray(apex, dir);
  const auto nr = ray.nearest(target, s);
  CHECK(nr.point[0] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(nr.distance == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(SetDescription::empty(2).distance(target, s) == SetDescription::kInf);
}

}  // TEST_SUITE
