#include <doctest.h>

#include "mono/limit_probe.hpp"
#include "mono/zoo.hpp"
#include "oracles.hpp"

using namespace mono;

namespace {

Vec v1(double a) {
  Vec v(1);
  v[0] = a;
  return v;
}

OperatorFamily constant_family(const Operator& T) {
  return [T](int) { return T; };
}

}  // namespace

TEST_SUITE("limit_probe") {

TEST_CASE("constant |.|' family accepts a graph point with zero residuals") {
  const NormedSpace s(1, 2.0);
  const OperatorFamily fam = constant_family(zoo::abs(s));
  const Schedule sched = Schedule::eps(1.0, 0.5, 30);
  const ProbeReport rep = liminf_probe(fam, v1(0.0), v1(0.5), sched);
  CHECK(rep.verdict == Verdict::Accept);
  REQUIRE(rep.residuals.size() == 30);
  for (double r : rep.residuals) CHECK(r == 0.0);
  CHECK(rep.bounded);
}

TEST_CASE("moving family |.-1/n|' accepts the limit point (0, -1)") {
  const NormedSpace s(1, 2.0);
  const OperatorFamily fam = [s](int n) {
    return zoo::abs_shifted(s, v1(1.0 / static_cast<double>(n)));
  };
  const ProbeReport rep = liminf_probe(fam, v1(0.0), v1(-1.0), Schedule::eps(1.0, 0.5, 30));
  CHECK(rep.verdict == Verdict::Accept);
  CHECK(rep.residuals.back() <= 1e-4);
}

TEST_CASE("constant |.|' family rejects (0, 2) with residuals -> 1") {
  const NormedSpace s(1, 2.0);
  const OperatorFamily fam = constant_family(zoo::abs(s));
  const ProbeReport rep = liminf_probe(fam, v1(0.0), v1(2.0), Schedule::eps(1.0, 0.5, 30));
  CHECK(rep.verdict == Verdict::Reject);
  // 2 in sign(z) + z has the unique solution z = 1 for every step.
  for (double r : rep.residuals) CHECK(r == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("verdict and residuals are invariant under the eps schedule") {
  const NormedSpace s(1, 2.0);
  const OperatorFamily fam = constant_family(zoo::abs(s));
  const ProbeReport a = liminf_probe(fam, v1(0.0), v1(0.5), Schedule::eps(1.0, 0.5, 20));
  const ProbeReport b = liminf_probe(fam, v1(0.0), v1(0.5), Schedule::eps(0.1, 0.5, 20));
  CHECK(a.verdict == b.verdict);
  REQUIRE(a.residuals.size() == b.residuals.size());
  for (std::size_t i = 0; i < a.residuals.size(); ++i) {
    CHECK(a.residuals[i] == b.residuals[i]);  // bitwise: the solve ignores eps
  }
  CHECK(a.params != b.params);  // eps only labels the report
}

TEST_CASE("accepted runs have vanishing w-norms") {
  const NormedSpace s(1, 2.0);
  const ProbeParams pp;
  const OperatorFamily fam = [s](int n) {
    return zoo::abs_shifted(s, v1(1.0 / static_cast<double>(n)));
  };
  const ProbeReport rep = liminf_probe(fam, v1(0.0), v1(-1.0), Schedule::eps(1.0, 0.5, 30), pp);
  REQUIRE(rep.verdict == Verdict::Accept);
  const int w = std::min<std::size_t>(pp.tail_window, rep.w_norms.size());
  for (std::size_t i = rep.w_norms.size() - w; i < rep.w_norms.size(); ++i) {
    CHECK(rep.w_norms[i] <= pp.tol_accept * 10);
  }
}

TEST_CASE("residual between the tolerances is inconclusive") {
  const NormedSpace s(1, 2.0);
  // 0.01 = z + z -> z = 0.005: between accept (1e-4) and reject (1e-2).
  const OperatorFamily fam = constant_family(zoo::identity(s));
  const ProbeReport rep = liminf_probe(fam, v1(0.0), v1(0.01), Schedule::eps(1.0, 0.5, 10));
  CHECK(rep.verdict == Verdict::Inconclusive);
}

TEST_CASE("inner solver failure yields inconclusive with a diagnostic") {
  const NormedSpace s(1, 2.0);
  const OperatorFamily fam = [s](int n) -> Operator {
    if (n >= 3) throw SolverFailure("synthetic failure", 1.0);
    return zoo::abs(s);
  };
  const ProbeReport rep = liminf_probe(fam, v1(0.0), v1(0.5), Schedule::eps(1.0, 0.5, 10));
  CHECK(rep.verdict == Verdict::Inconclusive);
  CHECK(rep.diagnostic.find("step 3") != std::string::npos);
  CHECK(rep.residuals.size() == 2);
}

TEST_CASE("boundedness diagnostic flags blow-ups without aborting") {
  const NormedSpace s(1, 2.0);
  // A monotone single-valued map with an enormous constant value pushes the
  // step solutions far outside the boundedness window.
  SingleValuedMap m;
  m.map = [](const Vec& z) { return Covec::Constant(z.size(), 1e20); };
  const Operator T(s, std::move(m), "huge_constant");
  const OperatorFamily fam = [T](int) { return T; };
  const ProbeReport rep = liminf_probe(fam, v1(0.0), v1(0.0), Schedule::eps(1.0, 0.5, 5));
  CHECK(rep.verdict == Verdict::Inconclusive);
  CHECK_FALSE(rep.bounded);
  CHECK(rep.diagnostic.find("bounded") != std::string::npos);
}

TEST_CASE("schedule validation") {
  CHECK_THROWS_AS(Schedule::eps(0.0, 0.5, 10), Error);
  CHECK_THROWS_AS(Schedule::eps(1.0, 1.0, 10), Error);
  CHECK_THROWS_AS(Schedule::eps(1.0, -0.5, 10), Error);
  CHECK_THROWS_AS(Schedule::eps(1.0, 0.5, 0), Error);
  CHECK_THROWS_AS(Schedule::pair(0.0, 0.0, 0.5, 10), Error);
  CHECK_NOTHROW(Schedule::pair(0.0, 1.0, 0.5, 10));  // one frozen zero leg is legal

  const NormedSpace s(1, 2.0);
  const OperatorFamily fam = constant_family(zoo::identity(s));
  CHECK_THROWS_AS(liminf_probe(fam, v1(0.0), v1(0.0), Schedule::pair(1.0, 1.0, 0.5, 5)), Error);
}

TEST_CASE("schedule values decay geometrically") {
  const Schedule sched = Schedule::eps(2.0, 0.25, 4);
  CHECK(sched.eps_at(1) == 2.0);
  CHECK(sched.eps_at(2) == 0.5);
  CHECK(sched.eps_at(4) == doctest::Approx(0.03125).epsilon(1e-15));
  CHECK_THROWS_AS(sched.eps_at(0), Error);
  CHECK_THROWS_AS(sched.eps_at(5), Error);
}

}  // TEST_SUITE
