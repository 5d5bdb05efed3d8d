#include "mono/representability.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "mono/simplex_lp.hpp"

namespace mono {

double fitzpatrick_value(const SampledGraph& G, const Vec& x, const Covec& xstar) {
  require_dim(x, G.dim(), "fitzpatrick_value");
  require_dim(xstar, G.dim(), "fitzpatrick_value");
  double best = -SetDescription::kInf;
  for (const auto& [y, ystar] : G.pairs()) {
    best = std::max(best, y.dot(xstar) + x.dot(ystar) - y.dot(ystar));
  }
  return best;
}

double pair_sym(const Vec& ax, const Covec& axstar, const Vec& zx, const Covec& zxstar) {
  return ax.dot(zxstar) + zx.dot(axstar);
}

double representative_value(const SampledGraph& G, const Vec& x, const Covec& xstar,
                            double feas_tol) {
  require_dim(x, G.dim(), "representative_value");
  require_dim(xstar, G.dim(), "representative_value");
  const int d = G.dim();
  const int n = static_cast<int>(G.size());
  Matrix A(2 * d + 1, n);
  Vec c(n);
  for (int j = 0; j < n; ++j) {
    const auto& [y, ystar] = G.pairs()[j];
    A.block(0, j, d, 1) = y;
    A.block(d, j, d, 1) = ystar;
    A(2 * d, j) = 1.0;
    c[j] = y.dot(ystar);
  }
  Vec b(2 * d + 1);
  b.head(d) = x;
  b.segment(d, d) = xstar;
  b[2 * d] = 1.0;

  const LpResult res = solve_equality_lp(A, b, c, feas_tol);
  if (res.status == LpResult::Status::Infeasible) return SetDescription::kInf;
  if (res.status == LpResult::Status::Unbounded) {
    throw Error("representative_value: simplex reported an unbounded simplex-constrained LP");
  }
  return res.objective;
}

namespace {

void run_jobs(int count, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int nthreads = std::min(jobs, count);
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

CertificateReport certify_representative(const SampledGraph& G, const GridSpec& grid, double tol,
                                         int jobs) {
  G.ensure_monotone();
  if (!(grid.step > 0.0) || !(grid.hi > grid.lo)) {
    throw Error("certify_representative: bad grid specification");
  }
  const int d = G.dim();
  const int axes = 2 * d;
  const int per_axis = static_cast<int>(std::floor((grid.hi - grid.lo) / grid.step + 1e-12)) + 1;

  std::vector<std::pair<Vec, Covec>> points;
  std::vector<int> odo(axes, 0);
  while (true) {
    Vec x(d), xstar(d);
    for (int a = 0; a < axes; ++a) {
      const double v = grid.lo + grid.step * odo[a];
      if (a < d) {
        x[a] = v;
      } else {
        xstar[a - d] = v;
      }
    }
    points.emplace_back(std::move(x), std::move(xstar));
    int a = 0;
    for (; a < axes; ++a) {
      if (++odo[a] < per_axis) break;
      odo[a] = 0;
    }
    if (a == axes) break;
  }
  // The graph's own points are evaluated too: pass requires equality there.
  for (const auto& p : G.pairs()) points.push_back(p);

  const std::size_t n_pts = points.size();
  std::vector<double> slack(n_pts);
  run_jobs(static_cast<int>(n_pts), jobs, [&](int i) {
    const auto& [x, xstar] = points[i];
    const double h = representative_value(G, x, xstar);
    slack[i] = std::isfinite(h) ? h - x.dot(xstar) : SetDescription::kInf;
  });

  CertificateReport rep;
  rep.grid = grid;
  rep.tol = tol;
  rep.graph_hash = G.hash();
  rep.min_slack = SetDescription::kInf;
  for (std::size_t i = 0; i < n_pts; ++i) {
    if (std::isfinite(slack[i])) rep.min_slack = std::min(rep.min_slack, slack[i]);
    if (std::abs(slack[i]) <= tol) {
      rep.equality_points.push_back(points[i]);
    } else if (slack[i] < -tol) {
      rep.violations.push_back(points[i]);
    }
  }
  rep.pass = rep.violations.empty();
  rep.points = std::move(points);
  rep.slacks = std::move(slack);
  return rep;
}

}  // namespace mono
