#include "mono/scenario.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mono/limit_probe.hpp"
#include "mono/representability.hpp"
#include "mono/resolvent.hpp"
#include "mono/variational.hpp"
#include "mono/zoo.hpp"

namespace mono {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw ScenarioError("scenario: " + msg); }

double need_finite(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where + " must be finite");
  return v;
}

Vec parse_vec(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where + " must be a non-empty array");
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = need_finite(j[i], where);
  return v;
}

Matrix parse_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where + " must be a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) fail(where + " rows must be non-empty arrays");
  Matrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) fail(where + " rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = need_finite(j[r][c], where);
  }
  return m;
}

std::string fmt_g(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

// ---------------------------------------------------------------------------
// Operator zoo registry (scenario-facing names)
// ---------------------------------------------------------------------------

bool is_family_entry(const json& entry) {
  const std::string name = entry.value("name", "");
  return name == "shifted_abs" || name == "yosida_of";
}

Operator make_operator(const NormedSpace& space, const json& entry) {
  if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string()) {
    fail("operator entry must be an object with a string `name`");
  }
  const std::string name = entry["name"].get<std::string>();
  if (name == "zero") return zoo::zero(space);
  if (name == "identity") return zoo::identity(space);
  if (name == "abs") {
    if (entry.contains("center")) {
      Vec c = parse_vec(entry["center"], "abs.center");
      if (c.size() != space.dim()) fail("abs.center dimension mismatch");
      return zoo::abs_shifted(space, std::move(c));
    }
    return zoo::abs(space);
  }
  if (name == "indicator_ball") {
    if (!entry.contains("center") || !entry.contains("radius")) {
      fail("indicator_ball needs `center` and `radius`");
    }
    Vec c = parse_vec(entry["center"], "indicator_ball.center");
    if (c.size() != space.dim()) fail("indicator_ball.center dimension mismatch");
    const double r = need_finite(entry["radius"], "indicator_ball.radius");
    if (!(r > 0.0)) fail("indicator_ball.radius must be positive");
    return zoo::indicator_ball(space, std::move(c), r);
  }
  if (name == "indicator_box") {
    if (!entry.contains("lo") || !entry.contains("hi")) fail("indicator_box needs `lo` and `hi`");
    Vec lo = parse_vec(entry["lo"], "indicator_box.lo");
    Vec hi = parse_vec(entry["hi"], "indicator_box.hi");
    if (lo.size() != space.dim() || hi.size() != space.dim()) {
      fail("indicator_box bounds dimension mismatch");
    }
    for (Eigen::Index i = 0; i < lo.size(); ++i) {
      if (lo[i] > hi[i]) fail("indicator_box: lo > hi");
    }
    return zoo::indicator_box(space, std::move(lo), std::move(hi));
  }
  if (name == "linear") {
    if (!entry.contains("matrix")) fail("linear needs `matrix`");
    Matrix m = parse_matrix(entry["matrix"], "linear.matrix");
    if (m.rows() != space.dim() || m.cols() != space.dim()) fail("linear.matrix shape mismatch");
    try {
      return zoo::linear(space, std::move(m));
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  if (name == "graph") {
    if (!entry.contains("pairs") || !entry["pairs"].is_array() || entry["pairs"].empty()) {
      fail("graph needs a non-empty `pairs` array");
    }
    std::vector<std::pair<Vec, Covec>> pairs;
    for (const auto& p : entry["pairs"]) {
      if (!p.is_array() || p.size() != 2) fail("graph pairs must be [[x...],[xstar...]] entries");
      Vec y = parse_vec(p[0], "graph pair point");
      Covec ys = parse_vec(p[1], "graph pair covector");
      if (y.size() != space.dim() || ys.size() != space.dim()) {
        fail("graph pair dimension mismatch");
      }
      pairs.emplace_back(std::move(y), std::move(ys));
    }
    return zoo::graph(space, SampledGraph(std::move(pairs)));
  }
  fail("unknown operator `" + name + "`");
}

// Families for probe scenarios: shifted_abs{center} gives T_n = d|.-center/n|,
// yosida_of{inner} gives T_n = (inner)_{lambda_n} with lambda_n read off the
// step schedule.
OperatorFamily make_family(const NormedSpace& space, const json& entry, const Schedule& sched,
                           const ProbeParams& pp) {
  const std::string name = entry.value("name", "");
  if (name == "shifted_abs") {
    if (!entry.contains("center")) fail("shifted_abs needs `center`");
    Vec c = parse_vec(entry["center"], "shifted_abs.center");
    if (c.size() != space.dim()) fail("shifted_abs.center dimension mismatch");
    return [space, c](int n) { return zoo::abs_shifted(space, c / static_cast<double>(n)); };
  }
  if (name == "yosida_of") {
    if (!entry.contains("inner")) fail("yosida_of needs `inner`");
    if (is_family_entry(entry["inner"])) fail("yosida_of.inner must not itself be a family");
    const Operator inner_op = make_operator(space, entry["inner"]);
    SolveOptions inner;
    inner.tol = pp.inner_tol();
    inner.max_iterations = pp.max_iterations;
    Schedule s = sched;
    return [inner_op, inner, s](int n) {
      return yosida_operator(inner_op, s.lambda_at(n), inner);
    };
  }
  const Operator constant = make_operator(space, entry);
  return [constant](int) { return constant; };
}

// ---------------------------------------------------------------------------
// Scenario schema
// ---------------------------------------------------------------------------

struct Scenario {
  int dim = 1;
  double p = 2.0;
  std::string task;
  std::vector<json> operators;
  std::vector<Vec> points_x;
  std::vector<Covec> points_xstar;  // empty vectors where not applicable
  std::vector<double> lambdas;
  std::optional<Matrix> matrix;
  int dim_y = 0;
  double p_y = 2.0;
  ScheduleFamily schedules;
  std::vector<json> schedules_raw;
  double tol_solver = 1e-8;
  double tol_accept = 1e-4;
  double tol_reject = 1e-2;
  GridSpec grid;
  double cert_tol = 1e-8;
  long seed = 0;
  std::string out;

  json echo() const;
};

json Scenario::echo() const {
  json j;
  j["space"] = {{"dim", dim}, {"p", p}};
  j["task"] = task;
  j["operators"] = operators;
  if (task == "varsum" || task == "varcomp" || task == "probe") {
    json pt;
    pt["x"] = vec_to_json(points_x[0]);
    pt["xstar"] = vec_to_json(points_xstar[0]);
    j["point"] = pt;
  } else if (task == "my_eval" || task == "fitzpatrick") {
    json pts = json::array();
    for (std::size_t i = 0; i < points_x.size(); ++i) {
      json pt;
      pt["x"] = vec_to_json(points_x[i]);
      if (points_xstar[i].size() > 0) pt["xstar"] = vec_to_json(points_xstar[i]);
      pts.push_back(pt);
    }
    j["points"] = pts;
  }
  if (!lambdas.empty()) j["lambdas"] = lambdas;
  if (matrix) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < matrix->rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < matrix->cols(); ++c) row.push_back((*matrix)(r, c));
      rows.push_back(row);
    }
    j["matrix"] = rows;
    j["domain_space"] = {{"dim", dim_y}, {"p", p_y}};
  }
  if (!schedules_raw.empty()) j["schedules"] = schedules_raw;
  j["tolerances"] = {{"solver", tol_solver}, {"accept", tol_accept}, {"reject", tol_reject}};
  if (task == "certify") {
    j["grid"] = {{"lo", grid.lo}, {"hi", grid.hi}, {"step", grid.step}};
    j["cert_tol"] = cert_tol;
  }
  j["seed"] = seed;
  if (!out.empty()) j["out"] = out;
  return j;
}

Schedule parse_schedule(const json& j, const std::string& task) {
  if (!j.is_object()) fail("schedule entries must be objects");
  const int length = j.contains("N") ? static_cast<int>(need_finite(j["N"], "schedule.N")) : 30;
  if (length < 1) fail("schedule.N must be >= 1");
  const double decay =
      j.contains("decay") ? need_finite(j["decay"], "schedule.decay") : 0.5;
  try {
    if (task == "varsum") {
      if (!j.contains("lambda0") && !j.contains("mu0")) {
        fail("varsum schedules need lambda0/mu0");
      }
      const double l0 = j.contains("lambda0") ? need_finite(j["lambda0"], "schedule.lambda0") : 0.0;
      const double m0 = j.contains("mu0") ? need_finite(j["mu0"], "schedule.mu0") : 0.0;
      return Schedule::pair(l0, m0, decay, length);
    }
    // probe / varcomp: eps-kind; `lambda0` is accepted as an alias for eps0.
    double e0 = 1.0;
    if (j.contains("eps0")) {
      e0 = need_finite(j["eps0"], "schedule.eps0");
    } else if (j.contains("lambda0")) {
      e0 = need_finite(j["lambda0"], "schedule.lambda0");
    }
    return Schedule::eps(e0, decay, length);
  } catch (const ScenarioError&) {
    throw;
  } catch (const Error& e) {
    fail(e.what());
  }
}

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) fail("top level must be an object");
  Scenario sc;

  if (!j.contains("space") || !j["space"].is_object()) fail("missing `space` object");
  const double dim_raw = need_finite(j["space"].value("dim", json()), "space.dim");
  if (dim_raw < 1 || dim_raw != std::floor(dim_raw)) fail("space.dim must be a positive integer");
  sc.dim = static_cast<int>(dim_raw);
  sc.p = need_finite(j["space"].value("p", json(2.0)), "space.p");
  if (!(sc.p > 1.0)) fail("space.p must lie strictly between 1 and infinity");

  if (!j.contains("task") || !j["task"].is_string()) fail("missing `task` string");
  sc.task = j["task"].get<std::string>();
  const bool probe_like = sc.task == "probe" || sc.task == "varsum" || sc.task == "varcomp";
  if (!probe_like && sc.task != "my_eval" && sc.task != "fitzpatrick" && sc.task != "certify") {
    fail("unknown task `" + sc.task + "`");
  }

  if (!j.contains("operators") || !j["operators"].is_array() || j["operators"].empty()) {
    fail("missing non-empty `operators` array");
  }
  for (const auto& e : j["operators"]) sc.operators.push_back(e);
  const std::size_t expected_ops = sc.task == "varsum" ? 2 : 1;
  if (sc.operators.size() != expected_ops) {
    fail("task `" + sc.task + "` takes exactly " + std::to_string(expected_ops) + " operator(s)");
  }
  for (std::size_t i = 0; i < sc.operators.size(); ++i) {
    if (is_family_entry(sc.operators[i]) && sc.task != "probe") {
      fail("operator families are only valid for the probe task");
    }
  }

  const NormedSpace space(sc.dim, sc.p);

  if (sc.task == "varcomp") {
    if (!j.contains("matrix")) fail("varcomp needs `matrix` (maps Y -> X)");
    sc.matrix = parse_matrix(j["matrix"], "matrix");
    if (sc.matrix->rows() != sc.dim) fail("matrix must have space.dim rows");
    sc.dim_y = static_cast<int>(sc.matrix->cols());
    sc.p_y = sc.p;
    if (j.contains("domain_space")) {
      const double dy = need_finite(j["domain_space"].value("dim", json()), "domain_space.dim");
      if (static_cast<int>(dy) != sc.dim_y) fail("domain_space.dim must equal matrix columns");
      sc.p_y = need_finite(j["domain_space"].value("p", json(sc.p)), "domain_space.p");
      if (!(sc.p_y > 1.0)) fail("domain_space.p must lie strictly between 1 and infinity");
    }
  }

  const int point_dim = sc.task == "varcomp" ? sc.dim_y : sc.dim;
  auto parse_point = [&](const json& pj, bool need_xstar) {
    if (!pj.is_object() || !pj.contains("x")) fail("points need an `x` array");
    Vec x = parse_vec(pj["x"], "point.x");
    if (x.size() != point_dim) fail("point.x dimension mismatch");
    Covec xs;
    if (pj.contains("xstar")) {
      xs = parse_vec(pj["xstar"], "point.xstar");
      if (xs.size() != point_dim) fail("point.xstar dimension mismatch");
    } else if (need_xstar) {
      fail("point needs `xstar`");
    }
    sc.points_x.push_back(std::move(x));
    sc.points_xstar.push_back(std::move(xs));
  };

  if (probe_like) {
    if (j.contains("point")) {
      parse_point(j["point"], true);
    } else if (j.contains("points") && j["points"].is_array() && j["points"].size() == 1) {
      parse_point(j["points"][0], true);
    } else {
      fail("task `" + sc.task + "` takes exactly one `point`");
    }
  } else if (sc.task == "my_eval" || sc.task == "fitzpatrick") {
    if (!j.contains("points") || !j["points"].is_array() || j["points"].empty()) {
      fail("task `" + sc.task + "` needs a non-empty `points` array");
    }
    for (const auto& pj : j["points"]) parse_point(pj, sc.task == "fitzpatrick");
  }

  if (sc.task == "my_eval") {
    if (!j.contains("lambdas") || !j["lambdas"].is_array() || j["lambdas"].empty()) {
      fail("my_eval needs a non-empty `lambdas` array");
    }
    for (const auto& l : j["lambdas"]) {
      const double v = need_finite(l, "lambdas[]");
      if (!(v > 0.0)) fail("lambdas entries must be positive");
      sc.lambdas.push_back(v);
    }
  }

  if (probe_like) {
    if (!j.contains("schedules") || !j["schedules"].is_array() || j["schedules"].empty()) {
      fail("task `" + sc.task + "` needs a non-empty `schedules` array");
    }
    for (const auto& sj : j["schedules"]) {
      sc.schedules.push_back(parse_schedule(sj, sc.task));
      json norm;
      const Schedule& s = sc.schedules.back();
      if (s.kind() == Schedule::Kind::Pair) {
        norm = {{"lambda0", s.lambda0()}, {"mu0", s.mu0()}, {"decay", s.decay()},
                {"N", s.length()}};
      } else {
        norm = {{"eps0", s.eps0()}, {"decay", s.decay()}, {"N", s.length()}};
      }
      sc.schedules_raw.push_back(norm);
    }
  }

  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    if (!t.is_object()) fail("`tolerances` must be an object");
    if (t.contains("solver")) sc.tol_solver = need_finite(t["solver"], "tolerances.solver");
    if (t.contains("accept")) sc.tol_accept = need_finite(t["accept"], "tolerances.accept");
    if (t.contains("reject")) sc.tol_reject = need_finite(t["reject"], "tolerances.reject");
    for (double v : {sc.tol_solver, sc.tol_accept, sc.tol_reject}) {
      if (!(v > 0.0)) fail("tolerances must be positive");
    }
  }

  if (sc.task == "certify") {
    if (j.contains("grid")) {
      const auto& g = j["grid"];
      sc.grid.lo = need_finite(g.value("lo", json(-2.0)), "grid.lo");
      sc.grid.hi = need_finite(g.value("hi", json(2.0)), "grid.hi");
      sc.grid.step = need_finite(g.value("step", json(0.1)), "grid.step");
      if (!(sc.grid.step > 0.0) || !(sc.grid.hi > sc.grid.lo)) fail("bad grid specification");
    }
    if (j.contains("cert_tol")) {
      sc.cert_tol = need_finite(j["cert_tol"], "cert_tol");
      if (!(sc.cert_tol > 0.0)) fail("cert_tol must be positive");
    }
  }

  if (j.contains("seed")) {
    const double s = need_finite(j["seed"], "seed");
    if (s != std::floor(s)) fail("seed must be an integer");
    sc.seed = static_cast<long>(s);
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) fail("`out` must be a string");
    sc.out = j["out"].get<std::string>();
  }

  // Validate operator entries eagerly so schema errors precede any output.
  const NormedSpace op_space(sc.dim, sc.p);
  for (const auto& e : sc.operators) {
    if (!is_family_entry(e)) {
      (void)make_operator(op_space, e);
    } else if (probe_like) {
      ProbeParams pp;
      (void)make_family(op_space, e, sc.schedules.front(), pp);
    }
  }
  if ((sc.task == "fitzpatrick" || sc.task == "certify") &&
      sc.operators[0].value("name", "") != "graph") {
    fail("task `" + sc.task + "` needs a `graph` operator");
  }
  return sc;
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

struct CsvBuilder {
  std::string body = "schedule_id,n,param_n,residual_x,w_norm,verdict_partial\n";
  void row(const std::string& sched, int n, double param, double residual, double wnorm,
           const std::string& partial) {
    body += sched + "," + std::to_string(n) + "," + fmt_g(param) + "," + fmt_g(residual) + "," +
            fmt_g(wnorm) + "," + partial + "\n";
  }
};

ProbeParams probe_params(const Scenario& sc) {
  ProbeParams pp;
  pp.tol_accept = sc.tol_accept;
  pp.tol_reject = sc.tol_reject;
  // `solver` rebases the nested budget while keeping the fixed ratio between
  // the per-step and regularized-term tolerances.
  pp.step_tol_ratio = sc.tol_solver / sc.tol_accept * 100.0;
  pp.inner_tol_ratio = sc.tol_solver / sc.tol_accept;
  return pp;
}

void emit_probe_blocks(CsvBuilder& csv, const std::vector<ProbeReport>& reports,
                       double& max_residual) {
  for (std::size_t si = 0; si < reports.size(); ++si) {
    const ProbeReport& rep = reports[si];
    for (std::size_t i = 0; i < rep.residuals.size(); ++i) {
      const bool last = (i + 1 == rep.residuals.size());
      csv.row(std::to_string(si), static_cast<int>(i + 1), rep.params[i], rep.residuals[i],
              rep.w_norms[i], last ? to_string(rep.verdict) : "-");
      max_residual = std::max(max_residual, rep.residuals[i]);
    }
    if (rep.residuals.empty()) {
      csv.row(std::to_string(si), 0, 0.0, SetDescription::kInf, 0.0, to_string(rep.verdict));
    }
  }
}

json probe_summary(const std::vector<ProbeReport>& reports) {
  json arr = json::array();
  for (const auto& rep : reports) {
    json r;
    r["verdict"] = to_string(rep.verdict);
    r["steps"] = rep.residuals.size();
    r["final_residual"] = rep.residuals.empty() ? json() : json(rep.residuals.back());
    r["tail_slope"] = rep.tail_slope;
    r["bounded"] = rep.bounded;
    if (!rep.diagnostic.empty()) r["diagnostic"] = rep.diagnostic;
    arr.push_back(r);
  }
  return arr;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Accept:
      return 0;
    case Verdict::Reject:
      return 1;
    case Verdict::Inconclusive:
      return 2;
  }
  return 2;
}

RunResult execute(const Scenario& sc, const RunOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  RunResult res;
  res.task = sc.task;
  CsvBuilder csv;
  json extra;

  const NormedSpace space(sc.dim, sc.p);

  if (sc.task == "my_eval") {
    const Operator T = make_operator(space, sc.operators[0]);
    SolveOptions so;
    so.tol = sc.tol_solver;
    json values = json::array();
    for (std::size_t li = 0; li < sc.lambdas.size(); ++li) {
      for (std::size_t pi = 0; pi < sc.points_x.size(); ++pi) {
        const InclusionSolution sol = solve_my_system(T, sc.points_x[pi], sc.lambdas[li], so);
        if (!sol.converged) {
          throw SolverFailure("my_eval: " + sol.diagnostic, sol.residual);
        }
        csv.row(std::to_string(li), static_cast<int>(pi + 1), sc.lambdas[li], sol.residual,
                space.dual_norm(sol.t_star), "ok");
        res.max_residual = std::max(res.max_residual, sol.residual);
        json v;
        v["lambda"] = sc.lambdas[li];
        v["x"] = vec_to_json(sc.points_x[pi]);
        v["value"] = vec_to_json(sol.t_star);
        v["residual"] = sol.residual;
        values.push_back(v);
      }
    }
    extra["values"] = values;
    res.verdict = "ok";
    res.exit_code = 0;
  } else if (sc.task == "probe") {
    const ProbeParams pp = probe_params(sc);
    std::vector<ProbeReport> reports;
    for (const auto& sched : sc.schedules) {
      const OperatorFamily fam = make_family(space, sc.operators[0], sched, pp);
      reports.push_back(liminf_probe(fam, sc.points_x[0], sc.points_xstar[0], sched, pp));
    }
    Verdict verdict = reports.front().verdict;
    if (reports.size() > 1) {
      bool all_accept = true;
      for (const auto& r : reports) {
        if (r.verdict == Verdict::Reject) verdict = Verdict::Reject;
        if (r.verdict != Verdict::Accept) all_accept = false;
      }
      if (all_accept) verdict = Verdict::Accept;
      if (!all_accept && verdict != Verdict::Reject) verdict = Verdict::Inconclusive;
    }
    emit_probe_blocks(csv, reports, res.max_residual);
    if (reports.size() > 1) {
      double final_max = 0.0;
      for (const auto& r : reports) {
        if (!r.residuals.empty()) final_max = std::max(final_max, r.residuals.back());
      }
      csv.row("all", 0, 0.0, final_max, 0.0, to_string(verdict));
    }
    extra["schedules"] = probe_summary(reports);
    res.verdict = to_string(verdict);
    res.exit_code = verdict_exit(verdict);
  } else if (sc.task == "varsum" || sc.task == "varcomp") {
    const ProbeParams pp = probe_params(sc);
    MergedProbeReport merged;
    if (sc.task == "varsum") {
      const Operator T1 = make_operator(space, sc.operators[0]);
      const Operator T2 = make_operator(space, sc.operators[1]);
      merged = variational_sum_probe(T1, T2, sc.points_x[0], sc.points_xstar[0], sc.schedules,
                                     pp, opts.jobs);
    } else {
      const Operator T = make_operator(space, sc.operators[0]);
      const LinearOp A(*sc.matrix);
      const NormedSpace space_y(sc.dim_y, sc.p_y);
      merged = variational_composition_probe(T, A, space_y, sc.points_x[0], sc.points_xstar[0],
                                             sc.schedules, pp, true, opts.jobs);
      extra["cross_check_max"] = merged.cross_check_max;
    }
    emit_probe_blocks(csv, merged.per_schedule, res.max_residual);
    double final_max = 0.0;
    for (const auto& r : merged.per_schedule) {
      if (!r.residuals.empty()) final_max = std::max(final_max, r.residuals.back());
    }
    csv.row("all", 0, 0.0, final_max, 0.0, to_string(merged.verdict));
    extra["schedules"] = probe_summary(merged.per_schedule);
    res.verdict = to_string(merged.verdict);
    res.exit_code = verdict_exit(merged.verdict);
  } else if (sc.task == "fitzpatrick") {
    const Operator T = make_operator(space, sc.operators[0]);
    const SampledGraph& G = *T.get_if<SampledGraph>();
    for (std::size_t pi = 0; pi < sc.points_x.size(); ++pi) {
      const double phi = fitzpatrick_value(G, sc.points_x[pi], sc.points_xstar[pi]);
      const double pi_val = pairing(sc.points_x[pi], sc.points_xstar[pi]);
      const double slack = phi - pi_val;
      std::string cls = "above";
      if (std::abs(slack) <= 1e-9 * (1.0 + std::abs(pi_val))) {
        cls = "equality";
      } else if (slack < 0.0) {
        cls = "below";
      }
      csv.row("0", static_cast<int>(pi + 1), pi_val, slack, phi, cls);
    }
    res.verdict = "ok";
    res.exit_code = 0;
  } else if (sc.task == "certify") {
    const Operator T = make_operator(space, sc.operators[0]);
    const SampledGraph& G = *T.get_if<SampledGraph>();
    const CertificateReport rep = certify_representative(G, sc.grid, sc.cert_tol, opts.jobs);
    // Re-derive per-point rows for the plot-ready CSV.
    std::size_t idx = 0;
    for (const auto& [x, xstar] : rep.points) {
      const double slack = rep.slacks[idx];
      const double pi_val = pairing(x, xstar);
      std::string cls = "ok";
      if (!std::isfinite(slack)) {
        cls = "infeasible";
      } else if (std::abs(slack) <= sc.cert_tol) {
        cls = "equality";
      } else if (slack < -sc.cert_tol) {
        cls = "violation";
      }
      csv.row("0", static_cast<int>(++idx), pi_val, slack,
              std::isfinite(slack) ? pi_val + slack : SetDescription::kInf, cls);
    }
    json cert;
    cert["status"] = rep.pass ? "pass" : "fail";
    cert["min_slack"] = std::isfinite(rep.min_slack) ? json(rep.min_slack) : json();
    cert["n_equality"] = rep.equality_points.size();
    cert["n_violations"] = rep.violations.size();
    cert["grid_spec"] = {{"lo", rep.grid.lo}, {"hi", rep.grid.hi}, {"step", rep.grid.step}};
    {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%016llx",
                    static_cast<unsigned long long>(rep.graph_hash));
      cert["graph_hash"] = std::string(buf);
    }
    res.certificate_json = cert.dump(2) + "\n";
    res.max_residual = std::isfinite(rep.min_slack) ? std::max(0.0, -rep.min_slack) : 0.0;
    res.verdict = rep.pass ? "pass" : "fail";
    res.exit_code = rep.pass ? 0 : 1;
    extra["certificate"] = cert;
  }

  const auto t1 = std::chrono::steady_clock::now();
  json summary;
  summary["task"] = sc.task;
  summary["verdict"] = res.verdict;
  summary["max_residual"] = res.max_residual;
  summary["wall_time_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  summary["seed"] = sc.seed;
  for (auto& [k, v] : extra.items()) summary[k] = v;
  summary["config"] = sc.echo();
  res.summary_json = summary.dump(2) + "\n";
  res.csv = csv.body;
  res.out_dir = sc.out;
  return res;
}

}  // namespace

RunResult run_scenario_json(const std::string& json_text, const RunOptions& opts) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ScenarioError(std::string("scenario: JSON parse error: ") + e.what());
  }
  Scenario sc = parse_scenario(j);
  if (opts.seed) sc.seed = *opts.seed;
  if (opts.tol_solver) sc.tol_solver = *opts.tol_solver;
  if (opts.tol_accept) sc.tol_accept = *opts.tol_accept;
  if (opts.tol_reject) sc.tol_reject = *opts.tol_reject;
  if (opts.out_dir) sc.out = *opts.out_dir;
  for (double v : {sc.tol_solver, sc.tol_accept, sc.tol_reject}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ScenarioError("scenario: tolerances must be positive");
  }
  return execute(sc, opts);
}

RunResult run_scenario_file(const std::string& path, const RunOptions& opts) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("scenario: cannot read file `" + path + "`");
  std::stringstream ss;
  ss << in.rdbuf();
  return run_scenario_json(ss.str(), opts);
}

void write_artifacts(const RunResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  if (out_dir.empty()) throw Error("write_artifacts: empty output directory");
  fs::create_directories(out_dir);
  {
    std::ofstream csv(fs::path(out_dir) / "steps.csv", std::ios::binary);
    csv << result.csv;
  }
  {
    std::ofstream js(fs::path(out_dir) / "summary.json", std::ios::binary);
    js << result.summary_json;
  }
  if (!result.certificate_json.empty()) {
    std::ofstream cj(fs::path(out_dir) / "certificate.json", std::ios::binary);
    cj << result.certificate_json;
  }
}

}  // namespace mono
