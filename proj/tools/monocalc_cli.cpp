// monocalc: declarative scenario runner for monotone-operator calculus.
//
// Exit codes: 0 accept/pass/ok, 1 reject/fail, 2 inconclusive,
//             64 schema/parse error, 70 solver failure escalation.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "mono/scenario.hpp"

namespace {

struct SubcommandSpec {
  const char* cli_name;
  const char* task_name;
  const char* description;
};

constexpr SubcommandSpec kSubcommands[] = {
    {"my-eval", "my_eval", "Evaluate the Moreau-Yosida regularization T_lambda at given points"},
    {"probe", "probe", "Sequential-lower-limit membership probe"},
    {"varsum", "varsum", "Variational-sum membership probe over a schedule family"},
    {"varcomp", "varcomp", "Variational-composition membership probe over a schedule family"},
    {"fitz", "fitzpatrick", "Fitzpatrick values of a sampled graph at given points"},
    {"certify", "certify", "Representability certificate for a sampled graph"},
};

int run(const std::string& task, const std::string& scenario_path, const mono::RunOptions& opts) {
  try {
    const mono::RunResult res = mono::run_scenario_file(scenario_path, opts);
    if (res.task != task) {
      std::cerr << "monocalc: scenario task `" << res.task << "` does not match subcommand `"
                << task << "`\n";
      return 64;
    }
    if (!res.out_dir.empty()) mono::write_artifacts(res, res.out_dir);
    std::cout << res.task << ": " << res.verdict << " (max residual " << res.max_residual
              << ")\n";
    return res.exit_code;
  } catch (const mono::ScenarioError& e) {
    std::cerr << "monocalc: " << e.what() << "\n";
    return 64;
  } catch (const mono::SolverFailure& e) {
    std::cerr << "monocalc: solver failure: " << e.what() << "\n";
    return 70;
  } catch (const mono::Error& e) {
    std::cerr << "monocalc: " << e.what() << "\n";
    return 70;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monocalc - monotone operator calculus in p-normed spaces"};
  app.require_subcommand(1);

  std::string scenario_path;
  mono::RunOptions opts;
  if (const char* env_jobs = std::getenv("MONO_JOBS")) {
    opts.jobs = std::max(1, std::atoi(env_jobs));
  }

  std::string selected_task;
  for (const auto& spec : kSubcommands) {
    CLI::App* sub = app.add_subcommand(spec.cli_name, spec.description);
    sub->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    sub->add_option("--out", [&opts](const std::vector<std::string>& v) {
      opts.out_dir = v.back();
      return true;
    }, "Output directory (overrides the scenario's `out`)");
    sub->add_option("--seed", [&opts](const std::vector<std::string>& v) {
      opts.seed = std::stol(v.back());
      return true;
    }, "Seed override (echoed into the summary)");
    sub->add_option("--tol-solver", [&opts](const std::vector<std::string>& v) {
      opts.tol_solver = std::stod(v.back());
      return true;
    }, "Solver tolerance override");
    sub->add_option("--tol-accept", [&opts](const std::vector<std::string>& v) {
      opts.tol_accept = std::stod(v.back());
      return true;
    }, "Probe accept tolerance override");
    sub->add_option("--tol-reject", [&opts](const std::vector<std::string>& v) {
      opts.tol_reject = std::stod(v.back());
      return true;
    }, "Probe reject tolerance override");
    sub->add_option("--jobs", opts.jobs, "Parallel schedules/grid cells (default MONO_JOBS or 1)");
    const std::string task = spec.task_name;
    sub->callback([&selected_task, task]() { selected_task = task; });
  }

  CLI11_PARSE(app, argc, argv);
  return run(selected_task, scenario_path, opts);
}
