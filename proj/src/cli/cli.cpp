// Copyright 2026 The Casemix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "casemix/cli/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>

#include "casemix/api/service.hpp"
#include "casemix/app/engine.hpp"
#include "casemix/error.hpp"
#include "casemix/io/json.hpp"
#include "casemix/model/cmp.hpp"

namespace casemix::cli {

using io::Json;

namespace {

api::Server* g_server = nullptr;

void StopServer(int) {
  if (g_server) g_server->Stop();
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

scalarize::Problem LoadProblem(const std::string& path, const std::string& source) {
  return scalarize::MakeProblem(io::LoadInstance(path), model::ParseBoundsSource(source));
}

void Emit(std::ostream& out, const std::string& path, const Json& j) {
  if (path.empty()) {
    out << j.dump(2) << "\n";
  } else {
    io::WriteJsonFile(path, j);
  }
}

std::string BoundsTable(const model::HospitalInstance& inst, const std::vector<double>& bounds) {
  std::string s;
  char line[160];
  std::snprintf(line, sizeof line, "%-8s %-24s %12s\n", "GROUP", "NAME", "BOUND");
  s += line;
  double total = 0.0;
  for (std::size_t g = 0; g < bounds.size(); ++g) {
    std::snprintf(line, sizeof line, "%-8s %-24s %12.2f\n", inst.groups[g].id.c_str(),
                  inst.groups[g].name.c_str(), bounds[g]);
    s += line;
    total += bounds[g];
  }
  std::snprintf(line, sizeof line, "%-8s %-24s %12.2f\n", "TOTAL", "", total);
  return s + line;
}

// --goals FILE: {group: goal} or a caseload/result with a groups array.
Json GoalsFromFile(const std::string& path) {
  const Json j = io::ReadJsonFile(path);
  if (j.is_object() && j.contains("groups") && j["groups"].is_array()) {
    Json goals = Json::object();
    for (const auto& g : j["groups"]) {
      if (!g.contains("id") || !g.contains("n")) {
        throw ValidationError("groups entries need id and n", "/groups");
      }
      goals[g["id"].get<std::string>()] = g["n"];
    }
    return goals;
  }
  return j;
}

struct Common {
  std::string instance;
  std::string bounds = "auto";
  std::string out;
};

void AddCommon(CLI::App* cmd, Common& c, bool with_out = true) {
  cmd->add_option("instance", c.instance, "Instance JSON file")->required();
  cmd->add_option("--bounds", c.bounds, "Bound source: auto, reference or computed")
      ->capture_default_str();
  if (with_out) cmd->add_option("--out", c.out, "Write the result here instead of stdout");
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hospital case-mix planning engine"};
  app.require_subcommand(1);

  // bounds
  Common bounds_args;
  bounds_args.bounds = "computed";
  auto* bounds_cmd = app.add_subcommand("bounds", "Per-group upper bounds on treatable patients");
  AddCommon(bounds_cmd, bounds_args);

  // solve
  Common solve_args;
  std::string uf_path, request_path, objective, method, goals, goal_weights, sides, gpm_mode, repair, preferred,
      format = "json";
  std::optional<double> eps1, eps2;
  bool lexicographic = false, absolute = false;
  auto* solve_cmd = app.add_subcommand("solve", "One scalarized solve");
  AddCommon(solve_cmd, solve_args);
  solve_cmd->add_option("uf_config", uf_path, "Utility configuration JSON (method ufm)");
  solve_cmd->add_option("--request", request_path, "Solve request JSON; flags override it");
  solve_cmd->add_option("--objective", objective, "mmu, msu or asf");
  solve_cmd->add_option("--eps1", eps1, "Weight on the minimum utility");
  solve_cmd->add_option("--eps2", eps2, "Weight on the utility sum");
  solve_cmd->add_flag("--lexicographic", lexicographic, "Then maximize N at the optimum");
  solve_cmd->add_option("--method", method, "ufm, gam or gpm");
  solve_cmd->add_option("--goals", goals, "\"bounds\" or a JSON file of goals");
  solve_cmd->add_option("--goal-weights", goal_weights, "Goal attainment weights: relative or unit");
  solve_cmd->add_option("--sides", sides, "Goal attainment sides: both, under, over");
  solve_cmd->add_option("--gpm-mode", gpm_mode, "sum or minimax-under");
  solve_cmd->add_flag("--absolute", absolute, "Goal programming deviations in patients");
  solve_cmd->add_option("--repair", repair, "preference, sum-overachieve or tradeoff");
  solve_cmd->add_option("--preferred-group", preferred, "Group for the preference repair");
  solve_cmd->add_option("--format", format, "json or csv")->capture_default_str();

  // sweep
  Common sweep_args;
  std::string tmpl = "UF1", variant, param, values, paired, objectives = "mmu,msu";
  int jobs = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sensitivity sweep");
  AddCommon(sweep_cmd, sweep_args, false);
  sweep_cmd->add_option("--template", tmpl, "Utility template, UF1..UF14")->capture_default_str();
  sweep_cmd->add_option("--variant", variant, "Curve variant for sampled templates");
  sweep_cmd->add_option("--param", param, "Swept parameter")->required();
  sweep_cmd->add_option("--values", values, "start:stop:step or a comma list")->required();
  sweep_cmd->add_option("--paired", paired, "Paired values (pair parameter)");
  sweep_cmd->add_option("--objectives", objectives, "Comma list of mmu, msu")->capture_default_str();
  sweep_cmd->add_option("--jobs", jobs, "Parallel solves; 0 means one per core");
  sweep_cmd->add_option("--out", sweep_args.out, "Output directory for the CSV and JSON reports");

  // pareto
  Common pareto_args;
  std::string caseload_path;
  auto* pareto_cmd = app.add_subcommand("pareto", "Check a caseload for Pareto optimality");
  AddCommon(pareto_cmd, pareto_args);
  pareto_cmd->add_option("caseload", caseload_path, "Caseload or solve result JSON")->required();

  // serve
  std::string serve_instance, serve_bounds = "auto", serve_uf, host = "127.0.0.1", cors = "*";
  int port = 8080, workers = 4;
  auto* serve_cmd = app.add_subcommand("serve", "Start the HTTP service");
  serve_cmd->add_option("--instance", serve_instance, "Instance JSON file")->required();
  serve_cmd->add_option("--bounds", serve_bounds, "Bound source")->capture_default_str();
  serve_cmd->add_option("--uf-config", serve_uf, "Initial utility configuration (default UF1)");
  serve_cmd->add_option("--host", host)->capture_default_str();
  serve_cmd->add_option("--port", port)->capture_default_str();
  serve_cmd->add_option("--workers", workers, "Request worker threads")->capture_default_str();
  serve_cmd->add_option("--cors-origin", cors, "Allowed browser origin")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (*bounds_cmd) {
      const auto problem = LoadProblem(bounds_args.instance, bounds_args.bounds);
      out << BoundsTable(problem.instance, problem.bounds);
      if (!bounds_args.out.empty()) {
        io::WriteJsonFile(bounds_args.out, io::BoundsToJson(problem.instance, problem.bounds,
                                                            bounds_args.bounds));
      }
      err << "bounds: " << problem.instance.groups.size() << " groups (" << Seconds(start)
          << " s)\n";
      return kOk;
    }

    if (*solve_cmd) {
      const auto problem = LoadProblem(solve_args.instance, solve_args.bounds);
      Json request = request_path.empty() ? Json::object() : io::ReadJsonFile(request_path);
      if (!method.empty()) request["method"] = method;
      if (!objective.empty()) request["objective"] = objective;
      if (eps1) request["eps1"] = *eps1;
      if (eps2) request["eps2"] = *eps2;
      if ((eps1 || eps2) && objective.empty()) request["objective"] = "asf";
      if (lexicographic) request["lexicographic"] = true;
      if (!goals.empty()) request["goals"] = goals == "bounds" ? Json("bounds") : GoalsFromFile(goals);
      if (!goal_weights.empty()) request["goal_weights"] = goal_weights;
      if (!sides.empty()) request["sides"] = sides;
      if (!gpm_mode.empty()) request["gpm_mode"] = gpm_mode;
      if (absolute) request["relative"] = false;
      if (!repair.empty()) {
        request["repair"] = {{"strategy", repair}};
        if (!preferred.empty()) request["repair"]["preferred_group"] = preferred;
      }
      const auto parsed = app::ParseSolveRequest(request, problem.instance);
      const io::Format fmt = io::ParseFormat(format);
      std::vector<utility::UfSpec> specs;
      if (parsed.method == app::Method::kUfm) {
        if (uf_path.empty()) throw ValidationError("method ufm needs a utility configuration file");
        specs = io::ResolveUfConfig(io::LoadUfConfig(uf_path), problem.instance, problem.bounds);
      }
      scalarize::SolveResult result;
      const Json j = app::SolveJson(problem, specs, request, &result);
      if (fmt == io::Format::kCsv) {
        if (solve_args.out.empty()) throw ValidationError("csv output needs --out", "/format");
        io::WriteResult(problem.instance, result, solve_args.out, fmt);
      } else {
        Emit(out, solve_args.out, j);
      }
      char line[200];
      std::snprintf(line, sizeof line, "solve: %s N=%.2f sum_u=%.2f min_u=%.2f%s (%.2f s)\n",
                    std::string(solver::ToString(result.status)).c_str(), result.throughput,
                    result.sum_u, result.min_u, result.zeroed ? " zeroed" : "", Seconds(start));
      err << line;
      if (!result.ok()) err << "solve: " << result.message << "\n";
      return app::SolveExitCode(result);
    }

    if (*sweep_cmd) {
      const auto problem = LoadProblem(sweep_args.instance, sweep_args.bounds);
      Json request = {{"template", tmpl}, {"parameter", param}, {"values", values},
                      {"objectives", objectives}, {"jobs", jobs}};
      if (!variant.empty()) request["variant"] = variant;
      if (!paired.empty()) request["paired_values"] = paired;
      const auto report = sensitivity::RunSweep(problem, app::ParseSweepRequest(request));
      if (sweep_args.out.empty()) {
        sensitivity::WriteSweepCsv(report, out);
      } else {
        std::filesystem::create_directories(sweep_args.out);
        const std::string dir = sweep_args.out + "/";
        std::ostringstream main_csv, mix_csv, diff_csv;
        sensitivity::WriteSweepCsv(report, main_csv);
        sensitivity::WriteCaseMixCsv(report, mix_csv);
        sensitivity::WriteCaseMixDiffCsv(report, diff_csv);
        io::WriteTextFile(dir + "sweep.csv", main_csv.str());
        io::WriteTextFile(dir + "case_mix.csv", mix_csv.str());
        io::WriteTextFile(dir + "case_mix_diff.csv", diff_csv.str());
        io::WriteJsonFile(dir + "sweep.json", io::SweepReportToJson(report));
      }
      int failed = 0;
      for (const auto& row : report.rows) failed += row.ok() ? 0 : 1;
      err << "sweep: " << report.rows.size() << " runs, " << failed << " failed (" << Seconds(start)
          << " s)\n";
      return kOk;
    }

    if (*pareto_cmd) {
      const auto problem = LoadProblem(pareto_args.instance, pareto_args.bounds);
      const auto base = io::ParseCaseload(io::ReadJsonFile(caseload_path), problem.instance);
      const Json j = app::ParetoJson(problem, base);
      Emit(out, pareto_args.out, j);
      err << "pareto: " << (j["is_pareto"].get<bool>() ? "optimal" : "dominated")
          << " diff=" << j["diff"] << "\n";
      return kOk;
    }

    if (*serve_cmd) {
      auto problem = LoadProblem(serve_instance, serve_bounds);
      io::UfConfig config;
      if (serve_uf.empty()) {
        config.fallback = utility::UfSpec{};
      } else {
        config = io::LoadUfConfig(serve_uf);
      }
      api::Service service(std::move(problem), std::move(config));
      api::Server server(service, {host, port, workers, cors});
      const int bound_port = server.Bind();
      err << "serve: listening on http://" << host << ":" << bound_port << "\n";
      g_server = &server;
      std::signal(SIGINT, StopServer);
      std::signal(SIGTERM, StopServer);
      const bool ok = server.Listen();
      g_server = nullptr;
      return ok ? kOk : kInternal;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace casemix::cli
