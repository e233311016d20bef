// Copyright 2026 The ecodrive Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <numeric>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "ecodrive/csv.h"
#include "ecodrive/eco_score.h"
#include "ecodrive/oracles/property_suite.h"
#include "ecodrive/route.h"
#include "ecodrive/scenario.h"
#include "ecodrive/simulation.h"
#include "ecodrive/trip_trace.h"
#include "ecodrive/vehicle_energy.h"

namespace ecodrive::cli {
namespace {

namespace fs = std::filesystem;

bool IsInputError(const absl::Status& status) {
  return absl::IsNotFound(status) || absl::IsInvalidArgument(status) ||
         absl::IsFailedPrecondition(status) || absl::IsOutOfRange(status);
}

int Fail(std::ostream& err, const absl::Status& status) {
  err << "error: " << status.message() << "\n";
  return IsInputError(status) ? kExitInputError : kExitPropertyFailure;
}

std::string OutputDir(const RunManifest& m) {
  if (!m.out_dir.empty()) return m.out_dir;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env) {
    return env;
  }
  return ".";
}

absl::Status EnsureDir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("cannot create output directory %s", dir));
  }
  return absl::OkStatus();
}

std::string Join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

// Trip label from a trace path; generic simulator file names borrow the
// directory name.
std::string TripName(const std::string& path) {
  const fs::path p(path);
  const std::string stem = p.stem().string();
  std::string parent = p.parent_path().filename().string();
  if (parent.empty()) parent = "trip";
  if (stem == "ed_trace") return parent + "_ED";
  if (stem == "hd_trace") return parent + "_HD";
  return stem;
}

absl::StatusOr<VehicleParams> VehicleFor(const RunManifest& m) {
  if (m.vehicle.empty()) return ZoeDefaults();
  return LoadVehicleParams(m.vehicle);
}

BreakpointOptions BreakpointsFor(const RunManifest& m) {
  BreakpointOptions options;
  if (m.prominence) options.prominence_min = *m.prominence;
  return options;
}

absl::Status WriteRun(const std::string& dir, const std::string& file,
                      const VehicleRun& run) {
  return WriteFile(Join(dir, file),
                   FormatTripTraceCsv(run.trace, &run.accel, &run.power));
}

}  // namespace

int CmdSimulate(const RunManifest& m, std::ostream& out, std::ostream& err) {
  if (m.scenarios.empty()) {
    err << "error: simulate needs at least one --scenario\n";
    return kExitInputError;
  }
  const std::string root = OutputDir(m);
  if (auto s = EnsureDir(root); !s.ok()) return Fail(err, s);
  std::optional<VehicleParams> vehicle;
  if (!m.vehicle.empty()) {
    auto v = LoadVehicleParams(m.vehicle);
    if (!v.ok()) return Fail(err, v.status());
    vehicle = *v;
  }
  for (const std::string& path : m.scenarios) {
    auto scenario = LoadScenario(path);
    if (!scenario.ok()) return Fail(err, scenario.status());
    if (m.seed) scenario->seed = *m.seed;
    if (m.dt) scenario->dt = *m.dt;
    if (vehicle) scenario->vehicle = *vehicle;
    auto result = RunScenario(*scenario);
    if (!result.ok()) return Fail(err, result.status());

    const std::string dir =
        m.scenarios.size() == 1 ? root : Join(root, scenario->name);
    if (auto s = EnsureDir(dir); !s.ok()) return Fail(err, s);
    absl::Status status;
    if (result->eco) {
      status.Update(WriteRun(dir, "ed_trace.csv", *result->eco));
      status.Update(WriteFile(Join(dir, "advisory.csv"),
                              FormatAdvisoryCsv(result->advisories)));
    }
    if (result->human) {
      status.Update(WriteRun(dir, "hd_trace.csv", *result->human));
    }
    status.Update(WriteFile(Join(dir, "events.csv"),
                            FormatEventLog(result->events)));
    status.Update(
        WriteFile(Join(dir, "summary.txt"), FormatSimSummary(*result)));
    if (!status.ok()) return Fail(err, status);

    std::string line = scenario->name + ":";
    for (const auto* run : {&result->eco, &result->human}) {
      if (!*run) continue;
      line += absl::StrFormat(" %s %.1f s %.2f Wh;", (*run)->id,
                              (*run)->trip_time, (*run)->energy_wh);
    }
    if (result->eco && result->human) {
      line += absl::StrFormat(
          " gain %.2f%%",
          (result->human->energy_wh - result->eco->energy_wh) /
              result->human->energy_wh * 100.0);
    }
    out << line << "\n";
  }
  return kExitOk;
}

int CmdScore(const RunManifest& m, std::ostream& out, std::ostream& err) {
  if (m.traces.empty() || m.route.empty()) {
    err << "error: score needs --route and at least one --trace\n";
    return kExitInputError;
  }
  auto route = LoadRoute(m.route);
  if (!route.ok()) return Fail(err, route.status());
  auto vehicle = VehicleFor(m);
  if (!vehicle.ok()) return Fail(err, vehicle.status());
  const std::string dir = OutputDir(m);
  if (auto s = EnsureDir(dir); !s.ok()) return Fail(err, s);

  std::vector<EdsRow> rows;
  for (const std::string& path : m.traces) {
    auto trace = LoadTripTraceCsv(path);
    if (!trace.ok()) return Fail(err, trace.status());
    auto report = ScoreTrip(*trace, *route, *vehicle, BreakpointsFor(m));
    if (!report.ok()) {
      return Fail(err, absl::InvalidArgumentError(absl::StrFormat(
                           "%s: %s", path, report.status().message())));
    }
    const std::string trip = TripName(path);
    rows.push_back({trip, report->driven_wh, report->reference_wh,
                    report->eds});
    absl::Status status = WriteFile(
        Join(dir, trip + "_reference.csv"),
        FormatTripTraceCsv(report->reference.trace));
    status.Update(WriteFile(Join(dir, trip + "_breakpoints.csv"),
                            FormatBreakpointsCsv(report->breakpoints)));
    if (!status.ok()) return Fail(err, status);
    out << absl::StrFormat("%s: E_D %.2f Wh, E_T %.2f Wh, EDS %.6f\n", trip,
                           report->driven_wh, report->reference_wh,
                           std::abs(report->eds) < 5e-7 ? 0.0 : report->eds);
  }
  if (auto s = WriteFile(Join(dir, "eds.csv"), FormatEdsCsv(rows)); !s.ok()) {
    return Fail(err, s);
  }
  return kExitOk;
}

int CmdCompare(const RunManifest& m, std::ostream& out, std::ostream& err) {
  if (m.traces.empty() || m.route.empty()) {
    err << "error: compare needs --route and --trace ED.csv,HD.csv pairs\n";
    return kExitInputError;
  }
  auto route = LoadRoute(m.route);
  if (!route.ok()) return Fail(err, route.status());
  auto vehicle = VehicleFor(m);
  if (!vehicle.ok()) return Fail(err, vehicle.status());
  const std::string dir = OutputDir(m);
  if (auto s = EnsureDir(dir); !s.ok()) return Fail(err, s);

  std::vector<ComparisonRow> comparisons;
  std::vector<EdsRow> scores;
  for (const std::string& pair : m.traces) {
    const std::vector<std::string> paths = SplitFields(pair);
    if (paths.size() != 2) {
      err << "error: --trace for compare takes ED.csv,HD.csv, got '" << pair
          << "'\n";
      return kExitInputError;
    }
    auto ed = LoadTripTraceCsv(paths[0]);
    if (!ed.ok()) return Fail(err, ed.status());
    auto hd = LoadTripTraceCsv(paths[1]);
    if (!hd.ok()) return Fail(err, hd.status());
    auto cmp = CompareTrips(*ed, *hd, *route, *vehicle, BreakpointsFor(m));
    if (!cmp.ok()) {
      return Fail(err, absl::InvalidArgumentError(absl::StrFormat(
                           "%s: %s", pair, cmp.status().message())));
    }
    std::string trip = TripName(paths[0]);
    if (trip.size() > 3 && trip.substr(trip.size() - 3) == "_ED") {
      trip.resize(trip.size() - 3);
    }
    comparisons.push_back(
        {trip, cmp->energy_gain_pct, cmp->delta_avg_speed_pct});
    scores.push_back({trip + "_ED", cmp->ed_score.driven_wh,
                      cmp->ed_score.reference_wh, cmp->ed_score.eds});
    scores.push_back({trip + "_HD", cmp->hd_score.driven_wh,
                      cmp->hd_score.reference_wh, cmp->hd_score.eds});
    out << absl::StrFormat(
        "%s: gain %.2f%%, delta avg speed %.2f%%, EDS ED %.4f HD %.4f\n",
        trip, cmp->energy_gain_pct, cmp->delta_avg_speed_pct,
        cmp->ed_score.eds, cmp->hd_score.eds);
  }
  absl::Status status = WriteFile(Join(dir, "comparison.csv"),
                                  FormatComparisonCsv(comparisons));
  status.Update(WriteFile(Join(dir, "eds.csv"), FormatEdsCsv(scores)));
  if (!status.ok()) return Fail(err, status);
  double mean = 0.0;
  for (const ComparisonRow& r : comparisons) mean += r.energy_gain_pct;
  mean /= comparisons.size();
  out << absl::StrFormat("mean energy gain %.2f%% over %d trips\n", mean,
                         static_cast<int>(comparisons.size()));
  return kExitOk;
}

int CmdOracleCheck(const RunManifest& m, std::ostream& out,
                   std::ostream& err) {
  oracles::SuiteOptions options;
  if (m.seed) options.seed = *m.seed;
  if (m.instances) {
    if (*m.instances <= 0) {
      err << "error: --instances must be > 0\n";
      return kExitInputError;
    }
    options.bc_instances = *m.instances;
    options.dp_instances = *m.instances;
    options.sign_instances = *m.instances;
    options.horizon_instances = *m.instances;
  }
  if (m.slack) {
    if (!(*m.slack >= 0.0)) {
      err << "error: --slack must be >= 0\n";
      return kExitInputError;
    }
    options.dp_slack = *m.slack;
  }
  auto vehicle = VehicleFor(m);
  if (!vehicle.ok()) return Fail(err, vehicle.status());

  bool all_passed = true;
  std::string report;
  for (const auto& r : oracles::RunOracleSuite(options, *vehicle)) {
    const std::string line = oracles::FormatPropertyResult(r);
    out << line << "\n";
    report += line + "\n";
    all_passed = all_passed && r.passed;
  }
  if (!m.out_dir.empty()) {
    if (auto s = EnsureDir(m.out_dir); !s.ok()) return Fail(err, s);
    if (auto s = WriteFile(Join(m.out_dir, "oracle_check.txt"), report);
        !s.ok()) {
      return Fail(err, s);
    }
  }
  return all_passed ? kExitOk : kExitPropertyFailure;
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Eco-driving advisory simulator and trip scorer", "ecodrive"};
  app.require_subcommand(1);
  RunManifest m;
  uint64_t seed = 0;
  int instances = 0;
  double prominence = 0.0, dt = 0.0, slack = 0.0;

  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", m.out_dir,
                    std::string("Output directory (default $") + kOutDirEnv +
                        " or .)");
  };
  auto* simulate = app.add_subcommand("simulate", "Run closed-loop scenarios");
  simulate->add_option("--scenario", m.scenarios, "Scenario file")
      ->required();
  simulate->add_option("--seed", seed, "Override the scenario seed");
  simulate->add_option("--dt", dt, "Override the simulation step [s]");
  simulate->add_option("--vehicle", m.vehicle, "Vehicle parameter file");
  add_out(simulate);

  auto* score = app.add_subcommand("score", "Eco-driving score of traces");
  score->add_option("--trace", m.traces, "Trace CSV (t,x,v)")->required();
  score->add_option("--route", m.route, "Route file")->required();
  score->add_option("--prominence", prominence,
                    "Minimum speed-minimum prominence [m/s]");
  score->add_option("--vehicle", m.vehicle, "Vehicle parameter file");
  add_out(score);

  auto* compare = app.add_subcommand("compare", "Compare ED and HD trips");
  compare->add_option("--trace", m.traces, "ED.csv,HD.csv pair")->required();
  compare->add_option("--route", m.route, "Route file")->required();
  compare->add_option("--prominence", prominence,
                      "Minimum speed-minimum prominence [m/s]");
  compare->add_option("--vehicle", m.vehicle, "Vehicle parameter file");
  add_out(compare);

  auto* oracle = app.add_subcommand("oracle-check",
                                    "Run the optimal-control property suite");
  oracle->add_option("--instances", instances,
                     "Random instances per property");
  oracle->add_option("--seed", seed, "Instance generator seed");
  oracle->add_option("--slack", slack,
                     "Allowed relative excess over the DP optimum");
  oracle->add_option("--vehicle", m.vehicle,
                     "Vehicle parameter file");
  add_out(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }
  auto flag = [](CLI::App* cmd, const char* name) {
    return cmd->count(name) > 0;
  };
  for (CLI::App* cmd : {simulate, score, compare, oracle}) {
    if (!cmd->parsed()) continue;
    m.command = cmd->get_name();
    if (cmd->get_option_no_throw("--seed") && flag(cmd, "--seed")) {
      m.seed = seed;
    }
    if (cmd->get_option_no_throw("--dt") && flag(cmd, "--dt")) m.dt = dt;
    if (cmd->get_option_no_throw("--prominence") && flag(cmd, "--prominence")) {
      m.prominence = prominence;
    }
    if (cmd->get_option_no_throw("--instances") && flag(cmd, "--instances")) {
      m.instances = instances;
    }
    if (cmd->get_option_no_throw("--slack") && flag(cmd, "--slack")) {
      m.slack = slack;
    }
  }
  if (m.command == "simulate") return CmdSimulate(m, out, err);
  if (m.command == "score") return CmdScore(m, out, err);
  if (m.command == "compare") return CmdCompare(m, out, err);
  return CmdOracleCheck(m, out, err);
}

}  // namespace ecodrive::cli
