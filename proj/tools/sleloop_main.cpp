// Copyright 2026 The sleloop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// sleloop: command-line runner for the bubble and loop-measure experiments.
//
//   sleloop radius-cdf   --paths 100000 --dt 1e-4
//   sleloop schramm      --x -1 0 1
//   sleloop restriction  --rho 0.3 --x 2
//   sleloop werner       --b 1 2 4
//   sleloop tables
//
// Exit codes: 0 success, 1 a threshold was violated under --strict (or the
// run failed), 2 usage error.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sleloop/cli/commands.hpp"
#include "sleloop/errors.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SLELOOP_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "ignoring malformed SLELOOP_SEED=" << env << '\n';
    }
  }
  return 1;
}

struct Command {
  CLI::App* app = nullptr;
  sleloop::cli::CommonOptions opt;
  std::function<sleloop::cli::Report(const sleloop::cli::CommonOptions&)> run;
};

void add_common(Command& c, std::size_t paths, double dt, bool strict_flag, bool* strict) {
  c.opt.paths = paths;
  c.opt.dt = dt;
  c.opt.seed = default_seed();
  c.app->add_option("--paths", c.opt.paths, "number of sampled paths")->capture_default_str();
  c.app->add_option("--dt", c.opt.dt, "radius-time step")->capture_default_str();
  c.app->add_option("--seed", c.opt.seed, "base seed (default: $SLELOOP_SEED or 1)")
      ->capture_default_str();
  c.app->add_option("--theta-cut", c.opt.theta_cut, "angle cut near 0 and pi")
      ->capture_default_str();
  c.app->add_option("--out", c.opt.out, "output directory")->capture_default_str();
  if (strict_flag) {
    c.app->add_flag("--strict", *strict, "exit 1 if any acceptance threshold fails");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SLE(8/3) boundary bubbles and Werner loop-measure experiments"};
  app.require_subcommand(1);
  bool strict = false;

  std::vector<double> schramm_x{-1.0, 0.0, 1.0};
  std::vector<double> chordal_x{2.0};
  double rho = 0.3;
  std::vector<double> werner_b{1.0, 2.0, 4.0};

  std::vector<Command> commands(5);
  commands[0].app = app.add_subcommand("radius-cdf", "law of the conformal radius r");
  add_common(commands[0], 100000, 1e-4, true, &strict);
  commands[0].run = [](const auto& o) { return sleloop::cli::cmd_radius_cdf(o); };

  commands[1].app = app.add_subcommand("schramm", "side of i for chordal curves from x");
  add_common(commands[1], 20000, 1e-4, true, &strict);
  commands[1].app->add_option("--x", schramm_x, "start points")->capture_default_str();
  commands[1].run = [&](const auto& o) { return sleloop::cli::cmd_schramm(o, schramm_x); };

  commands[2].app = app.add_subcommand("restriction", "half-disk avoidance probabilities");
  add_common(commands[2], 10000, 1e-3, true, &strict);
  commands[2].app->add_option("--rho", rho, "half-disk radius")->capture_default_str();
  commands[2].app->add_option("--x", chordal_x, "chordal start points")->capture_default_str();
  commands[2].run = [&](const auto& o) {
    return sleloop::cli::cmd_restriction(o, rho, chordal_x);
  };

  commands[3].app = app.add_subcommand("werner", "loop mass of U_b against its bounds");
  add_common(commands[3], 10000, 1e-3, true, &strict);
  commands[3].app->add_option("--b", werner_b, "moduli b")->capture_default_str();
  commands[3].run = [&](const auto& o) { return sleloop::cli::cmd_werner(o, werner_b); };

  commands[4].app = app.add_subcommand("tables", "deterministic identity and bounds tables");
  commands[4].app->add_option("--out", commands[4].opt.out, "output directory")
      ->capture_default_str();
  commands[4].app->add_flag("--strict", strict, "exit 1 if any identity fails");
  commands[4].run = [](const auto& o) { return sleloop::cli::cmd_tables(o); };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  for (auto& c : commands) {
    if (!c.app->parsed()) continue;
    try {
      const auto start = std::chrono::steady_clock::now();
      const auto report = c.run(c.opt);
      const double wall =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      sleloop::cli::write_report(report, c.opt.out, wall);
      std::cout << report.to_json().dump(2) << '\n';
      if (strict && !report.pass) {
        std::cerr << c.app->get_name() << ": threshold violated\n";
        return kExitViolation;
      }
      return kExitOk;
    } catch (const sleloop::DomainError& e) {
      std::cerr << c.app->get_name() << ": " << e.what() << '\n';
      return kExitUsage;
    } catch (const std::exception& e) {
      std::cerr << c.app->get_name() << ": " << e.what() << '\n';
      return kExitViolation;
    }
  }
  return kExitUsage;
}
