// Copyright 2026 The erbox Authors
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

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using erbox::cli::OutputFormat;
  using erbox::cli::RunConfig;

  CLI::App app{"Entanglement-redistribution box laboratory"};
  app.set_version_flag("--version", std::string(erbox::kVersion));
  app.require_subcommand(1);

  RunConfig config;
  std::string box;
  std::string task;
  std::uint64_t seed = 0;
  std::string out;
  std::string output = "json";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", config.tol, "Verdict tolerance")->capture_default_str();
    sub->add_option("--output", output, "Report format: json or csv")
        ->capture_default_str()
        ->transform(CLI::IsMember({"json", "csv"}, CLI::ignore_case));
    sub->add_option("--out", out, "Write the result to this file instead of stdout");
  };
  auto add_box = [&](CLI::App* sub) {
    sub->add_option("--box", box, "Box JSON file");
    sub->add_option("--task", task, "Task: es, 2epr-ghz or ghz-epr (canonical box unless --seed)");
    sub->add_option("--seed", seed, "Seed for a random box of --task");
  };

  auto* validate = app.add_subcommand("validate", "Check a box against its task and the structure theorem");
  add_box(validate);
  add_common(validate);

  auto* structure = app.add_subcommand("structure", "Per-branch structure analysis of a box");
  add_box(structure);
  add_common(structure);

  auto* bounds = app.add_subcommand("bounds", "Communication cost and value bounds of a task");
  bounds->add_option("--task", task, "Task: es, 2epr-ghz or ghz-epr")->required();
  add_common(bounds);

  auto* sweep = app.add_subcommand("sweep", "Sample the two Holevo curves of the 2epr-ghz task");
  sweep->add_option("--task", task, "Task (2epr-ghz)")->required();
  sweep->add_option("--grid", config.grid, "Number of grid points")->capture_default_str();
  add_common(sweep);

  auto* signal = app.add_subcommand("signal", "Run a signaling protocol through a box");
  add_box(signal);
  signal->add_option("--protocol", config.protocol, "zflip, depolarize, dense-coding or custom")
      ->capture_default_str();
  signal->add_option("--receiver", config.receiver, "Receiver for custom: a, b or ab")->capture_default_str();
  add_common(signal);

  auto* make = app.add_subcommand("make", "Emit a canonical or seeded random box as JSON");
  make->add_option("--task", task, "Task: es, 2epr-ghz or ghz-epr")->required();
  make->add_option("--seed", seed, "Seed; omit for the canonical box");
  add_common(make);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(erbox::cli::ExitCode::usage);
  }

  CLI::App* chosen = app.get_subcommands().front();
  config.command = chosen->get_name();
  config.output = output == "csv" ? OutputFormat::csv : OutputFormat::json;
  // Not every subcommand defines every option; count() throws on unknown names.
  const auto given = [chosen](const std::string& name) {
    const CLI::Option* opt = chosen->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--box")) config.box_path = box;
  if (given("--task")) config.task = task;
  if (given("--seed")) config.seed = seed;
  if (given("--out")) config.out_path = out;
  return erbox::cli::run_command(config, std::cout, std::cerr);
}
