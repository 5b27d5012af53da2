// Copyright 2026 The gvc Authors.
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

// gvc verify <suite> --scenario f.json [--out r.json] [--seed N] [--refine K]
// gvc report all --scenario f.json ...
//
// Exit codes: 0 all checks hold, 1 input error, 2 a check failed.

#include "gvc/gvc.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct Options {
  std::string scenario;
  std::string out;
  std::optional<std::uint64_t> seed;
  unsigned refine = 0;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--scenario", opt.scenario, "scenario JSON file")->required();
  cmd->add_option("--out", opt.out, "write the report here instead of stdout");
  cmd->add_option("--seed", opt.seed, "override the scenario seed");
  cmd->add_option("--refine", opt.refine, "also run at h/2, ..., h/2^K")->check(CLI::Range(0u, 4u));
}

int run(const std::string& command, const Options& opt) {
  gvc_scenario* sc = nullptr;
  if (gvc_status st = gvc_scenario_load_file(opt.scenario.c_str(), &sc); st != GVC_OK) {
    std::cerr << "gvc: " << gvc_last_error() << "\n";
    return st == GVC_ERR_INPUT ? 1 : 3;
  }
  if (opt.seed) gvc_scenario_set_seed(sc, *opt.seed);
  gvc_report* rep = nullptr;
  const gvc_status st = gvc_run(sc, command.c_str(), opt.refine, &rep);
  gvc_scenario_free(sc);
  if (!rep) {
    std::cerr << "gvc: " << gvc_last_error() << "\n";
    return st == GVC_ERR_INPUT ? 1 : 3;
  }
  const std::string text = std::string(gvc_report_json(rep)) + "\n";
  const bool passed = gvc_report_passed(rep) != 0;
  gvc_report_free(rep);
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(opt.out, std::ios::binary);
    if (!f || !(f << text)) {
      std::cerr << "gvc: cannot write " << opt.out << "\n";
      return 1;
    }
  }
  if (!passed) std::cerr << "gvc: " << command << ": one or more checks failed\n";
  return passed ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gauge variational calculus checks"};
  app.set_version_flag("--version", std::string(gvc_version()));
  app.require_subcommand(1);

  Options opt;
  std::string command;
  CLI::App* verify = app.add_subcommand("verify", "run one verification suite");
  std::string suite;
  verify->add_option("suite", suite, "fibration | jacobi | gauge | selfdual | regularity")
      ->required()
      ->check(CLI::IsMember({"fibration", "jacobi", "gauge", "selfdual", "regularity"}));
  add_common(verify, opt);

  CLI::App* report = app.add_subcommand("report", "run every applicable suite");
  std::string what;
  report->add_option("what", what, "all")->required()->check(CLI::IsMember({"all"}));
  add_common(report, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  command = verify->parsed() ? "verify " + suite : "report all";
  return run(command, opt);
}
