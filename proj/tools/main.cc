// Copyright 2026 The Meaning Authors.
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

// meaning: REPL, scenario runner, figure export and session API server.

#include <unistd.h>

#include <iostream>

#include <CLI11.hpp>
#include <httplib.h>

#include "meaning/abstraction.h"
#include "meaning/error.h"
#include "service/api.h"
#include "service/repl.h"
#include "service/scenario.h"

namespace {

using namespace meaning;
using namespace meaning::service;

int Export(const Engine &engine, const std::string &target, const std::string &path,
           int resolution) {
  Session session(engine.lexicon, engine.config);
  auto region = ResolveDisplayRegion(session, target);
  if (!region) {
    // Not a name: interpret it as a phrase and export the resulting region.
    const auto outcome = session.Interpret(target);
    if (!outcome.chosen) {
      std::cerr << "cannot export '" << target << "': " << outcome.clarification << "\n";
      return 1;
    }
    region = outcome.chosen->region;
  }
  ExportRegion(*region, path, resolution);
  std::cout << "wrote " << path << "\n";
  return 0;
}

int Serve(const Engine &engine, const std::string &bind) {
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) {
    std::cerr << "--bind expects HOST:PORT\n";
    return 2;
  }
  const std::string host = bind.substr(0, colon);
  const int port = std::stoi(bind.substr(colon + 1));
  ApiService service(engine);
  httplib::Server server;
  Mount(server, service);
  std::cout << "serving on " << host << ":" << port << "\n" << std::flush;
  if (!server.listen(host, port)) {
    std::cerr << "cannot bind " << bind << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"meaning-operator engine"};
  app.require_subcommand(1);
  EngineOptions options;
  app.add_option("--lexicon", options.lexicon_path,
                 "lexicon JSON (default: $MEANING_LEXICON, then the seed lexicon)");
  app.add_option("--comprehension-config", options.config_path,
                 "comprehension config JSON");
  app.add_option("--grid-resolution", options.grid_resolution,
                 "grid nodes per axis for the seed lexicon")
      ->check(CLI::Range(2, 1024));

  auto *repl = app.add_subcommand("repl", "interactive dialog");
  bool no_prompt = false;
  repl->add_flag("--no-prompt", no_prompt, "omit banner and prompts");

  auto *run = app.add_subcommand("run", "run scenario files");
  std::vector<std::string> scenarios;
  run->add_option("scenario", scenarios, "scenario files")->required()->check(CLI::ExistingFile);

  auto *exp = app.add_subcommand("export", "write a graymap and a JSON sidecar");
  std::string target, out_path;
  int export_res = MembershipGrid::kDefaultResolution;
  exp->add_option("target", target, "context, region, axis or phrase")->required();
  exp->add_option("path", out_path, "output .pgm path")->required();
  exp->add_option("--resolution", export_res, "samples per axis")->check(CLI::Range(2, 1024));

  auto *serve = app.add_subcommand("serve", "run the session API");
  std::string bind = "127.0.0.1:8080";
  serve->add_option("--bind", bind, "HOST:PORT");

  auto *describe = app.add_subcommand("describe", "describe a word with the other words");
  std::string word;
  describe->add_option("word", word)->required();

  auto *dump = app.add_subcommand("dump-lexicon", "write the loaded lexicon as JSON");
  std::string dump_path;
  dump->add_option("path", dump_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const Engine engine = LoadEngine(options);
    if (*repl) {
      RunRepl(engine, std::cin, std::cout, !no_prompt && isatty(STDIN_FILENO));
      return 0;
    }
    if (*run) {
      bool all = true;
      for (const auto &file : scenarios) {
        const auto report = RunScenario(LoadScenario(file), engine);
        std::cout << report.text;
        all &= report.passed;
      }
      return all ? 0 : 1;
    }
    if (*exp) return Export(engine, target, out_path, export_res);
    if (*serve) return Serve(engine, bind);
    if (*describe) {
      const auto result = DescribeOwnConcept(word, *engine.lexicon);
      std::cout << DescribeResultToJson(result).dump(1) << "\n";
      return 0;
    }
    if (*dump) {
      SaveLexicon(*engine.lexicon, dump_path);
      std::cout << "wrote " << dump_path << "\n";
      return 0;
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
