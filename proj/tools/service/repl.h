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

#ifndef MEANING_TOOLS_REPL_H_
#define MEANING_TOOLS_REPL_H_

#include <iosfwd>
#include <string>

#include "service/service.h"

namespace meaning::service {

// Line-oriented dialog. Plain lines are phrases; meta-commands start with ':'.
// Errors are reported in the returned text and never end the loop.
class Repl {
 public:
  explicit Repl(const Engine &engine);

  // Output for one input line.
  std::string Handle(const std::string &line);
  bool done() const { return done_; }

  const Session &session() const { return session_; }

  static std::string Help();

 private:
  std::string Meta(const std::string &line);

  Session session_;
  bool done_ = false;
};

// Reads lines from `in` until EOF or :quit, writing prompts and output.
void RunRepl(const Engine &engine, std::istream &in, std::ostream &out,
             bool prompt);

}  // namespace meaning::service

#endif  // MEANING_TOOLS_REPL_H_
