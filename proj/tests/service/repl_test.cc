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

#include "service/repl.h"

#include <sstream>

#include <gtest/gtest.h>

#include "common/fixtures.h"

namespace meaning::service {
namespace {

bool Contains(const std::string &s, const std::string &part) {
  return s.find(part) != std::string::npos;
}

class ReplTest : public ::testing::Test {
 protected:
  Engine engine_{testing::Seed(), {}, "seed"};
  Repl repl_{engine_};
};

TEST_F(ReplTest, PhrasesRenderOutcome) {
  const std::string out = repl_.Handle("drive fast");
  EXPECT_EQ(out.rfind("accepted: fast->drive", 0), 0u) << out;
  EXPECT_TRUE(Contains(out, "drive_speed")) << out;
  EXPECT_TRUE(Contains(repl_.Handle("stand still faster"), "no_change"));
  EXPECT_EQ(repl_.session().history().size(), 2u);
  EXPECT_EQ(repl_.Handle("   "), "");
}

TEST_F(ReplTest, ShowDrawsHeatmap) {
  const std::string out = repl_.Handle(":show ne");
  EXPECT_EQ(out.rfind("ne over east north", 0), 0u) << out;
  EXPECT_GT(std::count(out.begin(), out.end(), '\n'), 4);
  EXPECT_TRUE(Contains(repl_.Handle(":show nothing-here"), "nothing named"));
  EXPECT_TRUE(Contains(repl_.Handle(":show"), "usage"));
}

TEST_F(ReplTest, DescribeAndErrors) {
  EXPECT_EQ(repl_.Handle(":describe slow").rfind("slow ~ not fast", 0), 0u);
  EXPECT_EQ(repl_.Handle(":describe heavy").rfind("error: ", 0), 0u);
  EXPECT_TRUE(Contains(repl_.Handle(":frob"), "unknown command ':frob'"));
}

TEST_F(ReplTest, ContextsSpareAndReplay) {
  EXPECT_EQ(repl_.Handle(":contexts"), "no contexts yet\n");
  repl_.Handle("bank is high");
  EXPECT_TRUE(Contains(repl_.Handle(":contexts"), "* obj:bank#finance"));
  EXPECT_EQ(repl_.Handle(":spare").rfind("1 spare context(s)", 0), 0u);
  repl_.Handle("it is deeper");
  const long v = repl_.session().version();
  EXPECT_TRUE(Contains(repl_.Handle(":replay 2"), "obj:bank#river"));
  EXPECT_EQ(repl_.session().version(), v + 1);
  EXPECT_TRUE(Contains(repl_.Handle(":replay x"), "usage"));
}

TEST_F(ReplTest, QuitStopsLoop) {
  EXPECT_FALSE(repl_.done());
  repl_.Handle(":quit");
  EXPECT_TRUE(repl_.done());

  std::istringstream in("walk\n:q\nwalk fast\n");
  std::ostringstream out;
  RunRepl(engine_, in, out, false);
  EXPECT_TRUE(Contains(out.str(), "accepted: walk"));
  EXPECT_FALSE(Contains(out.str(), "fast->walk"));
}

}  // namespace
}  // namespace meaning::service
