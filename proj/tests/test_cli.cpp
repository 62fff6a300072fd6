// Copyright 2026 The XLinker Authors.
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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "support.hpp"

using namespace xlinker;
using testing::TempDir;

namespace {

std::string binary() {
  const char* b = std::getenv("XLINKER_BIN");
  REQUIRE_MESSAGE(b != nullptr, "XLINKER_BIN must point at the executable");
  return b;
}

// Runs the linker binary through the shell; returns its exit code and
// captures combined output into log_path.
int run(const std::string& args, const std::string& log_path,
        const std::string& env_prefix = "") {
  std::string cmd = env_prefix + binary() + " " + args + " > " + log_path +
                    " 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -1;
}

struct CliWorkspace {
  TempDir dir{"cli"};
  std::string kos;
  std::string corpus;
  std::string log;

  CliWorkspace() {
    kos = testing::write_kos_tsv(dir, testing::vasculitis_fragment_rows());
    corpus =
        testing::write_text(dir.file("corpus.pubtator"),
                            testing::two_mention_pubtator());
    log = dir.file("run.log");
  }
};

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("the five commands chain into a full run") {
  CliWorkspace ws;
  std::string kb = ws.dir.file("kb");
  std::string train_tsv = ws.dir.file("train.tsv");
  std::string model = ws.dir.file("model");
  std::string preds = ws.dir.file("preds.pubtator");
  std::string report = ws.dir.file("report.tsv");

  CHECK(run("build-kb --kos " + ws.kos + " --out " + kb, ws.log) == 0);
  CHECK(std::filesystem::exists(kb + "/kos.tsv"));
  CHECK(std::filesystem::exists(kb + "/manifest.json"));

  CHECK(run("gen-train --annotations " + ws.corpus + " --kb " + kb +
                " --out " + train_tsv,
            ws.log) == 0);
  std::string training = testing::read_file(train_tsv);
  CHECK(contains(training, "vasculitis"));

  CHECK(run("train --train " + train_tsv + " --kb " + kb + " --out " + model +
                " --max-leaf 1",
            ws.log) == 0);
  CHECK(std::filesystem::exists(model + "/manifest.json"));
  CHECK(std::filesystem::exists(model + "/weights.bin"));

  CHECK(run("link --model " + model + " --kb " + kb + " --input " +
                ws.corpus + " --out " + preds + " --report " + report,
            ws.log) == 0);
  std::string predicted = testing::read_file(preds);
  CHECK(contains(predicted, "900\t15\t25\tvasculitic\tDisease\tD014657\t"));
  CHECK(contains(testing::read_file(report), "exact"));

  std::string table = ws.dir.file("metrics.tsv");
  CHECK(run("evaluate --pred " + preds + " --gold " + ws.corpus +
                " --k 1,5 --kb " + kb + " --report " + report,
            table) == 0);
  std::string metrics = testing::read_file(table);
  CHECK(contains(metrics, "mentions\t2\n"));
  CHECK(contains(metrics, "top-1\t1\n"));
  CHECK(contains(metrics, "top-5\t1\n"));
}

TEST_CASE("usage mistakes exit with two") {
  CliWorkspace ws;
  CHECK(run("frobnicate", ws.log) == 2);
  CHECK(run("build-kb --kos " + ws.kos, ws.log) == 2);
  CHECK(run("", ws.log) == 2);
}

TEST_CASE("failing inputs exit with one") {
  CliWorkspace ws;
  std::string kb = ws.dir.file("kb");
  CHECK(run("build-kb --kos " + ws.dir.file("absent.tsv") + " --out " + kb,
            ws.log) == 1);
  CHECK(run("link --model " + ws.dir.file("no-model") + " --kb " + ws.kos +
                " --input " + ws.corpus + " --out " + ws.dir.file("p"),
            ws.log) == 1);
}

TEST_CASE("help lists every command and exits clean") {
  CliWorkspace ws;
  CHECK(run("--help", ws.log) == 0);
  std::string help = testing::read_file(ws.log);
  for (const char* verb :
       {"build-kb", "gen-train", "train", "link", "evaluate"})
    CHECK(contains(help, verb));
}

TEST_CASE("the seed environment variable overrides the flag") {
  CliWorkspace ws;
  std::string kb = ws.dir.file("kb");
  std::string train_tsv = ws.dir.file("train.tsv");
  REQUIRE(run("build-kb --kos " + ws.kos + " --out " + kb, ws.log) == 0);
  REQUIRE(run("gen-train --annotations " + ws.corpus + " --kb " + kb +
                  " --out " + train_tsv,
              ws.log) == 0);

  std::string by_flag = ws.dir.file("model_flag");
  std::string by_env = ws.dir.file("model_env");
  REQUIRE(run("train --train " + train_tsv + " --kb " + kb + " --out " +
                  by_flag + " --max-leaf 1 --seed 7",
              ws.log) == 0);
  REQUIRE(run("train --train " + train_tsv + " --kb " + kb + " --out " +
                  by_env + " --max-leaf 1 --seed 42",
              ws.log, "XLINKER_SEED=7 ") == 0);

  for (const char* name :
       {"manifest.json", "labels.tsv", "vocab.tsv", "tree.json",
        "centroids.bin", "weights.bin", "exact_map.tsv"}) {
    CAPTURE(name);
    CHECK(testing::read_file(by_flag + "/" + name) ==
          testing::read_file(by_env + "/" + name));
  }

  CHECK(run("train --train " + train_tsv + " --kb " + kb + " --out " +
                ws.dir.file("model_bad") + " --max-leaf 1",
            ws.log, "XLINKER_SEED=oops ") == 1);
}

TEST_CASE("a config file fills flags the command line omits") {
  CliWorkspace ws;
  std::string kb = ws.dir.file("kb");
  REQUIRE(run("build-kb --kos " + ws.kos + " --out " + kb, ws.log) == 0);

  // Two repeated surfaces and one singleton for the same concept.
  std::string skewed = testing::write_text(
      ws.dir.file("skewed.pubtator"),
      "901|t|vasculitic zz vasculitic zz vasculitic qq.\n"
      "901|a|\n"
      "901\t0\t13\tvasculitic zz\tDisease\tD014657\n"
      "901\t14\t27\tvasculitic zz\tDisease\tD014657\n"
      "901\t28\t41\tvasculitic qq\tDisease\tD014657\n\n");
  std::string config =
      testing::write_text(ws.dir.file("xlinker.ini"), "[gen-train]\ncap = 1\n");

  std::string plain = ws.dir.file("plain.tsv");
  REQUIRE(run("gen-train --annotations " + skewed + " --kb " + kb +
                  " --out " + plain,
              ws.log) == 0);
  CHECK(contains(testing::read_file(plain), "vasculitic qq"));

  std::string capped = ws.dir.file("capped.tsv");
  REQUIRE(run("gen-train --config " + config + " --annotations " + skewed +
                  " --kb " + kb + " --out " + capped,
              ws.log) == 0);
  std::string capped_text = testing::read_file(capped);
  CHECK(contains(capped_text, "vasculitic zz"));
  CHECK(!contains(capped_text, "vasculitic qq"));

  // An explicit flag beats the config file.
  std::string overridden = ws.dir.file("overridden.tsv");
  REQUIRE(run("gen-train --config " + config + " --cap 5 --annotations " +
                  skewed + " --kb " + kb + " --out " + overridden,
              ws.log) == 0);
  CHECK(contains(testing::read_file(overridden), "vasculitic qq"));

  // Restricting to vocabulary surfaces drops corpus-derived rows entirely.
  std::string kos_only = ws.dir.file("kos_only.tsv");
  REQUIRE(run("gen-train --kos-only --kb " + kb + " --out " + kos_only,
              ws.log) == 0);
  std::string kos_text = testing::read_file(kos_only);
  CHECK(contains(kos_text, "vasculitis"));
  CHECK(!contains(kos_text, "vasculitic zz"));
}

}  // TEST_SUITE
