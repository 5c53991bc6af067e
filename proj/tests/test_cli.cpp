// Copyright 2026 The usdkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <sstream>

#include "cli.hpp"

using namespace usdkit;
using doctest::Approx;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "usdkit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(USDKIT_TEST_DATA) + "/" + name; }

json machine(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("machine");
  const auto o = invoke(args);
  return json::parse(o.out);
}

}  // namespace

TEST_CASE("analyze pure pair") {
  const auto o = invoke({"analyze", data("pure_pair.json")});
  CHECK(o.code == 0);
  const json j = machine({"analyze", data("pure_pair.json")});
  CHECK(j["analysis"]["q_bound"].get<double>() == Approx(0.8).epsilon(1e-12));
  CHECK(j["analysis"]["saturated"].get<bool>());
  CHECK(j["analysis"]["povm_q"]["q"].get<double>() == Approx(0.8).epsilon(1e-10));
  CHECK(j.contains("version"));
}

TEST_CASE("analyze counterexample reports and exits 2") {
  const auto o = invoke({"analyze", data("counterexample.json"), "--format", "machine"});
  CHECK(o.code == 2);
  const json j = json::parse(o.out);
  CHECK(j["analysis"]["margins"][0].get<double>() < 0);
  CHECK(j["analysis"]["margins"][1].get<double>() < 0);
}

TEST_CASE("input errors exit 1") {
  CHECK(invoke({"analyze", data("malformed.json")}).code == 1);
  CHECK(invoke({"analyze", data("both_forms.json")}).code == 1);
  CHECK(invoke({"analyze", data("missing.json")}).code == 1);
  CHECK(invoke({"analyze"}).code == 1);
  CHECK(invoke({"frobnicate", data("pure_pair.json")}).code == 1);
  CHECK(invoke({"analyze", data("pure_pair.json"), "--tol-psd", "5"}).code == 1);
}

TEST_CASE("echoed problem round-trips") {
  for (const char* f : {"pure_pair.json", "coherent.json", "explicit_pure.json"}) {
    const json first = machine({"analyze", data(f), "--ratio", "1.7"});
    const auto reparsed = cli::parse_problem(first["problem"]);
    const auto a = cli::analyze(reparsed.problem);
    const json again = cli::analysis_json(a);
    CHECK(again.dump() == first["analysis"].dump());
  }
}

TEST_CASE("ratio flag overrides priors") {
  const json j = machine({"analyze", data("pure_pair.json"), "--ratio", "0.25"});
  CHECK(j["problem"]["eta1"].get<double>() == Approx(0.2));
  CHECK(j["analysis"]["reduced"]["regime"] == "first");
}

TEST_CASE("oracle command") {
  const json a = machine({"oracle", data("coherent.json"), "--restarts", "8", "--seed", "3"});
  CHECK(a["oracle"]["gap_to_bound"].get<double>() <= 1e-3);
  CHECK(a["oracle"]["seed"].get<std::uint64_t>() == 3);
  const json b = machine({"oracle", data("coherent.json"), "--restarts", "8", "--seed", "3"});
  CHECK(a.dump() == b.dump());

  const json c = machine({"oracle", data("counterexample.json"), "--restarts", "8"});
  CHECK(c["oracle"]["gap_to_bound"].get<double>() > 1e-3);
}

TEST_CASE("simulate command") {
  const json j = machine({"simulate", data("pure_pair.json"), "--shots", "100000", "--seed", "9"});
  const auto& s = j["simulation"];
  CHECK(s["n_error"].get<int>() == 0);
  CHECK(std::abs(s["empirical_q"].get<double>() - 0.8) <= 4 * s["stderr_q"].get<double>());

  const json one = machine({"simulate", data("pure_pair.json"), "--shots", "1"});
  const auto& t = one["simulation"];
  CHECK(t["n0"].get<int>() + t["n1"].get<int>() + t["nq"].get<int>() + t["n_error"].get<int>() == 1);

  const json fail = machine({"simulate", data("always_fail.json"), "--shots", "1000"});
  CHECK(fail["simulation"]["empirical_q"].get<double>() == 1.0);

  CHECK(invoke({"simulate", data("counterexample.json")}).code == 2);
}

TEST_CASE("sweep command") {
  const json pure = machine({"sweep", data("pure_pair.json"), "--ratio-min", "0.01", "--ratio-max", "100", "--steps", "25"});
  double last = 0;
  for (const auto& row : pure["sweep"]) {
    CHECK(row["saturated"].get<bool>());
    CHECK(row["ratio"].get<double>() > last);
    last = row["ratio"].get<double>();
  }

  const json single = machine({"sweep", data("coherent.json"), "--ratio-min", "1", "--steps", "1"});
  const json analysis = machine({"analyze", data("coherent.json")});
  REQUIRE(single["sweep"].size() == 1);
  CHECK(single["sweep"][0]["q_bound"] == analysis["analysis"]["q_bound"]);
  CHECK(single["sweep"][0]["saturated"] == analysis["analysis"]["saturated"]);

  const auto text = invoke({"sweep", data("pure_pair.json"), "--steps", "3"});
  CHECK(text.code == 0);
  CHECK(text.out.rfind("# ratio", 0) == 0);
}
