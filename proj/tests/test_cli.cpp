// Copyright 2026 The chiralpb Authors
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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chiralpb/cli.hpp"
#include "chiralpb/sweep.hpp"
#include "support.hpp"

using namespace chiralpb;
using namespace chiralpb::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("chiralpb_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("derive-params") {
  const auto dir = scratch("derive");
  const Outcome o = call({"derive-params", "--preset", "paper", "--out", dir.string()});
  REQUIRE(o.code == 0);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(std::abs(j["derived"]["chi_over_gamma"].get<double>() / 9.5 - 1) < 0.02);
  CHECK(std::abs(j["derived"]["xi_over_gamma"].get<double>() / 0.25 - 1) < 0.02);
  CHECK(fs::exists(dir / "paper_derive-params.json"));
}

TEST_CASE("solve") {
  const auto dir = scratch("solve");
  const Outcome o = call({"solve", "--preset", "paper", "--omega", "30e3", "--delta0", "-2.3e6", "--out", dir.string()});
  REQUIRE(o.code == 0);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(rel(j["cw"]["g2"].get<double>(), 0.013655372742196231) < 1e-7);
  CHECK(rel(j["ccw"]["g2"].get<double>(), 3.4460773162327092) < 1e-7);
  CHECK(j["cw"]["regime"] == "ONE_PB");
  CHECK(j["ccw"]["P"].size() == 5);
  CHECK(j["diagnostics"]["relative_residual"].get<double>() < 1e-10);
  CHECK(fs::exists(dir / "paper_solve.json"));

  SUBCASE("MHz units") {
    const Outcome m =
        call({"solve", "--preset", "paper", "--omega", "30e3", "--delta0", "-2.3", "--units", "MHz", "--out", dir.string()});
    REQUIRE(m.code == 0);
    CHECK(nlohmann::json::parse(m.out)["cw"] == j["cw"]);
  }
  SUBCASE("no drive") {
    const Outcome z = call({"solve", "--preset", "paper", "--xi", "0", "--out", dir.string()});
    REQUIRE(z.code == 0);
    const auto k = nlohmann::json::parse(z.out);
    for (const char* m : {"cw", "ccw"}) {
      CHECK(k[m]["N"].get<double>() == 0.0);
      CHECK(k[m]["g2"].is_null());
      CHECK(k[m]["g3"].is_null());
      CHECK(k[m]["S"].is_null());
      CHECK(k[m]["g2_analytic"].is_null());
    }
  }
  SUBCASE("cutoff") {
    const Outcome c = call({"solve", "--preset", "paper", "--cutoff", "6", "--out", dir.string()});
    REQUIRE(c.code == 0);
    CHECK(nlohmann::json::parse(c.out)["cw"]["P"].size() == 7);
  }
}

TEST_CASE("errors are one line with a category") {
  const auto dir = scratch("errors");
  Outcome o = call({"solve", "--preset", "paper", "--bogus"});
  CHECK(o.code == cli::kUsage);
  CHECK(o.err.rfind("error[usage]: ", 0) == 0);
  CHECK(o.err.find('\n') == o.err.size() - 1);

  CHECK(call({}).code == cli::kUsage);
  CHECK(call({"solve"}).code == cli::kConfig);
  CHECK(call({"solve", "--preset", "moon"}).code == cli::kConfig);
  CHECK(call({"solve", "--preset", "paper", "--units", "GHz"}).code == cli::kUsage);

  const fs::path cfg = dir / "bad.json";
  std::ofstream(cfg) << R"({"quality_factor": -1, "radius": 0, "shape": "torus"})";
  o = call({"derive-params", "--preset", "paper", "--config", cfg.string(), "--out", dir.string()});
  CHECK(o.code == cli::kConfig);
  CHECK(o.err.rfind("error[config]: ", 0) == 0);
  CHECK(o.err.find("quality_factor") != std::string::npos);
  CHECK(o.err.find("radius") != std::string::npos);
  CHECK(o.err.find("shape") != std::string::npos);

  CHECK(call({"solve", "--preset", "paper", "--out", "/proc/forbidden/x"}).code == cli::kIo);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("sweep command") {
  const auto dir = scratch("sweep");
  const fs::path spec = dir / "spec.json";
  std::ofstream(spec) << R"({"name": "mini", "preset": "paper",
    "axes": [{"name": "delta0", "min": -3e6, "max": -2e6, "count": 3}]})";
  const Outcome o = call({"sweep", "--config", spec.string(), "--out", dir.string(), "--workers", "2"});
  REQUIRE(o.code == 0);
  const auto r = import_result((dir / "mini_sweep.csv").string());
  CHECK(r.records.size() == 3);
  CHECK(import_result((dir / "mini_sweep.json").string()).records == r.records);

  CHECK(call({"sweep", "--out", dir.string()}).code == cli::kConfig);
  CHECK(call({"sweep", "--config", (dir / "missing.json").string()}).code == cli::kUsage);
}

TEST_CASE("figure-data is reproducible and honours the output env var") {
  const auto dir = scratch("figures");
  ::setenv("CHIRALPB_OUT_DIR", dir.string().c_str(), 1);
  REQUIRE(call({"figure-data", "fig2c", "--workers", "2"}).code == 0);
  ::unsetenv("CHIRALPB_OUT_DIR");
  const std::string first = slurp(dir / "fig2c_figure-data.csv");
  const std::string first_json = slurp(dir / "fig2c_figure-data.json");
  REQUIRE_FALSE(first.empty());
  REQUIRE(call({"figure-data", "fig2c", "--out", dir.string()}).code == 0);
  CHECK(slurp(dir / "fig2c_figure-data.csv") == first);
  CHECK(slurp(dir / "fig2c_figure-data.json") == first_json);
  CHECK(call({"figure-data", "fig7", "--out", dir.string()}).code == cli::kConfig);
}

TEST_CASE("validate") {
  const auto dir = scratch("validate");
  Outcome weak = call({"validate", "--preset", "paper", "--xi", "4860", "--omega", "30e3", "--out", dir.string()});
  CHECK(weak.code == 0);
  const auto j = nlohmann::json::parse(weak.out.substr(weak.out.find('{')));
  CHECK(j["pass"] == true);
  CHECK(j["points_compared"].get<int>() > 400);
  CHECK(fs::exists(dir / "paper_validate.csv"));

  const Outcome strict =
      call({"validate", "--preset", "paper", "--omega", "30e3", "--tolerance", "1e-6", "--out", dir.string()});
  CHECK(strict.code == cli::kValidationFailed);
}
