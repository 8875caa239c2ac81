#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#ifndef RESO_CLI_PATH
#error "RESO_CLI_PATH must point at the CLI binary"
#endif

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string out_file = "cli_test_output.tmp";
  std::string cmd = std::string(RESO_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
  int rc = std::system(cmd.c_str());
  int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  return {code, ss.str()};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("doublet with default configuration reports the reference pair") {
  RunResult r = run("doublet");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.output);
  REQUIRE(j.at("count").get<int>() == 2);
  auto z0 = j.at("zeros").at(0);
  auto z1 = j.at("zeros").at(1);
  CHECK(z0.at("re").get<double>() == doctest::Approx(2.2101546).epsilon(1e-5));
  CHECK(z0.at("im").get<double>() == doctest::Approx(-0.1366887).epsilon(1e-4));
  CHECK(z1.at("re").get<double>() == doctest::Approx(2.2321776).epsilon(1e-5));
}

TEST_CASE("output is byte-for-byte deterministic") {
  RunResult a = run("doublet");
  RunResult b = run("doublet");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
}

TEST_CASE("malformed configuration exits with code 2") {
  write_file("bad_config.json", "{ not json");
  RunResult r = run("--config bad_config.json doublet");
  CHECK(r.exit_code == 2);
}

TEST_CASE("invalid potential parameters exit with code 2") {
  write_file("bad_params.json", R"({"potential": {"w4": -1.0}})");
  RunResult r = run("--config bad_params.json doublet");
  CHECK(r.exit_code == 2);
}

TEST_CASE("unknown arguments exit with code 2") {
  RunResult r = run("--no-such-flag doublet");
  CHECK(r.exit_code == 2);
  RunResult r2 = run("");
  CHECK(r2.exit_code == 2);
}

TEST_CASE("an empty window is a successful zero-count result") {
  write_file("empty_window.json",
             R"({"window": {"re_min": 0.5, "re_max": 0.8, "im_min": -0.05, "im_max": 0.0}})");
  RunResult r = run("--config empty_window.json doublet");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.output);
  CHECK(j.at("count").get<int>() == 0);
}

TEST_CASE("ep subcommand reproduces the degeneracy coordinates") {
  RunResult r = run("ep");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.output);
  CHECK(j.at("d_star").get<double>() == doctest::Approx(1.1314661145).epsilon(1e-7));
  CHECK(j.at("v3_star").get<double>() == doctest::Approx(1.038235081).epsilon(1e-7));
  CHECK(j.at("k_d").at("re").get<double>() == doctest::Approx(2.22697606).epsilon(1e-7));
  CHECK(j.at("is_ep").get<bool>());
}

TEST_CASE("section emits the fixed CSV schema") {
  write_file("section_config.json", R"({"section": {"v3": 1.0381, "half_d": 0.01, "n": 21}})");
  RunResult r = run("--config section_config.json --out section_test.csv section");
  REQUIRE(r.exit_code == 0);
  std::ifstream csv("section_test.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "d,v3,re_E1,im_E1,re_E2,im_E2,dE,dGamma,re_Ehat1,im_Ehat1,re_Ehat2,im_Ehat2");
  int rows = 0;
  for (std::string line; std::getline(csv, line);)
    if (!line.empty()) ++rows;
  CHECK(rows == 21);
  CHECK(r.output.find("WIDTH_CROSSING_ENERGY_ANTICROSSING") != std::string::npos);
}
