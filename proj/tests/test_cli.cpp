#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Runs the CLI with stdout+stderr captured; returns the real exit code.
RunResult run_cli(const std::string& args) {
  static const fs::path tmp = [] {
    fs::path dir = fs::temp_directory_path() / "starnet_cli_tests";
    fs::create_directories(dir);
    return dir;
  }();
  const fs::path capture = tmp / "capture.txt";
  const std::string command =
      std::string(STARNET_CLI_PATH) + " " + args + " > " + capture.string() + " 2>&1";
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.output = slurp(capture);
  return result;
}

fs::path temp_file(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "starnet_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("verify passes on the published scenarios") {
  for (const char* args : {"verify --n 2 --m 2", "verify --n 2 --m 3"}) {
    const auto run = run_cli(args);
    CHECK(run.exit_code == 0);
    CHECK(run.output.find("check optimal-delta: PASS") != std::string::npos);
    CHECK(run.output.find("check sos-certificate: PASS") != std::string::npos);
    CHECK(run.output.find("check classical-bound: PASS") != std::string::npos);
  }
  const auto larger = run_cli("verify --n 3 --m 5");
  CHECK(larger.exit_code == 0);
  CHECK(larger.output.find("delta 35.7770876") != std::string::npos);
}

TEST_CASE("bounds writes CSV plus a manifest with the exact argv") {
  const fs::path out = temp_file("bounds.csv");
  const auto run = run_cli("bounds --m-min 3 --m-max 6 --out " + out.string());
  REQUIRE(run.exit_code == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("m,alpha,qopt,ratio\n", 0) == 0);
  CHECK(csv.find("3,6,6.92820323,1.15470054") != std::string::npos);
  CHECK(csv.find("4,12,16,1.33333333") != std::string::npos);

  const auto manifest = nlohmann::json::parse(slurp(out.string() + ".manifest.json"));
  CHECK(manifest["command"] == "bounds");
  CHECK(manifest["argv"][1] == "bounds");
  CHECK(manifest["argv"][2] == "--m-min");
  CHECK(manifest["outputs"][0] == out.string());
  CHECK(manifest["version"].is_string());
  CHECK(manifest["timestamp"].is_string());
}

TEST_CASE("quantum emits the exact CSV header") {
  const auto run = run_cli("quantum --n 2 --m 2 --format csv");
  CHECK(run.exit_code == 0);
  CHECK(run.output.find("n,m,copies,i,absJ,delta,alpha,qopt,ratio,violated") != std::string::npos);
  CHECK(run.output.find("2,2,1,1,2,2.82842712,2,2.82842712,1.41421356,true") != std::string::npos);
}

TEST_CASE("export converts a stored evaluation report to CSV") {
  const fs::path json_path = temp_file("evaluation.json");
  const auto produce = run_cli("quantum --n 2 --m 3 --out " + json_path.string());
  REQUIRE(produce.exit_code == 0);
  const fs::path csv_path = temp_file("evaluation.csv");
  const auto convert =
      run_cli("export --input " + json_path.string() + " --format csv --out " + csv_path.string());
  REQUIRE(convert.exit_code == 0);
  const std::string csv = slurp(csv_path);
  CHECK(csv.rfind("n,m,copies,i,absJ,delta,alpha,qopt,ratio,violated\n", 0) == 0);
  CHECK(csv.find("6.92820323") != std::string::npos);
}

TEST_CASE("sweep reports the bilocality critical visibility") {
  const auto run = run_cli("sweep --n 2 --m 2 --steps 11");
  CHECK(run.exit_code == 0);
  CHECK(run.output.find("critical_v 0.7071") != std::string::npos);
  CHECK(run.output.find("v,delta,alpha,violated") != std::string::npos);
}

TEST_CASE("exit codes follow the contract") {
  CHECK(run_cli("quantum --n 1 --m 3").exit_code == 4);        // invalid scenario
  CHECK(run_cli("bounds --m-max 99").exit_code == 3);          // capacity guard
  CHECK(run_cli("lhv-brute --n 4 --m 7").exit_code == 3);      // enumeration guard
  CHECK(run_cli("sweep --n 2 --m 2 --v-max 1.5").exit_code == 4);
  CHECK(run_cli("definitely-not-a-command").exit_code == 4);
  CHECK(run_cli("quantum --m 2").exit_code == 4);              // missing --n
  CHECK(run_cli("export --input /nonexistent.json").exit_code == 2);
}

TEST_CASE("verify is seed-stable and idempotent") {
  const auto first = run_cli("verify --n 2 --m 2");
  const auto second = run_cli("verify --n 2 --m 2");
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);
}

TEST_CASE("thread settings are accepted via flag and environment") {
  CHECK(run_cli("--threads 1 bounds --m-min 2 --m-max 4").exit_code == 0);
  CHECK(run_cli("--threads 2 lhv-brute --n 2 --m 4").exit_code == 0);
  const std::string env_cmd = "STARNET_THREADS=1 " + std::string(STARNET_CLI_PATH) +
                              " lhv-brute --n 2 --m 3 > /dev/null 2>&1";
  CHECK(std::system(env_cmd.c_str()) == 0);
}

TEST_CASE("seesaw command reports a violation at the bilocality optimum") {
  const auto run = run_cli("seesaw --n 2 --m 2 --copies 1 --seeds 6 --seed 3");
  CHECK(run.exit_code == 0);
  CHECK(run.output.find("violated true") != std::string::npos);
  CHECK(run.output.find("best delta 2.8284") != std::string::npos);
}
