#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

#include "test_helpers.hpp"

// Contract tests for the command-line tool: spawn the real binary (path in
// PHOTONSTAT_CLI) and check bytes and exit codes.

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

std::string cli_path() {
  const char* path = std::getenv("PHOTONSTAT_CLI");
  REQUIRE_MESSAGE(path != nullptr, "PHOTONSTAT_CLI must point at the binary");
  return path;
}

std::string golden_dir() {
  const char* path = std::getenv("PHOTONSTAT_GOLDEN_DIR");
  REQUIRE_MESSAGE(path != nullptr, "PHOTONSTAT_GOLDEN_DIR must be set");
  return path;
}

CmdResult run_cli(const std::string& args, bool capture_stderr = false) {
  const std::string cmd =
      cli_path() + " " + args + (capture_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult result;
  std::array<char, 4096> buffer;
  size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.out.append(buffer.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("norm: thermal photon addition closed form") {
  const CmdResult res = run_cli("norm --nc 2 --r 0 --m 3 --variant add");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("n_c,r,m,variant,norm_closed_form\n") == 0);
  CHECK(res.out.find("2,0,3,add,16") != std::string::npos);  // 162 up to rounding
}

TEST_CASE("norm: zero-norm state exits 3") {
  const CmdResult res = run_cli("norm --nc 0 --r 0 --m 1 --variant sub", true);
  CHECK(res.exit_code == 3);
  CHECK(res.out.find("zero-norm") != std::string::npos);
}

TEST_CASE("norm: oracle agreement below 1e-8") {
  const CmdResult res =
      run_cli("norm --nc 1 --r 0.5 --m 2 --variant add --with-oracle --format json");
  CHECK(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.out);
  CHECK(doc["rel_diff"].get<double>() < 1e-8);
  CHECK(doc["truncation"]["auto"].get<bool>());
  CHECK(doc["truncation"]["cert_delta"].get<double>() < 1e-10);
}

TEST_CASE("pnd: golden CSV bytes") {
  const CmdResult res = run_cli("pnd --nc 2 --r 0 --m 0 --nmax 2");
  CHECK(res.exit_code == 0);
  CHECK(res.out == read_file(golden_dir() + "/pnd_nc2_r0_m0_nmax2.csv"));
}

TEST_CASE("pnd: vacuum rows") {
  const CmdResult res = run_cli("pnd --nc 0 --r 0 --m 0 --nmax 2");
  CHECK(res.exit_code == 0);
  CHECK(res.out == "n,pnd_closed_form\n0,1\n1,0\n2,0\n");
}

TEST_CASE("pnd: oracle columns and diffs") {
  const CmdResult res =
      run_cli("pnd --nc 1 --r 0.5 --m 2 --variant add --with-oracle --nmax 12");
  CHECK(res.exit_code == 0);
  std::istringstream lines(res.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "n,pnd_closed_form,pnd_oracle,abs_diff");
  std::string row;
  int rows = 0;
  while (std::getline(lines, row)) {
    const auto last_comma = row.rfind(',');
    const double diff = std::stod(row.substr(last_comma + 1));
    CHECK(diff < 1e-9);
    ++rows;
  }
  CHECK(rows == 13);
}

TEST_CASE("pnd: byte-stable across runs") {
  const std::string args = "pnd --nc 1.7 --r -0.45 --m 2 --variant sub";
  CHECK(run_cli(args).out == run_cli(args).out);
}

TEST_CASE("json output round-trips to identical bytes") {
  for (const char* args :
       {"pnd --nc 2 --r 0.3 --m 1 --variant sub --format json",
        "norm --nc 2 --r 0.3 --m 1 --format json",
        "verify --check coefficients --format json"}) {
    const CmdResult res = run_cli(args);
    CHECK(res.exit_code == 0);
    const auto doc = nlohmann::json::parse(res.out);
    CHECK(doc.dump(2) + "\n" == res.out);
  }
}

TEST_CASE("usage and parameter errors exit 2") {
  CHECK(run_cli("pnd --nc -3 --r 0").exit_code == 2);
  CHECK(run_cli("pnd").exit_code == 2);                    // missing --nc
  CHECK(run_cli("norm --nc 1 --m -2").exit_code == 2);     // negative m
  CHECK(run_cli("pnd --nc 1 --nmax bogus").exit_code == 2);
  CHECK(run_cli("verify --check bogus").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("genfun --nc 1 --r 0.2 --f 0.7").exit_code == 2);  // divergent
}

TEST_CASE("genfun matches the closed form and the oracle") {
  const CmdResult res =
      run_cli("genfun --nc 1 --r 0.5 --f -0.6931471805599453 --with-oracle --format json");
  CHECK(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.out);
  // 60-digit reference of [C/4 - 2B/2 + A]^{-1/2} at n_c = 1, r = 0.5.
  CHECK(test_helpers::close_rel(doc["expectation_closed_form"].get<double>(),
                                0.59121258931338260577, 1e-13));
  CHECK(doc["rel_diff"].get<double>() < 1e-9);
}

TEST_CASE("verify: single checks pass and report deviations") {
  const CmdResult res = run_cli("verify --check purification --nc 1 --format json");
  CHECK(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.out);
  CHECK(doc["passed"].get<bool>());
  REQUIRE(doc["checks"].size() == 1);
  CHECK(doc["checks"][0]["check"] == "purification");
  CHECK(doc["checks"][0]["max_deviation"].get<double>() < 1e-10);
}

TEST_CASE("verify: tolerance below the double-precision floor fails") {
  const CmdResult res = run_cli("verify --check coefficients --tol 1e-15");
  CHECK(res.exit_code == 1);
}

TEST_CASE("sweep: blocks per parameter point, each summing to 1") {
  const CmdResult res = run_cli("sweep --nc 1 --r 0,0.25,0.5 --m 2 --variant add");
  CHECK(res.exit_code == 0);
  std::istringstream lines(res.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "n_c,r,m,variant,n,probability");
  std::map<std::string, double> block_sums;
  while (std::getline(lines, line)) {
    const auto key_end = line.rfind(',');
    const auto key = line.substr(0, line.find(",2,add,"));
    block_sums[key] += std::stod(line.substr(key_end + 1));
  }
  REQUIRE(block_sums.size() == 3);
  for (const auto& [key, sum] : block_sums) {
    CHECK(test_helpers::close_abs(sum, 1.0, 1e-9));
  }
}

TEST_CASE("sweep: zero-norm point is skipped with a warning row") {
  const CmdResult res = run_cli("sweep --nc 0,1 --r 0 --m 1 --variant sub --nmax 2");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("# skipped zero-norm state: n_c=0 r=0 m=1 variant=sub\n") !=
        std::string::npos);
  CHECK(res.out.find("1,0,1,sub,0,") != std::string::npos);
}

TEST_CASE("sweep: grid guard") {
  const CmdResult res = run_cli("sweep --nc 0:5:200 --r 0:1:200 --m 0,1,2 --nmax 2");
  CHECK(res.exit_code == 2);
}

TEST_CASE("output file matches stdout bytes") {
  const std::string path = "/tmp/photonstat_test_out.csv";
  std::remove(path.c_str());
  const CmdResult direct = run_cli("pnd --nc 2 --r 0 --m 0 --nmax 2");
  const CmdResult filed = run_cli("pnd --nc 2 --r 0 --m 0 --nmax 2 --output " + path);
  CHECK(filed.exit_code == 0);
  CHECK(filed.out.empty());
  CHECK(read_file(path) == direct.out);
  std::remove(path.c_str());
}
