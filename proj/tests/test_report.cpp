#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "grassdim/report_io.hpp"

using namespace grassdim;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

/// Run the CLI binary named by GRASSDIM_BIN; stderr is folded into stdout.
RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("GRASSDIM_BIN");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    res.out.append(buf.data(), got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

bool have_cli() { return std::getenv("GRASSDIM_BIN") != nullptr; }

}  // namespace

TEST_CASE("dimension report JSON round trip") {
  auto rep = dimension(SecantParams{6, 3, 2, 1}, FieldSpec::auto_prime(5), 2);
  nlohmann::json j = rep;
  auto back = j.get<DimensionReport>();
  CHECK(back == rep);

  // Rational-mode report (empty primes list) round-trips too.
  auto rq = dimension(SecantParams{4, 2, 2, 0}, FieldSpec::rationals(5), 2);
  nlohmann::json jq = rq;
  CHECK(jq.get<DimensionReport>() == rq);
}

TEST_CASE("prediction JSON round trip, including the below-stability case") {
  for (SecantParams p : {SecantParams{7, 3, 2, 1}, SecantParams{4, 3, 3, 1}}) {
    nlohmann::json j = predict(p);
    CHECK(j.get<Prediction>() == predict(p));
  }
}

TEST_CASE("CSV row layout") {
  auto rep = dimension(SecantParams{7, 3, 2, 1}, FieldSpec::auto_prime(5), 2);
  CHECK(csv_header() ==
        "n,k,s,r,cone,proj,virtual,expected,fiber,defect,fiber_match");
  CHECK(csv_row(rep) == "7,3,2,1,20,19,23,23,19,4,1");
}

TEST_CASE("cli: dim json output and known values") {
  if (!have_cli()) return;
  auto res = run_cli("dim 7 3 2 0 --trials 2 --seed 3 --format json");
  REQUIRE(res.exit_code == 0);
  auto j = nlohmann::json::parse(res.out);
  CHECK(j["cone_dim"] == 26);
  CHECK(j["proj_dim"] == 25);
}

TEST_CASE("cli: byte-identical output for a fixed seed") {
  if (!have_cli()) return;
  auto a = run_cli("dim 5 2 2 1 --trials 3 --seed 9 --format json");
  auto b = run_cli("dim 5 2 2 1 --trials 3 --seed 9 --format json");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("cli: exit codes") {
  if (!have_cli()) return;
  CHECK(run_cli("dim 3 5 1 0 --trials 2").exit_code == 2);   // k > n
  CHECK(run_cli("dim 7 3 2 0 --trials 1").exit_code == 2);   // trials < 2
  CHECK(run_cli("dim 26 13 2 1 --trials 2").exit_code == 4); // guard rail
  CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("cli: recover round trip on a point file") {
  if (!have_cli()) return;
  // e0^e1^e2 + e0^e3^e4 in 5 variables; lex rank of {0,3,4} is 5.
  std::string path = "recover_test_point.txt";
  {
    std::ofstream f(path);
    f << "5 3\n1 0 0 0 0 1 0 0 0 0\n";
  }
  auto res = run_cli("recover " + path + " 1");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("overlap basis") != std::string::npos);
  CHECK(res.out.find("round-trip scalar: 1") != std::string::npos);

  // Wrong overlap dimension surfaces the observed kernel dimension.
  auto bad = run_cli("recover " + path + " 2");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("kernel dimension 1") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("cli: orbit count and classify") {
  if (!have_cli()) return;
  auto res = run_cli("orbit-count --seed-form 012");
  REQUIRE(res.exit_code == 0);
  CHECK(res.out.find("1395") != std::string::npos);

  auto cls = run_cli("orbit-count --classify");
  REQUIRE(cls.exit_code == 0);
  CHECK(cls.out.find("54684") != std::string::npos);
  CHECK(cls.out.find("468720") != std::string::npos);
  CHECK(cls.out.find("# total,1048575") != std::string::npos);
}

TEST_CASE("cli: defect scan emits the fixed CSV schema") {
  if (!have_cli()) return;
  auto res = run_cli(
      "defect-scan --n 5:6 --k 2:3 --s 2:2 --r 0:1 --trials 2 --seed 4");
  REQUIRE(res.exit_code == 0);
  CHECK(res.out.find("n,k,s,r,cone,proj,virtual,expected,fiber,defect,"
                     "fiber_match") != std::string::npos);
  CHECK(res.out.find("5,2,2,1,") != std::string::npos);
}

TEST_CASE("cli: defect scan keeps going past failing tuples") {
  if (!have_cli()) return;
  // 2^20 - 3 is prime but sits below the rank-oracle floor, so every tuple
  // fails; the scan still emits its header, one comment per failure, and
  // finishes with partial results rather than aborting.
  auto res = run_cli(
      "defect-scan --n 5:5 --k 2:2 --s 2:2 --r 0:1 --trials 2 "
      "--prime 1048573");
  REQUIRE(res.exit_code == 0);
  CHECK(res.out.find("n,k,s,r,") != std::string::npos);
  CHECK(res.out.find("failed:") != std::string::npos);
}

TEST_CASE("cli: predict") {
  if (!have_cli()) return;
  auto res = run_cli("predict 7 3 2 1 --format json");
  REQUIRE(res.exit_code == 0);
  auto j = nlohmann::json::parse(res.out);
  CHECK(j["fiber"] == 19);
  CHECK(j["expected"] == 23);
  CHECK(j["stable_family_dim"] == 23);
}

TEST_CASE("cli: code-gen emits one CSV row per Plücker coordinate") {
  if (!have_cli()) return;
  auto res = run_cli("code-gen 4 2 2");
  REQUIRE(res.exit_code == 0);
  int rows = 0;
  size_t pos = 0;
  while ((pos = res.out.find('\n', pos)) != std::string::npos) {
    ++rows;
    ++pos;
  }
  CHECK(rows == 6);
  CHECK(res.out.find(',') != std::string::npos);
}

TEST_CASE("cli: explicit prime selection") {
  if (!have_cli()) return;
  auto ok = run_cli("dim 6 3 2 1 --trials 2 --prime 2147483647 --format json");
  REQUIRE(ok.exit_code == 0);
  auto j = nlohmann::json::parse(ok.out);
  CHECK(j["primes_used"][0] == 2147483647);
  CHECK(j["cone_dim"] == 15);
  // Below the rank-oracle floor, or composite: usage errors.
  CHECK(run_cli("dim 6 3 2 1 --trials 2 --prime 1000003").exit_code == 2);
  CHECK(run_cli("dim 6 3 2 1 --trials 2 --prime 1000004").exit_code == 2);
}

TEST_CASE("cli: dim csv format") {
  if (!have_cli()) return;
  auto res = run_cli("dim 7 3 2 1 --trials 2 --seed 3 --format csv");
  REQUIRE(res.exit_code == 0);
  CHECK(res.out.find(csv_header()) != std::string::npos);
  CHECK(res.out.find("7,3,2,1,20,19,23,23,19,4,1") != std::string::npos);
}

TEST_CASE("cli: orbit export file") {
  if (!have_cli()) return;
  std::string path = "cli_orbit_export.bin";
  auto res = run_cli("orbit-count --seed-form 012 --export " + path);
  REQUIRE(res.exit_code == 0);
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  REQUIRE(in.good());
  CHECK(in.tellg() == 1395 * 4);
  std::remove(path.c_str());
}
