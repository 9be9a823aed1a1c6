#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using bellqft::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(call({}).code == 1);
  CHECK(call({"frobnicate"}).code == 1);
  CHECK(call({"eval-tt", "--no-such-flag"}).code == 1);
  CHECK(call({"--help"}).code == 0);
  CHECK(call({"eval-tt", "--lambda", "1.5"}).code == 2);
  CHECK(call({"--family", "cauchy", "eval-tt"}).code == 2);
  CHECK(call({"smear", "--f", "side=up"}).code == 2);
  CHECK(call({"--points", "10", "smear"}).code == 2);
  CHECK(call({"eval-tt"}).code == 0);
}

TEST_CASE("provenance header and CSV body") {
  const auto r = call({"--seed", "4", "eval-tt", "--eta", "0.5"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# bellqft ", 0) == 0);
  CHECK(r.out.find("# seed: 4") != std::string::npos);
  CHECK(r.out.find("# settings: ") != std::string::npos);
  CHECK(r.out.find("# config-digest: fnv1a64:") != std::string::npos);
  CHECK(r.out.find("\nvalue,term_ab,term_apb,term_abp,term_apbp,error,eta,") != std::string::npos);
  CHECK(r.out.find(",0.5,") != std::string::npos);
  CHECK(bellqft::cli::fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(bellqft::cli::fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("kernels-verify flags the printed Gaussian pair") {
  const auto r = call({"kernels-verify", "--grid-points", "41"});
  CHECK(r.code == 0);
  CHECK(r.out.find("sech,sech(x),") != std::string::npos);
  CHECK(r.out.find("documented-mismatch") != std::string::npos);
}

TEST_CASE("scan header names the axes") {
  const auto r = call({"scan", "--mode", "tt", "--axis1", "eta:0:0.1:2", "--axis2", "lambda:0.5:0.9:2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\neta,lambda,value,error,exceeds_2\n") != std::string::npos);
  CHECK(call({"scan", "--axis1", "eta:0:1"}).code == 2);
}

TEST_CASE("config files, precedence and unknown keys") {
  const std::string good = "cli_test_good.ini", bad = "cli_test_bad.ini";
  std::ofstream(good) << "seed = 5\nfamily = sech\n[eval-tt]\neta = 0.5\n";
  std::ofstream(bad) << "[eval-tt]\netaa = 0.5\n";
  const auto from_file = call({"--config", good, "eval-tt"});
  REQUIRE(from_file.code == 0);
  CHECK(from_file.out.find("# seed: 5") != std::string::npos);
  CHECK(from_file.out.find(",sech,") != std::string::npos);
  const auto flag_wins = call({"--config", good, "eval-tt", "--family", "lorentz"});
  CHECK(flag_wins.out.find(",lorentz,") != std::string::npos);
  CHECK(call({"--config", bad, "eval-tt"}).code == 2);
  std::remove(good.c_str());
  std::remove(bad.c_str());
}

TEST_CASE("output files are byte-identical across runs") {
  const std::vector<std::string> base = {"--points", "2000", "--replicates", "2", "--seed", "3"};
  const std::vector<std::vector<std::string>> commands = {
      {"smear", "--route", "qmc"},
      {"eval-diamond"},
      {"optimize", "--budget", "60", "--param", "eta:-1:1", "--param", "lambda:0.1:0.9"},
  };
  for (const auto& cmd : commands) {
    std::vector<std::string> args = base;
    args.insert(args.end(), cmd.begin(), cmd.end());
    args.insert(args.end(), {"--out", "cli_test_a.csv"});
    REQUIRE(call(args).code == 0);
    args.back() = "cli_test_b.csv";
    REQUIRE(call(args).code == 0);
    CHECK(slurp("cli_test_a.csv") == slurp("cli_test_b.csv"));
    CHECK_FALSE(slurp("cli_test_a.csv").empty());
  }
  std::remove("cli_test_a.csv");
  std::remove("cli_test_b.csv");
}
