#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "renyi/cli.hpp"

using namespace renyi;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const auto cmd = cli::parse_args(args);
  const int code = cli::run(cmd, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("parse_args builds validated commands") {
  const auto cmd = cli::parse_args({"divergence", "--family", "exp:1", "--s", "0.4", "--eps",
                                    "0.01"});
  CHECK(cmd.verb == "divergence");
  CHECK(cmd.family == "exp:1");
  CHECK(cmd.s == 0.4);
  CHECK(cmd.eps == 0.01);

  const auto lim = cli::parse_args({"limit", "--family", "beta:0.5,0.5", "--s", "0.5"});
  CHECK(lim.verb == "limit");

  const auto lem = cli::parse_args({"lemma", "--family", "uniform", "--side", "left", "--c",
                                    "0.5", "--s", "0.3"});
  CHECK(lem.side == "left");
  CHECK(lem.c == 0.5);
}

TEST_CASE("bad arguments are usage errors") {
  CHECK_THROWS_AS(cli::parse_args({"divergence", "--family", "exp:1", "--s", "1.5"}),
                  cli::UsageError);
  CHECK_THROWS_AS(cli::parse_args({"divergence", "--s", "0.5"}), cli::UsageError);  // no family
  CHECK_THROWS_AS(cli::parse_args({"frobnicate"}), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_args({"divergence", "--family", "exp:1", "--unknown-flag", "3"}),
                  cli::UsageError);
  CHECK_THROWS_AS(cli::parse_args({"lemma", "--family", "uniform", "--side", "middle", "--c",
                                   "0.5"}),
                  cli::UsageError);
  CHECK_THROWS_AS(cli::parse_args({"converge", "--family", "exp:1", "--steps", "2"}),
                  cli::UsageError);
  CHECK_THROWS_AS(cli::parse_args({"converge", "--family", "exp:1", "--format", "xml"}),
                  cli::UsageError);
  CHECK_THROWS_AS(cli::parse_args({}), cli::UsageError);
}

TEST_CASE("unknown family surfaces as a usage error at run time") {
  const auto cmd = cli::parse_args({"limit", "--family", "cauchy:1", "--s", "0.5"});
  std::ostringstream out, err;
  CHECK_THROWS_AS(cli::run(cmd, out, err), cli::UsageError);
}

TEST_CASE("divergence verb prints the scalar") {
  const auto res = run_cli({"divergence", "--family", "exp:2", "--s", "0.3", "--eps", "0.01"});
  CHECK(res.code == 0);
  CHECK(std::stod(res.out) == doctest::Approx(0.006).epsilon(1e-10));

  const auto json_res = run_cli({"divergence", "--family", "exp:2", "--s", "0.3", "--eps",
                                 "0.01", "--json"});
  const auto j = nlohmann::json::parse(json_res.out);
  CHECK(j["family"] == "exp:2");
  CHECK(j["value"].get<double>() == doctest::Approx(0.006).epsilon(1e-10));
  CHECK(j["finite"] == true);
  CHECK(j["evaluations"].get<long>() > 0);
}

TEST_CASE("divergence verb computes kl and squared hellinger") {
  const auto kl = run_cli({"divergence", "--family", "exp:2", "--quantity", "kl", "--eps",
                           "0.01"});
  CHECK(std::stod(kl.out) == doctest::Approx(0.02).epsilon(1e-9));

  const auto h2 = run_cli({"divergence", "--family", "uniform", "--quantity", "hellinger2",
                           "--eps", "0.1"});
  CHECK(std::stod(h2.out) == doctest::Approx(0.2).epsilon(1e-11));
}

TEST_CASE("limit verb prints value and regime") {
  const auto res = run_cli({"limit", "--family", "uniform", "--s", "0.7"});
  CHECK(res.code == 0);
  CHECK(res.out.find("regime=PowerKappa(1)") != std::string::npos);
  CHECK(std::stod(res.out) == doctest::Approx(1.0).epsilon(1e-12));

  const auto j = nlohmann::json::parse(
      run_cli({"limit", "--family", "beta:3,3", "--s", "0.5", "--json"}).out);
  CHECK(j["value"].get<double>() == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(j["regime"]["kind"] == "EpsSq");
}

TEST_CASE("bounds verb prints both bounds") {
  const auto res = run_cli({"bounds", "--family", "gamma:2.5,1"});
  CHECK(res.code == 0);
  CHECK(res.out.find("alpha1 = ") != std::string::npos);
  CHECK(res.out.find("alpha2 = ") != std::string::npos);

  const auto j = nlohmann::json::parse(run_cli({"bounds", "--family", "exp:1", "--json"}).out);
  CHECK(j["alpha1"]["value"].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(j["alpha2"]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j["alpha1"]["location"] == "boundary s->1");
}

TEST_CASE("converge verb writes reports and a summary") {
  const auto res = run_cli({"converge", "--family", "exp:1", "--s", "0.4", "--eps0", "0.1",
                            "--steps", "6"});
  CHECK(res.code == 0);
  CHECK(res.out.rfind("eps,I_s,g_eps,ratio,closed_form,rel_err\n", 0) == 0);
  CHECK(res.err.find("converged=true") != std::string::npos);

  const std::string path = "cli_test_report_tmp.json";
  const auto file_res = run_cli({"converge", "--family", "exp:1", "--s", "0.4", "--steps", "6",
                                 "--eps0", "0.1", "--format", "json", "--out", path});
  CHECK(file_res.code == 0);
  CHECK(file_res.out.empty());
  std::ifstream in(path);
  REQUIRE(in.good());
  const auto j = nlohmann::json::parse(in);
  CHECK(j["family"] == "exp:1");
  CHECK(j["converged"] == true);
  std::remove(path.c_str());
}

TEST_CASE("lemma and uniformity verbs run end to end") {
  const auto lem = run_cli({"lemma", "--family", "uniform", "--side", "left", "--c", "0.5",
                            "--s", "0.3", "--steps", "5", "--eps0", "0.05"});
  CHECK(lem.code == 0);
  CHECK(lem.err.find("converged=true") != std::string::npos);

  const auto uni = run_cli({"uniformity", "--family", "exp:1", "--eps0", "0.01", "--steps", "4",
                            "--s-grid", "9"});
  CHECK(uni.code == 0);
  CHECK(uni.out.rfind("eps,sup_abs_dev\n", 0) == 0);
}

TEST_CASE("families verb lists the catalog") {
  const auto res = run_cli({"families"});
  CHECK(res.code == 0);
  for (const char* name : {"beta:", "gamma:", "weibull:", "uniform", "exp:"}) {
    CHECK(res.out.find(name) != std::string::npos);
  }
}

TEST_CASE("family JSON files work through the CLI") {
  const std::string path = "cli_family_tmp.json";
  {
    std::ofstream out(path);
    out << R"({"name": "exp", "params": [2]})";
  }
  const auto res = run_cli({"divergence", "--family", path, "--s", "0.3", "--eps", "0.01"});
  CHECK(std::stod(res.out) == doctest::Approx(0.006).epsilon(1e-10));
  std::remove(path.c_str());
}

TEST_CASE("binary exit codes: 0 / 2 / 3") {
  auto exit_code = [](const std::string& args) {
    const std::string cmd = std::string(RENYI_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    return WEXITSTATUS(std::system(cmd.c_str()));
  };
  CHECK(exit_code("divergence --family exp:1 --s 0.4 --eps 0.01") == 0);
  CHECK(exit_code("--help") == 0);
  CHECK(exit_code("divergence --family exp:1 --s 1.5 --eps 0.01") == 2);
  CHECK(exit_code("divergence --family nope:1 --s 0.4 --eps 0.01") == 2);
  CHECK(exit_code("divergence --family uniform --s 0.4 --eps 2") == 2);
  // noise-limited sweep start surfaces as a numerical error
  CHECK(exit_code("converge --family beta:3,3 --s 0.5 --eps0 1e-8 --steps 4") == 3);
}

TEST_CASE("help is not an error") {
  const auto cmd = cli::parse_args({"--help"});
  CHECK(cmd.help_requested);
  std::ostringstream out, err;
  CHECK(cli::run(cmd, out, err) == 0);
  CHECK(out.str().find("divergence") != std::string::npos);
}

}  // TEST_SUITE
