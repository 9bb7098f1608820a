#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "shrinker/cli.hpp"

using namespace shrinker;

namespace {
struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_in_process(const std::string& sub, const RunConfig& config) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(sub, config, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    out.push_back(line);
  }
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) {
    out.push_back(cell);
  }
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("shrinkerlab_test_" + name);
}

int shell(const std::string& command) {
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}
}  // namespace

TEST_CASE("frequency CSV for u = y1 has N = 3/2 on every row") {
  RunConfig config;
  config.t_min = 0.1;
  config.t_max = 10.0;
  config.ppd = 5.0;
  const Outcome o = run_in_process("frequency", config);
  CHECK(o.code == exit_code::kOk);
  const auto rows = lines(o.out);
  REQUIRE(rows.size() > 3);
  CHECK(rows[0].rfind("# shrinkerlab frequency v1", 0) == 0);
  CHECK(rows[1] == "t,H,J,h,N,engine,ode_residual,logderiv_residual");
  std::size_t data = 0;
  for (std::size_t i = 2; i < rows.size(); ++i) {
    const auto cells = split(rows[i]);
    if (cells.size() != 8) {
      continue;
    }
    ++data;
    CHECK(std::stod(cells[4]) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(cells[5] == "closed_form");
  }
  CHECK(data == 10);
  CHECK(o.out.find('\r') == std::string::npos);
  CHECK(o.err.find("pass=") != std::string::npos);
}

TEST_CASE("frequency with the quadrature engine and JSON output") {
  RunConfig config;
  config.engine = "quadrature";
  config.modes = "poly:d=0,c=1;poly:d=2,c=0.3";
  config.alpha = 0.0;
  config.t_min = 0.5;
  config.t_max = 2.0;
  config.ppd = 4.0;
  const auto json_path = scratch("freq.json");
  config.json_out = json_path.string();
  const Outcome o = run_in_process("frequency", config);
  CHECK(o.code == exit_code::kOk);
  const nlohmann::json j = nlohmann::json::parse(slurp(json_path));
  CHECK(j["schema_version"] == 1);
  CHECK(j["summary"]["fail"] == 0);
  std::filesystem::remove(json_path);
}

TEST_CASE("models catalogue lists R as a fraction") {
  const Outcome o = run_in_process("models", RunConfig{});
  CHECK(o.code == exit_code::kOk);
  CHECK(o.out.rfind("family,descriptor,m,k,n,R,beta,V_N", 0) == 0);
  CHECK(o.out.find(",3/2,") != std::string::npos);
  CHECK(o.out.find("cylinder:m=2,k=1") != std::string::npos);
}

TEST_CASE("dimension and volume subcommands") {
  RunConfig config;
  config.d_max = 3;
  const Outcome d = run_in_process("dimension", config);
  CHECK(d.code == exit_code::kOk);
  CHECK(d.out.find("degree_cap,growth_order,dim\n0,0,1\n1,0.5,4\n2,1,9\n3,1.5,16\n") != std::string::npos);
  config.model = "cylinder:m=2,k=1";
  const Outcome v = run_in_process("volume", config);
  CHECK(v.code == exit_code::kOk);
  CHECK(v.out.rfind("# shrinkerlab volume v1", 0) == 0);
}

TEST_CASE("doubling CSV") {
  RunConfig config;
  config.T = 16.0;
  config.lambda = 2.0;
  const Outcome o = run_in_process("doubling", config);
  CHECK(o.code == exit_code::kOk);
  CHECK(o.out.find("t,ratio,L_emp,L_tight,L_paper,verdict") != std::string::npos);
  config.T = 2.0;
  CHECK(run_in_process("doubling", config).code == exit_code::kUsage);
}

TEST_CASE("usage errors exit with code 2 and name the column") {
  RunConfig config;
  config.modes = "poly:d=1;pol:d=2";
  const Outcome o = run_in_process("frequency", config);
  CHECK(o.code == exit_code::kUsage);
  CHECK(o.err.find(":1:10:") != std::string::npos);
  config = RunConfig{};
  config.model = "cylinder:m=1,k=1";
  CHECK(run_in_process("frequency", config).code == exit_code::kUsage);
  config = RunConfig{};
  config.t_min = 5.0;
  config.t_max = 1.0;
  CHECK(run_in_process("frequency", config).code == exit_code::kUsage);
  config = RunConfig{};
  config.engine = "simpson";
  CHECK(run_in_process("frequency", config).code == exit_code::kUsage);
  CHECK(run_in_process("bogus", RunConfig{}).code == exit_code::kUsage);
}

TEST_CASE("verify on one model writes a sorted JSON report") {
  RunConfig config;
  config.model = "gaussian:k=2";
  config.model_given = true;
  config.seed = 3;
  const auto path = scratch("verify.json");
  config.out = path.string();
  const Outcome o = run_in_process("verify", config);
  CHECK(o.code == exit_code::kOk);
  const nlohmann::json j = nlohmann::json::parse(slurp(path));
  CHECK(j["summary"]["fail"] == 0);
  CHECK(j["run"]["seed"] == 3);
  const auto& entries = j["entries"];
  for (std::size_t i = 1; i < entries.size(); ++i) {
    CHECK(entries[i - 1]["id"].get<std::string>() <= entries[i]["id"].get<std::string>());
  }
  CHECK(o.out.find("pass=") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("executable: exit codes, env overrides and determinism") {
  const std::string exe = SHRINKERLAB_EXE;
  const auto a = scratch("a.json");
  const auto b = scratch("b.json");
  CHECK(shell(exe + " verify --model gaussian:k=1 --seed 11 --out " + a.string() + " > /dev/null") == 0);
  CHECK(shell(exe + " verify --model gaussian:k=1 --seed 11 --out " + b.string() + " > /dev/null") == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());
  CHECK(shell(exe + " frequency --modes 'pol:d=1' > /dev/null 2>&1") == 2);
  CHECK(shell(exe + " frequency --no-such-flag > /dev/null 2>&1") == 2);
  const auto csv = scratch("env.csv");
  CHECK(shell("SHRINKERLAB_T_MIN=2 SHRINKERLAB_T_MAX=3 " + exe + " frequency --ppd 1 --out " + csv.string() +
              " > /dev/null") == 0);
  const auto rows = lines(slurp(csv));
  REQUIRE(rows.size() >= 3);
  CHECK(rows[2].rfind("2,", 0) == 0);
  for (const auto& p : {a, b, csv}) {
    std::filesystem::remove(p);
  }
}
