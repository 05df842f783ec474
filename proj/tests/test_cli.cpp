#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "bconv/cli.hpp"

using bconv::cli::run;
namespace cli = bconv::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json invoke_json(std::vector<std::string> args) {
  const auto r = invoke(std::move(args));
  REQUIRE(r.code == cli::kOk);
  return nlohmann::json::parse(r.out);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("gamma prints the lattice as CSV") {
  const auto r = invoke({"gamma", "--n", "4", "--p", "1", "--K", "2"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "index,value_num,value_den,digits\n0,0,1,0;0\n1,2,1,2;0\n2,16,1,0;2\n3,18,1,2;2\n");
  const auto odd = invoke({"gamma", "--n", "3", "--K", "1"});
  CHECK(odd.out == "index,value_num,value_den,digits\n0,0,1,0\n1,3,2,3/2\n");
}

TEST_CASE("muhat") {
  const auto r = invoke({"muhat", "--lambda", "1/8", "--t", "2", "--depth", "5"});
  CHECK(r.code == cli::kOk);
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header == "t,value,error_bound,depth");
  CHECK(row.rfind("2,0,", 0) == 0);
  CHECK(row.substr(row.rfind(',') + 1) == "5");

  const auto j = invoke_json({"muhat", "--lambda", "1/2", "--grid", "0:1:3", "--format", "json", "--D", "40"});
  CHECK(j["values"].size() == 3);
  CHECK(std::abs(j["values"][2]["value"].get<double>()) < 1e-12);
}

TEST_CASE("ortho") {
  auto j = invoke_json({"ortho", "--lambda", "3/8", "--t", "2/3"});
  CHECK(j["member"] == true);
  CHECK(j["k"] == 1);
  CHECK(j["m"] == "0");
  j = invoke_json({"ortho", "--lambda", "1/3", "--set", "0,1/4,1/2"});
  CHECK(j["all_orthogonal"] == false);
  CHECK(j["first_failure"] == nlohmann::json({"0/1", "1/4"}));
  j = invoke_json({"ortho", "--lambda", "1/8", "--n", "4", "--p", "3", "--K", "5"});
  CHECK(j["all_orthogonal"] == true);
  CHECK(j["pairs_checked"] == 32 * 31 / 2);
}

TEST_CASE("scan csv and json") {
  const auto r = invoke({"scan", "--lambda", "1/8", "--n", "4", "--p", "7", "--K", "2,4", "--D", "30", "--grid", "0:4:5"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.rfind("t,value,error_bound,K,D\n", 0) == 0);
  CHECK(r.out.find("\n2,0,0,4,30\n") != std::string::npos);
  const auto j = invoke_json(
      {"scan", "--lambda", "1/8", "--n", "4", "--p", "7", "--K", "4,2", "--D", "30", "--grid", "0:4:5", "--format", "json"});
  CHECK(j["diagnosis"] == "deficiency-evidence");
  CHECK(j["scans"][0]["K"] == 2);
  CHECK(j["scans"][1].contains("max_slope"));
  CHECK(invoke({"scan", "--lambda", "1/8"}).code == cli::kUsage);
}

TEST_CASE("gram") {
  const auto j = invoke_json({"gram", "--lambda", "1/8", "--n", "4", "--K", "3", "--D", "30"});
  CHECK(j["frequencies"].size() == 8);
  CHECK(j["eigen_estimates"]["upper"].get<double>() == doctest::Approx(1.0));
  CHECK(j["eigen_estimates"]["lower"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("transfer and chain") {
  const auto tmp = std::filesystem::temp_directory_path() / "bconv_test_fn.csv";
  const auto r = invoke({"transfer", "--n", "4", "--p", "3", "--iters", "40", "--nodes", "513", "--function-out", tmp.string()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.rfind("iter,sup_dev,seminorm\n0,", 0) == 0);
  const std::string fn = slurp(tmp);
  CHECK(fn.rfind("t,value\n0,1\n", 0) == 0);
  std::filesystem::remove(tmp);

  const auto j = invoke_json({"transfer", "--n", "4", "--p", "5", "--iters", "3", "--nodes", "65", "--format", "json"});
  CHECK(j["contractive"] == false);
  CHECK(j["interval"] == nlohmann::json({"0/1", "10/7"}));
  CHECK(invoke({"transfer", "--start", "bogus"}).code == cli::kContractViolation);

  const auto c = invoke({"chain", "--k", "1", "--K", "5", "--D", "30", "--grid", "0:3:4"});
  CHECK(c.code == cli::kOk);
  CHECK(c.out.rfind("t,f_k,transfer_f_next,residual,error_bound\n", 0) == 0);
  CHECK(invoke({"chain", "--k", "4"}).code == cli::kResourceLimit);
}

TEST_CASE("maximal and stress") {
  auto j = invoke_json({"maximal", "--t", "6"});
  CHECK(j["gamma"] == "2/1");
  CHECK(j["case_tag"] == "p0-i0");
  CHECK(j["verified"] == true);
  j = invoke_json({"maximal", "--t=-6"});
  CHECK(j["case_tag"] == "fallback-search");
  CHECK(invoke({"maximal", "--t", "18"}).code == cli::kContractViolation);

  const auto s = invoke({"stress", "--count", "200", "--seed", "3"});
  CHECK(s.code == cli::kOk);
  CHECK(s.out.rfind("case_tag,attempted,verified\nnot-in-zero-set,", 0) == 0);
}

TEST_CASE("sample and hadamard") {
  const auto a = invoke({"sample", "--lambda", "3/8", "--count", "50", "--seed", "9"});
  const auto b = invoke({"sample", "--lambda", "3/8", "--count", "50", "--seed", "9"});
  CHECK(a.code == cli::kOk);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("index,value,tail_radius\n", 0) == 0);
  CHECK(a.out != invoke({"sample", "--lambda", "3/8", "--count", "50", "--seed", "10"}).out);

  auto j = invoke_json({"hadamard", "--B=-1,1", "--L", "0,2", "--N", "8"});
  CHECK(j["hadamard"] == true);
  j = invoke_json({"hadamard", "--B", "0,1", "--L", "0,2"});
  CHECK(j["hadamard"] == false);
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == cli::kUsage);
  CHECK(invoke({"bogus"}).code == cli::kUsage);
  CHECK(invoke({"gamma", "--bogus", "1"}).code == cli::kUsage);
  CHECK(invoke({"muhat", "--lambda", "3/2", "--t", "1"}).code == cli::kContractViolation);
  CHECK(invoke({"muhat", "--lambda", "1/8"}).code == cli::kContractViolation);
  CHECK(invoke({"gamma", "--K", "30"}).code == cli::kResourceLimit);
  CHECK(invoke({"gamma", "--help"}).code == cli::kOk);
  const auto e = invoke({"gamma", "--n", "1"});
  CHECK(e.code == cli::kContractViolation);
  CHECK(e.err.find("n >= 2") != std::string::npos);
}

TEST_CASE("--out writes the same bytes as stdout") {
  const auto tmp = std::filesystem::temp_directory_path() / "bconv_test_out.csv";
  const std::vector<std::string> args{"scan", "--lambda", "3/8", "--n", "4", "--K", "3,6", "--D", "25", "--grid", "0:1:9"};
  const auto direct = invoke(args);
  auto with_out = args;
  with_out.push_back("--out");
  with_out.push_back(tmp.string());
  const auto r = invoke(with_out);
  CHECK(r.code == cli::kOk);
  CHECK(r.out.empty());
  CHECK(slurp(tmp) == direct.out);
  CHECK(invoke(args).out == direct.out);
  std::filesystem::remove(tmp);
}

TEST_CASE("the installed binary wires main to run") {
  const std::string bin = BCONV_CLI_PATH;
  FILE* pipe = ::popen((bin + " gamma --n 2 --K 2").c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[256];
  while (std::fgets(buf, sizeof buf, pipe)) out += buf;
  const int status = ::pclose(pipe);
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(out == "index,value_num,value_den,digits\n0,0,1,0;0\n1,1,1,1;0\n2,4,1,0;1\n3,5,1,1;1\n");
  const int usage = std::system((bin + " nonsense >/dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(usage) == 64);
}
