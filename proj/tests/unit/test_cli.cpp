#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "wienerwave/cli.hpp"
#include "wienerwave/rational.hpp"

using namespace ww;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::initializer_list<std::string> args) {
  std::vector<std::string> store{"wienerwave"};
  store.insert(store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : store) argv.push_back(s.data());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("wienerwave_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("regions thm1 example is admissible") {
  const auto r = invoke({"regions", "--check", "thm1", "--n", "3", "--sigma", "4/5", "--q", "30", "--qt", "3", "--r",
                         "9/2", "--rt", "24/5"});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["admissible"] == true);
  CHECK(j["schema_version"] == kSchemaVersion);
  // Every rational printed re-parses to the value that went in.
  CHECK(Rational::parse(j["tuple"]["sigma"].get<std::string>()) == Rational(4, 5));
  CHECK(Rational::parse(j["tuple"]["r_tilde"].get<std::string>()) == Rational(24, 5));
  CHECK(Rational::parse(j["tuple"]["q"].get<std::string>()) == Rational(30));
}

TEST_CASE("usage and admissibility exit codes") {
  const auto missing = invoke({"regions", "--sigma", "4/5"});
  CHECK(missing.code == kExitUsage);
  CHECK(missing.err.find("--check") != std::string::npos);

  const auto bad = invoke({"regions", "--check", "thm1", "--sigma", "4/x", "--q", "30", "--qt", "3", "--r", "9/2",
                           "--rt", "24/5"});
  CHECK(bad.code == kExitUsage);

  const auto unknown = invoke({"regions", "--check", "thm1", "--colour", "red"});
  CHECK(unknown.code == kExitUsage);

  const auto no = invoke({"regions", "--check", "thm1", "--sigma", "4/5", "--q", "2", "--qt", "2", "--r", "9/2",
                          "--rt", "24/5"});
  CHECK(no.code == kExitAdmissibility);
  CHECK(nlohmann::json::parse(no.out)["admissible"] == false);

  CHECK(invoke({}).code == kExitUsage);
}

TEST_CASE("kernel command") {
  const auto a = invoke({"kernel", "--gamma", "8/5", "--r", "2", "--t", "5"});
  const auto b = invoke({"kernel", "--gamma", "8/5", "--r", "2", "--t", "5", "--method", "closed"});
  REQUIRE(a.code == kExitOk);
  REQUIRE(b.code == kExitOk);
  const auto ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
  CHECK(ja["re"].get<double>() == doctest::Approx(jb["re"].get<double>()).epsilon(1e-6));
  CHECK(ja["im"].get<double>() == doctest::Approx(jb["im"].get<double>()).epsilon(1e-6));
  CHECK(invoke({"kernel", "--gamma", "8/5", "--r", "2", "--t", "5", "--method", "guess"}).code == kExitUsage);
  CHECK(invoke({"kernel", "--gamma", "3", "--r", "2", "--t", "5"}).code == kExitUsage);
}

TEST_CASE("decay run writes CSV and JSON near the predicted slope") {
  const fs::path dir = scratch("decay");
  const auto r = invoke({"--out", dir.string(), "decay", "--gamma", "8/5", "--r", "9/2", "--rt", "24/5", "--regime",
                         "large"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir / "decay.json"));
  REQUIRE(j["fits"].size() == 1);
  CHECK(j["fits"][0]["target"] == "-1/15");
  CHECK(std::abs(j["fits"][0]["slope"].get<double>() + 1.0 / 15) <= 0.10);
  CHECK(j["fits"][0]["pass"] == true);
  const std::string csv = slurp(dir / "decay.csv");
  CHECK(csv.rfind("t,norm,estimator,gamma,r,r_tilde\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("reruns are byte-identical") {
  const fs::path dir = scratch("idem");
  auto once = [&] {
    REQUIRE(invoke({"--out", dir.string(), "decay", "--gamma", "21/10", "--r", "10", "--rt", "20", "--regime", "both",
                    "--source", "closed"})
                .code == kExitOk);
    return std::pair{slurp(dir / "decay.csv"), slurp(dir / "decay.json")};
  };
  const auto a = once();
  const auto b = once();
  CHECK(a.first == b.first);
  CHECK(a.second == b.second);
  CHECK(!a.first.empty());
}

TEST_CASE("output directory from the environment") {
  const fs::path dir = scratch("env");
  ::setenv(kOutputDirEnv, dir.string().c_str(), 1);
  const auto r = invoke({"regions", "--check", "sample", "--gamma", "8/5", "--denominator", "10"});
  ::unsetenv(kOutputDirEnv);
  CHECK(r.code == kExitOk);
  CHECK(fs::exists(dir / "region.csv"));
}
