#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "orelp/cli.hpp"

using nlohmann::json;
using orelp::cli::run;

namespace {

struct Result {
  int code = 0;
  std::string out, err;

  json report() const { return json::parse(out); }
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(ORELP_DATA_DIR) + "/" + name; }

std::string temp(const std::string& name) { return (std::filesystem::temp_directory_path() / ("orelp_cli_" + name)).string(); }

json read(const std::string& path) {
  std::ifstream in(path);
  return json::parse(in);
}

void write(const std::string& path, const json& j) { std::ofstream(path) << j.dump(); }

}  // namespace

TEST_CASE("certify and verify round trip") {
  auto cert = temp("c222.json");
  auto r = invoke({"certify", "2", "2", "2", "a b c", "--out", cert});
  REQUIRE(r.code == 0);
  auto rep = r.report();
  CHECK(rep["verdict"] == "pass");
  CHECK(rep["payload"]["certificate"]["certificate"]["residual"].get<double>() < 1e-9);
  CHECK(invoke({"verify", cert}).code == 0);

  json bad = read(cert);
  bad["certificate"]["generators"][1]["axis"][2] = bad["certificate"]["generators"][1]["axis"][2].get<double>() + 0.05;
  write(temp("c222_bad.json"), bad);
  CHECK(invoke({"verify", temp("c222_bad.json")}).code == 2);

  auto tree = temp("c622.json");
  REQUIRE(invoke({"certify", "6", "2", "2", "a b c", "--out", tree}).code == 0);
  json t = read(tree);
  CHECK(t["kind"] == "crt");
  CHECK(t["children"].size() == 2);
  CHECK(invoke({"verify", tree}).code == 0);
  t["children"].erase(t["children"].begin());
  write(temp("c622_bad.json"), t);
  CHECK(invoke({"verify", temp("c622_bad.json")}).code == 2);
}

TEST_CASE("round trip over several relators") {
  for (std::string word : {"a b c", "a b^2 c", "a^2 b c a b", "a b a c^2"}) {
    for (auto orders : std::vector<std::array<const char*, 3>>{{"3", "4", "5"}, {"2", "3", "7"}}) {
      auto cert = temp("rt.json");
      auto r = invoke({"certify", orders[0], orders[1], orders[2], word, "--out", cert});
      if (r.code == 1) continue;  // exponent sum vanishes for these orders
      CHECK_MESSAGE(r.code == 0, word);
      CHECK(invoke({"verify", cert}).code == 0);
    }
  }
}

TEST_CASE("exit codes") {
  CHECK(invoke({"certify", "2", "2", "2", "a b a^-1 c"}).code == 1);
  CHECK(invoke({"certify", "2", "2", "2", "a x c"}).code == 1);
  CHECK(invoke({"--grid", "24", "certify", "2", "2", "2", "a b c"}).code == 1);
  CHECK(invoke({"--tol", "-1", "certify", "2", "2", "2", "a b c"}).code == 1);
  CHECK(invoke({}).code == 1);
  CHECK(invoke({"nonsense"}).code == 1);
  CHECK(invoke({"verify", temp("does_not_exist.json")}).code == 1);
  CHECK(invoke({"picture", "check", data("dipole.json"), "--scheme", "weird"}).code == 1);
  CHECK(invoke({"--help"}).code == 0);

  json invalid = read(data("dipole.json"));
  invalid["vertices"][0]["corners"][0] = "AB:U";
  write(temp("invalid_picture.json"), invalid);
  auto r = invoke({"picture", "check", temp("invalid_picture.json")});
  CHECK(r.code == 2);
  CHECK(r.report()["verdict"] == "fail");
}

TEST_CASE("payloads are deterministic") {
  std::vector<std::vector<std::string>> commands = {
      {"--seed", "4", "certify", "3", "4", "5", "a b^2 c a"},
      {"nielsen", "classify", "--factors", "a:2,b:4", "--u", "a b", "--v", "a b a b^3"},
      {"enumerate", "--factors", "a:2,b:5", "--u", "a b", "--v", "a b a b^3", "--bound", "10"},
      {"picture", "check", data("news4_sphere.json"), "--scheme", "news4"},
      {"tracesolve", data("targets_identity.json")},
  };
  for (const auto& c : commands) {
    auto a = invoke(c), b = invoke(c);
    REQUIRE(a.code == 0);
    CHECK(a.report()["payload"].dump() == b.report()["payload"].dump());
    CHECK(a.report().contains("timing"));
  }
}

TEST_CASE("picture check") {
  auto r = invoke({"picture", "check", data("dipole.json"), "--scheme", "standard"});
  REQUIRE(r.code == 0);
  auto rep = r.report();
  CHECK(rep["verdict"] == "pass");
  CHECK(rep["payload"]["curvature"]["total"] == "4pi");
  CHECK(rep["payload"]["reduced_direct"] == false);

  auto d = invoke({"picture", "check", data("news4_disc.json"), "--scheme", "news4"});
  REQUIRE(d.code == 0);
  CHECK(d.report()["payload"]["audit"]["curvature"]["total"] == "2pi");
  CHECK(d.report()["payload"]["audit"]["vertices_flat"] == true);
}

TEST_CASE("tracesolve and nielsen drivers") {
  auto t = invoke({"tracesolve", data("targets_identity.json")});
  REQUIRE(t.code == 0);
  CHECK(t.report()["payload"]["verification"]["target_error"].get<double>() < 1e-8);

  auto e = invoke({"enumerate", "--factors", "a:2,b:4", "--u", "a b", "--v", "a b a b^2", "--bound", "12"});
  CHECK(e.code == 0);
  CHECK(e.report()["payload"]["trivial"].empty());
  CHECK(invoke({"enumerate", "--factors", "a:2,b:4", "--u", "a b", "--v", "a b a b"}).code == 1);

  auto red = invoke({"nielsen", "reduce", "--factors", "a:2,b:7", "--u", "a b", "--v", "a b a b^3"});
  CHECK(red.report()["payload"]["reduction"]["pair"]["v"] == "b^2");
  auto cl = invoke({"nielsen", "classify", "--factors", "a:2,b:3", "--u", "a b", "--v", "a b a b a b a b a b"});
  CHECK(cl.code == 0);
  CHECK(cl.report()["verdict"] == "unresolved");
}

TEST_CASE("text format projects the json report") {
  std::vector<std::string> cmd = {"nielsen", "index", "U V U^-1 V^-1"};
  auto j = invoke(cmd).report();
  cmd.insert(cmd.begin(), {"--format", "text"});
  auto text = invoke(cmd).out;
  CHECK(text.find("verdict = pass") != std::string::npos);
  for (auto it = j["payload"].begin(); it != j["payload"].end(); ++it) {
    std::string value = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
    CHECK(text.find("payload." + it.key() + " = " + value) != std::string::npos);
  }
}

TEST_CASE("environment overrides") {
  setenv("ORELP_FORMAT", "text", 1);
  auto r = invoke({"nielsen", "index", "U V"});
  unsetenv("ORELP_FORMAT");
  CHECK(r.out.rfind("verdict = ", 0) == 0);

  setenv("ORELP_GRID", "12", 1);
  CHECK(invoke({"certify", "2", "2", "2", "a b c"}).code == 1);
  unsetenv("ORELP_GRID");
}
