#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <algorithm>
#include <random>
#include <sstream>

#include "generators.hpp"
#include "hecke/catalog.hpp"
#include "hecke/report.hpp"

using namespace hecke;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("hecke_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

RunOutcome run_text(const std::string& command, const std::string& text, const fs::path& out, std::string* printed = nullptr) {
  auto cfg = parse_config(text, command);
  cfg.out_dir = out;
  std::ostringstream os;
  auto r = run(command, cfg, os);
  if (printed) *printed = os.str();
  return r;
}

}  // namespace

TEST_CASE("config diagnostics carry line and field") {
  auto expect = [](const std::string& text, const std::string& field, int line) {
    try {
      parse_config(text, "rd-scan");
      FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.field() == field);
      CHECK(e.line() == line);
    }
  };
  expect("[general]\nradii = 4, 2\n", "general.radii", 2);
  expect("[general]\npair = dihedral\nseed = x\n", "general.seed", 3);
  expect("[general]\nmode = fancy\n", "general.mode", 2);
  expect("\n[general]\nwhat = 1\n", "general.what", 3);
  expect("[bogus]\na = 1\n", "bogus", 1);
  expect("[rd-scan]\nalpha = 1\n", "rd-scan.alpha", 2);
  CHECK_THROWS_AS(parse_config("[general\n", "pairs"), ConfigError);
  CHECK_THROWS_AS(parse_config("", "nope"), ConfigError);
}

TEST_CASE("config values") {
  const auto c = parse_config("[general]\npair = semidirect\nseed = 12\nradii = 1, 2.5, 4\nmode = float\n[pair]\naction = rot4\n"
                              "[jolissaint]\nalpha = 1/4\n[normest]\nradius = 3\n",
                              "jolissaint");
  CHECK(c.pair == "semidirect");
  CHECK(c.seed == 12u);
  CHECK(c.radii == std::vector<double>{1, 2.5, 4});
  CHECK(c.mode == CoefficientMode::floating);
  CHECK(c.params.at("action") == "rot4");
  CHECK(c.options.size() == 1);
  CHECK(c.options.at("alpha") == "1/4");
  const auto j = to_json(c);
  CHECK(j["pair"] == "semidirect");
  CHECK(j["params"]["action"] == "rot4");
}

TEST_CASE("element JSON round trip") {
  for (const std::string name : {"dihedral", "bost_connes", "gl2q", "semidirect", "sl3"}) {
    const auto p = build_pair(name);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
      const auto f = gen::element(p, rng);
      CHECK(element_from_json<ExactComplex>(p, element_to_json(f)) == f);
      const auto ff = to_float(f);
      const auto back = element_from_json<std::complex<double>>(p, element_to_json(ff));
      CHECK(back == ff);
      const auto xi = gen::vector(p, rng);
      CHECK(vector_from_json<ExactComplex>(p, vector_to_json(xi)) == xi);
    }
  }
  const auto d = build_pair("dihedral");
  CHECK_THROWS_AS(element_from_json<ExactComplex>(d, nlohmann::json::parse(R"({"pair":"sl3","terms":[]})")), ConfigError);
  CHECK_THROWS_AS(element_from_json<ExactComplex>(d, nlohmann::json::parse(R"({"terms":[{"key":["1"],"re":"1"}]})")), ConfigError);
  CHECK_THROWS_AS(element_from_json<ExactComplex>(d, nlohmann::json::parse(R"({"terms":[{"key":["1","1"],"re":0.5}]})")), ConfigError);
  // keys are re-canonicalized: H(-2,+1)H = H(2,+1)H
  const auto f = element_from_json<ExactComplex>(d, nlohmann::json::parse(R"({"terms":[{"key":["-2","-1"],"re":"1/2"}]})"));
  CHECK(f == HeckeElement::delta(d, GroupElement::dihedral(2, 1), ExactComplex(make_rational(1, 2))));
}

TEST_CASE("pairs and enumerate") {
  const auto out = scratch("pairs");
  std::string printed;
  CHECK(run_text("pairs", "", out, &printed).exit_code == 0);
  CHECK(printed.find("6 catalog pairs") != std::string::npos);
  const auto csv = slurp(out / "pairs.csv");
  CHECK(csv.rfind("name,rd_status", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);

  CHECK(run_text("enumerate", "[enumerate]\nradius = 5\n", out).exit_code == 0);
  const auto e = slurp(out / "enumerate.csv");
  CHECK(e.rfind("double_coset_key,length,degree\n", 0) == 0);
  CHECK(std::count(e.begin(), e.end(), '\n') == 7);
  const auto j = nlohmann::json::parse(slurp(out / "enumerate.json"));
  CHECK(j["result"]["ball_right"] == 11);
  CHECK(j["config"]["options"]["radius"] == "5");
}

TEST_CASE("rd-scan artifacts and determinism") {
  const std::string text = "[general]\nseed = 3\nradii = 2, 4, 8\nsamples = 30\n[rd-scan]\noperator_samples = 3\n";
  const auto a = scratch("rd_a"), b = scratch("rd_b");
  REQUIRE(run_text("rd-scan", text, a).exit_code == 0);
  REQUIRE(run_text("rd-scan", text, b).exit_code == 0);
  const auto csv = slurp(a / "rd_scan.csv");
  CHECK(csv.rfind("r,ball_double,ball_right,max_ratio_exact,max_ratio_operator_lower,schur_upper,fitted_C,fitted_s\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv == slurp(b / "rd_scan.csv"));
  auto ja = nlohmann::json::parse(slurp(a / "rd_scan.json"));
  auto jb = nlohmann::json::parse(slurp(b / "rd_scan.json"));
  ja["config"].erase("out");
  jb["config"].erase("out");
  CHECK(ja == jb);
  CHECK(ja["result"].contains("fitted_s"));
  CHECK(ja["config"]["seed"] == 3);
}

TEST_CASE("exact outputs are byte-identical across runs") {
  const std::string text =
      "[general]\nseed = 4\nsamples = 5\n"
      "[jolissaint]\nf = {\"terms\":[{\"key\":[\"3\",\"1\"],\"re\":\"1\"}]}\n"
      "[transfer-check]\nradius = 3\n"
      "[convolve]\ninput = {\"f1\":{\"terms\":[{\"key\":[\"1\",\"1\"],\"re\":\"1\"}]},\"f2\":{\"terms\":[{\"key\":[\"2\",\"1\"],\"re\":\"1/3\"}]}}\n";
  const auto out = scratch("bytes");
  for (const std::string cmd : {"jolissaint", "transfer-check", "convolve", "degrees"}) {
    CAPTURE(cmd);
    REQUIRE(run_text(cmd, text, out / "a").exit_code == 0);
    REQUIRE(run_text(cmd, text, out / "a2").exit_code == 0);
    for (const auto& entry : fs::directory_iterator(out / "a")) {
      const auto name = entry.path().filename();
      if (name.extension() == ".csv") CHECK(slurp(entry.path()) == slurp(out / "a2" / name));
    }
  }
  const auto j = nlohmann::json::parse(slurp(out / "a" / "jolissaint.json"));
  CHECK(j["result"]["nu"] == 8.0);
  CHECK(j["result"]["argmax_N"] == 4);
  const auto c = nlohmann::json::parse(slurp(out / "a" / "convolve.json"));
  CHECK(c["result"]["product"]["terms"].size() == 2);
  const auto t = nlohmann::json::parse(slurp(out / "a" / "transfer_check.json"));
  CHECK(t["result"]["passed"] == true);
}

TEST_CASE("failures exit 2 with a machine-readable record") {
  const auto out = scratch("fail");
  std::string printed;
  CHECK(run_text("rd-scan", "[general]\nradii = 1\n", out, &printed).exit_code == 2);
  const auto j = nlohmann::json::parse(printed);
  CHECK(j["status"] == "error");
  CHECK(j["field"] == "general.seed");
  CHECK(fs::exists(out / "failure.json"));

  CHECK(run_text("enumerate", "[general]\npair = gl2q\n", out, &printed).exit_code == 2);
  CHECK(nlohmann::json::parse(printed)["error"] == "unsupported");
  CHECK(run_text("normest", "", out, &printed).exit_code == 2);
  CHECK(nlohmann::json::parse(printed)["field"] == "normest.f");
  CHECK(run_text("transfer-check", "[general]\nmode = float\n", out, &printed).exit_code == 2);
  CHECK(run_text("enumerate", "[general]\npair = nope\n", out, &printed).exit_code == 2);

  std::ostringstream os;
  CHECK(run("frobnicate", parse_config("", "pairs"), os).exit_code == 2);
}

TEST_CASE("float mode commands") {
  const auto out = scratch("float");
  const std::string text = "[general]\nmode = float\n[normest]\nf = {\"terms\":[{\"key\":[\"1\",\"1\"],\"re\":1.0}]}\nradius = 10\n";
  REQUIRE(run_text("normest", text, out).exit_code == 0);
  const auto j = nlohmann::json::parse(slurp(out / "normest.json"));
  CHECK(j["result"]["upper"] == 2.0);
  CHECK(j["result"]["lower"].get<double>() < 2.0);
  CHECK(j["result"]["lower"].get<double>() > 1.95);
  CHECK(j["config"]["mode"] == "float");
}

TEST_CASE("format_double is shortest round trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2) == "2");
  CHECK(format_double(-1.5e-20) == "-1.5e-20");
}
