#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tubestab/cli.hpp"
#include "tubestab/json_io.hpp"

using namespace tubestab;

namespace {

struct CliResult {
  int code;
  json out;
  std::string raw_out, raw_err;
};

CliResult run(std::initializer_list<std::string> args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = cli_run(std::vector<std::string>(args), out, err);
  r.raw_out = out.str();
  r.raw_err = err.str();
  if (!r.raw_out.empty()) {
    try {
      r.out = json::parse(r.raw_out);
    } catch (...) {
    }
  }
  return r;
}

std::string tmp_path(const std::string& name) { return "/tmp/tubestab_test_" + name; }

void write_file(const std::string& path, const json& j) {
  std::ofstream f(path);
  f << j.dump();
}

}  // namespace

TEST_CASE("suite clifford exits 0 with exact relations") {
  auto r = run({"suite", "clifford", "--samples", "200", "--serial"});
  REQUIRE(r.code == 0);
  CHECK(r.out.at("pass").get<bool>());
  // manifest goes to stderr as a single json line
  CHECK(r.raw_err.find("\"manifest\":true") != std::string::npos);
}

TEST_CASE("gen -> extract -> verify pipeline closes for every structure kind") {
  struct Case {
    std::vector<std::string> gen_args;
  };
  const std::vector<std::vector<std::string>> cases{
      {"--structure", "halfplane", "--N", "2,3"},
      {"--structure", "polydisk", "--N", "2,2"},
      {"--structure", "lorentz2", "--k", "2"},
      {"--structure", "lorentzn", "--n", "3", "--k", "1"},
      {"--structure", "skew", "--n", "2", "--k", "1"},
      {"--structure", "lieball", "--n", "3", "--k", "1"},
      {"--structure", "cartan", "--blocks", "u2x1,s2x1"},
  };
  int idx = 0;
  for (const auto& c : cases) {
    const std::string rep = tmp_path("rep" + std::to_string(idx) + ".json");
    const std::string poly = tmp_path("poly" + std::to_string(idx) + ".json");
    std::vector<std::string> args{"gen", "--seed", "7", "--serial", "--out", rep};
    args.insert(args.end(), c.begin(), c.end());
    std::ostringstream out, err;
    REQUIRE(cli_run(args, out, err) == 0);

    std::ostringstream out2, err2;
    REQUIRE(cli_run({"extract", "--rep", rep, "--out", poly, "--serial"}, out2, err2) == 0);

    std::ostringstream out3, err3;
    const int code = cli_run(
        {"verify", "--p", poly, "--rep", rep, "--samples", "150", "--seed", "3", "--serial"},
        out3, err3);
    INFO("structure case ", idx, " verify output: ", out3.str());
    CHECK(code == 0);
    ++idx;
  }
}

TEST_CASE("stab falsifies a planted zero with exit code 1") {
  // p = z - i
  MultiPoly p = MultiPoly::from_univariate(std::vector<cplx>{cplx(0.0, -1.0), cplx(1.0)});
  const std::string pfile = tmp_path("stab_p.json");
  write_file(pfile, poly_to_json(p));
  auto r = run({"stab", "--p", pfile, "--kind", "halfplane_tube", "--dims", "1", "--samples",
                "300", "--seed", "5", "--serial"});
  CHECK(r.code == 1);
  CHECK(r.out.at("verdict").get<std::string>() == "falsified");
  const auto wre = r.out.at("witness").at("re")[0].get<double>();
  const auto wim = r.out.at("witness").at("im")[0].get<double>();
  CHECK(std::abs(wre) <= 1e-5);
  CHECK(std::abs(wim - 1.0) <= 1e-5);
}

TEST_CASE("stab reports no zero for a stable polynomial") {
  MultiPoly p = MultiPoly::from_univariate(std::vector<cplx>{cplx(0.0, 3.0), cplx(1.0)});
  const std::string pfile = tmp_path("stab_p2.json");
  write_file(pfile, poly_to_json(p));
  auto r = run({"stab", "--p", pfile, "--kind", "halfplane_tube", "--dims", "1", "--samples",
                "300", "--seed", "5", "--serial"});
  CHECK(r.code == 0);
  CHECK(r.out.at("verdict").get<std::string>() == "no_zero_found");
}

TEST_CASE("transform applies the scalar map") {
  const std::string in = tmp_path("pt.json");
  write_file(in, json{{"re", {0.5}}, {"im", {0.0}}});
  auto r = run({"transform", "--map", "phi", "--in", in});
  REQUIRE(r.code == 0);
  CHECK(std::abs(r.out.at("result").at("im")[0].get<double>() - 3.0) <= 1e-10);
}

TEST_CASE("usage and schema errors exit 2") {
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"suite", "nonexistent"}).code == 2);
  const std::string bad = tmp_path("bad.json");
  {
    std::ofstream f(bad);
    f << "{ not json";
  }
  CHECK(run({"stab", "--p", bad, "--kind", "halfplane_tube", "--dims", "1"}).code == 2);
}

TEST_CASE("identical argv and seed give identical stdout") {
  auto a = run({"suite", "roundtrips", "--samples", "100", "--seed", "9", "--serial"});
  auto b = run({"suite", "roundtrips", "--samples", "100", "--seed", "9", "--serial"});
  REQUIRE(a.code == 0);
  CHECK(a.raw_out == b.raw_out);
}

TEST_CASE("binary subprocess honors the exit contract") {
  const char* bin = std::getenv("TUBESTAB_BIN");
  if (!bin) return;  // only meaningful under ctest
  const std::string cmd = std::string(bin) + " suite clifford --samples 100 > /dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  const std::string bad = std::string(bin) + " suite nope > /dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(bad.c_str())) == 2);
}
