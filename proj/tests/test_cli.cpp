#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(CFLOER_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    res.out.append(buf.data(), got);
  }
  int status = pclose(pipe);
  res.exit_code = WEXITSTATUS(status);
  return res;
}

std::string fx(const std::string& name) {
  return std::string(CFLOER_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("grid subcommands") {
  RunResult inv = run("grid invariant --fixture " + fx("grid_unknot_2.json"));
  CHECK(inv.exit_code == 0);
  CHECK(inv.out.find("[pass] tb: -1") != std::string::npos);

  RunResult comp =
      run("grid compute --json --fixture " + fx("grid_trefoil_right_5.json"));
  CHECK(comp.exit_code == 0);
  auto j = nlohmann::json::parse(comp.out);
  CHECK(j.contains("checks"));
  CHECK(j.contains("input_digest"));
  bool hat_ok = false;
  for (auto& c : j["checks"]) {
    if (c["name"] == "hat-rank") hat_ok = c["got"] == 3;
  }
  CHECK(hat_ok);

  RunResult moves = run("grid moves --fixture " + fx("grid_fig8_6.json"));
  CHECK(moves.exit_code == 0);
}

TEST_CASE("reports are byte-identical across runs") {
  std::string cmd = "grid compute --json --fixture " + fx("grid_trefoil_left_5.json");
  RunResult a = run(cmd);
  RunResult b = run(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  std::string vcmd = "verify thm-main --json --fixture " + fx("hopf_unknot.json");
  RunResult va = run(vcmd);
  RunResult vb = run(vcmd);
  CHECK(va.exit_code == 0);
  CHECK(va.out == vb.out);
}

TEST_CASE("malformed fixtures produce machine-readable errors") {
  std::string bad = "/tmp/cfloer_bad_fixture.json";
  {
    std::ofstream f(bad);
    f << R"({"schema_version":1,"kind":"grid","payload":{"n":2,"x":[0,0],"o":[1,0]}})";
  }
  RunResult r = run("grid invariant --fixture " + bad);
  CHECK(r.exit_code == 1);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.contains("error"));
  CHECK(j["error"]["code"] == "NotPermutation");
}

TEST_CASE("stabilize and recheck through files") {
  std::string out = "/tmp/cfloer_stab.json";
  RunResult s = run("grid stabilize --type legendrian-positive --column 0 --out " +
                    out + " --fixture " + fx("grid_unknot_2.json"));
  CHECK(s.exit_code == 0);
  RunResult inv = run("grid invariant --fixture " + out);
  CHECK(inv.exit_code == 0);
  CHECK(inv.out.find("[pass] tb: -2") != std::string::npos);
  // The oriented class dies after a positive stabilization.
  CHECK(inv.out.find("\"zero\":true") != std::string::npos);
}

TEST_CASE("pob pipeline through files") {
  std::string pobf = "/tmp/cfloer_pob.json";
  std::string post = "/tmp/cfloer_pob_bypass.json";
  RunResult from = run("pob from-openbook --out " + pobf + " --fixture " +
                       fx("hopf_unknot.json"));
  CHECK(from.exit_code == 0);
  CHECK(from.out.find("[pass] sutures: 2") != std::string::npos);

  RunResult byp =
      run("pob bypass --meridian + --out " + post + " --fixture " + pobf);
  CHECK(byp.exit_code == 0);
  CHECK(byp.out.find("new-suture-slope: \"0\"") != std::string::npos);

  RunResult sut = run("pob sutures --fixture " + post);
  CHECK(sut.exit_code == 0);

  RunResult dia = run("pob diagram --json --fixture " + post);
  CHECK(dia.exit_code == 0);
  auto j = nlohmann::json::parse(dia.out);
  bool found = false;
  for (auto& c : j["checks"]) {
    if (c["name"] == "diagram") {
      found = true;
      CHECK(c["got"]["nice"] == true);
      CHECK(c["got"]["class-cycle"] == true);
      CHECK(c["got"]["class-zero"] == false);
    }
  }
  CHECK(found);
}

TEST_CASE("diagram and slopes verbs") {
  RunResult d = run("diagram from-openbook --orientation -1 --fixture " +
                    fx("genus1_twisted.json"));
  CHECK(d.exit_code == 0);

  RunResult st = run("slopes step --current inf --arc -1/2");
  CHECK(st.exit_code == 0);
  CHECK(st.out.find("new-slope: \"0\"") != std::string::npos);

  RunResult gl = run("slopes glue --s0 inf --s1 1 --s2 0 --sign1 + --sign2 -");
  CHECK(gl.exit_code == 0);
  CHECK(gl.out.find("overtwisted") != std::string::npos);

  RunResult rg = run("slopes range --lo 1 --hi 0 --slope inf");
  CHECK(rg.exit_code == 0);
  CHECK(rg.out.find("in-range: true") != std::string::npos);
}

TEST_CASE("verify verbs") {
  CHECK(run("verify thm-main --fixture " + fx("hopf_unknot.json")).exit_code == 0);
  CHECK(run("verify thm-main --fixture " + fx("genus1_twisted.json")).exit_code == 0);
  CHECK(run("verify stabilization --fixture " + fx("grid_unknot_2.json")).exit_code ==
        0);
  CHECK(run("verify gluing --pmax 4").exit_code == 0);
  CHECK(run("verify soundness --count 20 --seed 7").exit_code == 0);

  RunResult t = run("verify torsion-logic --fixture " + fx("hopf_unknot_torsion.json"));
  CHECK(t.exit_code == 0);
  CHECK(t.out.find("imported analytic input") != std::string::npos);

  // Unflagged fixtures are reported as skipped, not failed.
  RunResult nt = run("verify torsion-logic --fixture " + fx("hopf_unknot.json"));
  CHECK(nt.exit_code == 0);
  CHECK(nt.out.find("[skip]") != std::string::npos);
}
