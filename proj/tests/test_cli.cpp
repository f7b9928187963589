#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>

#include "crinv/commands.hpp"
#include "crinv/json_io.hpp"

using namespace crinv;
using namespace crinv::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run crinv_run(const std::string& args) {
  std::string cmd = std::string(CRINV_EXE) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path scratch() {
  static fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("crinv_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write(const std::string& name, const std::string& text) {
  auto p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

const fs::path& exported() {
  static fs::path dir = [] {
    auto d = scratch() / "fixtures";
    auto r = crinv_run("fixtures export " + d.string());
    REQUIRE(r.status == 0);
    return d;
  }();
  return dir;
}

std::string fx(const std::string& name) { return (exported() / (name + ".json")).string(); }

bool has(const Run& r, const std::string& needle) { return r.out.find(needle) != std::string::npos; }

// Flags each fixture needs, and the invoking command with its expected exit status.
struct Expectation {
  std::string command, flags;
  int status;
};
const std::map<std::string, Expectation>& expectations() {
  static const std::map<std::string, Expectation> m = {
      {"su2_cr0", {"classify", "", 0}},          {"su2_cr1", {"classify", "", 0}},
      {"sl2_cr1", {"classify", "", 0}},          {"example3", {"classify", "", 0}},
      {"su2_xy", {"classify", "", 0}},           {"extend_zeta1", {"extend", "", 0}},
      {"extend_zeta12", {"extend", "", 0}},      {"extend_constant", {"extend", "", 0}},
      {"extend_corrupted", {"extend", "", 1}},   {"lambda_half", {"dc", "--radius 20", 0}},
      {"golden", {"dc", "--scalar surd --radius 20", 0}},
      {"liouville", {"dc", "--scalar float --radius 20", 0}},
      {"even_N", {"dc", "", 2}},                 {"solve_exact", {"solve", "", 0}},
      {"solve_float", {"solve", "--scalar float", 0}},
      {"solve_invariant", {"solve", "", 0}},     {"solve_resonant", {"solve", "", 1}},
      {"solve_not_closed", {"solve", "", 1}},
  };
  return m;
}

}  // namespace

TEST_CASE("verify-tables reports discrepancies with exit status 1") {
  auto r = crinv_run("verify-tables");
  CHECK(r.status == 1);
  CHECK(has(r, "[L1, conj L1]") == false);  // the (1,1) cell matches
  CHECK(has(r, "sl(2) [L, conj L] = 2i(L + conj L): yes"));
  CHECK(has(r, "lambda entries matching: 18/18"));
  CHECK(has(r, "dim 8"));
  auto j = json::parse(crinv_run("--json verify-tables").out);
  CHECK(j.at("exit_status") == 1);
  bool lambda34 = false;
  for (const auto& l : j.at("payload").at("lambdas"))
    if (l.at("j") == 3 && l.at("k") == 4) lambda34 = l.at("computed") == "-4" || l.at("computed") == "4";
  CHECK(lambda34);
  bool cell11 = false;
  for (const auto& c : j.at("payload").at("cells"))
    if (c.at("i") == 1 && c.at("j") == 1) cell11 = c.at("computed") == "(4i)T1" || c.at("computed") == "(-4i)T1";
  CHECK(cell11);
}

TEST_CASE("classify and leviflat on the algebra fixtures") {
  auto e = crinv_run("classify " + fx("example3"));
  CHECK(e.status == 0);
  CHECK(has(e, "type: CR0"));
  CHECK(has(e, "dim h: 8"));
  CHECK(has(e, "maximal rank [N/2]: 8 (matches)"));
  auto s = crinv_run("classify " + fx("su2_cr0"));
  CHECK(has(s, "type: CR0"));
  CHECK(has(s, "dim h: 1"));
  auto xy = crinv_run("classify " + fx("su2_xy"));
  CHECK(has(xy, "subalgebra: no, witness pair (1,2)"));
  CHECK(has(crinv_run("leviflat " + fx("sl2_cr1")), "Levi-flat: yes"));
  CHECK(has(crinv_run("leviflat " + fx("example3")), "Levi-flat: yes"));
  auto nf = crinv_run("leviflat " + fx("su2_cr0"));
  CHECK(nf.status == 0);
  CHECK(has(nf, "Levi-flat: no"));
  CHECK(has(nf, "Levi form value: 2"));
  CHECK(crinv_run("leviflat " + fx("su2_xy")).status == 2);
}

TEST_CASE("dc, solve and extend on the torus fixtures") {
  auto d = crinv_run("dc " + fx("lambda_half"));
  CHECK(d.status == 0);
  CHECK(has(d, "verdict: RESONANT"));
  auto j = json::parse(crinv_run("--json dc " + fx("lambda_half")).out);
  bool listed = false;
  for (const auto& xi : j.at("payload").at("resonances")) listed |= xi == json({1, -2, 0});
  CHECK(listed);
  CHECK(has(crinv_run("--scalar surd --radius 50 dc " + fx("golden")), "verdict: EVIDENCE_HOLDS"));
  CHECK(crinv_run("dc " + fx("even_N")).status == 2);
  auto rs = crinv_run("solve " + fx("solve_resonant"));
  CHECK(rs.status == 1);
  CHECK(has(rs, "(1,-2,0)"));
  auto nc = crinv_run("solve " + fx("solve_not_closed"));
  CHECK(nc.status == 1);
  CHECK(has(nc, "witness frequency:"));
  CHECK(has(crinv_run("solve " + fx("solve_exact")), "roundtrip residual: 0\n"));
  auto inv = crinv_run("solve " + fx("solve_invariant"));
  CHECK(has(inv, "primitive support: 0 frequencies"));
  auto out = scratch() / "solve_out.json";
  CHECK(crinv_run("solve -o " + out.string() + " " + fx("solve_exact")).status == 0);
  auto sr = json::parse(std::ifstream(out));
  CHECK(sr.contains("primitive"));
  CHECK(sr.at("invariant_part").at("coeffs").empty());
  CHECK(has(crinv_run("extend " + fx("extend_zeta1")), "extension closed: yes"));
  CHECK(has(crinv_run("extend " + fx("extend_zeta12")), "extension closed: yes"));
  CHECK(has(crinv_run("extend " + fx("extend_constant")), "extension closed: yes"));
  auto bad = crinv_run("extend " + fx("extend_corrupted"));
  CHECK(bad.status == 1);
  CHECK(has(bad, "ideal: no, witness pair"));
}

TEST_CASE("exit-code contract on valid, mismatching and malformed input") {
  for (const auto& [name, e] : expectations()) {
    CAPTURE(name);
    CHECK(crinv_run(e.flags + " " + e.command + " " + fx(name)).status == e.status);
  }
  CHECK(crinv_run("classify /nonexistent/file.json").status == 2);
  auto garbage = write("garbage.json", "{ not json");
  for (const char* c : {"classify", "leviflat", "dc", "solve", "extend"}) {
    CAPTURE(c);
    CHECK(crinv_run(std::string(c) + " " + garbage.string()).status == 2);
  }
  const std::string rank = R"({"N": 5, "n": 1, "rows": [[1, 0, 0, 0, {"re": 0, "im": 1}]]})";
  const std::string amb = R"j({"ambient": "so(3)", "basis": []})j";
  const std::string q = R"({"q": 1})";
  CHECK(crinv_run("dc " + write("rank.json", rank).string()).status == 2);
  CHECK(crinv_run("classify " + write("amb.json", amb).string()).status == 2);
  CHECK(crinv_run("solve " + write("q.json", q).string()).status == 2);
  CHECK(crinv_run("no-such-command").status == 2);
  CHECK(crinv_run("--scalar quaternion dc " + fx("lambda_half")).status == 2);
  CHECK(crinv_run("--rho-grid 1,x dc " + fx("lambda_half")).status == 2);
  CHECK(crinv_run("--radius 0 dc " + fx("lambda_half")).status == 2);
  // Surd data without --scalar surd is an input error rather than a silent rounding.
  CHECK(crinv_run("dc " + fx("golden")).status == 2);
  CHECK(crinv_run("--help").status == 0);
}

TEST_CASE("reports are byte-identical across runs and worker counts") {
  for (const auto& [name, e] : expectations()) {
    CAPTURE(name);
    auto a = crinv_run(e.flags + " " + e.command + " " + fx(name));
    auto b = crinv_run(e.flags + " " + e.command + " " + fx(name));
    CHECK(a.out == b.out);
    auto ja = crinv_run("--json " + e.flags + " " + e.command + " " + fx(name));
    CHECK(ja.out == crinv_run("--json " + e.flags + " " + e.command + " " + fx(name)).out);
  }
  auto w1 = crinv_run("--workers 1 --radius 60 --scalar float dc " + fx("liouville"));
  auto w3 = crinv_run("--workers 3 --radius 60 --scalar float dc " + fx("liouville"));
  CHECK(w1.out == w3.out);
  CHECK(crinv_run("verify-tables").out == crinv_run("verify-tables").out);
}

TEST_CASE("fixture export is deterministic and every document roundtrips") {
  auto a = fixture_documents(seed_from_env());
  auto b = fixture_documents(seed_from_env());
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].second.dump() == b[k].second.dump());
  for (const auto& [name, doc] : a) {
    CAPTURE(name);
    auto stem = name.substr(0, name.size() - 5);
    CHECK(expectations().count(stem) == 1);
    auto on_disk = json::parse(std::ifstream(exported() / name));
    CHECK(on_disk == doc);
    CHECK(json::parse(doc.dump()) == doc);
    // Typed roundtrips: parse into objects, emit again, compare.
    if (doc.contains("rows") && stem != "even_N") {
      if (stem == "golden")
        CHECK(io::to_json(io::structure_from_json<SurdScalar>(doc)) == doc);
      else if (stem == "liouville")
        CHECK(io::to_json(io::structure_from_json<Complex64>(doc)) == doc);
      else
        CHECK(io::to_json(io::structure_from_json<GaussianRational>(doc)) == doc);
    }
    if (doc.contains("terms")) {
      if (stem == "solve_float")
        CHECK(io::to_json(io::fourier_from_json<Complex64>(doc)) == doc);
      else
        CHECK(io::to_json(io::fourier_from_json<GaussianRational>(doc)) == doc);
    }
    if (doc.contains("basis") && doc.at("basis").is_array()) {
      auto amb = io::ambient_from_json(doc.at("ambient"));
      CHECK(io::elements_to_json(io::elements_from_json(amb, doc.at("basis"))) == doc.at("basis"));
    }
  }
  // Reports themselves re-parse to the same JSON.
  Options ten;
  ten.radius = 10;
  auto r = cmd_dc(json::parse(std::ifstream(exported() / "lambda_half.json")), ten);
  CHECK(json::parse(r.to_json().dump()) == r.to_json());
}

TEST_CASE("in-process commands agree with the executable") {
  Options o;
  o.radius = 20;
  auto r = run_on_file("dc", fx("lambda_half"), o);
  CHECK(r.text() == crinv_run("--radius 20 dc " + fx("lambda_half")).out);
  CHECK(cmd_verify_tables().exit_status == kExitMismatch);
  CHECK(run_on_file("classify", "/nonexistent.json", {}).exit_status == kExitInput);
}
