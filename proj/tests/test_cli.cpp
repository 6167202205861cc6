#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

using nlohmann::json;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string command = std::string(GSLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  Outcome o;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer;
  while (std::size_t n = std::fread(buffer.data(), 1, buffer.size(), pipe)) o.out.append(buffer.data(), n);
  const int status = pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

json report(const Outcome& o) { return json::parse(o.out); }

std::string tmp(const std::string& name) {
  const char* dir = std::getenv("TMPDIR");
  return std::string(dir ? dir : "/tmp") + "/" + name;
}

std::string config(const std::string& name) { return std::string(GSLAB_CONFIG_DIR) + "/" + name; }

}  // namespace

TEST_CASE("classify-symmetries") {
  const auto o = run("classify-symmetries --degree 2 --expect-table a=1 b=0 p=1");
  CHECK(o.code == 0);
  const auto j = report(o);
  CHECK(j["command"] == "classify-symmetries");
  CHECK(j["status"] == "pass");
  CHECK(j["result"]["dimension"] == 5);
  CHECK(j["parameters"]["b"] == "0");
  CHECK(j.contains("invocation"));
}

TEST_CASE("classify-symmetries examples") {
  const auto a0 = report(run("classify-symmetries a=0 b=1 c=1 p=2 --degree 2 --expect-table"));
  CHECK(a0["result"]["dimension"] == 3);
  CHECK(a0["status"] == "pass");
  const auto b0 = report(run("classify-symmetries a=1 b=0 c=1 p=2 --expect-table"));
  CHECK(b0["result"]["dimension"] == 4);
  bool y4 = false;
  for (const auto& c : b0["checks"]) y4 = y4 || (c["name"] == "contains Y4" && c["status"] == "pass");
  CHECK(y4);
}

TEST_CASE("classify-substitutions cases") {
  const auto ii = report(run("classify-substitutions a=1 b=0 c=1 p=1 --expect-table"));
  CHECK(ii["result"]["case"] == json::array({"ii"}));
  CHECK(ii["result"]["dimension"] == 4);
  const auto i = report(run("classify-substitutions a=1 b=1 c=1 p=2 --expect-table"));
  CHECK(i["result"]["case"] == json::array({"i"}));
  CHECK(i["result"]["dimension"] == 3);
}

TEST_CASE("classify-substitutions") {
  const auto o = run("classify-substitutions --expect-table a=1 b=1 p=3");
  CHECK(o.code == 0);
  CHECK(report(o)["result"]["dimension"] == 2);
}

TEST_CASE("verify-symmetry exit codes") {
  CHECK(run("verify-symmetry --gen X1 a=0 b=1 p=1").code == 0);
  const auto fail = run("verify-symmetry --gen X1 a=1 b=1 p=1");
  CHECK(fail.code == 2);
  CHECK(report(fail)["status"] == "fail");
  CHECK(run("verify-symmetry --gen 'T=1,X=0,U=0,V=0' a=1 b=1 p=1").code == 0);
}

TEST_CASE("adjoint and conserved") {
  CHECK(run("adjoint --sub ii.c1 a=1 b=0 p=1").code == 0);
  const auto o = run("conserved --gen X1 --sub i.c3 a=0 b=1 p=1");
  CHECK(o.code == 0);
  const auto j = report(o);
  bool found = false;
  for (const auto& c : j["checks"])
    if (c["name"] == "equivalent to reference i") {
      found = true;
      CHECK(c["derived"]["lambda"] == "-1/4");
    }
  CHECK(found);
  CHECK(run("conserved --gen X1 --sub ii.c2 a=1 b=0 p=1").code == 2);
}

TEST_CASE("conserved with explicit substitutions") {
  const auto strict = report(run("conserved --gen X1 --sub 'phi=u,psi=v' a=0 b=1 c=1 p=1"));
  CHECK(strict["status"] == "pass");
  CHECK(strict["result"]["references"][0]["lambda"] == "-1/4");

  const auto o = run("conserved --gen X2 --sub 'phi=1,psi=1' a=1 b=1 c=1 p=1");
  CHECK(o.code == 0);
  CHECK(report(o)["result"]["signature"]["trivial"] == true);

  const auto bad = run("conserved --gen X3 --sub 'phi=u,psi=v' a=1 b=1 c=1 p=1");
  CHECK(bad.code == 2);
  const auto j = report(bad);
  for (const auto& c : j["checks"])
    if (c["name"] == "substitution is admissible") {
      CHECK(c["status"] == "fail");
      CHECK(c.contains("residual"));
    }
}

TEST_CASE("check-divergence") {
  CHECK(run("check-divergence --ct u --cx 'u^2 + u*v + u_xx' a=1 b=0 p=1").code == 0);
  CHECK(run("check-divergence --ct u --cx 0 a=1 b=0 p=1").code == 2);
  CHECK(run("check-divergence --ct 'u +' --cx 0").code == 1);
}

TEST_CASE("general systems") {
  const auto o = run("adjoint --sub 'phi=u,psi=v' 'r=u^2+v^2' 's=2*u*v'");
  CHECK(o.code == 0);
  CHECK(report(o)["parameters"]["r"] == "u^2+v^2");
}

TEST_CASE("usage and parameter errors") {
  CHECK(run("").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("verify-symmetry a=1 b=1").code == 1);
  CHECK(run("verify-symmetry --gen X2 a=0 b=0").code == 1);
  CHECK(run("verify-symmetry --gen X2 a=1 p=0").code == 1);
  CHECK(run("verify-symmetry --gen X2 q=1").code == 1);
  CHECK(run("classify-symmetries --degree 9").code == 1);
  CHECK(run("classify-symmetries a=1 b=1 c=0 p=1").code == 1);
  CHECK(run("--help").code == 0);
}

TEST_CASE("report goes to --out") {
  const auto path = tmp("gslab_cli_report.json");
  const auto o = run("verify-symmetry --gen X3 a=1 b=1 p=2 --out " + path);
  CHECK(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream in(path);
  const auto j = json::parse(in);
  CHECK(j["command"] == "verify-symmetry");
  std::remove(path.c_str());
}

TEST_CASE("simulate") {
  const auto csv = tmp("gslab_cli_zero.csv");
  const auto o = run("simulate " + config("zero.cfg") + " --csv " + csv);
  CHECK(o.code == 0);
  const auto j = report(o);
  CHECK(j["command"] == "simulate");
  CHECK(j["result"]["steps"] == 100);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "step,time,u,v");
  std::remove(csv.c_str());

  const auto conserved_csv = tmp("gslab_cli_b0_p1.csv");
  const auto conserved = run("simulate " + config("b0_p1.cfg") + " --csv " + conserved_csv);
  CHECK(conserved.code == 0);
  for (const auto& f : report(conserved)["result"]["functionals"])
    if (f["label"] != "u" && f["label"] != "v") CHECK(f["max_relative_drift"].get<double>() < 1e-6);
  std::remove(conserved_csv.c_str());

  const auto linear_csv = tmp("gslab_cli_linear.csv");
  CHECK(run("simulate " + config("linear.cfg") + " --csv " + linear_csv).code == 0);
  std::remove(linear_csv.c_str());

  const auto bad = tmp("gslab_cli_bad.cfg");
  std::ofstream(bad) << "N = 100\n";
  CHECK(run("simulate " + bad).code == 1);
  std::remove(bad.c_str());
  CHECK(run("simulate " + tmp("does_not_exist.cfg")).code == 1);
}
