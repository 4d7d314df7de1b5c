#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qsp/commands.hpp"
#include "qsp/error.hpp"

using namespace qsp;

namespace {

std::string run(Session& s, const std::string& line, Format f = Format::text) {
  return render(run_command(split_command(line), s), f);
}

std::string run(const std::string& line, Format f = Format::text) {
  Session s;
  return run(s, line, f);
}

int status(Session& s, const std::string& line) {
  try {
    return run_command(split_command(line), s).passed ? 0 : 1;
  } catch (const std::exception& e) {
    return exit_code_for(e);
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_file(const std::string& name, const std::string& text) {
  const std::string path = std::string(QSP_TEST_TMP) + "/" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("split_command honours quotes") {
  CHECK(split_command("normalize Gamma \"eta * u\"") == std::vector<std::string>{"normalize", "Gamma", "eta * u"});
  CHECK(split_command("  a 'b c'  d ") == std::vector<std::string>{"a", "b c", "d"});
  CHECK(split_command("").empty());
  CHECK_THROWS_AS(split_command("a \"b"), UsageError);
}

TEST_CASE("normalize, d and partials") {
  CHECK(run("normalize Gamma eta*u") == "u*eta - h*eta\n");
  CHECK(run("normalize Gamma 'u*d(eta) - d(eta)*u - h*d(eta)'") == "0\n");
  CHECK(run("normalize L eta*u", Format::kv) == "result=u*eta - h*eta\n");
  CHECK(run("d Gamma eta*u") == "-eta*du + u*deta - h*deta\n");
  CHECK(run("partials u*eta") == "P_u: eta\nP_eta: u + h\n");
  CHECK(run("partials Gamma u^2") == "P_u: 2*u + 2*h\nP_eta: 0\n");
  CHECK(run("coproduct L eta") == "eta @ 1 + 1 @ eta\n");
  CHECK(run("coproduct A theta") == "theta @ x + x @ theta\n");
}

TEST_CASE("check commands") {
  Session s;
  const std::string hopf = run(s, "check hopf A");
  CHECK(hopf.find("axioms: 5/5\n") != std::string::npos);
  CHECK(status(s, "check hopf A") == 0);
  for (const char* name : {"A", "L", "Gamma", "Omega", "QPlaneCalc", "OpAlgebra", "VF", "Dual"}) {
    CAPTURE(name);
    CHECK(status(s, std::string("check confluence ") + name) == 0);
  }
  CHECK(status(s, "check calculus Gamma") == 0);
  CHECK(status(s, "check calculus QPlaneCalc") == 0);
  CHECK(run(s, "check calculus Gamma", Format::kv).find("d^2_0=pass") != std::string::npos);
  CHECK(run(s, "check confluence OpAlgebra").find("lint.parity: inhomogeneous") != std::string::npos);
}

TEST_CASE("vf commands") {
  Session s;
  for (const char* c : {"vf check", "vf dual", "vf twist", "vf reconcile"}) {
    CAPTURE(c);
    CHECK(status(s, c) == 0);
  }
  CHECK(run(s, "vf twist").find("X.twist.u: u + 2*h\n") != std::string::npos);
}

TEST_CASE("reconcile report matches the golden files") {
  Session s;
  CHECK(run(s, "vf reconcile") == slurp(std::string(QSP_GOLDEN_DIR) + "/vf_reconcile.txt"));
  CHECK(run(s, "vf reconcile", Format::kv) == slurp(std::string(QSP_GOLDEN_DIR) + "/vf_reconcile.kv"));
  s.exec = Execution::serial;
  CHECK(run(s, "vf reconcile") == slurp(std::string(QSP_GOLDEN_DIR) + "/vf_reconcile.txt"));
}

TEST_CASE("solve reports families and the reference point") {
  Session s;
  const std::string out = run(s, "solve superplane-calculus.ansatz");
  CHECK(out.find("constraints: 17\n") != std::string::npos);
  CHECK(out.find("families: 2\n") != std::string::npos);
  CHECK(out.find("point.member: pass of family 1\n") != std::string::npos);
  CHECK(out.find("point.target: pass Gamma\n") != std::string::npos);
  CHECK(out.find("point.d(u_du): du^2 = 0\n") != std::string::npos);
  CHECK(status(s, "solve superplane-calculus.ansatz") == 0);
  CHECK(status(s, "solve operator-calculus.ansatz") == 0);
  CHECK(run(s, "solve superplane-calculus.ansatz") == out);
}

TEST_CASE("set changes the cutoff and the split budget") {
  Session s;
  CHECK(status(s, "set cutoff 3") == 0);
  CHECK(s.cutoff == 3);
  CHECK(run(s, "check hopf L").find("cutoff: 3\n") != std::string::npos);
  CHECK(status(s, "set splits 0") == 0);
  CHECK(status(s, "solve operator-calculus.ansatz") == 1);
  CHECK(status(s, "set cutoff x") == 2);
  CHECK(status(s, "set colour 3") == 2);
}

TEST_CASE("exit codes") {
  Session s;
  CHECK(status(s, "bogus") == 2);
  CHECK(status(s, "normalize") == 2);
  CHECK(status(s, "normalize Nope u") == 2);
  CHECK(status(s, "normalize Gamma ((u") == 2);
  CHECK(status(s, "normalize Gamma zz") == 2);
  CHECK(status(s, "check hopf Nope") == 2);
  CHECK(status(s, "load /nonexistent/file.qsp") != 0);
}

TEST_CASE("failing checks exit with status 1") {
  Session s;
  const std::string path = temp_file("bad.qsp",
                                     "[algebra Broken]\n[generators]\ny even\nx even\n[relations]\n"
                                     "x*y = y*x + 1\nx^2 = 0\n");
  CHECK(status(s, "load " + path) == 0);
  CHECK(status(s, "check confluence Broken") == 1);
  const std::string out = run(s, "check confluence Broken");
  CHECK(out.find("mismatch.1: ") != std::string::npos);
}

TEST_CASE("loader errors carry the line number") {
  Session s;
  const std::string path = temp_file("typo.qsp", "[algebra T]\n[generators]\nx even\ny sideways\n");
  try {
    s.load_file(path);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("typo.qsp:4:") != std::string::npos);
  }
  CHECK(status(s, "load " + path) == 2);

  const std::string rel = temp_file("rel.qsp", "[algebra T]\n[generators]\nx even\n[relations]\nx*z = 0\n");
  try {
    s.load_file(rel);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("rel.qsp:5:") != std::string::npos);
  }
}

TEST_CASE("user definitions shadow builtins") {
  Session s;
  CHECK(run(s, "normalize L eta*u") == "u*eta - h*eta\n");
  const std::string path = temp_file("shadow.qsp",
                                     "[algebra L]\n[generators]\nu even\neta odd\n[relations]\n"
                                     "u_eta: u*eta - eta*u = 0\neta_sq: eta^2 = 0\n");
  CHECK(run(s, "load " + path) == "loaded: L\n");
  CHECK(run(s, "normalize L eta*u") == "u*eta\n");
  CHECK(run("normalize L eta*u") == "u*eta - h*eta\n");
}

TEST_CASE("output is deterministic") {
  Session a, b;
  b.exec = Execution::serial;
  for (const char* c : {"check hopf Gamma", "check confluence OpAlgebra", "vf twist", "solve operator-calculus.ansatz",
                        "check calculus Gamma", "list"}) {
    CAPTURE(c);
    CHECK(run(a, c) == run(b, c));
    CHECK(run(a, c, Format::kv) == run(b, c, Format::kv));
  }
}
