#include <algorithm>

#include "doctest.h"
#include "qsp/error.hpp"
#include "qsp/evaluate.hpp"
#include "qsp/session.hpp"
#include "support.hpp"

using namespace qsp;

namespace {

Session& session() {
  static Session s;
  return s;
}

Element el(const std::string& alg, const std::string& text) {
  return parse_element(text, session().context(alg));
}

std::string nf(const std::string& alg, const std::string& text) {
  const auto& rs = session().rules(alg);
  return to_string(rs.normalize(el(alg, text)), rs.alphabet());
}

Presentation make(std::vector<Generator> gens, const std::vector<std::pair<std::string, std::string>>& rels) {
  Presentation p;
  p.name = "test";
  p.alphabet = Alphabet(std::move(gens));
  EvalContext ctx;
  ctx.alphabet = &p.alphabet;
  for (const auto& [label, text] : rels) p.relations.push_back({label, parse_element(text, ctx)});
  return p;
}

}  // namespace

TEST_CASE("compile orients relations towards their largest word") {
  const auto& l = session().rules("L");
  CHECK(l.rules().size() == 2);
  const auto& ab = l.alphabet();
  const Letter u = ab.letter("u"), eta = ab.letter("eta");
  REQUIRE(l.rule(eta, u) != nullptr);
  CHECK(to_string(*l.rule(eta, u), ab) == "u*eta - h*eta");
  REQUIRE(l.rule(eta, eta) != nullptr);
  CHECK(l.rule(eta, eta)->is_zero());
  CHECK(l.rule(u, eta) == nullptr);

  const auto& a = session().rules("A");
  const auto& aab = a.alphabet();
  REQUIRE(a.rule(aab.letter("theta"), aab.letter("x")) != nullptr);
  CHECK(to_string(*a.rule(aab.letter("theta"), aab.letter("x")), aab) == "(1/E)*x*theta");

  const RewriteSystem free = compile(make({{"a", Parity::even, false}, {"b", Parity::odd, false}}, {}));
  CHECK(free.rules().empty());
  CHECK(free.basis(2).size() == 7);
}

TEST_CASE("compile rejects relations it cannot orient") {
  const std::vector<Generator> ab{{"u", Parity::even, false}, {"eta", Parity::odd, false}};
  CHECK_THROWS_AS(compile(make(ab, {{"bad", "u*eta"}})), PresentationError);
  CHECK_THROWS_AS(compile(make(ab, {{"cubic", "eta*eta*u - u"}})), PresentationError);
  CHECK_THROWS_AS(compile(make(ab, {{"one", "eta*u - u*eta"}, {"two", "eta*u - 2*u*eta"}})), PresentationError);
  // the same rule twice is not a contradiction
  CHECK_NOTHROW(compile(make(ab, {{"one", "eta*u - u*eta"}, {"two", "2*eta*u - 2*u*eta"}})));
  try {
    compile(make(ab, {{"bad", "u*eta"}}));
  } catch (const PresentationError& e) {
    CHECK(std::string(e.what()).find("bad") != std::string::npos);
  }
}

TEST_CASE("inverse letters only in skew commutations") {
  const std::vector<Generator> ab{{"x", Parity::even, true}, {"t", Parity::odd, false}};
  CHECK_NOTHROW(compile(make(ab, {{"skew", "x*t - E*t*x"}})));
  CHECK_THROWS_AS(compile(make(ab, {{"shift", "t*x - x*t - t"}})), PresentationError);
  const RewriteSystem rs = compile(make(ab, {{"skew", "x*t - E*t*x"}}));
  EvalContext ctx;
  ctx.alphabet = &rs.alphabet();
  ctx.rules = &rs;
  CHECK(parse_element("x*x^-1", ctx) == Element(Scalar(1)));
  CHECK(to_string(parse_element("t*x^-1", ctx), rs.alphabet()) == "E*x^-1*t");
  CHECK(to_string(parse_element("x^-2*t*x^2", ctx), rs.alphabet()) == "(1/E^2)*t");
}

TEST_CASE("normal forms in Gamma") {
  // oracle: tests/oracles/expected.txt, section galgebra
  CHECK(nf("Gamma", "eta*u") == "u*eta - h*eta");
  CHECK(nf("Gamma", "du*u") == "u*du - 2*h*du");
  CHECK(nf("Gamma", "du*eta") == "-eta*du");
  CHECK(nf("Gamma", "eta*eta") == "0");
  CHECK(nf("Gamma", "1") == "1");
  CHECK(nf("Gamma", "u*d(eta) - d(eta)*u - h*d(eta)") == "0");
}

TEST_CASE("confluence") {
  for (const char* name : {"A", "L", "Gamma", "Omega", "QPlaneCalc", "OpAlgebra", "VF", "Dual"}) {
    CAPTURE(name);
    CHECK(check_confluence(session().rules(name)).confluent());
  }
  // x y -> y x + 1 and x^2 -> 0 with y before x
  const RewriteSystem rs = compile(make({{"y", Parity::even, false}, {"x", Parity::even, false}},
                                        {{"xy", "x*y - y*x - 1"}, {"xx", "x*x"}}));
  const auto rep = check_confluence(rs);
  REQUIRE(rep.mismatches.size() == 1);
  const auto& m = rep.mismatches[0];
  CHECK(rs.alphabet().word_to_string(m.overlap) == "x^2*y");
  CHECK(to_string(m.via_left, rs.alphabet()) == "0");
  CHECK(to_string(m.via_right, rs.alphabet()) == "2*x");
}

TEST_CASE("serial and parallel confluence reports agree") {
  for (const char* name : {"Gamma", "OpAlgebra"}) {
    const auto a = check_confluence(session().rules(name), Execution::serial);
    const auto b = check_confluence(session().rules(name), Execution::parallel);
    CHECK(a.overlaps == b.overlaps);
    CHECK(a.mismatches.size() == b.mismatches.size());
  }
  const RewriteSystem rs = compile(make({{"y", Parity::even, false}, {"x", Parity::even, false}},
                                        {{"xy", "x*y - y*x - 1"}, {"xx", "x*x"}}));
  const auto a = check_confluence(rs, Execution::serial), b = check_confluence(rs, Execution::parallel);
  REQUIRE(a.mismatches.size() == b.mismatches.size());
  for (std::size_t i = 0; i < a.mismatches.size(); ++i) {
    CHECK(a.mismatches[i].overlap == b.mismatches[i].overlap);
    CHECK(a.mismatches[i].via_left == b.mismatches[i].via_left);
  }
}

TEST_CASE("Gamma basis counts by degree") {
  // oracle: u^a eta^b du^c deta^d with b, c in {0, 1}
  const std::vector<std::size_t> expected{1, 4, 8, 12, 16, 20, 24, 28, 32};
  const auto basis = session().rules("Gamma").basis(8);
  for (std::size_t n = 0; n <= 8; ++n) {
    CAPTURE(n);
    CHECK(static_cast<std::size_t>(std::count_if(basis.begin(), basis.end(), [&](const Word& w) { return w.size() == n; })) ==
          expected[n]);
  }
  CHECK(std::is_sorted(basis.begin(), basis.end(), WordLess{}));
}

TEST_CASE("redex strategies agree") {
  testing::Gen gen(11);
  const auto& rs = session().rules("OpAlgebra");
  for (int i = 0; i < 40; ++i) {
    const Element e = gen.element(rs.alphabet(), 5);
    CHECK(rs.normalize(e, Strategy::leftmost) == rs.normalize(e, Strategy::rightmost));
  }
}

TEST_CASE("normalize is a projection") {
  testing::Gen gen(1);
  for (const char* name : {"Gamma", "A", "OpAlgebra", "QPlaneCalc"}) {
    const auto& rs = session().rules(name);
    for (int i = 0; i < 30; ++i) {
      const Element e = gen.element(rs.alphabet(), 8);
      const Element n = rs.normalize(e);
      CHECK(rs.normalize(n) == n);
      for (const auto& [w, c] : n.terms()) CHECK(rs.is_normal(w));
    }
  }
}

TEST_CASE("normalize respects products") {
  testing::Gen gen(2);
  const auto& rs = session().rules("Gamma");
  for (int i = 0; i < 40; ++i) {
    const Element a = gen.element(rs.alphabet(), 4), b = gen.element(rs.alphabet(), 4);
    CHECK(rs.normalize(concat(a, b)) == rs.normalize(concat(rs.normalize(a), rs.normalize(b))));
  }
}

TEST_CASE("parity is multiplicative") {
  testing::Gen gen(3);
  const auto& rs = session().rules("OpBase");
  const auto& ab = rs.alphabet();
  for (int i = 0; i < 60; ++i) {
    const Word a = gen.word(ab, 4), b = gen.word(ab, 4);
    const Parity p = ab.parity(a) + ab.parity(b);
    // OpBase has two inhomogeneous relations; stay in the homogeneous part
    if ((a + b).find(static_cast<char>(ab.letter("pu"))) != std::string::npos) continue;
    if ((a + b).find(static_cast<char>(ab.letter("peta"))) != std::string::npos) continue;
    const Element n = rs.normalize(Element::word(a + b));
    for (const auto& [w, c] : n.terms()) CHECK(ab.parity(w) == p);
  }
}

TEST_CASE("Koszul signs in tensor products") {
  const auto& rs = session().rules("L");
  const auto& ab = rs.alphabet();
  const Word eta(1, static_cast<char>(ab.letter("eta"))), u(1, static_cast<char>(ab.letter("u")));
  CHECK(tensor_mul(Tensor::pure({"", eta}), Tensor::pure({eta, ""}), rs) == -Tensor::pure({eta, eta}));
  CHECK(tensor_mul(Tensor::pure({"", u}), Tensor::pure({eta, ""}), rs) == Tensor::pure({eta, u}));
  const Tensor w = Tensor::pure({u + eta, eta}, Scalar::variable("h"));
  CHECK(tensor_mul(Tensor::unit(2), w, rs) == w);
  CHECK(tensor_mul(w, Tensor::unit(2), rs) == w);
  CHECK(to_string(Tensor::pure({eta, u}, -Scalar::variable("h")), ab) == "-h*eta @ u");
}

TEST_CASE("tensor product is associative") {
  testing::Gen gen(4);
  for (const char* name : {"Gamma", "A"}) {
    const auto& rs = session().rules(name);
    for (int i = 0; i < 25; ++i) {
      const Tensor a = normalize(gen.tensor(rs.alphabet(), 2), rs), b = normalize(gen.tensor(rs.alphabet(), 2), rs),
                   c = normalize(gen.tensor(rs.alphabet(), 2), rs);
      CHECK(tensor_mul(tensor_mul(a, b, rs), c, rs) == tensor_mul(a, tensor_mul(b, c, rs), rs));
    }
  }
}

TEST_CASE("unknown generators") {
  CHECK_THROWS_AS(el("Gamma", "x*u"), NameError);
  CHECK_THROWS_AS(session().rules("Nope"), NameError);
}

TEST_CASE("parity lint") {
  CHECK(inhomogeneous_relations(session().algebra("Gamma").presentation).empty());
  const auto lint = inhomogeneous_relations(session().algebra("OpAlgebra").presentation);
  CHECK(std::find(lint.begin(), lint.end(), "pu_u") != lint.end());
  CHECK(std::find(lint.begin(), lint.end(), "peta_eta") != lint.end());
}
