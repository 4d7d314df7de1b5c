#include "qsp/commands.hpp"

#include <algorithm>

#include "qsp/ansatz.hpp"
#include "qsp/error.hpp"
#include "qsp/syntax.hpp"
#include "qsp/vfields.hpp"

namespace qsp {

namespace {

using Args = std::vector<std::string>;

void need(const Args& a, std::size_t n, const char* usage) {
  if (a.size() != n) throw UsageError(std::string("usage: ") + usage);
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::size_t to_size(const std::string& s) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty()) throw UsageError("expected a non-negative integer, got '" + s + "'");
  return v;
}

std::string words_detail(std::size_t n) { return "(" + std::to_string(n) + " words)"; }

void add_identity(Report& r, const IdentityReport& id, const Alphabet& alphabet) {
  std::string detail = words_detail(id.words_checked);
  if (!id.holds && !id.failures.empty()) {
    const auto& f = id.failures.front();
    detail = std::to_string(id.failure_count) + " of " + std::to_string(id.words_checked) + " words, first at " +
             alphabet.word_to_string(f.word) + ": " + to_string(f.lhs, alphabet) + " vs " + to_string(f.rhs, alphabet);
  }
  r.check(id.label, id.holds, detail);
}

Element element_arg(Session& s, const std::string& alg, const std::string& text) {
  return evaluate_element(parse(text), s.context(alg));
}

// ------------------------------------------------------------------ algebra

Report cmd_normalize(const Args& a, Session& s) {
  need(a, 3, "normalize ALGEBRA EXPR");
  const auto ctx = s.context(a[1]);
  Value v = evaluate(parse(a[2]), ctx);
  if (auto* e = std::get_if<Element>(&v)) v = s.rules(a[1]).normalize(*e);
  if (auto* t = std::get_if<Tensor>(&v)) v = normalize(*t, s.rules(a[1]));
  Report r;
  r.value = to_string(v, ctx.alphabet);
  return r;
}

Report cmd_d(const Args& a, Session& s) {
  need(a, 3, "d ALGEBRA EXPR");
  const auto& calc = s.calculus(a[1]);
  Report r;
  r.value = to_string(calc.d(element_arg(s, a[1], a[2])), calc.presentation().alphabet);
  return r;
}

Report cmd_partials(const Args& a, Session& s) {
  if (a.size() != 2 && a.size() != 3) throw UsageError("usage: partials [ALGEBRA] EXPR");
  const std::string alg = a.size() == 3 ? a[1] : "Gamma";
  const auto& calc = s.calculus(alg);
  const auto p = calc.partials(element_arg(s, alg, a.back()));
  Report r;
  for (std::size_t i = 0; i < p.size(); ++i)
    r.add("P_" + calc.coordinates()[i], to_string(p[i], calc.presentation().alphabet));
  return r;
}

Report cmd_coproduct(const Args& a, Session& s) {
  need(a, 3, "coproduct HOPF EXPR");
  const auto& hs = s.hopf(a[1]);
  EvalContext ctx;
  ctx.alphabet = &hs.presentation().alphabet;
  ctx.rules = &hs.rules();
  ctx.scalar_names.insert(hs.presentation().params.begin(), hs.presentation().params.end());
  Report r;
  r.value = to_string(hs.coproduct(evaluate_element(parse(a[2]), ctx)), hs.presentation().alphabet);
  return r;
}

// ------------------------------------------------------------------- checks

Report check_hopf(const std::string& name, Session& s) {
  const auto& hs = s.hopf(name);
  const auto& alphabet = hs.presentation().alphabet;
  Report r;
  r.add("hopf", name + " on " + hs.presentation().name);
  r.add("cutoff", std::to_string(s.cutoff));
  const auto rep = check_hopf_axioms(hs, s.cutoff, s.exec);
  for (const auto& ax : rep.axioms) {
    std::string detail = words_detail(ax.words_checked);
    if (!ax.holds && ax.witness) detail = "at " + alphabet.word_to_string(*ax.witness) + ": " + ax.detail;
    r.check(ax.axiom, ax.holds, detail);
  }
  r.add("axioms", std::to_string(rep.passed_count()) + "/" + std::to_string(rep.axioms.size()));
  const auto compat = check_relation_compatibility(hs);
  std::string detail = "(" + std::to_string(compat.relations) + " relations)";
  if (!compat.passed()) {
    const auto& f = compat.failures.front();
    detail = f.map + "(" + f.relation + ") = " + f.value;
  }
  r.check("relations", compat.passed(), detail);
  r.check("parity", coproduct_preserves_parity(hs, s.cutoff));
  return r;
}

Report check_confluence_cmd(const std::string& name, Session& s) {
  const auto& rs = s.rules(name);
  const auto& alphabet = rs.alphabet();
  const auto rep = check_confluence(rs, s.exec);
  Report r;
  r.add("algebra", name);
  r.add("rules", std::to_string(rs.rules().size()));
  r.add("overlaps", std::to_string(rep.overlaps));
  r.check("confluent", rep.confluent(), "(" + std::to_string(rep.mismatches.size()) + " mismatches)");
  for (std::size_t i = 0; i < rep.mismatches.size(); ++i) {
    const auto& m = rep.mismatches[i];
    r.add("mismatch." + std::to_string(i + 1), alphabet.word_to_string(m.overlap) + ": " + to_string(m.via_left, alphabet) +
                                                    " vs " + to_string(m.via_right, alphabet));
  }
  const auto lint = inhomogeneous_relations(s.algebra(name).presentation);
  r.add("lint.parity", lint.empty() ? "homogeneous" : "inhomogeneous " + join(lint, " "));
  return r;
}

Report check_calculus(const std::string& name, Session& s) {
  Report r;
  r.add("algebra", name);
  const Calculus* calc = nullptr;
  try {
    calc = &s.calculus(name);
  } catch (const PresentationError& e) {
    r.check("d.relations", false, e.what());
    return r;
  }
  const auto& alphabet = calc->presentation().alphabet;
  r.add("coordinates", join(calc->coordinates(), " "));
  r.add("forms", join(calc->forms(), " "));
  r.check("d.relations", true, "(" + std::to_string(calc->presentation().relations.size()) + " relations)");
  r.check("confluent", check_confluence(calc->rules(), s.exec).confluent());

  const auto words = calc->rules().basis(s.cutoff);
  const auto dd = map_words(s.exec, words, [&](const Word& w) { return calc->d(calc->d(Element::word(w))).is_zero(); });
  const auto bad = std::count(dd.begin(), dd.end(), false);
  r.check("d^2 = 0", bad == 0, bad == 0 ? words_detail(words.size()) : std::to_string(bad) + " words");

  const auto functions = calc->function_basis(s.cutoff);
  const auto round = map_words(s.exec, functions, [&](const Word& w) {
    const Element f = Element::word(w);
    const auto p = calc->partials(f);
    Element rebuilt;
    for (std::size_t i = 0; i < p.size(); ++i)
      rebuilt += calc->rules().multiply(calc->d(Element::letter(alphabet.letter(calc->coordinates()[i]))), p[i]);
    return rebuilt == calc->d(f);
  });
  const auto lost = std::count(round.begin(), round.end(), false);
  r.check("d = sum d(x) P_x", lost == 0, lost == 0 ? words_detail(functions.size()) : std::to_string(lost) + " words");
  const auto lint = inhomogeneous_relations(calc->presentation());
  r.add("lint.parity", lint.empty() ? "homogeneous" : "inhomogeneous " + join(lint, " "));
  return r;
}

Report cmd_check(const Args& a, Session& s) {
  need(a, 3, "check hopf|confluence|calculus NAME");
  if (a[1] == "hopf") return check_hopf(a[2], s);
  if (a[1] == "confluence") return check_confluence_cmd(a[2], s);
  if (a[1] == "calculus") return check_calculus(a[2], s);
  throw UsageError("unknown check '" + a[1] + "'");
}

// ------------------------------------------------------------ vector fields

Report cmd_vf(const Args& a, Session& s) {
  need(a, 2, "vf check|twist|dual|reconcile");
  const auto& rs = s.rules("L");
  Report r;
  if (a[1] == "check" || a[1] == "dual") {
    const VectorFields vf(rs);
    r.add("cutoff", std::to_string(s.cutoff));
    const auto reps = a[1] == "check" ? check_vf_algebra(vf, s.cutoff, s.exec) : check_dual_relations(vf, s.cutoff, s.exec);
    for (const auto& id : reps) add_identity(r, id, rs.alphabet());
  } else if (a[1] == "twist") {
    const VectorFields vf(rs);
    const auto env = vf.env();
    r.add("cutoff", std::to_string(s.cutoff));
    for (const std::string op : {"X", "Nabla"}) {
      const auto w = infer_twist(env.maps.at(op), rs, s.cutoff, s.exec);
      for (const auto& [g, img] : w.twist) r.add(op + ".twist." + g, to_string(img, rs.alphabet()));
      r.check(op + ".leibniz", w.residual.empty(),
              "(" + std::to_string(w.products_checked) + " products, " + std::to_string(w.residual.size()) + " defects)");
      r.check(op + ".automorphism", w.automorphism);
    }
  } else if (a[1] == "reconcile") {
    for (const auto& line : normalization_report(s.calculus("Gamma"), s.cutoff, s.exec)) {
      r.add(line.key, line.value);
      r.passed = r.passed && line.verified;
    }
  } else {
    throw UsageError("unknown vf command '" + a[1] + "'");
  }
  return r;
}

// ------------------------------------------------------------------- ansatz

std::string describe(const SolutionFamily& f, const std::vector<std::string>& unknowns) {
  std::vector<std::string> parts;
  for (const auto& u : unknowns)
    if (auto it = f.bindings.find(u); it != f.bindings.end()) parts.push_back(u + " = " + it->second.to_string());
  std::string out = parts.empty() ? "no bindings" : join(parts, ", ");
  if (!f.free.empty()) out += "; free " + join(f.free, " ");
  if (!f.nonzero.empty()) {
    std::vector<std::string> nz;
    for (const auto& p : f.nonzero) nz.push_back(p.to_string());
    out += "; nonzero " + join(nz, ", ");
  }
  if (!f.residual.empty()) {
    std::vector<std::string> res;
    for (const auto& p : f.residual) res.push_back(p.to_string());
    out += "; unresolved " + join(res, ", ");
  }
  return out;
}

Report solve_problem(const AnsatzProblem& p, Session& s) {
  Report r;
  r.add("ansatz", p.name);
  r.add("unknowns", join(p.unknowns, " "));
  const auto cs = derive_constraints(p, s.exec);
  r.add("constraints", std::to_string(cs.constraints.size()));
  for (std::size_t i = 0; i < cs.constraints.size(); ++i)
    r.add("constraint." + std::to_string(i + 1), cs.constraints[i].to_string() + "  [" + cs.origins[i] + "]");
  const auto sol = solve(cs, p.unknowns, s.split_budget);
  r.add("splits", std::to_string(sol.splits));
  r.check("complete", sol.complete);
  r.add("families", std::to_string(sol.families.size()));
  for (std::size_t i = 0; i < sol.families.size(); ++i) {
    const auto& f = sol.families[i];
    const std::string key = "family." + std::to_string(i + 1);
    r.add(key, describe(f, p.unknowns));
    r.check(key + ".verified", f.verified);
  }
  if (p.point.empty()) return r;

  std::vector<std::string> hits;
  for (std::size_t i = 0; i < sol.families.size(); ++i)
    if (member(p.point, sol.families[i], p.unknowns)) hits.push_back(std::to_string(i + 1));
  r.check("point.member", !hits.empty(), hits.empty() ? "of no family" : "of family " + join(hits, ", "));
  const auto v = verify_solution(p, p.point, s.exec);
  for (const auto& rel : v.instantiated) r.add("point." + rel.label, to_string(rel.value, p.base.alphabet) + " = 0");
  for (const auto& rel : v.derived) r.add("point." + rel.label, to_string(rel.value, p.base.alphabet) + " = 0");
  r.check("point.compiles", v.compiled, v.compile_error);
  if (v.compiled) {
    r.check("point.confluent", v.confluent);
    r.check("point.d_respects_relations", v.differential_ok);
    r.check("point.d^2 = 0", v.d_squared_zero);
  }
  if (v.matches_target) {
    r.check("point.target", *v.matches_target, p.target->name);
    for (std::size_t i = 0; i < v.target_mismatches.size(); ++i)
      r.add("point.target.mismatch." + std::to_string(i + 1), v.target_mismatches[i]);
  }
  return r;
}

Report cmd_solve(const Args& a, Session& s) {
  need(a, 2, "solve FILE");
  Report r;
  for (const auto* p : s.ansatz_file(a[1])) r.append(solve_problem(*p, s));
  return r;
}

// ------------------------------------------------------------------ session

Report cmd_load(const Args& a, Session& s) {
  need(a, 2, "load FILE");
  Report r;
  r.add("loaded", join(s.load_file(a[1]), " "));
  return r;
}

Report cmd_set(const Args& a, Session& s) {
  need(a, 3, "set cutoff|splits N");
  Report r;
  if (a[1] == "cutoff")
    s.cutoff = to_size(a[2]);
  else if (a[1] == "splits")
    s.split_budget = to_size(a[2]);
  else
    throw UsageError("unknown setting '" + a[1] + "'");
  r.add(a[1], a[2]);
  return r;
}

Report cmd_list(const Args& a, Session& s) {
  need(a, 1, "list");
  Report r;
  std::vector<std::string> algs, hopf, ans;
  for (const auto& x : s.definitions().algebras) algs.push_back(x.presentation.name + (x.derivation ? "*" : ""));
  for (const auto& x : s.definitions().costructures) hopf.push_back(x.spec.name);
  for (const auto& x : s.definitions().ansatze) ans.push_back(x.name);
  r.add("algebras", join(algs, " "));
  r.add("costructures", join(hopf, " "));
  r.add("ansatz", join(ans, " "));
  r.add("builtin.files", join(builtin_files(), " "));
  return r;
}

}  // namespace

Report run_command(const Args& args, Session& session) {
  if (args.empty()) throw UsageError("empty command");
  const std::string& c = args[0];
  if (c == "load") return cmd_load(args, session);
  if (c == "normalize") return cmd_normalize(args, session);
  if (c == "d") return cmd_d(args, session);
  if (c == "partials") return cmd_partials(args, session);
  if (c == "coproduct") return cmd_coproduct(args, session);
  if (c == "check") return cmd_check(args, session);
  if (c == "vf") return cmd_vf(args, session);
  if (c == "solve") return cmd_solve(args, session);
  if (c == "set") return cmd_set(args, session);
  if (c == "list") return cmd_list(args, session);
  throw UsageError("unknown command '" + c + "'");
}

std::vector<std::string> split_command(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool in_word = false;
  char quote = 0;
  for (char ch : line) {
    if (quote) {
      if (ch == quote)
        quote = 0;
      else
        cur += ch;
    } else if (ch == '"' || ch == '\'') {
      quote = ch;
      in_word = true;
    } else if (ch == ' ' || ch == '\t') {
      if (in_word) out.push_back(cur);
      cur.clear();
      in_word = false;
    } else {
      cur += ch;
      in_word = true;
    }
  }
  if (quote) throw UsageError("unterminated quote");
  if (in_word) out.push_back(cur);
  return out;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e) || dynamic_cast<const ParseError*>(&e) || dynamic_cast<const NameError*>(&e))
    return 2;
  return 1;
}

}  // namespace qsp
