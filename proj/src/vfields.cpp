#include "qsp/vfields.hpp"

#include "qsp/error.hpp"
#include "qsp/linear.hpp"

namespace qsp {

// ----------------------------------------------------------- OperatorFamily

OperatorFamily::OperatorFamily(const RewriteSystem& rules, std::vector<CommutationOperator> ops)
    : rules_(rules), ops_(std::move(ops)) {
  const Alphabet& ab = rules_.alphabet();
  const std::size_t n = 2 * ab.size();
  through_.assign(ops_.size(), std::vector<std::vector<std::pair<Element, std::size_t>>>(n));
  constant_.assign(ops_.size(), std::vector<Element>(n));
  defined_.assign(ops_.size(), std::vector<bool>(n, false));
  for (std::size_t k = 0; k < ops_.size(); ++k)
    for (const auto& [gen, rule] : ops_[k].rules) {
      const Letter l = ab.letter(gen);
      for (const auto& [coef, target] : rule.through) through_[k][l].emplace_back(coef, index(target));
      constant_[k][l] = rule.constant;
      defined_[k][l] = true;
    }
}

std::size_t OperatorFamily::index(const std::string& name) const {
  for (std::size_t k = 0; k < ops_.size(); ++k)
    if (ops_[k].name == name) return k;
  throw NameError("unknown operator '" + name + "'");
}

Element OperatorFamily::apply_word(std::size_t op, const Word& w) const {
  if (w.empty()) return ops_[op].on_one;
  const Letter l = letter_at(w, 0);
  if (!defined_[op][l])
    throw DomainError("operator '" + ops_[op].name + "' has no rule for '" +
                      rules_.alphabet().word_to_string(w.substr(0, 1)) + "'");
  const Word rest = w.substr(1);
  Element out = concat(constant_[op][l], Element::word(rest));
  for (const auto& [coef, target] : through_[op][l]) out += concat(coef, apply_word(target, rest));
  return rules_.normalize(out);
}

Element OperatorFamily::apply(const std::string& name, const Element& f) const {
  const std::size_t k = index(name);
  Element out;
  for (const auto& [w, c] : f.terms()) out += apply_word(k, w) * c;
  return out;
}

LinearMap OperatorFamily::map(const std::string& name) const {
  const std::size_t k = index(name);
  return {name, ops_[k].parity, [this, name](const Element& f) { return apply(name, f); }};
}

OperatorFamily realize_vector_fields(const RewriteSystem& functions) {
  const Alphabet& ab = functions.alphabet();
  const Element u = Element::letter(ab.letter("u"));
  const Element eta = Element::letter(ab.letter("eta"));
  const Scalar h = Scalar::variable("h");
  CommutationOperator X{"X", Parity::even, {}, Element()};
  X.rules["u"] = {{{u + Element(2 * h), "X"}}, Element(Scalar(1))};
  X.rules["eta"] = {{{eta, "X"}}, Element()};
  CommutationOperator N{"Nabla", Parity::odd, {}, Element()};
  N.rules["u"] = {{{u + Element(h), "Nabla"}}, Element()};
  N.rules["eta"] = {{{-eta, "Nabla"}}, Element(Scalar(1))};
  return OperatorFamily(functions, {X, N});
}

// ------------------------------------------------------------------- twists

TwistWitness infer_twist(const LinearMap& op, const RewriteSystem& rules, std::size_t cutoff, Execution exec) {
  if (cutoff < 2) throw InferenceError("twist inference needs a cutoff of at least 2");
  const Alphabet& ab = rules.alphabet();
  const std::vector<Word> ansatz = rules.basis(2);
  const std::vector<Word> words = rules.basis(cutoff - 1);
  TwistWitness out;
  out.op = op.name;

  for (std::size_t g = 0; g < ab.size(); ++g) {
    const Element gen = Element::letter(letter_of(g));
    const bool negative = is_odd(op.parity) && is_odd(ab[g].parity);
    const Element op_g = op.apply(gen);
    std::vector<std::vector<Scalar>> system;
    for (const auto& w : words) {
      const Element f = Element::word(w);
      const Element op_w = op.apply(f);
      const Element target = op.apply(rules.multiply(gen, f)) - rules.multiply(op_g, f);
      std::map<Word, std::vector<Scalar>, WordLess> rows;  // one equation per normal word
      const auto row = [&](const Word& nw) -> std::vector<Scalar>& {
        return rows.try_emplace(nw, std::vector<Scalar>(ansatz.size() + 1)).first->second;
      };
      for (std::size_t i = 0; i < ansatz.size(); ++i) {
        Element contrib = rules.multiply(Element::word(ansatz[i]), op_w);
        if (negative) contrib = -contrib;
        for (const auto& [nw, c] : contrib.terms()) row(nw)[i] += c;
      }
      for (const auto& [nw, c] : target.terms()) row(nw)[ansatz.size()] += c;
      for (auto& [nw, r] : rows) system.push_back(std::move(r));
    }
    const LinearSolution sol = solve_linear(std::move(system), ansatz.size());
    if (sol.status == LinearSolution::Status::inconsistent)
      throw InferenceError("no twist of degree <= 2 fits '" + op.name + "' on '" + ab[g].name + "'");
    if (sol.status == LinearSolution::Status::underdetermined)
      throw InferenceError("the twist of '" + ab[g].name + "' under '" + op.name + "' is not determined (rank " +
                           std::to_string(sol.rank) + " of " + std::to_string(ansatz.size()) + ")");
    Element img;
    for (std::size_t i = 0; i < ansatz.size(); ++i) img.add_term(ansatz[i], sol.values[i]);
    out.twist[ab[g].name] = img;
  }

  std::vector<Word> all = rules.basis(cutoff);
  auto residuals = map_words(exec, all, [&](const Word& fw) {
    std::vector<TwistResidual> res;
    std::size_t checked = 0;
    bool automorphism = true;
    const Element f = Element::word(fw);
    const Element op_f = op.apply(f);
    const Element sf = substitute_generators(f, ab, out.twist, rules);
    const bool negative = is_odd(op.parity) && is_odd(ab.parity(fw));
    for (const auto& gw : all) {
      if (fw.size() + gw.size() > cutoff) continue;
      ++checked;
      const Element g = Element::word(gw);
      const Element fg = rules.multiply(f, g);
      Element rhs = rules.multiply(op_f, g);
      Element twisted = rules.multiply(sf, op.apply(g));
      rhs += negative ? -twisted : twisted;
      Element defect = op.apply(fg) - rhs;
      if (!defect.is_zero()) res.push_back({fw, gw, std::move(defect)});
      const Element sg = substitute_generators(g, ab, out.twist, rules);
      if (substitute_generators(fg, ab, out.twist, rules) != rules.multiply(sf, sg)) automorphism = false;
    }
    return std::make_tuple(std::move(res), checked, automorphism);
  });
  out.automorphism = true;
  for (auto& [res, checked, automorphism] : residuals) {
    out.residual.insert(out.residual.end(), res.begin(), res.end());
    out.products_checked += checked;
    out.automorphism = out.automorphism && automorphism;
  }
  return out;
}

// ------------------------------------------------------------ VectorFields

VectorFields::VectorFields(const RewriteSystem& functions) : family_(realize_vector_fields(functions)) {}

Element VectorFields::T(const Element& f) const {
  const Scalar E = Scalar::variable("E");
  return f + X(f) * (E * E - 1);
}

Element VectorFields::T_power(const Element& f, const Rational& alpha) const {
  const Scalar E = Scalar::variable("E");
  const Scalar step = E * E - 1;
  Element out;
  Element term = f;          // X^k f
  Scalar coef(1);            // binom(alpha, k) (E^2 - 1)^k
  for (unsigned k = 0; !term.is_zero(); ++k) {
    if (k > 256) throw DomainError("binomial series did not terminate");
    out += term * coef;
    term = X(term);
    coef *= Scalar((alpha - k) / (k + 1)) * step;
  }
  return out;
}

OperatorEnv VectorFields::env() const {
  OperatorEnv env;
  env.rules = &family_.rules();
  env.maps["X"] = family_.map("X");
  env.maps["Nabla"] = family_.map("Nabla");
  env.maps["T"] = {"T", Parity::even, [this](const Element& f) { return T(f); }};
  env.maps["T^-1/2"] = {"T^-1/2", Parity::even, [this](const Element& f) { return T_power(f, Rational(-1, 2)); }};
  env.maps["chi"] = {"chi", Parity::odd, [this](const Element& f) { return chi(f); }};
  return env;
}

std::vector<Word> VectorFields::domain(std::size_t max_degree) const {
  const Alphabet& ab = rules().alphabet();
  const std::size_t u = ab.index("u"), eta = ab.index("eta");
  std::vector<Word> out;
  for (const auto& w : rules().basis(max_degree)) {
    bool ok = true;
    for (std::size_t i = 0; i < w.size() && ok; ++i) {
      const std::size_t g = generator_of(letter_at(w, i));
      ok = g == u || g == eta;
    }
    if (ok) out.push_back(w);
  }
  return out;
}

std::vector<IdentityReport> check_vf_algebra(const VectorFields& vf, std::size_t cutoff, Execution exec) {
  const OperatorEnv env = vf.env();
  const auto words = vf.domain(cutoff);
  const auto X = OperatorExpr::op("X"), N = OperatorExpr::op("Nabla");
  return {operator_relation_check("[X, Nabla] = 0", comm(X, N), OperatorExpr::zero(), env, words, std::nullopt, exec),
          operator_relation_check("Nabla^2 = 0", N * N, OperatorExpr::zero(), env, words, std::nullopt, exec)};
}

std::vector<IdentityReport> check_dual_relations(const VectorFields& vf, std::size_t cutoff, Execution exec) {
  const OperatorEnv env = vf.env();
  const auto words = vf.domain(cutoff);
  const auto chi = OperatorExpr::op("chi"), T = OperatorExpr::op("T"), R = OperatorExpr::op("T^-1/2");
  return {operator_relation_check("chi^2 = 0", chi * chi, OperatorExpr::zero(), env, words, std::nullopt, exec),
          operator_relation_check("T chi = chi T", T * chi, chi * T, env, words, std::nullopt, exec),
          operator_relation_check("T^-1/2 T^-1/2 T = I", R * R * T, OperatorExpr::identity(), env, words,
                                  std::nullopt, exec)};
}

// ---------------------------------------------------------- reconciliation

namespace {

std::string first_mismatch(const std::vector<Word>& words, const std::function<Element(const Word&)>& lhs,
                           const std::function<Element(const Word&)>& rhs, const Alphabet& ab,
                           const Alphabet& out_ab) {
  for (const auto& w : words) {
    const Element a = lhs(w), b = rhs(w);
    if (a != b) return "fails at " + ab.word_to_string(w) + ": " + to_string(a, out_ab) + " vs " + to_string(b, out_ab);
  }
  return "holds on " + std::to_string(words.size()) + " words";
}

std::string twist_string(const TwistWitness& t, const Alphabet& ab) {
  std::string s;
  for (const auto& g : ab.generators()) {
    auto it = t.twist.find(g.name);
    if (it == t.twist.end()) continue;
    if (!s.empty()) s += ", ";
    s += g.name + " -> " + to_string(it->second, ab);
  }
  return s;
}

}  // namespace

std::vector<ReconciliationLine> normalization_report(const Calculus& gamma, std::size_t cutoff, Execution exec) {
  std::vector<ReconciliationLine> out;
  const auto add = [&](std::string key, std::string value, bool verified = true) {
    out.push_back({std::move(key), std::move(value), verified});
  };
  const Alphabet& gab = gamma.rules().alphabet();
  const RewriteSystem& left = gamma.left_rules();
  const Alphabet& lab = left.alphabet();
  const RewriteSystem rs = compile(restrict(gamma.presentation(), {"u", "eta"}, "functions"));
  const Alphabet& ab = rs.alphabet();
  const VectorFields vf(rs);
  const auto words = vf.domain(cutoff);
  const Scalar h = Scalar::variable("h"), E = Scalar::variable("E");
  const Scalar c_var = Scalar::variable("c_");
  const Element u = Element::letter(ab.letter("u"));
  const auto partials = [&](const Element& f) {
    std::vector<Element> p = gamma.partials(translate(f, ab, gab));
    for (auto& e : p) e = translate(e, gab, ab);
    return p;
  };

  add("cutoff", std::to_string(cutoff));
  add("words", std::to_string(words.size()));

  // (a) twists against the operator T
  TwistWitness tx, tn;
  try {
    tx = infer_twist(vf.family().map("X"), rs, cutoff, exec);
    tn = infer_twist(vf.family().map("Nabla"), rs, cutoff, exec);
  } catch (const InferenceError& e) {
    add("twist.error", e.what(), false);
    return out;
  }
  add("twist.X", twist_string(tx, ab));
  add("twist.X.residual", std::to_string(tx.residual.size()), tx.residual.empty());
  add("twist.Nabla", twist_string(tn, ab));
  add("twist.Nabla.residual", std::to_string(tn.residual.size()), tn.residual.empty());
  add("T(u)", to_string(vf.T(u), ab));
  const auto twist_X = [&](const Word& w) { return substitute_generators(Element::word(w), ab, tx.twist, rs); };
  add("twist.X.vs.T", first_mismatch(words, twist_X, [&](const Word& w) { return vf.T(Element::word(w)); }, ab, ab));
  add("twist.X.vs.I+2hX",
      first_mismatch(words, twist_X, [&](const Word& w) { return Element::word(w) + vf.X(Element::word(w)) * (2 * h); },
                     ab, ab));
  {
    std::vector<Scalar> residue;
    for (const auto& w : words) {
      const Element f = Element::word(w);
      const Element diff = f + vf.X(f) * ((E * E - 1) * c_var) - twist_X(w);
      for (const auto& [nw, c] : diff.terms()) residue.push_back(c);
    }
    const VariableSolution s = solve_for(residue, "c_");
    add("T.rescale", s.value ? "X -> (" + s.value->to_string() + ")*X makes T equal twist.X" : "none",
        s.value.has_value());
  }

  // vector fields against the canonical partials
  add("X.vs.P_u", first_mismatch(
                      words, [&](const Word& w) { return vf.X(Element::word(w)); },
                      [&](const Word& w) { return partials(Element::word(w))[0]; }, ab, ab));
  add("Nabla.vs.P_eta", first_mismatch(
                            words, [&](const Word& w) { return vf.nabla(Element::word(w)); },
                            [&](const Word& w) { return partials(Element::word(w))[1]; }, ab, ab));

  // (b) d = phi X + V Nabla, forms on the left
  const Element du = Element::letter(lab.letter("du"));
  const Element deta = Element::letter(lab.letter("deta"));
  const Scalar phi_c = (E * E - 1) / (2 * h);
  const Scalar V_c = E;
  add("phi", to_string(du * phi_c, lab));
  add("V", to_string(deta * V_c, lab));
  const auto lift = [&](const Element& f) { return translate(f, ab, lab); };
  const auto decomposition = [&](const Scalar& cx, const Scalar& cn) {
    return [&, cx, cn](const Word& w) {
      const Element f = Element::word(w);
      return left.multiply(du * (phi_c * cx), lift(vf.X(f))) + left.multiply(deta * (V_c * cn), lift(vf.nabla(f)));
    };
  };
  const auto d_of = [&](const Word& w) { return gamma.d_left(translate(Element::word(w), ab, gab)); };
  add("decomposition.unscaled", first_mismatch(words, decomposition(Scalar(1), Scalar(1)), d_of, ab, lab));

  const auto sector_scale = [&](const Element& form, const Scalar& form_c, bool x_sector) {
    std::vector<Scalar> residue;
    for (const auto& w : words) {
      const Element f = Element::word(w);
      const Element img = x_sector ? vf.X(f) : vf.nabla(f);
      const Element diff = left.multiply(form * (form_c * c_var), lift(img)) -
                           left.multiply(form, lift(partials(f)[x_sector ? 0 : 1]));
      for (const auto& [nw, c] : diff.terms()) residue.push_back(c);
    }
    return solve_for(residue, "c_");
  };
  const VariableSolution sx = sector_scale(du, phi_c, true);
  const VariableSolution sn = sector_scale(deta, V_c, false);
  add("decomposition.du.scale", sx.value ? "X -> (" + sx.value->to_string() + ")*X" : "none", sx.value.has_value());
  add("decomposition.deta.scale", sn.value ? "Nabla -> (" + sn.value->to_string() + ")*Nabla" : "none",
      sn.value.has_value());
  add("decomposition.deta.unscaled",
      first_mismatch(
          words, [&](const Word& w) { return left.multiply(deta * V_c, lift(vf.nabla(Element::word(w)))); },
          [&](const Word& w) { return left.multiply(deta, lift(partials(Element::word(w))[1])); }, ab, lab));
  if (sx.value && sn.value)
    add("decomposition.rescaled", first_mismatch(words, decomposition(*sx.value, *sn.value), d_of, ab, lab));

  // the rescale turning the canonical [P_u, u] = 1 + 2h P_u into the form
  // with constant term 2h/(E^2 - 1)
  {
    OperatorEnv env;
    env.rules = &rs;
    env.maps["P_u"] = {"P_u", Parity::even, [&](const Element& f) { return partials(f)[0]; }};
    const auto P = OperatorExpr::op("P_u");
    const auto rep = operator_relation_check(
        "[P_u, u] = 2h/(E^2 - 1) + 2h P_u", comm(P, OperatorExpr::mul(u)),
        (Scalar(2) * h / (E * E - 1)) * OperatorExpr::identity() + (2 * h) * P, env, words, std::string("P_u"), exec);
    add("P_u.rescale", rep.rescale ? rep.rescale->to_string() : "none", rep.rescale.has_value());
    if (rep.rescale && sx.value) add("P_u.rescale.equals.du.scale", *rep.rescale == *sx.value ? "yes" : "no");
  }
  return out;
}

}  // namespace qsp
