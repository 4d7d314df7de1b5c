#include "qsp/calculus.hpp"

#include <algorithm>

#include "qsp/error.hpp"

namespace qsp {

// --------------------------------------------------------------- Derivation

Derivation::Derivation(Alphabet alphabet, DerivationSpec spec)
    : alphabet_(std::move(alphabet)), spec_(std::move(spec)) {
  images_.assign(2 * alphabet_.size(), Element());
  twist_.assign(alphabet_.size(), std::nullopt);
  for (const auto& [name, img] : spec_.twist) twist_[alphabet_.index(name)] = img;
  for (const auto& [name, img] : spec_.images) images_[2 * alphabet_.index(name)] = img;
  for (std::size_t g = 0; g < alphabet_.size(); ++g) {
    if (!alphabet_[g].invertible || images_[2 * g].is_zero()) continue;
    if (twist_[g]) throw DomainError("twisted derivations of invertible generators are not supported");
    const Element inv = Element::letter(letter_of(g, true));
    images_[2 * g + 1] = -concat(concat(inv, images_[2 * g]), inv);
  }
}

Element Derivation::image(Letter l) const { return images_[l]; }

Element Derivation::twisted(const Word& prefix) const {
  Element out = Element(Scalar(1));
  Word plain;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    const Letter l = letter_at(prefix, i);
    const auto& tw = twist_[generator_of(l)];
    if (!tw) {
      plain.push_back(static_cast<char>(l));
      continue;
    }
    if (is_inverse(l)) throw DomainError("twist of an inverse letter");
    out = concat(concat(out, Element::word(plain)), *tw);
    plain.clear();
  }
  return concat(out, Element::word(plain));
}

Element Derivation::expand(const Element& f) const {
  Element out;
  for (const auto& [w, c] : f.terms()) {
    Parity prefix_parity = Parity::even;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const Letter l = letter_at(w, i);
      const Element& img = images_[l];
      if (!img.is_zero()) {
        const bool negative = is_odd(spec_.parity) && is_odd(prefix_parity);
        Element term = concat(concat(twisted(w.substr(0, i)), img), Element::word(w.substr(i + 1)));
        term *= negative ? -c : c;
        out += term;
      }
      prefix_parity = prefix_parity + alphabet_.parity(l);
    }
  }
  return out;
}

std::vector<std::pair<std::string, Element>> Derivation::defects(const Presentation& p, const RewriteSystem& rs) const {
  std::vector<std::pair<std::string, Element>> out;
  for (const auto& r : p.relations) {
    Element v = apply(r.value, rs);
    if (!v.is_zero()) out.emplace_back(r.label, std::move(v));
  }
  return out;
}

Element substitute_generators(const Element& e, const Alphabet& from, const std::map<std::string, Element>& images,
                              const RewriteSystem& target) {
  const Alphabet& to = target.alphabet();
  std::vector<Element> by_letter(2 * from.size());
  for (std::size_t g = 0; g < from.size(); ++g) {
    auto it = images.find(from[g].name);
    if (it != images.end()) {
      by_letter[2 * g] = it->second;
    } else {
      const std::size_t j = to.index(from[g].name);
      by_letter[2 * g] = Element::letter(letter_of(j));
      if (from[g].invertible) by_letter[2 * g + 1] = Element::letter(letter_of(j, true));
    }
  }
  Element out;
  for (const auto& [w, c] : e.terms()) {
    Element term(c);
    for (std::size_t i = 0; i < w.size(); ++i) {
      const Letter l = letter_at(w, i);
      if (is_inverse(l) && by_letter[l].is_zero())
        throw DomainError("cannot substitute into the inverse of '" + from[generator_of(l)].name + "'");
      term = target.normalize(concat(term, by_letter[l]));
    }
    out += term;
  }
  return target.normalize(out);
}

// ----------------------------------------------------------------- Calculus

Calculus::Calculus(const Presentation& p, const DerivationSpec& spec)
    : presentation_(p), rules_(compile(p)), d_(p.alphabet, spec) {
  const auto bad = d_.defects(presentation_, rules_);
  if (!bad.empty()) {
    std::string msg = "the differential does not respect relation";
    for (const auto& [label, v] : bad) msg += " '" + label + "' (gives " + to_string(v, p.alphabet) + ")";
    throw PresentationError(msg);
  }
  const Alphabet& ab = p.alphabet;
  is_form_.assign(ab.size(), false);
  for (const auto& g : ab.generators()) {
    auto it = spec.images.find(g.name);
    if (it == spec.images.end() || it->second.size() != 1) continue;
    const auto& [w, c] = *it->second.terms().begin();
    if (w.size() != 1 || !c.is_one() || is_inverse(letter_at(w, 0))) continue;
    coordinates_.push_back(g.name);
    forms_.push_back(ab[generator_of(letter_at(w, 0))].name);
    is_form_[generator_of(letter_at(w, 0))] = true;
  }
  std::vector<std::string> order = forms_;
  for (std::size_t g = 0; g < ab.size(); ++g)
    if (!is_form_[g]) order.push_back(ab[g].name);
  left_presentation_ = p.reordered(order);
  left_ = compile(left_presentation_);
  DerivationSpec left_spec = spec;
  for (auto& [name, img] : left_spec.images) img = translate(img, ab, left_presentation_.alphabet);
  for (auto& [name, img] : left_spec.twist) img = translate(img, ab, left_presentation_.alphabet);
  d_left_ = Derivation(left_presentation_.alphabet, left_spec);
}

bool Calculus::is_function(const Element& f) const {
  for (const auto& [w, c] : f.terms())
    for (std::size_t i = 0; i < w.size(); ++i)
      if (is_form_[generator_of(letter_at(w, i))]) return false;
  return true;
}

Element Calculus::d_left(const Element& f) const {
  return d_left_.apply(translate(f, presentation_.alphabet, left_presentation_.alphabet), left_);
}

std::vector<Element> Calculus::partials(const Element& f) const {
  if (!is_function(f)) throw DomainError("partial derivatives are defined on functions only");
  const Alphabet& left_ab = left_presentation_.alphabet;
  std::vector<Element> out(coordinates_.size());
  const Element df = d_left(f);
  for (const auto& [w, c] : df.terms()) {
    const std::string& first = left_ab[generator_of(letter_at(w, 0))].name;
    const auto it = std::find(forms_.begin(), forms_.end(), first);
    if (it == forms_.end()) throw DomainError("differential has a term without a leading form");
    const Element rest = translate(Element::word(w.substr(1), c), left_ab, presentation_.alphabet);
    out[static_cast<std::size_t>(it - forms_.begin())] += rest;
  }
  for (auto& e : out) e = rules_.normalize(e);
  return out;
}

std::vector<Word> Calculus::function_basis(std::size_t max_degree) const {
  std::vector<Word> out;
  for (const auto& w : rules_.basis(max_degree))
    if (is_function(Element::word(w))) out.push_back(w);
  return out;
}

std::vector<std::string> embedding_defects(const Presentation& p, const std::map<std::string, Element>& images,
                                           const RewriteSystem& target) {
  std::vector<std::string> out;
  for (const auto& r : p.relations)
    if (!substitute_generators(r.value, p.alphabet, images, target).is_zero()) out.push_back(r.label);
  return out;
}

std::pair<Element, Element> cartan_maurer(const Calculus& gamma) {
  const Alphabet& ab = gamma.presentation().alphabet;
  const Scalar h = Scalar::variable("h"), E = Scalar::variable("E");
  return {Element::letter(ab.letter("du"), (E * E - 1) / (2 * h)), Element::letter(ab.letter("deta"), E)};
}

// ---------------------------------------------------------------- operators

OperatorExpr OperatorExpr::identity() {
  OperatorExpr e;
  e.terms_.push_back({Scalar(1), {}});
  return e;
}

OperatorExpr OperatorExpr::mul(const Element& el) {
  OperatorExpr e;
  e.terms_.push_back({Scalar(1), {Atom{false, "", el}}});
  return e;
}

OperatorExpr OperatorExpr::op(const std::string& name) {
  OperatorExpr e;
  e.terms_.push_back({Scalar(1), {Atom{true, name, Element()}}});
  return e;
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

OperatorExpr& OperatorExpr::operator-=(const OperatorExpr& o) { return *this += Scalar(-1) * o; }

OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
  OperatorExpr r;
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) {
      OperatorExpr::Term t{ta.coefficient * tb.coefficient, ta.atoms};
      t.atoms.insert(t.atoms.end(), tb.atoms.begin(), tb.atoms.end());
      r.terms_.push_back(std::move(t));
    }
  return r;
}

OperatorExpr operator*(const Scalar& c, OperatorExpr a) {
  for (auto& t : a.terms_) t.coefficient *= c;
  return a;
}

OperatorExpr comm(const OperatorExpr& a, const OperatorExpr& b) { return a * b - b * a; }
OperatorExpr acomm(const OperatorExpr& a, const OperatorExpr& b) { return a * b + b * a; }

Element apply(const OperatorExpr& op, const Element& f, const OperatorEnv& env,
              const std::map<std::string, Scalar>& scale) {
  Element out;
  for (const auto& term : op.terms()) {
    Element g = f;
    for (auto it = term.atoms.rbegin(); it != term.atoms.rend() && !g.is_zero(); ++it) {
      if (it->named) {
        auto m = env.maps.find(it->name);
        if (m == env.maps.end()) throw NameError("unknown operator '" + it->name + "'");
        g = m->second.apply(g);
        if (auto s = scale.find(it->name); s != scale.end()) g *= s->second;
      } else {
        g = concat(it->element, g);
        if (env.rules) g = env.rules->normalize(g);
      }
    }
    out += g * term.coefficient;
  }
  return out;
}

VariableSolution solve_for(const std::vector<Scalar>& must_vanish, const std::string& var) {
  VariableSolution r;
  Polynomial g;
  bool mentions = false;
  for (const auto& s : must_vanish) {
    if (s.is_zero()) continue;
    g = gcd(g, s.numerator());
    mentions = mentions || s.numerator().mentions(var);
  }
  if (g.is_zero()) {
    r.any = true;
    return r;
  }
  if (!mentions || g.degree_in(var) != 1) return r;
  const Scalar root = Scalar::ratio(-g.coefficient(var, 0), g.coefficient(var, 1));
  for (const auto& s : must_vanish) {
    try {
      if (!s.substitute({{var, root}}).is_zero()) return r;
    } catch (const ArithmeticError&) {
      return r;
    }
  }
  r.value = root;
  return r;
}

IdentityReport operator_relation_check(const std::string& label, const OperatorExpr& lhs, const OperatorExpr& rhs,
                                       const OperatorEnv& env, const std::vector<Word>& words,
                                       const std::optional<std::string>& rescale_target, Execution exec) {
  IdentityReport rep;
  rep.label = label;
  rep.words_checked = words.size();
  auto sides = map_words(exec, words, [&](const Word& w) {
    const Element f = Element::word(w);
    return std::make_pair(apply(lhs, f, env), apply(rhs, f, env));
  });
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (sides[i].first == sides[i].second) continue;
    ++rep.failure_count;
    if (rep.failures.size() < 3) rep.failures.push_back({words[i], sides[i].first, sides[i].second});
  }
  rep.holds = rep.failure_count == 0;
  if (rescale_target) {
    rep.rescaled = *rescale_target;
    const std::string var = "c_";
    const std::map<std::string, Scalar> scale{{*rescale_target, Scalar::variable(var)}};
    auto diffs = map_words(exec, words, [&](const Word& w) {
      const Element f = Element::word(w);
      return apply(lhs, f, env, scale) - apply(rhs, f, env, scale);
    });
    std::vector<Scalar> all;
    for (const auto& d : diffs)
      for (const auto& [w, c] : d.terms()) all.push_back(c);
    const VariableSolution s = solve_for(all, var);
    rep.rescale_any = s.any;
    rep.rescale = s.value;
  }
  return rep;
}

IdentityReport conjugation_identity(const RewriteSystem& gamma, unsigned n) {
  IdentityReport rep;
  rep.label = "u^k d(u) = d(u) (u+2h)^k, u^k d(eta) = d(eta) (u+h)^k, k <= " + std::to_string(n);
  const Alphabet& ab = gamma.alphabet();
  const Element u = Element::letter(ab.letter("u"));
  const Scalar h = Scalar::variable("h");
  const std::pair<const char*, Scalar> cases[] = {{"du", 2 * h}, {"deta", h}};
  for (const auto& [form, shift] : cases) {
    const Element df = Element::letter(ab.letter(form));
    Element uk(Scalar(1)), shifted(Scalar(1));
    const Element u_shift = u + Element(shift);
    for (unsigned k = 1; k <= n; ++k) {
      uk = gamma.multiply(uk, u);
      shifted = gamma.multiply(shifted, u_shift);
      const Element lhs = gamma.multiply(uk, df);
      const Element rhs = gamma.multiply(df, shifted);
      ++rep.words_checked;
      if (lhs == rhs) continue;
      ++rep.failure_count;
      if (rep.failures.size() < 3) rep.failures.push_back({Word(k, static_cast<char>(ab.letter("u"))), lhs, rhs});
    }
  }
  rep.holds = rep.failure_count == 0;
  return rep;
}

Element vacuum_action(const RewriteSystem& ops, const std::vector<bool>& is_operator, const Word& op, const Element& w) {
  const Element full = ops.normalize(concat(Element::word(op), w));
  Element out;
  for (const auto& [word, c] : full.terms()) {
    bool keep = true;
    for (std::size_t i = 0; i < word.size() && keep; ++i) keep = !is_operator[generator_of(letter_at(word, i))];
    if (keep) out.add_term(word, c);
  }
  return out;
}

}  // namespace qsp
