#include "qsp/hopf.hpp"

#include "qsp/error.hpp"

namespace qsp {

namespace {

/// Inverse of c*w for a word of invertible letters: c^-1 * w^-1.
std::optional<Element> invert_term(const Element& e, const Alphabet& ab) {
  if (e.size() != 1) return std::nullopt;
  const auto& [w, c] = *e.terms().begin();
  Word inv;
  for (std::size_t i = w.size(); i-- > 0;) {
    const Letter l = letter_at(w, i);
    if (!ab[generator_of(l)].invertible) return std::nullopt;
    inv.push_back(static_cast<char>(inverse_letter(l)));
  }
  return Element::word(inv, c.inverse());
}

}  // namespace

HopfStructure::HopfStructure(const Presentation& p, CostructureSpec spec)
    : presentation_(p), rules_(compile(p)), spec_(std::move(spec)) {
  const Alphabet& ab = p.alphabet;
  const std::size_t n = 2 * ab.size();
  delta_.assign(n, Tensor(2));
  eps_.assign(n, Scalar());
  kappa_.assign(n, Element());
  const auto fail = [&](const std::string& msg) { throw PresentationError("costructure '" + spec_.name + "': " + msg); };
  for (const auto& [name, v] : spec_.coproduct) ab.index(name);
  for (const auto& [name, v] : spec_.counit) ab.index(name);
  for (const auto& [name, v] : spec_.antipode) ab.index(name);
  for (std::size_t g = 0; g < ab.size(); ++g) {
    const std::string& name = ab[g].name;
    auto d = spec_.coproduct.find(name);
    if (d == spec_.coproduct.end()) fail("no coproduct for '" + name + "'");
    if (d->second.arity() != 2 && !d->second.is_zero()) fail("coproduct of '" + name + "' is not a 2-fold tensor");
    delta_[2 * g] = normalize(d->second, rules_);
    auto e = spec_.counit.find(name);
    eps_[2 * g] = e == spec_.counit.end() ? Scalar() : e->second;
    if (is_odd(ab[g].parity) && !eps_[2 * g].is_zero()) fail("odd generator '" + name + "' has nonzero counit");
    if (has_antipode()) {
      auto k = spec_.antipode.find(name);
      if (k == spec_.antipode.end()) fail("no antipode for '" + name + "'");
      kappa_[2 * g] = rules_.normalize(k->second);
    }
    if (!ab[g].invertible) continue;
    const Tensor& dg = delta_[2 * g];
    if (dg.size() != 1) fail("coproduct of invertible '" + name + "' is not a single term");
    const auto& [legs, c] = *dg.terms().begin();
    Legs inv_legs;
    for (const auto& leg : legs) {
      auto inv = invert_term(Element::word(leg), ab);
      if (!inv || is_odd(ab.parity(leg))) fail("coproduct of '" + name + "' is not invertible");
      inv_legs.push_back(inv->terms().begin()->first);
    }
    delta_[2 * g + 1] = Tensor::pure(inv_legs, c.inverse());
    if (eps_[2 * g].is_zero()) fail("counit of invertible '" + name + "' vanishes");
    eps_[2 * g + 1] = eps_[2 * g].inverse();
    if (has_antipode()) {
      auto inv = invert_term(kappa_[2 * g], ab);
      if (!inv) fail("antipode of '" + name + "' is not invertible");
      kappa_[2 * g + 1] = rules_.normalize(*inv);
    }
  }
}

Tensor HopfStructure::coproduct(const Word& w) const {
  Tensor t = Tensor::unit(2);
  for (std::size_t i = 0; i < w.size(); ++i) t = tensor_mul(t, delta_[letter_at(w, i)], rules_);
  return t;
}

Tensor HopfStructure::coproduct(const Element& f) const {
  Tensor out(2);
  for (const auto& [w, c] : f.terms()) out += coproduct(w) * c;
  return out;
}

Scalar HopfStructure::counit(const Element& f) const {
  Scalar out;
  for (const auto& [w, c] : f.terms()) {
    Scalar v = c;
    for (std::size_t i = 0; i < w.size() && !v.is_zero(); ++i) v *= eps_[letter_at(w, i)];
    out += v;
  }
  return out;
}

Element HopfStructure::antipode(const Word& w) const {
  if (!has_antipode()) throw DomainError("costructure '" + spec_.name + "' has no antipode");
  std::size_t odd = 0;
  Element out(Scalar(1));
  for (std::size_t i = w.size(); i-- > 0;) {
    const Letter l = letter_at(w, i);
    if (is_odd(presentation_.alphabet.parity(l))) ++odd;
    out = rules_.multiply(out, kappa_[l]);
  }
  if ((odd * (odd - (odd > 0 ? 1 : 0)) / 2) % 2 == 1) out = -out;
  return out;
}

Element HopfStructure::antipode(const Element& f) const {
  Element out;
  for (const auto& [w, c] : f.terms()) out += antipode(w) * c;
  return out;
}

bool AxiomReport::passed() const { return passed_count() == axioms.size(); }

std::size_t AxiomReport::passed_count() const {
  std::size_t n = 0;
  for (const auto& a : axioms) n += a.holds ? 1 : 0;
  return n;
}

AxiomReport check_hopf_axioms(const HopfStructure& hs, std::size_t cutoff, Execution exec) {
  const RewriteSystem& rs = hs.rules();
  const Alphabet& ab = rs.alphabet();
  const std::vector<Word> words = rs.basis(cutoff);

  // Per word: the five (lhs, rhs) pairs, rendered only on failure.
  struct Sides {
    bool ok[5];
    std::string detail[5];
  };
  auto results = map_words(exec, words, [&](const Word& w) {
    Sides s{};
    const Element f = Element::word(w);
    const Tensor delta = hs.coproduct(f);

    Tensor left3(3), right3(3);
    Element counit_l, counit_r, anti_l, anti_r;
    for (const auto& [legs, c] : delta.terms()) {
      const Element a = Element::word(legs[0]), b = Element::word(legs[1]);
      left3 += tensor_concat(hs.coproduct(a), Tensor::product({b})) * c;
      right3 += tensor_concat(Tensor::product({a}), hs.coproduct(b)) * c;
      counit_l += b * (c * hs.counit(a));
      counit_r += a * (c * hs.counit(b));
      if (hs.has_antipode()) {
        anti_l += rs.multiply(hs.antipode(a), b) * c;
        anti_r += rs.multiply(a, hs.antipode(b)) * c;
      }
    }
    const Element eps_one(hs.counit(f));
    s.ok[0] = left3 == right3;
    if (!s.ok[0]) s.detail[0] = to_string(left3, ab) + " vs " + to_string(right3, ab);
    s.ok[1] = counit_l == f;
    if (!s.ok[1]) s.detail[1] = to_string(counit_l, ab) + " vs " + to_string(f, ab);
    s.ok[2] = counit_r == f;
    if (!s.ok[2]) s.detail[2] = to_string(counit_r, ab) + " vs " + to_string(f, ab);
    s.ok[3] = !hs.has_antipode() || anti_l == eps_one;
    if (!s.ok[3]) s.detail[3] = to_string(anti_l, ab) + " vs " + to_string(eps_one, ab);
    s.ok[4] = !hs.has_antipode() || anti_r == eps_one;
    if (!s.ok[4]) s.detail[4] = to_string(anti_r, ab) + " vs " + to_string(eps_one, ab);
    return s;
  });

  static const char* names[5] = {"coassociativity", "left counit", "right counit", "left antipode", "right antipode"};
  AxiomReport rep;
  rep.name = hs.name();
  const std::size_t count = hs.has_antipode() ? 5 : 3;
  for (std::size_t a = 0; a < count; ++a) {
    AxiomResult r;
    r.axiom = names[a];
    r.words_checked = words.size();
    for (std::size_t i = 0; i < words.size(); ++i)
      if (!results[i].ok[a]) {
        r.holds = false;
        r.witness = words[i];
        r.detail = results[i].detail[a];
        break;
      }
    rep.axioms.push_back(std::move(r));
  }
  return rep;
}

CompatReport check_relation_compatibility(const HopfStructure& hs) {
  CompatReport rep;
  rep.name = hs.name();
  const Alphabet& ab = hs.presentation().alphabet;
  for (const auto& r : hs.presentation().relations) {
    ++rep.relations;
    const Tensor d = hs.coproduct(r.value);
    if (!d.is_zero()) rep.failures.push_back({r.label, "Delta", to_string(d, ab)});
    const Scalar e = hs.counit(r.value);
    if (!e.is_zero()) rep.failures.push_back({r.label, "eps", e.to_string()});
    if (hs.has_antipode()) {
      const Element k = hs.antipode(r.value);
      if (!k.is_zero()) rep.failures.push_back({r.label, "kappa", to_string(k, ab)});
    }
  }
  return rep;
}

bool coproduct_preserves_parity(const HopfStructure& hs, std::size_t cutoff) {
  const Alphabet& ab = hs.presentation().alphabet;
  for (const auto& w : hs.rules().basis(cutoff)) {
    const Parity p = ab.parity(w);
    const Tensor t = hs.coproduct(Element::word(w));
    for (const auto& [legs, c] : t.terms())
      if ((ab.parity(legs[0]) + ab.parity(legs[1])) != p) return false;
  }
  return true;
}

}  // namespace qsp
