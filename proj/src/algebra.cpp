#include "qsp/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qsp/error.hpp"

namespace qsp {

const char* to_string(Parity p) { return p == Parity::odd ? "odd" : "even"; }

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<Generator> generators) : generators_(std::move(generators)) {
  std::set<std::string> seen;
  for (const auto& g : generators_) {
    if (!seen.insert(g.name).second) throw PresentationError("duplicate generator '" + g.name + "'");
    if (g.invertible && g.parity == Parity::odd)
      throw PresentationError("odd generator '" + g.name + "' cannot be invertible");
  }
  if (generators_.size() > 60) throw PresentationError("too many generators");
}

std::optional<std::size_t> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == name) return i;
  return std::nullopt;
}

std::size_t Alphabet::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw NameError("unknown generator '" + std::string(name) + "'");
}

Parity Alphabet::parity(const Word& w) const {
  Parity p = Parity::even;
  for (std::size_t i = 0; i < w.size(); ++i) p = p + parity(letter_at(w, i));
  return p;
}

std::vector<std::pair<std::size_t, int>> Alphabet::runs(const Word& w) const {
  std::vector<std::pair<std::size_t, int>> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Letter l = letter_at(w, i);
    const int step = is_inverse(l) ? -1 : 1;
    if (!out.empty() && out.back().first == generator_of(l) && (out.back().second > 0) == (step > 0))
      out.back().second += step;
    else
      out.emplace_back(generator_of(l), step);
  }
  return out;
}

std::string Alphabet::word_to_string(const Word& w) const {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& [g, e] : runs(w)) {
    if (!s.empty()) s += '*';
    s += generators_[g].name;
    if (e != 1) s += '^' + std::to_string(e);
  }
  return s;
}

// ----------------------------------------------------------------- Element

Element::Element(const Scalar& c) {
  if (!c.is_zero()) terms_.emplace(Word{}, c);
}

Element Element::word(const Word& w, const Scalar& c) {
  Element e;
  if (!c.is_zero()) e.terms_.emplace(w, c);
  return e;
}

bool Element::is_scalar() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Scalar Element::scalar_part() const { return coefficient(Word{}); }

Scalar Element::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar() : it->second;
}

void Element::add_term(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Element& Element::operator+=(const Element& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

Element& Element::operator-=(const Element& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

Element& Element::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

Element Element::operator-() const {
  Element r = *this;
  for (auto& [w, c] : r.terms_) c = -c;
  return r;
}

Element Element::substitute(const std::map<std::string, Scalar>& bindings) const {
  Element r;
  for (const auto& [w, c] : terms_) r.add_term(w, c.substitute(bindings));
  return r;
}

Element concat(const Element& a, const Element& b) {
  Element r;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) r.add_term(wa + wb, ca * cb);
  return r;
}

namespace {

bool leading_sign_negative(const Scalar& c) {
  return c.numerator().size() == 1 && c.numerator().leading_coefficient() < 0;
}

}  // namespace

std::string to_string(const Element& e, const Alphabet& alphabet) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = e.terms().rbegin(); it != e.terms().rend(); ++it) {
    const auto& [w, c] = *it;
    const bool negative = leading_sign_negative(c);
    const Scalar mag = negative ? -c : c;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    if (w.empty()) {
      os << mag.to_string();
    } else if (mag.is_one()) {
      os << alphabet.word_to_string(w);
    } else if (mag.needs_parentheses()) {
      os << '(' << mag.to_string() << ")*" << alphabet.word_to_string(w);
    } else {
      os << mag.to_string() << '*' << alphabet.word_to_string(w);
    }
  }
  return os.str();
}

// ------------------------------------------------------------ Presentation

const Relation& Presentation::relation(std::string_view label) const {
  for (const auto& r : relations)
    if (r.label == label) return r;
  throw NameError("presentation '" + name + "' has no relation '" + std::string(label) + "'");
}

Element translate(const Element& e, const Alphabet& from, const Alphabet& to) {
  // generators missing from `to` only matter if they occur
  std::vector<std::optional<std::size_t>> map(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) map[i] = to.find(from[i].name);
  Element r;
  for (const auto& [w, c] : e.terms()) {
    Word nw(w.size(), '\0');
    for (std::size_t k = 0; k < w.size(); ++k) {
      const Letter l = letter_at(w, k);
      const auto& j = map[generator_of(l)];
      if (!j) throw NameError("unknown generator '" + from[generator_of(l)].name + "'");
      nw[k] = static_cast<char>(letter_of(*j, is_inverse(l)));
    }
    r.add_term(nw, c);
  }
  return r;
}

Presentation Presentation::reordered(const std::vector<std::string>& order) const {
  if (order.size() != alphabet.size()) throw PresentationError("reordering must list every generator once");
  std::vector<Generator> gens;
  for (const auto& n : order) gens.push_back(alphabet[alphabet.index(n)]);
  Presentation p;
  p.name = name;
  p.alphabet = Alphabet(std::move(gens));
  p.params = params;
  for (const auto& r : relations) p.relations.push_back({r.label, translate(r.value, alphabet, p.alphabet)});
  return p;
}

Presentation restrict(const Presentation& p, const std::vector<std::string>& generators, const std::string& name) {
  std::vector<Generator> gens;
  std::vector<bool> keep(p.alphabet.size(), false);
  for (const auto& n : generators) {
    const std::size_t i = p.alphabet.index(n);
    keep[i] = true;
  }
  for (std::size_t i = 0; i < p.alphabet.size(); ++i)
    if (keep[i]) gens.push_back(p.alphabet[i]);
  Presentation out;
  out.name = name;
  out.alphabet = Alphabet(std::move(gens));
  out.params = p.params;
  for (const auto& r : p.relations) {
    bool inside = true;
    for (const auto& [w, c] : r.value.terms())
      for (std::size_t i = 0; i < w.size() && inside; ++i) inside = keep[generator_of(letter_at(w, i))];
    if (inside) out.relations.push_back({r.label, translate(r.value, p.alphabet, out.alphabet)});
  }
  return out;
}

std::vector<std::string> inhomogeneous_relations(const Presentation& p) {
  std::vector<std::string> out;
  for (const auto& r : p.relations) {
    std::set<Parity> seen;
    for (const auto& [w, c] : r.value.terms()) seen.insert(p.alphabet.parity(w));
    if (seen.size() > 1) out.push_back(r.label);
  }
  return out;
}

// ----------------------------------------------------------- RewriteSystem

const Element* RewriteSystem::rule(Letter a, Letter b) const {
  const std::size_t n = 2 * alphabet_.size();
  if (a >= n || b >= n) return nullptr;
  const int idx = table_[a * n + b];
  return idx < 0 ? nullptr : &rules_[static_cast<std::size_t>(idx)].rhs;
}

std::optional<std::size_t> RewriteSystem::redex(const Word& w, Strategy strategy) const {
  if (w.size() < 2) return std::nullopt;
  if (strategy == Strategy::leftmost) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (reducible(letter_at(w, i), letter_at(w, i + 1))) return i;
  } else {
    for (std::size_t i = w.size() - 1; i-- > 0;)
      if (reducible(letter_at(w, i), letter_at(w, i + 1))) return i;
  }
  return std::nullopt;
}

bool RewriteSystem::is_normal(const Word& w) const { return !redex(w).has_value(); }

bool RewriteSystem::nilpotent(std::size_t generator) const {
  const Letter l = letter_of(generator);
  const Element* r = rule(l, l);
  return r != nullptr && r->is_zero();
}

Element RewriteSystem::rewrite_at(const Word& w, std::size_t pos) const {
  const Element* rhs = rule(letter_at(w, pos), letter_at(w, pos + 1));
  if (rhs == nullptr) return Element::word(w);
  Element out;
  const Word prefix = w.substr(0, pos);
  const Word suffix = w.substr(pos + 2);
  for (const auto& [rw, rc] : rhs->terms()) out.add_term(prefix + rw + suffix, rc);
  return out;
}

Element RewriteSystem::normalize(const Element& e, Strategy strategy) const {
  // Every rule replaces a word by strictly smaller ones, so processing the
  // largest pending word first visits each word at most once.
  std::map<Word, Scalar, WordLess> work(e.terms().begin(), e.terms().end());
  Element out;
  while (!work.empty()) {
    auto last = std::prev(work.end());
    const Word w = last->first;
    const Scalar c = std::move(last->second);
    work.erase(last);
    if (c.is_zero()) continue;
    const auto pos = redex(w, strategy);
    if (!pos) {
      out.add_term(w, c);
      continue;
    }
    const Element* rhs = rule(letter_at(w, *pos), letter_at(w, *pos + 1));
    const Word prefix = w.substr(0, *pos);
    const Word suffix = w.substr(*pos + 2);
    for (const auto& [rw, rc] : rhs->terms()) {
      Word nw = prefix + rw + suffix;
      Scalar nc = c * rc;
      auto [it, inserted] = work.try_emplace(std::move(nw), nc);
      if (!inserted) {
        it->second += nc;
        if (it->second.is_zero()) work.erase(it);
      }
    }
  }
  return out;
}

Element RewriteSystem::power(const Element& a, unsigned n) const {
  Element r(Scalar(1));
  for (unsigned i = 0; i < n; ++i) r = multiply(r, a);
  return r;
}

std::vector<Word> RewriteSystem::basis(std::size_t max_degree) const {
  std::vector<Letter> letters;
  for (std::size_t g = 0; g < alphabet_.size(); ++g) {
    letters.push_back(letter_of(g));
    if (alphabet_[g].invertible) letters.push_back(letter_of(g, true));
  }
  std::vector<Word> out{Word{}};
  std::vector<Word> frontier{Word{}};
  for (std::size_t d = 1; d <= max_degree; ++d) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (Letter l : letters)
        if (w.empty() || !reducible(letter_at(w, w.size() - 1), l)) next.push_back(w + static_cast<char>(l));
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), WordLess{});
  return out;
}

RewriteSystem compile(const Presentation& p) {
  RewriteSystem rs;
  rs.name_ = p.name;
  rs.alphabet_ = p.alphabet;
  const std::size_t n = 2 * p.alphabet.size();
  rs.table_.assign(n * n, -1);
  const Alphabet& ab = p.alphabet;

  auto install = [&](Letter a, Letter b, Element rhs, const std::string& source) {
    int& slot = rs.table_[a * n + b];
    if (slot >= 0) {
      if (rs.rules_[static_cast<std::size_t>(slot)].rhs == rhs) return;
      throw PresentationError("contradictory rules for " + ab.word_to_string(word_of({a, b})) + " (relations '" +
                              rs.rules_[static_cast<std::size_t>(slot)].source + "' and '" + source + "')");
    }
    slot = static_cast<int>(rs.rules_.size());
    rs.rules_.push_back({word_of({a, b}), std::move(rhs), source});
  };

  for (const auto& rel : p.relations) {
    if (rel.value.is_zero()) continue;
    for (const auto& [w, c] : rel.value.terms())
      for (std::size_t i = 0; i < w.size(); ++i)
        if (is_inverse(letter_at(w, i)))
          throw PresentationError("relation '" + rel.label + "' mentions an inverse letter; inverses are implied");
    const auto& [lead, lc] = *rel.value.terms().rbegin();
    const auto fail = [&](const std::string& why) {
      throw PresentationError("relation '" + rel.label + "' cannot be oriented: leading word " +
                              ab.word_to_string(lead) + " " + why);
    };
    if (lead.size() != 2) fail("is not a pair of generators");
    const Letter a = letter_at(lead, 0);
    const Letter b = letter_at(lead, 1);
    const std::size_t ga = generator_of(a), gb = generator_of(b);
    if (ga < gb) fail("is already in normal order");
    Element rhs = rel.value;
    rhs.add_term(lead, -lc);
    rhs *= -lc.inverse();

    const bool invertible = ab[ga].invertible || ab[gb].invertible;
    if (invertible) {
      if (ga == gb) fail("is the square of an invertible generator");
      const Word swapped = word_of({b, a});
      if (rhs.size() != 1 || rhs.terms().begin()->first != swapped)
        fail("involves an invertible generator outside a skew-commutation relation");
      const Scalar q = rhs.coefficient(swapped);
      install(a, b, rhs, rel.label);
      if (ab[ga].invertible)
        install(inverse_letter(a), b, Element::word(word_of({b, inverse_letter(a)}), q.inverse()), rel.label);
      if (ab[gb].invertible)
        install(a, inverse_letter(b), Element::word(word_of({inverse_letter(b), a}), q.inverse()), rel.label);
      if (ab[ga].invertible && ab[gb].invertible)
        install(inverse_letter(a), inverse_letter(b),
                Element::word(word_of({inverse_letter(b), inverse_letter(a)}), q), rel.label);
    } else {
      install(a, b, std::move(rhs), rel.label);
    }
  }
  for (std::size_t g = 0; g < ab.size(); ++g) {
    if (!ab[g].invertible) continue;
    install(letter_of(g), letter_of(g, true), Element(Scalar(1)), "inverse");
    install(letter_of(g, true), letter_of(g), Element(Scalar(1)), "inverse");
  }
  return rs;
}

ConfluenceReport check_confluence(const RewriteSystem& rs, Execution exec) {
  std::vector<Letter> letters;
  for (std::size_t g = 0; g < rs.alphabet().size(); ++g) {
    letters.push_back(letter_of(g));
    if (rs.alphabet()[g].invertible) letters.push_back(letter_of(g, true));
  }
  std::vector<Word> overlaps;
  for (Letter a : letters)
    for (Letter b : letters) {
      if (!rs.reducible(a, b)) continue;
      for (Letter c : letters)
        if (rs.reducible(b, c)) overlaps.push_back(word_of({a, b, c}));
    }
  auto results = map_words(exec, overlaps, [&](const Word& w) -> std::optional<Mismatch> {
    Element left = rs.normalize(rs.rewrite_at(w, 0));
    Element right = rs.normalize(rs.rewrite_at(w, 1));
    if (left == right) return std::nullopt;
    return Mismatch{w, std::move(left), std::move(right)};
  });
  ConfluenceReport report;
  report.overlaps = overlaps.size();
  for (auto& r : results)
    if (r) report.mismatches.push_back(std::move(*r));
  return report;
}

}  // namespace qsp
