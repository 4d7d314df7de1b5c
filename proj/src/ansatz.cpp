#include "qsp/ansatz.hpp"

#include <algorithm>
#include <functional>

#include "qsp/error.hpp"

namespace qsp {

std::string Requirement::label() const {
  switch (kind) {
    case Kind::d_kills:
      return "d_kills " + relation;
    case Kind::right_mul:
      return "right_mul " + relation + " " + generator;
    case Kind::confluent:
      return "confluent_with " + presentation;
  }
  return "";
}

Presentation AnsatzProblem::combined() const {
  Presentation p = base;
  p.name = name;
  for (const auto& t : templates) p.relations.push_back(t);
  return p;
}

Element monic(const Element& e) {
  if (e.is_zero()) return e;
  return e * e.terms().rbegin()->second.inverse();
}

namespace {

bool is_unknown(const std::string& v, const std::vector<std::string>& unknowns) {
  return std::find(unknowns.begin(), unknowns.end(), v) != unknowns.end();
}

bool mentions_unknown(const Polynomial& p, const std::vector<std::string>& unknowns) {
  for (const auto& v : p.variables())
    if (is_unknown(v, unknowns)) return true;
  return false;
}

std::vector<std::string> unknowns_in(const Polynomial& p, const std::vector<std::string>& unknowns) {
  std::vector<std::string> out;
  for (const auto& v : p.variables())
    if (is_unknown(v, unknowns)) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Polynomial reduce_constraint(const Scalar& s, const std::vector<std::string>& unknowns) {
  const Polynomial& p = s.numerator();
  if (p.is_zero()) return p;
  std::map<std::string, Polynomial> by_unknown_part;  // keyed by the printed unknown monomial
  for (const auto& [m, c] : p.terms()) {
    Monomial known, rest;
    for (const auto& [v, e] : m.factors()) {
      if (is_unknown(v, unknowns))
        known = known * Monomial::variable(v, e);
      else
        rest = rest * Monomial::variable(v, e);
    }
    by_unknown_part[known.to_string()] += Polynomial::term(rest, c);
  }
  Polynomial content;
  for (const auto& [k, coef] : by_unknown_part) content = gcd(content, coef);
  Polynomial q = *p.divide_exact(content);
  if (!mentions_unknown(q, unknowns)) return Polynomial(1);
  return q.monic();
}

ConstraintSet derive_constraints(const AnsatzProblem& p, Execution exec) {
  const Presentation full = p.combined();
  const RewriteSystem rs = compile(full);
  const Derivation d(full.alphabet, p.derivation);

  auto per_requirement = map_words(exec, p.requirements, [&](const Requirement& r) {
    std::vector<Scalar> coefficients;
    const auto collect = [&](const Element& e) {
      for (const auto& [w, c] : e.terms()) coefficients.push_back(c);
    };
    switch (r.kind) {
      case Requirement::Kind::d_kills:
        collect(rs.normalize(d.expand(full.relation(r.relation).value)));
        break;
      case Requirement::Kind::right_mul:
        collect(rs.normalize(concat(full.relation(r.relation).value, Element::letter(full.alphabet.letter(r.generator))),
                             Strategy::rightmost));
        break;
      case Requirement::Kind::confluent:
        for (const auto& m : check_confluence(rs, Execution::serial).mismatches) collect(m.via_left - m.via_right);
        break;
    }
    return coefficients;
  });

  ConstraintSet cs;
  for (std::size_t i = 0; i < p.requirements.size(); ++i)
    for (const auto& c : per_requirement[i]) {
      Polynomial q = reduce_constraint(c, p.unknowns);
      if (q.is_zero()) continue;
      if (std::find(cs.constraints.begin(), cs.constraints.end(), q) != cs.constraints.end()) continue;
      cs.constraints.push_back(std::move(q));
      cs.origins.push_back(p.requirements[i].label());
    }
  return cs;
}

// ------------------------------------------------------------------- solver

namespace {

struct State {
  std::map<std::string, Scalar> bindings;
  std::vector<Polynomial> constraints;
  std::vector<Polynomial> nonzero;
};

class Solver {
 public:
  Solver(const std::vector<std::string>& unknowns, std::size_t max_splits)
      : unknowns_(unknowns), max_splits_(max_splits) {}

  void run(State s) { descend(std::move(s)); }

  std::vector<SolutionFamily> families;
  std::size_t splits = 0;
  bool complete = true;

 private:
  // Substitutes the bindings; false when the branch is inconsistent.
  bool simplify(State& s) const {
    std::vector<Polynomial> next;
    try {
      for (const auto& c : s.constraints) {
        Polynomial q = reduce_constraint(Scalar(c).substitute(s.bindings), unknowns_);
        if (q.is_zero()) continue;
        if (q.is_constant()) return false;
        if (std::find(next.begin(), next.end(), q) == next.end()) next.push_back(std::move(q));
      }
      std::vector<Polynomial> nz;
      for (const auto& c : s.nonzero) {
        const Scalar v = Scalar(c).substitute(s.bindings);
        if (v.is_zero()) return false;
        Polynomial q = v.numerator().monic();
        if (!q.is_constant() && std::find(nz.begin(), nz.end(), q) == nz.end()) nz.push_back(std::move(q));
      }
      s.nonzero = std::move(nz);
    } catch (const ArithmeticError&) {
      return false;
    }
    std::stable_sort(next.begin(), next.end(), [](const Polynomial& a, const Polynomial& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a.to_string() < b.to_string();
    });
    s.constraints = std::move(next);
    return true;
  }

  void bind(State& s, const std::string& x, const Scalar& value) const {
    const std::map<std::string, Scalar> one{{x, value}};
    for (auto& [k, v] : s.bindings) v = v.substitute(one);
    s.bindings[x] = value;
  }

  std::vector<Polynomial> factors(const Polynomial& p) const {
    std::vector<Polynomial> out;
    Polynomial q = p;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& x : unknowns_in(q, unknowns_)) {
        const Polynomial var = Polynomial::variable(x);
        if (auto r = q.divide_exact(var)) {
          out.push_back(var);
          q = *r;
          changed = true;
          break;
        }
        const Polynomial c = content_in(q, x);
        if (!c.is_constant() && mentions_unknown(c, unknowns_)) {
          for (auto& f : factors(c)) out.push_back(std::move(f));
          q = *q.divide_exact(c);
          changed = true;
          break;
        }
      }
    }
    if (mentions_unknown(q, unknowns_)) {
      for (auto& f : rational_roots(q)) out.push_back(std::move(f));
      if (mentions_unknown(q, unknowns_)) out.push_back(q.monic());
    }
    std::vector<Polynomial> distinct;
    for (auto& f : out) {
      f = f.monic();
      if (std::find(distinct.begin(), distinct.end(), f) == distinct.end()) distinct.push_back(f);
    }
    return distinct;
  }

  // Linear factors x - r of a polynomial in one unknown with rational
  // coefficients; q keeps the cofactor (constant 1 when it splits fully).
  static std::vector<Polynomial> rational_roots(Polynomial& q) {
    std::vector<Polynomial> out;
    const auto vars = q.variables();
    if (vars.size() != 1) return out;
    const std::string x = *vars.begin();
    const unsigned n = q.degree_in(x);
    if (n < 2) return out;
    std::vector<Rational> c(n + 1);
    mpz_class den = 1;
    for (unsigned k = 0; k <= n; ++k) {
      const Polynomial ck = q.coefficient(x, k);
      c[k] = ck.is_zero() ? Rational(0) : ck.leading_coefficient();
      den = lcm(den, c[k].get_den());
    }
    const mpz_class a0 = abs(mpz_class(c[0] * den)), an = abs(mpz_class(c[n] * den));
    if (a0 == 0 || a0 > 100000 || an > 100000) return out;
    auto divisors = [](const mpz_class& m) {
      std::vector<mpz_class> d;
      for (mpz_class i = 1; i * i <= m; ++i)
        if (m % i == 0) {
          d.push_back(i);
          if (i * i != m) d.push_back(m / i);
        }
      return d;
    };
    for (const auto& num : divisors(a0))
      for (const auto& dn : divisors(an))
        for (int sign : {1, -1}) {
          Rational r(sign * num, dn);
          r.canonicalize();
          const Polynomial lin = Polynomial::variable(x) - Polynomial(r);
          while (q.degree_in(x) > 0) {
            auto quotient = q.divide_exact(lin);
            if (!quotient) break;
            if (std::find(out.begin(), out.end(), lin) == out.end()) out.push_back(lin);
            q = *quotient;
          }
        }
    if (q.degree_in(x) == 0) q = Polynomial(1);
    return out;
  }

  void emit(const State& s) {
    SolutionFamily f;
    f.bindings = s.bindings;
    f.nonzero = s.nonzero;
    f.residual = s.constraints;
    for (const auto& u : unknowns_)
      if (!s.bindings.count(u)) f.free.push_back(u);
    if (!f.residual.empty()) complete = false;
    families.push_back(std::move(f));
  }

  void descend(State s) {
    for (;;) {
      if (!simplify(s)) return;
      if (s.constraints.empty()) return emit(s);

      // linear elimination with a parameter-only coefficient
      bool eliminated = false;
      for (const auto& c : s.constraints) {
        for (const auto& x : unknowns_in(c, unknowns_)) {
          if (c.degree_in(x) != 1) continue;
          const Polynomial a = c.coefficient(x, 1);
          if (mentions_unknown(a, unknowns_)) continue;
          bind(s, x, Scalar::ratio(-c.coefficient(x, 0), a));
          eliminated = true;
          break;
        }
        if (eliminated) break;
      }
      if (eliminated) continue;

      if (splits >= max_splits_) {
        complete = false;
        return emit(s);
      }

      // a power of a single factor is replaced by that factor
      bool reduced = false;
      for (auto& c : s.constraints) {
        auto fs = factors(c);
        if (fs.size() == 1 && fs.front() != c.monic()) {
          c = fs.front();
          reduced = true;
        }
      }
      if (reduced) continue;

      // split a product into its factors, fewest factors first
      std::optional<std::size_t> best;
      std::vector<Polynomial> best_factors;
      std::string best_name;
      for (std::size_t i = 0; i < s.constraints.size(); ++i) {
        auto fs = factors(s.constraints[i]);
        if (fs.size() < 2) continue;
        const std::string name = unknowns_in(s.constraints[i], unknowns_).front();
        if (!best || fs.size() < best_factors.size() || (fs.size() == best_factors.size() && name < best_name)) {
          best = i;
          best_factors = std::move(fs);
          best_name = name;
        }
      }
      if (best) {
        ++splits;
        for (const auto& f : best_factors) {
          State branch = s;
          branch.constraints[*best] = f;
          descend(std::move(branch));
        }
        return;
      }

      // a = 0, or a != 0 and x = -b/a
      for (const auto& c : s.constraints)
        for (const auto& x : unknowns_in(c, unknowns_)) {
          if (c.degree_in(x) != 1) continue;
          const Polynomial a = c.coefficient(x, 1);
          ++splits;
          State zero = s;
          zero.constraints.push_back(a.monic());
          descend(std::move(zero));
          State nonzero = s;
          nonzero.nonzero.push_back(a.monic());
          bind(nonzero, x, Scalar::ratio(-c.coefficient(x, 0), a));
          descend(std::move(nonzero));
          return;
        }

      complete = false;
      return emit(s);
    }
  }

  const std::vector<std::string>& unknowns_;
  std::size_t max_splits_;
};

Scalar value_of(const std::string& x, const std::map<std::string, Scalar>& bindings) {
  auto it = bindings.find(x);
  return it == bindings.end() ? Scalar::variable(x) : it->second;
}

}  // namespace

bool contained(const SolutionFamily& a, const SolutionFamily& b) {
  try {
    for (const auto& [x, v] : b.bindings)
      if (value_of(x, a.bindings) != v.substitute(a.bindings)) return false;
    for (const auto& r : b.residual)
      if (!Scalar(r).substitute(a.bindings).is_zero()) return false;
    for (const auto& n : b.nonzero)
      if (Scalar(n).substitute(a.bindings).is_zero()) return false;
  } catch (const ArithmeticError&) {
    return false;
  }
  return true;
}

std::map<std::string, Scalar> complete_point(const std::map<std::string, Scalar>& point,
                                             const std::vector<std::string>& unknowns) {
  std::map<std::string, Scalar> out;
  for (const auto& u : unknowns) {
    auto it = point.find(u);
    out[u] = it == point.end() ? Scalar() : it->second;
  }
  return out;
}

bool member(const std::map<std::string, Scalar>& point, const SolutionFamily& f, const std::vector<std::string>& unknowns) {
  const auto full = complete_point(point, unknowns);
  try {
    for (const auto& [x, v] : f.bindings)
      if (full.at(x) != v.substitute(full)) return false;
    for (const auto& r : f.residual)
      if (!Scalar(r).substitute(full).is_zero()) return false;
    for (const auto& n : f.nonzero)
      if (Scalar(n).substitute(full).is_zero()) return false;
  } catch (const ArithmeticError&) {
    return false;
  }
  return true;
}

SolveResult solve(const ConstraintSet& cs, const std::vector<std::string>& unknowns, std::size_t max_splits) {
  Solver solver(unknowns, max_splits);
  solver.run(State{{}, cs.constraints, {}});

  SolveResult out;
  out.splits = solver.splits;
  out.complete = solver.complete;
  auto& fams = solver.families;
  for (auto& f : fams) {
    f.verified = f.residual.empty();
    try {
      for (const auto& c : cs.constraints)
        if (!Scalar(c).substitute(f.bindings).is_zero()) f.verified = false;
    } catch (const ArithmeticError&) {
      f.verified = false;
    }
  }
  for (std::size_t i = 0; i < fams.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < fams.size() && !drop; ++j) {
      if (i == j || !contained(fams[i], fams[j])) continue;
      // strictly smaller, or an equal family that came earlier
      drop = !contained(fams[j], fams[i]) || j < i;
    }
    if (!drop) out.families.push_back(fams[i]);
  }
  return out;
}

// ------------------------------------------------------------- verification

bool VerificationReport::passed() const {
  return compiled && confluent && differential_ok && d_squared_zero && matches_target.value_or(true);
}

VerificationReport verify_solution(const AnsatzProblem& p, const std::map<std::string, Scalar>& bindings,
                                   Execution exec) {
  VerificationReport rep;
  const auto full = complete_point(bindings, p.unknowns);
  Presentation q = p.base;
  q.name = p.name + "-instance";
  for (const auto& t : p.templates) {
    Relation r{t.label, t.value.substitute(full)};
    rep.instantiated.push_back(r);
    q.relations.push_back(std::move(r));
  }
  RewriteSystem rs;
  try {
    rs = compile(q);
    const Derivation d(q.alphabet, p.derivation);
    for (const auto& [label, v] : d.defects(q, rs)) {
      const Element m = monic(v);
      const bool seen = std::any_of(rep.derived.begin(), rep.derived.end(), [&](const Relation& r) {
        return r.value == m || r.value == -m;
      });
      if (!seen) rep.derived.push_back({"d(" + label + ")", m});
    }
    for (const auto& r : rep.derived) q.relations.push_back(r);
    rs = compile(q);
    rep.compiled = true;
    rep.confluent = check_confluence(rs, exec).confluent();
    rep.differential_ok = d.defects(q, rs).empty();
    const auto words = rs.basis(p.cutoff);
    const auto dd = map_words(exec, words, [&](const Word& w) {
      return d.apply(d.apply(Element::word(w), rs), rs).is_zero();
    });
    rep.d_squared_zero = std::all_of(dd.begin(), dd.end(), [](bool b) { return b; });
  } catch (const PresentationError& e) {
    rep.compile_error = e.what();
    return rep;
  }
  if (p.target) {
    const RewriteSystem trs = compile(*p.target);
    bool ok = true;
    for (const auto& r : p.target->relations) {
      const Element v = rs.normalize(translate(r.value, p.target->alphabet, q.alphabet));
      if (!v.is_zero()) {
        ok = false;
        rep.target_mismatches.push_back("target " + r.label + " leaves " + to_string(v, q.alphabet));
      }
    }
    for (const auto& r : q.relations) {
      const Element v = trs.normalize(translate(r.value, q.alphabet, p.target->alphabet));
      if (!v.is_zero()) {
        ok = false;
        rep.target_mismatches.push_back(r.label + " leaves " + to_string(v, p.target->alphabet) + " in the target");
      }
    }
    rep.matches_target = ok;
  }
  return rep;
}

}  // namespace qsp
