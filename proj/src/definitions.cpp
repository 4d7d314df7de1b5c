#include "qsp/definitions.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include "qsp/error.hpp"
#include "qsp/evaluate.hpp"
#include "qsp/syntax.hpp"

namespace qsp {

const AlgebraDefinition* Definitions::algebra(std::string_view name) const {
  for (const auto& a : algebras)
    if (a.presentation.name == name) return &a;
  return nullptr;
}

namespace {

struct Line {
  std::size_t number = 0;
  std::size_t offset = 0;
  std::string text;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(std::string_view(s).substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

// "label: rest" -> (label, rest)
std::optional<std::pair<std::string, std::string>> labelled(const std::string& s) {
  static const std::regex re(R"(^([A-Za-z_][A-Za-z0-9_]*)\s*:\s*(.*)$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) return std::nullopt;
  return std::make_pair(m[1].str(), m[2].str());
}

// "lhs = rhs" -> lhs - rhs; a bare expression is asserted to vanish
std::pair<std::string, std::string> sides(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos) return {s, "0"};
  return {trim(std::string_view(s).substr(0, eq)), trim(std::string_view(s).substr(eq + 1))};
}

struct PendingAlgebra {
  Line header;
  std::string name;
  std::optional<AlgebraDefinition> base;
  std::vector<Generator> generators;
  std::vector<std::string> params;
  std::vector<Line> relations;
  std::vector<Line> derivation;
};

struct PendingCostructure {
  Line header;
  std::string name;
  std::string algebra;
  std::vector<Line> lines;
};

struct PendingAnsatz {
  Line header;
  std::string name;
  std::vector<Line> lines;
};

class Loader {
 public:
  Loader(std::string source, const AlgebraResolver& resolve) : source_(std::move(source)), resolve_(resolve) {}

  Definitions run(std::string_view text) {
    std::size_t offset = 0, number = 0;
    while (offset <= text.size()) {
      const auto end = std::min(text.find('\n', offset), text.size());
      ++number;
      std::string raw(text.substr(offset, end - offset));
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      Line line{number, offset, trim(raw)};
      if (!line.text.empty()) dispatch(line);
      if (end == text.size()) break;
      offset = end + 1;
    }
    flush();
    return std::move(out_);
  }

 private:
  [[noreturn]] void fail(const Line& l, const std::string& msg) const {
    throw ParseError(source_ + ":" + std::to_string(l.number) + ": " + msg, l.offset);
  }

  const AlgebraDefinition* find_algebra(const std::string& name) const {
    if (const auto* a = out_.algebra(name)) return a;
    if (resolve_) return resolve_(name);
    return nullptr;
  }

  void dispatch(const Line& l) {
    if (l.text.front() == '[') {
      if (l.text.back() != ']') fail(l, "unterminated section header");
      header(l, words(l.text.substr(1, l.text.size() - 2)));
      return;
    }
    if (section_.empty()) fail(l, "text outside of any section");
    if (section_ == "generators") return generator(l);
    if (section_ == "params") {
      for (auto& w : words(l.text)) algebra_->params.push_back(w);
      return;
    }
    if (section_ == "relations") return algebra_->relations.push_back(l);
    if (section_ == "derivation") return algebra_->derivation.push_back(l);
    if (section_ == "costructure") return costructure_->lines.push_back(l);
    if (section_ == "ansatz") return ansatz_->lines.push_back(l);
  }

  void header(const Line& l, const std::vector<std::string>& w) {
    if (w.empty()) fail(l, "empty section header");
    const std::string& kind = w[0];
    if (kind == "generators" || kind == "params" || kind == "relations" || kind == "derivation") {
      if (w.size() != 1) fail(l, "[" + kind + "] takes no arguments");
      if (!algebra_) fail(l, "[" + kind + "] outside of an [algebra] block");
      section_ = kind;
      return;
    }
    flush();
    if (kind == "algebra") {
      if (w.size() != 2 && !(w.size() == 4 && w[2] == "extends")) fail(l, "expected [algebra NAME] or [algebra NAME extends BASE]");
      algebra_.emplace();
      algebra_->header = l;
      algebra_->name = w[1];
      if (w.size() == 4) {
        const auto* base = find_algebra(w[3]);
        if (!base) fail(l, "unknown algebra '" + w[3] + "'");
        algebra_->base = *base;
      }
      section_ = "algebra";
    } else if (kind == "costructure") {
      if (w.size() != 2 && w.size() != 3) fail(l, "expected [costructure NAME] or [costructure NAME ALGEBRA]");
      costructure_.emplace();
      costructure_->header = l;
      costructure_->name = w[1];
      if (w.size() == 3)
        costructure_->algebra = w[2];
      else if (!last_algebra_.empty())
        costructure_->algebra = last_algebra_;
      else
        costructure_->algebra = w[1];
      section_ = "costructure";
    } else if (kind == "ansatz") {
      if (w.size() != 2) fail(l, "expected [ansatz NAME]");
      ansatz_.emplace();
      ansatz_->header = l;
      ansatz_->name = w[1];
      section_ = "ansatz";
    } else {
      fail(l, "unknown section '" + kind + "'");
    }
  }

  void generator(const Line& l) {
    const auto w = words(l.text);
    if (w.size() < 2 || w.size() > 3) fail(l, "expected 'name parity [invertible]'");
    Generator g{w[0], Parity::even, false};
    if (w[1] == "odd")
      g.parity = Parity::odd;
    else if (w[1] != "even")
      fail(l, "parity must be 'even' or 'odd'");
    if (w.size() == 3) {
      if (w[2] != "invertible") fail(l, "expected 'invertible'");
      g.invertible = true;
    }
    algebra_->generators.push_back(g);
  }

  void flush() {
    if (algebra_) finish_algebra();
    if (costructure_) finish_costructure();
    if (ansatz_) finish_ansatz();
    section_.clear();
  }

  // Runs fn, reporting any evaluation error against the line.
  template <class Fn>
  auto at(const Line& l, Fn&& fn) -> decltype(fn()) {
    try {
      return fn();
    } catch (const ParseError& e) {
      fail(l, e.what());
    } catch (const Error& e) {
      fail(l, e.what());
    }
  }

  void add_definition(AlgebraDefinition def) {
    for (auto& a : out_.algebras)
      if (a.presentation.name == def.presentation.name) {
        a = std::move(def);
        return;
      }
    out_.algebras.push_back(std::move(def));
  }

  void finish_algebra() {
    PendingAlgebra p = std::move(*algebra_);
    algebra_.reset();
    AlgebraDefinition def;
    std::vector<Generator> gens;
    std::vector<Relation> rels;
    std::vector<std::string> params;
    if (p.base) {
      gens = p.base->presentation.alphabet.generators();
      rels = p.base->presentation.relations;
      params = p.base->presentation.params;
    }
    for (const auto& g : p.generators) {
      if (std::any_of(gens.begin(), gens.end(), [&](const Generator& o) { return o.name == g.name; }))
        fail(p.header, "generator '" + g.name + "' declared twice");
      gens.push_back(g);
    }
    for (const auto& x : p.params) params.push_back(x);
    def.presentation.name = p.name;
    def.presentation.params = params;
    at(p.header, [&] {
      def.presentation.alphabet = Alphabet(gens);
      return 0;
    });
    EvalContext ctx;
    ctx.alphabet = &def.presentation.alphabet;
    ctx.scalar_names.insert(params.begin(), params.end());
    for (const auto& l : p.relations) {
      std::string label = "r" + std::to_string(rels.size() + 1), body = l.text;
      if (auto lb = labelled(l.text)) std::tie(label, body) = *lb;
      for (const auto& r : rels)
        if (r.label == label) fail(l, "relation label '" + label + "' used twice");
      const auto [lhs, rhs] = sides(body);
      rels.push_back({label, at(l, [&] { return parse_element(lhs, ctx) - parse_element(rhs, ctx); })});
    }
    def.presentation.relations = rels;
    if (!p.derivation.empty()) def.derivation = derivation(p.derivation, def.presentation, ctx);
    last_algebra_ = p.name;
    add_definition(std::move(def));
  }

  DerivationSpec derivation(const std::vector<Line>& lines, const Presentation& pres, const EvalContext& ctx) {
    DerivationSpec spec;
    for (const auto& l : lines) {
      auto w = words(l.text);
      if (w.size() == 2 && w[0] == "parity") {
        if (w[1] == "odd")
          spec.parity = Parity::odd;
        else if (w[1] == "even")
          spec.parity = Parity::even;
        else
          fail(l, "parity must be 'even' or 'odd'");
        continue;
      }
      std::string text = l.text;
      bool twist = false;
      if (!w.empty() && w[0] == "twist") {
        twist = true;
        text = trim(std::string_view(text).substr(5));
      }
      const auto arrow = text.find("->");
      if (arrow == std::string::npos) fail(l, "expected 'generator -> image'");
      const std::string gen = trim(std::string_view(text).substr(0, arrow));
      if (!pres.alphabet.find(gen)) fail(l, "unknown generator '" + gen + "'");
      const Element image = at(l, [&] { return parse_element(trim(std::string_view(text).substr(arrow + 2)), ctx); });
      (twist ? spec.twist : spec.images)[gen] = image;
    }
    return spec;
  }

  void finish_costructure() {
    PendingCostructure p = std::move(*costructure_);
    costructure_.reset();
    const auto* alg = find_algebra(p.algebra);
    if (!alg) fail(p.header, "unknown algebra '" + p.algebra + "'");
    CostructureDefinition def;
    def.algebra = p.algebra;
    def.spec.name = p.name;
    EvalContext ctx;
    ctx.alphabet = &alg->presentation.alphabet;
    ctx.scalar_names.insert(alg->presentation.params.begin(), alg->presentation.params.end());
    for (const auto& l : p.lines) {
      const auto eq = l.text.find('=');
      if (eq == std::string::npos) fail(l, "expected 'Delta|eps|kappa generator = expression'");
      const auto w = words(l.text.substr(0, eq));
      if (w.size() != 2) fail(l, "expected 'Delta|eps|kappa generator = expression'");
      if (!alg->presentation.alphabet.find(w[1])) fail(l, "unknown generator '" + w[1] + "'");
      const std::string rhs = trim(std::string_view(l.text).substr(eq + 1));
      if (w[0] == "Delta") {
        Tensor t = at(l, [&] { return evaluate_tensor(parse(rhs), ctx); });
        if (t.arity() != 2) fail(l, "a coproduct needs exactly two tensor legs");
        def.spec.coproduct.insert_or_assign(w[1], t);
      } else if (w[0] == "eps") {
        def.spec.counit[w[1]] = at(l, [&] { return evaluate_scalar(parse(rhs), ctx); });
      } else if (w[0] == "kappa") {
        def.spec.antipode[w[1]] = at(l, [&] { return parse_element(rhs, ctx); });
      } else {
        fail(l, "unknown map '" + w[0] + "'");
      }
    }
    for (auto& c : out_.costructures)
      if (c.spec.name == def.spec.name) {
        c = std::move(def);
        return;
      }
    out_.costructures.push_back(std::move(def));
  }

  void finish_ansatz() {
    PendingAnsatz p = std::move(*ansatz_);
    ansatz_.reset();
    AnsatzProblem a;
    a.name = p.name;
    std::vector<Line> templates, needs, points;
    std::optional<Line> derivation_line, target_line;
    const AlgebraDefinition* base = nullptr;
    for (const auto& l : p.lines) {
      auto lb = labelled(l.text);
      const std::string key = lb ? lb->first : "";
      if (key == "algebra") {
        base = find_algebra(trim(lb->second));
        if (!base) fail(l, "unknown algebra '" + trim(lb->second) + "'");
      } else if (key == "unknowns") {
        for (auto& u : words(lb->second)) {
          if (u == "h" || u == "E" || u == "q") fail(l, "'" + u + "' is reserved");
          a.unknowns.push_back(u);
        }
      } else if (key == "require") {
        needs.push_back(l);
      } else if (key == "point") {
        points.push_back(l);
      } else if (key == "derivation") {
        derivation_line = l;
      } else if (key == "target") {
        target_line = l;
      } else if (key == "cutoff") {
        a.cutoff = at(l, [&] { return static_cast<std::size_t>(std::stoul(lb->second)); });
      } else {
        templates.push_back(l);
      }
    }
    if (!base) fail(p.header, "ansatz needs an 'algebra:' line");
    a.base = base->presentation;
    if (base->derivation) a.derivation = *base->derivation;

    EvalContext ctx;
    ctx.alphabet = &a.base.alphabet;
    ctx.scalar_names.insert(a.base.params.begin(), a.base.params.end());
    ctx.scalar_names.insert(a.unknowns.begin(), a.unknowns.end());
    for (const auto& l : templates) {
      std::string label = "t" + std::to_string(a.templates.size() + 1), body = l.text;
      if (auto lb = labelled(l.text)) std::tie(label, body) = *lb;
      const auto [lhs, rhs] = sides(body);
      a.templates.push_back({label, at(l, [&] { return parse_element(lhs, ctx) - parse_element(rhs, ctx); })});
    }
    if (derivation_line) {
      std::vector<Line> parts;
      for (auto& piece : split(labelled(derivation_line->text)->second, ','))
        parts.push_back({derivation_line->number, derivation_line->offset, piece});
      a.derivation = derivation(parts, a.base, ctx);
    }
    const Presentation combined = a.combined();
    for (const auto& l : needs) {
      const auto w = words(labelled(l.text)->second);
      Requirement r{};
      const auto has_relation = [&](const std::string& label) {
        return std::any_of(combined.relations.begin(), combined.relations.end(),
                           [&](const Relation& rel) { return rel.label == label; });
      };
      if (w.size() == 2 && w[0] == "d_kills") {
        r.kind = Requirement::Kind::d_kills;
        r.relation = w[1];
      } else if (w.size() == 3 && w[0] == "right_mul") {
        r.kind = Requirement::Kind::right_mul;
        r.relation = w[1];
        r.generator = w[2];
        if (!combined.alphabet.find(w[2])) fail(l, "unknown generator '" + w[2] + "'");
      } else if (w.size() == 2 && w[0] == "confluent_with") {
        r.kind = Requirement::Kind::confluent;
        r.presentation = w[1];
      } else {
        fail(l, "expected 'd_kills REL', 'right_mul REL GEN' or 'confluent_with NAME'");
      }
      if (r.kind != Requirement::Kind::confluent && !has_relation(r.relation))
        fail(l, "unknown relation '" + r.relation + "'");
      a.requirements.push_back(r);
    }
    EvalContext scalars;
    scalars.scalar_names.insert(a.base.params.begin(), a.base.params.end());
    for (const auto& l : points)
      for (const auto& piece : split(labelled(l.text)->second, ',')) {
        const auto [lhs, rhs] = sides(piece);
        if (std::find(a.unknowns.begin(), a.unknowns.end(), lhs) == a.unknowns.end())
          fail(l, "'" + lhs + "' is not an unknown");
        a.point[lhs] = at(l, [&] { return parse_scalar(rhs, scalars); });
      }
    if (target_line) {
      const std::string name = trim(labelled(target_line->text)->second);
      const auto* t = find_algebra(name);
      if (!t) fail(*target_line, "unknown algebra '" + name + "'");
      a.target = t->presentation;
    }
    for (auto& x : out_.ansatze)
      if (x.name == a.name) {
        x = std::move(a);
        return;
      }
    out_.ansatze.push_back(std::move(a));
  }

  std::string source_;
  const AlgebraResolver& resolve_;
  Definitions out_;
  std::string section_;
  std::string last_algebra_;
  std::optional<PendingAlgebra> algebra_;
  std::optional<PendingCostructure> costructure_;
  std::optional<PendingAnsatz> ansatz_;
};

}  // namespace

Definitions parse_definitions(std::string_view text, const std::string& source, const AlgebraResolver& resolve) {
  return Loader(source, resolve).run(text);
}

}  // namespace qsp
