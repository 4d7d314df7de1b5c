#include "qsp/session.hpp"

#include <fstream>
#include <sstream>

#include "qsp/error.hpp"

namespace qsp {

Session::Session() {
  for (const auto& f : builtin_files())
    if (f.size() > 4 && f.substr(f.size() - 4) == ".qsp") load_text(builtin_text(f), f);
}

void Session::merge(Definitions d) {
  const auto replace = [](auto& list, auto item, auto key) {
    for (auto& x : list)
      if (key(x) == key(item)) {
        x = std::move(item);
        return;
      }
    list.push_back(std::move(item));
  };
  for (auto& a : d.algebras) replace(defs_.algebras, std::move(a), [](const auto& x) { return x.presentation.name; });
  for (auto& c : d.costructures) replace(defs_.costructures, std::move(c), [](const auto& x) { return x.spec.name; });
  for (auto& p : d.ansatze) replace(defs_.ansatze, std::move(p), [](const auto& x) { return x.name; });
  rules_.clear();
  calculi_.clear();
  hopf_.clear();
}

std::vector<std::string> Session::load_text(std::string_view text, const std::string& source) {
  Definitions d = parse_definitions(text, source, [this](const std::string& name) { return defs_.algebra(name); });
  std::vector<std::string> names;
  for (const auto& a : d.algebras) names.push_back(a.presentation.name);
  for (const auto& c : d.costructures)
    if (std::find(names.begin(), names.end(), c.spec.name) == names.end()) names.push_back(c.spec.name);
  for (const auto& p : d.ansatze) names.push_back(p.name);
  merge(std::move(d));
  return names;
}

std::vector<std::string> Session::load_file(const std::string& path) {
  std::ifstream in(path);
  if (in) {
    std::stringstream ss;
    ss << in.rdbuf();
    return load_text(ss.str(), path);
  }
  const auto builtin = builtin_text(path);
  if (builtin.empty()) throw NameError("cannot open '" + path + "'");
  return load_text(builtin, path);
}

const AlgebraDefinition& Session::algebra(const std::string& name) const {
  if (const auto* a = defs_.algebra(name)) return *a;
  throw NameError("unknown algebra '" + name + "'");
}

const RewriteSystem& Session::rules(const std::string& name) {
  auto& slot = rules_[name];
  if (!slot) slot = std::make_unique<RewriteSystem>(compile(algebra(name).presentation));
  return *slot;
}

const Calculus& Session::calculus(const std::string& name) {
  auto& slot = calculi_[name];
  if (!slot) {
    const auto& a = algebra(name);
    if (!a.derivation) throw NameError("algebra '" + name + "' has no derivation");
    slot = std::make_unique<Calculus>(a.presentation, *a.derivation);
  }
  return *slot;
}

const HopfStructure& Session::hopf(const std::string& name) {
  auto& slot = hopf_[name];
  if (!slot) {
    for (const auto& c : defs_.costructures)
      if (c.spec.name == name) {
        slot = std::make_unique<HopfStructure>(algebra(c.algebra).presentation, c.spec);
        return *slot;
      }
    throw NameError("unknown costructure '" + name + "'");
  }
  return *slot;
}

const AnsatzProblem& Session::ansatz(const std::string& name) const {
  for (const auto& p : defs_.ansatze)
    if (p.name == name) return p;
  throw NameError("unknown ansatz '" + name + "'");
}

std::vector<const AnsatzProblem*> Session::ansatz_file(const std::string& path) {
  std::vector<const AnsatzProblem*> out;
  for (const auto& n : load_file(path))
    for (const auto& p : defs_.ansatze)
      if (p.name == n) out.push_back(&p);
  if (out.empty()) throw NameError("'" + path + "' defines no ansatz");
  return out;
}

EvalContext Session::context(const std::string& name) {
  const auto& a = algebra(name);
  EvalContext ctx;
  ctx.alphabet = &a.presentation.alphabet;
  ctx.rules = &rules(name);
  ctx.scalar_names.insert(a.presentation.params.begin(), a.presentation.params.end());
  if (a.derivation) {
    const Calculus* calc = &calculus(name);
    ctx.derivation = [calc](const Element& f) { return calc->d(f); };
    ctx.partials = [calc](const Element& f) {
      const auto p = calc->partials(f);
      if (p.size() != 2) throw DomainError("P_u and P_eta need a calculus with two coordinates");
      return std::make_pair(p[0], p[1]);
    };
  }
  return ctx;
}

}  // namespace qsp
