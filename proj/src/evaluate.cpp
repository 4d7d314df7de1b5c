#include "qsp/evaluate.hpp"

#include "qsp/error.hpp"

namespace qsp {

namespace {

using K = SyntaxNode::Kind;

Element to_element(const Value& v) {
  if (const auto* s = std::get_if<Scalar>(&v)) return Element(*s);
  if (const auto* e = std::get_if<Element>(&v)) return *e;
  throw DomainError("a tensor cannot be used where an algebra element is expected");
}

Tensor to_tensor(const Value& v) {
  if (const auto* t = std::get_if<Tensor>(&v)) return *t;
  return Tensor::product({to_element(v)});
}

class Evaluator {
 public:
  explicit Evaluator(const EvalContext& ctx) : ctx_(ctx) {}

  Value eval(const SyntaxTree& t) {
    switch (t->kind) {
      case K::number:
        return Scalar(Rational(t->number));
      case K::symbol:
        return symbol(*t);
      case K::call:
        return call(*t);
      case K::negate:
        return negate(eval(t->args[0]));
      case K::add:
        return add(eval(t->args[0]), eval(t->args[1]), false);
      case K::sub:
        return add(eval(t->args[0]), eval(t->args[1]), true);
      case K::mul:
        return mul(eval(t->args[0]), eval(t->args[1]));
      case K::div: {
        const Value den = eval(t->args[1]);
        const auto* s = std::get_if<Scalar>(&den);
        if (s == nullptr) throw DomainError("can only divide by a scalar");
        if (s->is_zero()) throw ArithmeticError("division by zero");
        return mul(eval(t->args[0]), Value(s->inverse()));
      }
      case K::pow:
        return power(eval(t->args[0]), exponent(t->args[1]));
      case K::tensor: {
        Tensor acc = Tensor::unit(0);
        for (const auto& leg : t->args) acc = tensor_concat(acc, to_tensor(eval(leg)));
        return acc;
      }
    }
    throw DomainError("unhandled syntax node");
  }

 private:
  Element normalize(Element e) const { return ctx_.rules ? ctx_.rules->normalize(e) : e; }

  Value symbol(const SyntaxNode& n) const {
    if (ctx_.alphabet != nullptr)
      if (auto g = ctx_.alphabet->find(n.name)) return Element::letter(letter_of(*g));
    if (n.name == "q") return Scalar::variable("E");
    if (n.name == "h" || n.name == "E" || ctx_.allow_any_scalar_name || ctx_.scalar_names.count(n.name))
      return Scalar::variable(n.name);
    throw NameError("unknown symbol '" + n.name + "' at offset " + std::to_string(n.offset));
  }

  Value call(const SyntaxNode& n) {
    const auto arity = [&](std::size_t k) {
      if (n.args.size() != k)
        throw DomainError(n.name + " takes " + std::to_string(k) + " argument" + (k == 1 ? "" : "s"));
    };
    if (n.name == "d") {
      arity(1);
      const auto& a = n.args[0];
      if (a->kind != K::symbol) throw DomainError("d(...) names the differential of a generator; use D(...) for the derivation");
      const std::string dname = "d" + a->name;
      if (ctx_.alphabet == nullptr || !ctx_.alphabet->find(dname))
        throw NameError("no differential generator '" + dname + "' in this algebra");
      return Element::letter(ctx_.alphabet->letter(dname));
    }
    if (n.name == "D") {
      arity(1);
      if (!ctx_.derivation) throw NameError("no derivation is defined for this algebra");
      return ctx_.derivation(to_element(eval(n.args[0])));
    }
    if (n.name == "P_u" || n.name == "P_eta") {
      arity(1);
      if (!ctx_.partials) throw NameError("partial derivatives are not defined for this algebra");
      auto [pu, peta] = ctx_.partials(to_element(eval(n.args[0])));
      return n.name == "P_u" ? pu : peta;
    }
    arity(2);
    const Value a = eval(n.args[0]), b = eval(n.args[1]);
    return add(mul(a, b), mul(b, a), n.name == "comm");
  }

  long exponent(const SyntaxTree& t) {
    const Value v = eval(t);
    const auto* s = std::get_if<Scalar>(&v);
    if (s == nullptr || !s->is_constant() || s->constant_value().get_den() != 1)
      throw DomainError("exponents must be integers");
    const Integer z = s->constant_value().get_num();
    if (!z.fits_slong_p() || abs(z) > 4096) throw DomainError("exponent out of range");
    return z.get_si();
  }

  static Value negate(const Value& v) {
    return std::visit([](const auto& x) -> Value { return -x; }, v);
  }

  Value add(const Value& a, const Value& b, bool subtract) const {
    const Value rb = subtract ? negate(b) : b;
    if (std::holds_alternative<Scalar>(a) && std::holds_alternative<Scalar>(rb))
      return std::get<Scalar>(a) + std::get<Scalar>(rb);
    if (std::holds_alternative<Tensor>(a) || std::holds_alternative<Tensor>(rb)) {
      Tensor ta = to_tensor(a), tb = to_tensor(rb);
      if (ta.arity() != tb.arity()) throw DomainError("cannot add tensors of different arity");
      return ta + tb;
    }
    return to_element(a) + to_element(rb);
  }

  Value mul(const Value& a, const Value& b) const {
    if (const auto* s = std::get_if<Scalar>(&a)) return scale(b, *s);
    if (const auto* s = std::get_if<Scalar>(&b)) return scale(a, *s);
    if (std::holds_alternative<Element>(a) && std::holds_alternative<Element>(b))
      return normalize(concat(std::get<Element>(a), std::get<Element>(b)));
    const Tensor ta = to_tensor(a), tb = to_tensor(b);
    if (ta.arity() != tb.arity()) throw DomainError("cannot multiply tensors of different arity");
    if (ctx_.rules == nullptr) throw DomainError("tensor products need a compiled algebra");
    return tensor_mul(ta, tb, *ctx_.rules);
  }

  static Value scale(const Value& v, const Scalar& c) {
    return std::visit([&](const auto& x) -> Value { return x * c; }, v);
  }

  Value power(const Value& base, long n) const {
    if (const auto* s = std::get_if<Scalar>(&base)) {
      if (n < 0 && s->is_zero()) throw ArithmeticError("division by zero");
      return s->pow(static_cast<int>(n));
    }
    if (std::holds_alternative<Tensor>(base)) {
      if (n < 0) throw DomainError("negative powers of tensors are not defined");
      const Tensor& t = std::get<Tensor>(base);
      Tensor r = Tensor::unit(t.arity());
      for (long i = 0; i < n; ++i) r = std::get<Tensor>(mul(Value(r), base));
      return r;
    }
    Element e = std::get<Element>(base);
    if (n < 0) {
      e = invert(e);
      n = -n;
    }
    Element r(Scalar(1));
    for (long i = 0; i < n; ++i) r = normalize(concat(r, e));
    return r;
  }

  Element invert(const Element& e) const {
    if (e.size() != 1) throw DomainError("only single terms can be inverted");
    const auto& [w, c] = *e.terms().begin();
    Word inv;
    for (std::size_t i = w.size(); i-- > 0;) {
      const Letter l = letter_at(w, i);
      if (ctx_.alphabet == nullptr || !(*ctx_.alphabet)[generator_of(l)].invertible)
        throw DomainError("generator '" + (*ctx_.alphabet)[generator_of(l)].name + "' is not invertible");
      inv.push_back(static_cast<char>(inverse_letter(l)));
    }
    return normalize(Element::word(inv, c.inverse()));
  }

  const EvalContext& ctx_;
};

}  // namespace

Value evaluate(const SyntaxTree& t, const EvalContext& ctx) { return Evaluator(ctx).eval(t); }

Scalar evaluate_scalar(const SyntaxTree& t, const EvalContext& ctx) {
  const Value v = evaluate(t, ctx);
  if (const auto* s = std::get_if<Scalar>(&v)) return *s;
  if (const auto* e = std::get_if<Element>(&v); e && e->is_scalar()) return e->scalar_part();
  throw DomainError("expected a scalar expression");
}

Element evaluate_element(const SyntaxTree& t, const EvalContext& ctx) { return to_element(evaluate(t, ctx)); }

Tensor evaluate_tensor(const SyntaxTree& t, const EvalContext& ctx) { return to_tensor(evaluate(t, ctx)); }

Scalar parse_scalar(std::string_view text, const EvalContext& ctx) { return evaluate_scalar(parse(text), ctx); }

Element parse_element(std::string_view text, const EvalContext& ctx) { return evaluate_element(parse(text), ctx); }

std::string to_string(const Value& v, const Alphabet* alphabet) {
  static const Alphabet empty;
  const Alphabet& ab = alphabet ? *alphabet : empty;
  if (const auto* s = std::get_if<Scalar>(&v)) return s->to_string();
  if (const auto* e = std::get_if<Element>(&v)) return to_string(*e, ab);
  return to_string(std::get<Tensor>(v), ab);
}

}  // namespace qsp
