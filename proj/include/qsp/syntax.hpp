#pragma once

// Expression syntax shared by the CLI and the definition files.
//
//   sum     := tensor (('+' | '-') tensor)*
//   tensor  := unary ('@' unary)*
//   unary   := '-' unary | product
//   product := power (('*' | '/') power | power)*     juxtaposition multiplies
//   power   := primary ('^' exponent)?
//   exponent:= '-'? primary
//   primary := integer | name | call | '(' sum ')'
//   call    := ('d' | 'D' | 'P_u' | 'P_eta' | 'comm' | 'acomm') '(' sum (',' sum)* ')'
//
// `@` binds tighter than binary + and -, so `eta @ 1 + 1 @ eta` is a sum of
// two tensors.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qsp/polynomial.hpp"

namespace qsp {

struct SyntaxNode;
using SyntaxTree = std::shared_ptr<const SyntaxNode>;

struct SyntaxNode {
  enum class Kind { number, symbol, call, negate, add, sub, mul, div, pow, tensor };
  Kind kind;
  Integer number;     // number
  std::string name;   // symbol, call
  std::vector<SyntaxTree> args;
  std::size_t offset = 0;
};

bool is_function_name(std::string_view name);

/// Throws ParseError with the byte offset of the offending token.
SyntaxTree parse(std::string_view text);

/// Minimal-parenthesis rendering; parse(print(t)) has the same structure as t.
std::string print(const SyntaxTree& t);

}  // namespace qsp
