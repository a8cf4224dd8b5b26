#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "pqbit/logic.hpp"

namespace pqbit::dsl {

// Grammar (whitespace insensitive, ~ binds tightest, then &, |, ->; the
// arrow is right-associative):
//
//   expr    := impl
//   impl    := or ("->" impl)?
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "~" unary | primary
//   primary := "(" expr ")" | "T" | "F" | "B" | "N"
//            | "<" num "," num ">"            truth pair literal
//            | "{" int "," int "," int "}"    evidence counts literal
//            | "random" "(" num ")"
//            | ident

enum class ExprKind { Atom, CrispLit, PairLit, CountLit, Random, Not, And, Or, Implies };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind = ExprKind::Atom;
    std::string atom;
    PBit crisp{};
    TruthPair pair{};
    Evidence counts{0, 0, 1};
    double rho = 0.0;
    ExprPtr lhs;
    ExprPtr rhs;
};

ExprPtr make_atom(std::string name);
ExprPtr make_crisp(PBit v);
ExprPtr make_pair(TruthPair w);
ExprPtr make_counts(Evidence e);
ExprPtr make_random(double rho);
ExprPtr make_not(ExprPtr e);
ExprPtr make_and(ExprPtr a, ExprPtr b);
ExprPtr make_or(ExprPtr a, ExprPtr b);
ExprPtr make_implies(ExprPtr a, ExprPtr b);

/// Structural equality; numeric literals compare bit-for-bit.
bool expr_equal(const Expr& a, const Expr& b);

struct parse_error : std::runtime_error {
    parse_error(int line, int col, std::string expected_tokens, const std::string& what)
        : std::runtime_error(what), line(line), col(col), expected(std::move(expected_tokens)) {}
    int line;  // 1-based
    int col;   // 1-based
    std::string expected;
};

ExprPtr parse(std::string_view text);

/// Canonical text form with minimal parentheses; parse(print(e)) is
/// structurally identical to e.
std::string print(const Expr& e);

}  // namespace pqbit::dsl
