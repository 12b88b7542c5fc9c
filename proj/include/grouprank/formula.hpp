#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "grouprank/errors.hpp"

namespace grouprank {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// Group-language term.  Power and commutator sugar from the concrete
/// syntax are eliminated at construction, so the tree only ever contains
/// variables, the identity constant, products and inverses.
struct Term {
  enum class Kind { Var, One, Mul, Inv };

  Kind kind;
  std::string name;  // Var
  TermPtr a, b;      // Mul: a*b; Inv: a

  static TermPtr var(std::string name);
  static TermPtr one();
  static TermPtr mul(TermPtr x, TermPtr y);
  static TermPtr inv(TermPtr x);
  static TermPtr power(TermPtr x, long long k);       // balanced products; k < 0 via inverse
  static TermPtr commutator(TermPtr x, TermPtr y);    // x^-1 y^-1 x y
  static TermPtr product(const std::vector<TermPtr>& factors);  // left-assoc, empty -> 1
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { Eq, Not, And, Or, Implies, Exists, Forall };

  Kind kind;
  TermPtr t1, t2;    // Eq
  FormulaPtr f1, f2; // unary: f1; binary: f1,f2; quantifier body: f1
  std::string var;   // quantifier variable

  static FormulaPtr eq(TermPtr a, TermPtr b);
  static FormulaPtr negation(FormulaPtr f);
  static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
  static FormulaPtr exists(std::string var, FormulaPtr body);
  static FormulaPtr forall(std::string var, FormulaPtr body);
  /// Balanced fold; empty conjunction is "1 = 1", empty disjunction "!(1 = 1)".
  static FormulaPtr conj_all(std::vector<FormulaPtr> fs);
  static FormulaPtr disj_all(std::vector<FormulaPtr> fs);
};

std::set<std::string> free_variables(const FormulaPtr& f);
std::set<std::string> free_variables(const TermPtr& t);

std::int64_t node_count(const FormulaPtr& f);
int quantifier_nesting(const FormulaPtr& f);

/// Structural equality modulo renaming of bound variables.
bool alpha_equal(const FormulaPtr& f, const FormulaPtr& g);

/// Capture-avoiding substitution of a term for a free variable; bound
/// variables are renamed with the given fresh-name counter when needed.
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const TermPtr& value,
                      int& fresh_counter);

std::string to_string(const TermPtr& t);
std::string to_string(const FormulaPtr& f);

/// Quantifier-prefix classification of a prenexable formula: the block
/// sequence over {E, A} with adjacent equal quantifiers merged, matrix
/// ignored.  Invariant under alpha-renaming.
struct PrefixClass {
  std::string blocks;  // e.g. "EAE"

  bool operator==(const PrefixClass&) const = default;
  std::string pretty() const;  // "∃∀∃", "(quantifier-free)" when empty
};

PrefixClass prefix_class(const FormulaPtr& f);

}  // namespace grouprank
