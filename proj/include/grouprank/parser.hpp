#pragma once

#include <string>
#include <string_view>

#include "grouprank/formula.hpp"

namespace grouprank {

// Concrete syntax (see README for the full grammar):
//   sentence := formula
//   formula  := ("A"|"E") var "." formula | implication
//   implication := disjunction [ "->" implication ]
//   disjunction := conjunction ( "|" conjunction )*
//   conjunction := negation ( "&" negation )*
//   negation := "!" negation | "(" formula ")" | term "=" term
//   term := factor ( "*" factor )*
//   factor := base [ "^" integer ]
//   base := var | "1" | "(" term ")" | "[" term "," term "]"
// Comments run from "#" to end of line.  "A" and "E" are reserved.
// Commutator and power sugar are eliminated while parsing.

FormulaPtr parse_formula(std::string_view text);

/// Parses a formula file: comment lines may carry a schema annotation
/// ("# schema: ..."), returned verbatim when present.
struct ParsedFile {
  FormulaPtr formula;
  std::string schema_annotation;
};
ParsedFile parse_formula_file(std::string_view text);

}  // namespace grouprank
