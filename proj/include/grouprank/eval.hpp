#pragma once

#include <map>
#include <optional>
#include <string>

#include "grouprank/group.hpp"
#include "grouprank/schemas.hpp"

namespace grouprank {

using Environment = std::map<std::string, int32_t>;

struct EvalResult {
  bool value = false;
  /// Satisfying assignment of the outermost existential block, recorded
  /// when the sentence is true; falsifying assignment of the outermost
  /// universal block when false.
  Environment witness;
};

/// Reference Tarskian semantics: exhaustive quantifier loops in element
/// index order with short-circuiting.  The step budget covers every
/// formula/term node visit; exhausting it raises Undecided.
EvalResult eval_naive(const FiniteGroup& G, const FormulaPtr& f, const Environment& env = {},
                      const Config& cfg = default_config());

/// Set-semantics evaluator for the schema library: materializes the
/// definable value sets instead of looping.  Agrees with eval_naive
/// wherever both terminate; raises UnsupportedSchema on anything it
/// cannot recognize (never a silent wrong answer).
bool eval_fast(const GroupPtr& G, const Sentence& s, const Config& cfg = default_config());

}  // namespace grouprank
