#pragma once

#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "grouprank/formula.hpp"
#include "grouprank/group.hpp"

namespace grouprank {

struct Schema;

/// h = a_1^{e_1} ... a_r^{e_r} b with e_j < q(pi) and b a product of r
/// commutators and a q-th power; true on a finite nilpotent pi-group
/// exactly when d(H) <= r.
struct Beta1Schema {
  std::set<int> pi;
  int r = 1;
};

/// Every commutator is a (2q)-th power.
struct GammaSchema {
  int q = 1;
};

/// The subset defined by phi is a normal subgroup with quotient
/// isomorphic to B (coset representatives + multiplication-table
/// conformance).
struct QuotientIsoSchema {
  GroupPtr B;
  FormulaPtr phi;
  std::string phi_var;
};

struct ConjSchema {
  std::vector<Schema> parts;
};

struct Schema {
  std::variant<Beta1Schema, GammaSchema, QuotientIsoSchema, ConjSchema> node;
};

/// A formula together with its construction provenance, when it came out
/// of one of the builders below.  The set-based evaluator only accepts
/// tagged sentences and re-derives the formula from the tag to guard
/// against tampering.
struct Sentence {
  FormulaPtr formula;
  std::optional<Schema> schema;
};

/// Product of the primes in pi.
int q_of(const std::set<int>& pi);

Sentence build_beta1(const std::set<int>& pi, int r);
Sentence build_gamma(int q);

/// phi must have exactly one free variable.  Emits: phi(1), closure of
/// the phi-set under x^-1 y, conjugation invariance, pairwise-distinct
/// coset representatives a_1..a_n, covering, and multiplication-table
/// conformance read off B's table.
Sentence build_quotient_iso_sentence(const GroupPtr& B, const FormulaPtr& phi);

Sentence conj_sentences(std::vector<Sentence> parts);

/// Serialization of beta1/gamma tags for formula-file annotations.
std::string schema_annotation(const Schema& s);
std::optional<Schema> parse_schema_annotation(const std::string& text);

}  // namespace grouprank
