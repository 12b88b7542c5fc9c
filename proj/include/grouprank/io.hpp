#pragma once

#include <string>

#include "grouprank/group_spec.hpp"
#include "grouprank/schemas.hpp"
#include "grouprank/towers.hpp"

namespace grouprank {

// Group files: JSON with {"format_version": 1, "label": ..., "spec": ...}
// where spec is one of
//   {"kind":"cayley", "order":n, "table":[...]}          row-major, 0-based
//   {"kind":"cyclic", "n":n}
//   {"kind":"permutations", "degree":d, "generators":[[...],...]}
//   {"kind":"product", "factors":[spec,...]}
//   {"kind":"semidirect", "actor_order":k, "base":[m1,...], "action":[[...],...]}

std::string group_spec_to_json(const GroupSpec& spec);
GroupSpec group_spec_from_json(const std::string& text);

GroupSpec load_group_file(const std::string& path);
void save_group_file(const std::string& path, const GroupSpec& spec);

// Family files: JSON with {"format_version": 1, "family": ...} where family
// is one of
//   {"kind":"uniform_abelian", "p":p, "d":d}
//   {"kind":"abelian_times_torsion", "p":p, "d":d, "torsion": <group spec>}
//   {"kind":"jordan_metabelian", "p":p, "n":n}
//   {"kind":"product", "factors":[family,...]}

std::string family_to_json(const ProPFamily& fam);
ProPFamily family_from_json(const std::string& text);
ProPFamily load_family_file(const std::string& path);
void save_family_file(const std::string& path, const ProPFamily& fam);

// Formula files: UTF-8 text, one sentence, comments from '#'; sentences
// produced by the schema builders carry a "# schema: ..." annotation that
// cmd-line fast evaluation uses to recognize them (and re-validates
// structurally).
Sentence load_formula_file(const std::string& path);
void save_formula_file(const std::string& path, const Sentence& s);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace grouprank
