#include "grouprank/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "grouprank/parser.hpp"

namespace grouprank {

using json = nlohmann::ordered_json;

namespace {

json spec_to_node(const GroupSpec& spec) {
  json j;
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, CayleySpec>) {
          j["kind"] = "cayley";
          j["order"] = node.order;
          j["table"] = node.table;
        } else if constexpr (std::is_same_v<T, CyclicSpec>) {
          j["kind"] = "cyclic";
          j["n"] = node.n;
        } else if constexpr (std::is_same_v<T, PermutationSpec>) {
          j["kind"] = "permutations";
          j["degree"] = node.degree;
          j["generators"] = node.generators;
        } else if constexpr (std::is_same_v<T, ProductSpec>) {
          j["kind"] = "product";
          json fs = json::array();
          for (const auto& f : node.factors) fs.push_back(spec_to_node(f));
          j["factors"] = std::move(fs);
        } else if constexpr (std::is_same_v<T, SemidirectSpec>) {
          j["kind"] = "semidirect";
          j["actor_order"] = node.actor_order;
          j["base"] = node.base_orders;
          j["action"] = node.action;
        }
      },
      spec.node);
  if (!spec.label.empty()) j["label"] = spec.label;
  return j;
}

GroupSpec node_to_spec(const json& j) {
  if (!j.contains("kind")) throw InvalidInput("group spec node lacks a kind");
  std::string kind = j.at("kind");
  GroupSpec spec;
  if (j.contains("label")) spec.label = j.at("label").get<std::string>();
  if (kind == "cayley") {
    CayleySpec c;
    c.order = j.at("order");
    c.table = j.at("table").get<std::vector<int32_t>>();
    spec.node = std::move(c);
  } else if (kind == "cyclic") {
    spec.node = CyclicSpec{j.at("n")};
    if (spec.label.empty()) spec.label = "C" + std::to_string(int(j.at("n")));
  } else if (kind == "permutations") {
    PermutationSpec p;
    p.degree = j.at("degree");
    p.generators = j.at("generators").get<std::vector<std::vector<int32_t>>>();
    spec.node = std::move(p);
  } else if (kind == "product") {
    ProductSpec p;
    for (const auto& f : j.at("factors")) p.factors.push_back(node_to_spec(f));
    spec.node = std::move(p);
  } else if (kind == "semidirect") {
    SemidirectSpec s;
    s.actor_order = j.at("actor_order");
    s.base_orders = j.at("base").get<std::vector<int>>();
    s.action = j.at("action").get<std::vector<std::vector<long long>>>();
    spec.node = std::move(s);
  } else {
    throw InvalidInput("unknown group spec kind '" + kind + "'");
  }
  return spec;
}

json family_to_node(const ProPFamily& fam) {
  json j;
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, UniformAbelianFamily>) {
          j["kind"] = "uniform_abelian";
          j["p"] = node.p;
          j["d"] = node.d;
        } else if constexpr (std::is_same_v<T, AbelianTimesTorsionFamily>) {
          j["kind"] = "abelian_times_torsion";
          j["p"] = node.p;
          j["d"] = node.d;
          j["torsion"] = spec_to_node(node.torsion);
        } else if constexpr (std::is_same_v<T, JordanMetabelianFamily>) {
          j["kind"] = "jordan_metabelian";
          j["p"] = node.p;
          j["n"] = node.n;
        } else {
          j["kind"] = "product";
          json fs = json::array();
          for (const auto& f : node.factors) fs.push_back(family_to_node(f));
          j["factors"] = std::move(fs);
        }
      },
      fam.node);
  return j;
}

ProPFamily node_to_family(const json& j) {
  std::string kind = j.at("kind");
  if (kind == "uniform_abelian") return uniform_abelian(j.at("p"), j.at("d"));
  if (kind == "abelian_times_torsion")
    return abelian_times_torsion(j.at("p"), j.at("d"), node_to_spec(j.at("torsion")));
  if (kind == "jordan_metabelian") return jordan_metabelian(j.at("p"), j.at("n"));
  if (kind == "product") {
    std::vector<ProPFamily> fs;
    for (const auto& f : j.at("factors")) fs.push_back(node_to_family(f));
    return family_product(std::move(fs));
  }
  throw InvalidInput("unknown family kind '" + kind + "'");
}

}  // namespace

std::string group_spec_to_json(const GroupSpec& spec) {
  json j;
  j["format_version"] = 1;
  j["label"] = spec.label;
  j["spec"] = spec_to_node(spec);
  return j.dump(2) + "\n";
}

GroupSpec group_spec_from_json(const std::string& text) {
  json j = json::parse(text);
  if (!j.contains("format_version") || int(j.at("format_version")) != 1)
    throw InvalidInput("unsupported group file version");
  GroupSpec spec = node_to_spec(j.at("spec"));
  if (j.contains("label")) spec.label = j.at("label").get<std::string>();
  return spec;
}

GroupSpec load_group_file(const std::string& path) {
  return group_spec_from_json(read_text_file(path));
}

void save_group_file(const std::string& path, const GroupSpec& spec) {
  write_text_file(path, group_spec_to_json(spec));
}

std::string family_to_json(const ProPFamily& fam) {
  json j;
  j["format_version"] = 1;
  j["family"] = family_to_node(fam);
  return j.dump(2) + "\n";
}

ProPFamily family_from_json(const std::string& text) {
  json j = json::parse(text);
  if (!j.contains("format_version") || int(j.at("format_version")) != 1)
    throw InvalidInput("unsupported family file version");
  return node_to_family(j.at("family"));
}

ProPFamily load_family_file(const std::string& path) {
  return family_from_json(read_text_file(path));
}

void save_family_file(const std::string& path, const ProPFamily& fam) {
  write_text_file(path, family_to_json(fam));
}

Sentence load_formula_file(const std::string& path) {
  auto parsed = parse_formula_file(read_text_file(path));
  Sentence s;
  s.formula = parsed.formula;
  if (!parsed.schema_annotation.empty())
    s.schema = parse_schema_annotation(parsed.schema_annotation);
  return s;
}

void save_formula_file(const std::string& path, const Sentence& s) {
  std::ostringstream os;
  if (s.schema) os << "# schema: " << schema_annotation(*s.schema) << "\n";
  os << to_string(s.formula) << "\n";
  write_text_file(path, os.str());
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << content;
}

}  // namespace grouprank
