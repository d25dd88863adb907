#include "kova/systemdef.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace kova {

std::string role_name(VarRole role) {
  switch (role) {
    case VarRole::Coordinate: return "q";
    case VarRole::Momentum: return "p";
    case VarRole::Independent: return "z";
    case VarRole::Parameter: return "param";
  }
  return "?";
}

std::vector<const VarDecl*> SystemDef::by_role(VarRole role) const {
  std::vector<const VarDecl*> out;
  for (const auto& v : variables)
    if (v.role == role) out.push_back(&v);
  return out;
}

namespace {

std::string numeric_suffix(const std::string& name) {
  std::size_t i = name.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(name[i - 1]))) --i;
  return name.substr(i);
}

}  // namespace

void SystemDef::validate_structure() const {
  if (variables.empty()) throw std::invalid_argument("system '" + id + "': no variables");
  std::vector<std::string> names;
  for (const auto& v : variables) names.push_back(v.name);
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end())
    throw std::invalid_argument("system '" + id + "': duplicate variable name");

  auto qs = by_role(VarRole::Coordinate);
  auto ps = by_role(VarRole::Momentum);
  if (qs.size() != ps.size()) {
    const auto& lonely = qs.size() > ps.size() ? qs : ps;
    throw std::invalid_argument("system '" + id + "': unpaired coordinate/momentum (have " +
                                std::to_string(qs.size()) + " q-variables, " +
                                std::to_string(ps.size()) + " p-variables, e.g. '" +
                                lonely.back()->name + "')");
  }
  if (qs.empty()) throw std::invalid_argument("system '" + id + "': no canonical pair");
  for (std::size_t i = 0; i < qs.size(); ++i) {
    std::string sq = numeric_suffix(qs[i]->name), sp = numeric_suffix(ps[i]->name);
    if (!sq.empty() && !sp.empty() && sq != sp)
      throw std::invalid_argument("system '" + id + "': pair index mismatch between '" +
                                  qs[i]->name + "' and '" + ps[i]->name + "'");
  }
  if (hamiltonians.empty())
    throw std::invalid_argument("system '" + id + "': no Hamiltonian");
}

std::string SystemDef::serialize() const {
  std::ostringstream os;
  os << "system " << id << "\n";
  for (const auto& v : variables)
    os << "var " << v.name << " " << role_name(v.role) << " weight " << v.weight << "\n";
  for (const auto& h : hamiltonians)
    os << "ham " << h.name << " degree " << h.degree << " = " << h.expr << "\n";
  os << "end\n";
  return os.str();
}

std::string SystemDef::digest() const {
  std::string s = serialize();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

SystemDef parse_system_text(const std::string& text) {
  SystemDef def;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool in_system = false, ended = false;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("system file, line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed = line;
    auto hash = trimmed.find('#');
    if (hash != std::string::npos) trimmed.erase(hash);
    std::istringstream ls(trimmed);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "system") {
      if (in_system) fail("nested 'system'");
      if (!(ls >> def.id)) fail("missing system id");
      in_system = true;
    } else if (word == "var") {
      if (!in_system) fail("'var' before 'system'");
      VarDecl v;
      std::string role, kw;
      if (!(ls >> v.name >> role >> kw >> v.weight) || kw != "weight")
        fail("expected 'var <name> <q|p|z|param> weight <int>'");
      if (role == "q") v.role = VarRole::Coordinate;
      else if (role == "p") v.role = VarRole::Momentum;
      else if (role == "z") v.role = VarRole::Independent;
      else if (role == "param") v.role = VarRole::Parameter;
      else fail("unknown role '" + role + "'");
      def.variables.push_back(std::move(v));
    } else if (word == "ham") {
      if (!in_system) fail("'ham' before 'system'");
      HamDecl h;
      std::string kw, eq;
      if (!(ls >> h.name >> kw >> h.degree >> eq) || kw != "degree" || eq != "=")
        fail("expected 'ham <name> degree <int> = <expression>'");
      std::getline(ls, h.expr);
      if (h.expr.find_first_not_of(" \t") == std::string::npos) fail("empty expression");
      def.hamiltonians.push_back(std::move(h));
    } else if (word == "end") {
      if (!in_system) fail("'end' before 'system'");
      ended = true;
    } else if (word == "note") {
      std::string rest;
      std::getline(ls, rest);
      def.notes += rest + "\n";
    } else {
      fail("unknown directive '" + word + "'");
    }
  }
  if (!in_system) throw std::invalid_argument("system file: no 'system' block (empty file?)");
  if (!ended) throw std::invalid_argument("system file: missing 'end'");
  def.validate_structure();

  // Expressions must parse against the declared variables.
  std::vector<std::string> names;
  for (const auto& v : def.variables) names.push_back(v.name);
  VarTablePtr table = make_vartable(names);
  for (const auto& h : def.hamiltonians) parse_expr(h.expr, table);
  return def;
}

SystemDef load_system_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open system file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return parse_system_text(os.str());
}

SystemDef autonomous_variant(const SystemDef& def) {
  std::vector<std::string> names;
  for (const auto& v : def.variables) names.push_back(v.name);
  VarTablePtr table = make_vartable(names);
  std::vector<bool> dropped(names.size(), false);
  for (std::size_t i = 0; i < def.variables.size(); ++i)
    dropped[i] = def.variables[i].role == VarRole::Independent ||
                 def.variables[i].role == VarRole::Parameter;

  SystemDef out;
  out.id = def.id + "_auto";
  for (std::size_t i = 0; i < def.variables.size(); ++i)
    if (!dropped[i]) out.variables.push_back(def.variables[i]);
  std::vector<std::string> kept;
  for (const auto& v : out.variables) kept.push_back(v.name);
  VarTablePtr reduced = make_vartable(kept);

  for (const auto& h : def.hamiltonians) {
    MultiPoly p = parse_expr(h.expr, table);
    MultiPoly filtered = p.filter_terms([&](const Exponents& e, const Rational&) {
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0 && dropped[i]) return false;
      return true;
    });
    MultiPoly q = filtered.mapped_to(reduced);
    if (q.is_zero()) continue;
    out.hamiltonians.push_back({h.name, print_expr(q), h.degree});
  }
  out.notes = "autonomous principal-part variant of " + def.id;
  out.validate_structure();
  return out;
}

}  // namespace kova
