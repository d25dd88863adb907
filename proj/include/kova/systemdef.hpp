#ifndef KOVA_SYSTEMDEF_HPP
#define KOVA_SYSTEMDEF_HPP

#include "kova/expr.hpp"

#include <string>
#include <vector>

namespace kova {

enum class VarRole { Coordinate, Momentum, Independent, Parameter };

std::string role_name(VarRole role);

struct VarDecl {
  std::string name;
  VarRole role;
  int weight = 0;
};

struct HamDecl {
  std::string name;
  std::string expr;  // textual form, parsed against the system's variables
  int degree = 0;
};

/// Declarative description of a Hamiltonian system: variables with integer
/// weights (positivity not required here) and one or more Hamiltonians with
/// declared weighted degrees.
struct SystemDef {
  std::string id;
  std::vector<VarDecl> variables;
  std::vector<HamDecl> hamiltonians;
  std::string notes;

  std::vector<const VarDecl*> by_role(VarRole role) const;

  /// Throws std::invalid_argument on duplicate names, missing variables or
  /// broken q/p pairing.
  void validate_structure() const;

  /// Line-oriented serialization (the same format load accepts).
  std::string serialize() const;

  /// FNV-1a digest of the canonical serialization.
  std::string digest() const;
};

SystemDef parse_system_text(const std::string& text);
SystemDef load_system_file(const std::string& path);

/// Built-in systems. Unknown ids raise std::invalid_argument whose message
/// lists everything available.
SystemDef catalog(const std::string& id);
std::vector<std::string> catalog_ids();

/// Drop z-dependent and parameter terms, remove those variables, and rename
/// to `<id>_auto`.
SystemDef autonomous_variant(const SystemDef& def);

}  // namespace kova

#endif
