#include "kova/systemdef.hpp"

#include <map>
#include <sstream>
#include <string_view>

namespace kova {

namespace {

struct CatalogEntry {
  const char* id;
  const char* text;
};

// Definitions use the same text format load_system_file accepts, so the
// catalog exercises the parser and keeps a single source of truth.
const CatalogEntry kCatalog[] = {
    {"P1", R"(system P1
note first Painleve equation
var q q weight 2
var p p weight 3
var z z weight 4
ham H degree 6 = 1/2*p^2 - 2*q^3 - z*q
end
)"},
    {"P2", R"(system P2
note second Painleve equation
var q q weight 1
var p p weight 2
var z z weight 2
var alpha param weight 3
ham H degree 4 = 1/2*p^2 - 1/2*q^4 - 1/2*z*q^2 - alpha*q
end
)"},
    {"P4", R"(system P4
note fourth Painleve equation
var q q weight 1
var p p weight 1
var z z weight 1
var alpha param weight 2
var beta param weight 2
ham H degree 3 = -p*q^2 + p^2*q - 2*p*q*z - alpha*p + beta*q
end
)"},
    {"P1_2", R"(system P1_2
note first Painleve hierarchy, two degrees of freedom
var q1 q weight 2
var q2 q weight 4
var p1 p weight 5
var p2 p weight 3
var z1 z weight 6
var z2 z weight 4
ham H1 degree 8 = 2*p2*p1 + 3*p2^2*q1 + q1^4 - q1^2*q2 - q2^2 - z1*q1 + z2*(q1^2 - q2)
ham H2 degree 10 = p1^2 + 2*p2*p1*q1 - q1^5 + p2^2*q2 + 3*q1^3*q2 - 2*q1*q2^2 + z1*(q1^2 - q2) + z2*(z2*q1 + q1*q2 - p2^2)
end
)"},
    {"P21_2", R"(system P21_2
note second-first Painleve hierarchy, two degrees of freedom
var q1 q weight 1
var q2 q weight 3
var p1 p weight 4
var p2 p weight 2
var z1 z weight 4
var z2 z weight 2
var alpha param weight 5
ham H1 degree 6 = 2*p1*p2 - p2^3 - p1*q1^2 + q2^2 - z1*p2 + z2*p1 + 2*alpha*q1
ham H2 degree 8 = -p1^2 + p1*p2^2 + p1*p2*q1^2 + 2*p1*q1*q2 + z1*p1 + z2*(z2*p1 - p1*q1^2 + p1*p2) - alpha*(2*p2*q1 + 2*q2 + 2*z2*q1)
end
)"},
    {"P22_2", R"(system P22_2
note second-second Painleve hierarchy, two degrees of freedom
var q1 q weight 1
var q2 q weight 2
var p1 p weight 3
var p2 p weight 2
var z1 z weight 3
var z2 z weight 2
var alpha param weight 4
ham H1 degree 5 = p1*p2 - p1*q1^2 - 2*p1*q2 + p2*q1*q2 + q1*q2^2 + q2*z1 + z2*(q1*q2 - p1) + alpha*q1
ham H2 degree 6 = p1^2 - p1*p2*q1 + p2^2*q2 - 2*p1*q1*q2 - p2*q2^2 + q1^2*q2^2 + z1*(q1*q2 - p1) - z2*(p1*q1 + q2^2 + q2*z2) + alpha*p2
end
)"},
    {"P4_2", R"(system P4_2
note fourth Painleve hierarchy, two degrees of freedom
var q1 q weight 1
var q2 q weight 1
var p1 p weight 2
var p2 p weight 2
var z1 z weight 2
var z2 z weight 1
var alpha param weight 3
var beta param weight 3
ham H1 degree 4 = p1^2 + p1*p2 - p1*q1^2 + p2*q1*q2 - p2*q2^2 - z1*p1 + z2*p2*q2 + alpha*q2 + beta*q1
ham H2 degree 5 = p1*p2*q1 - 2*p1*p2*q2 - p2^2*q2 + p2*q1*q2^2 + p2*q2*z1 + z2*(p1*p2 - p2*q2^2 + p2*q2*z2) + (p1 - q1*q2 + q2*z2)*alpha - beta*p2
end
)"},
    {"Cosgrove", R"(system Cosgrove
note Cosgrove F-VI quartic system
var q1 q weight 2
var q2 q weight 4
var p1 p weight 5
var p2 p weight 3
var z z weight 6
var alpha param weight 2
ham H degree 8 = -4*p1*p2 - 2*p2^2*q1 - 73/128*q1^4 + 11/8*q1^2*q2 - 1/2*q2^2 - q1*z - 1/48*(q1 + 1/6*alpha)*q1^2*alpha
end
)"},
    {"MatP1", R"(system MatP1
note matrix Painleve equation of the first type
var q1 q weight 2
var q2 q weight 4
var p1 p weight 3
var p2 p weight 1
var z z weight 4
var alpha param weight 5
ham H degree 6 = 1/2*p1^2 - 2*q1^3 - 2*p2^2*q2 + 6*q1*q2 - 2*q1*z + 2*alpha*p2
end
)"},
    {"H2323", R"(system H2323
note symplectic image of the second-first hierarchy at zero parameter
var x1 q weight 2
var x2 q weight 2
var y1 p weight 3
var y2 p weight 3
var z1 z weight 4
var z2 z weight 2
ham H1 degree 6 = -4*x1^2*x2 - 8*x2^3 + 1/4*y1^2 + 1/4*y2^2 - 2*z1*x2 - z2*x1^2
ham H2 degree 8 = -x1^4 - 4*x1^2*x2^2 - 1/2*x2*y1^2 + 1/2*x1*y1*y2 - z1*x1^2 - z2^2*x1^2 - 2*z2*x1^2*x2 + 1/4*z2*y1^2
end
)"},
    {"MatP2", R"(system MatP2
note matrix Painleve equation of the second type
var q1 q weight 1
var q2 q weight 2
var p1 p weight 2
var p2 p weight 1
var z z weight 2
var alpha param weight 3
var beta param weight 3
ham H degree 4 = 1/2*p1^2 - p1*q1^2 + p1*q2 - 2*p2^2*q2 - 4*p2*q1*q2 - p1*z + 2*alpha*p2 + 2*beta*(p2 + q1)
end
)"},
    {"NY_A4", R"(system NY_A4
note Noumi-Yamada system of type A4; parameter degrees follow the versal
note pattern (degree h-1 = 2) and are not pinned by an independent source
var q1 q weight 1
var q2 q weight 1
var p1 p weight 1
var p2 p weight 1
var z z weight 1
var alpha param weight 2
var beta param weight 2
var gamma param weight 2
var delta param weight 2
ham H degree 3 = 2*p1*p2*q1 + p1*q1*(p1 - q1 - z) + p2*q2*(p2 - q2 - z) + alpha*p1 + beta*q1 + gamma*p2 + delta*q2
end
)"},
    {"MatP4", R"(system MatP4
note matrix Painleve equation of the fourth type; weight of p2 is zero
var q1 q weight 1
var q2 q weight 2
var p1 p weight 1
var p2 p weight 0
var z z weight 1
var theta0 param weight 2
var theta1 param weight 2
var theta2 param weight 2
ham H degree 3 = 1/2*p1^2*q1 - p1*q1^2 + p1*q2 + 2*p1*p2*q2 - 4*p2*q1*q2 - 2*p2^2*q1*q2 - p1*q1*z - 2*p2*q2*z + 2*p2*q1*theta0 - p1*theta1 + 2*p2*q1*theta1 - p1*theta2 + 2*q1*theta2 + 2*p2*q1*theta2
end
)"},
    {"H1210", R"(system H1210
note Lie-algebraic system with weight tuple (1,2,1,0)
var q1 q weight 1
var q2 q weight 2
var p1 p weight 1
var p2 p weight 0
var z z weight 1
var alpha2 param weight 2
var beta2 param weight 2
var beta3 param weight 3
ham H degree 3 = -p1^2*q1 - 2*p1*q1^2 + 2*p1*q2 - 2*p1*p2*q2 - 2*p2*q1*q2 + (2*p1*q1 + 2*p2*q2)*z + (2*alpha2 + 2*beta2)*q1 + 2*beta2*p1 + 2*beta3*p2
end
)"},
    {"Hm1142", R"(system Hm1142
note Lie-algebraic system with weight tuple (-1,1,4,2)
var q1 q weight -1
var q2 q weight 1
var p1 p weight 4
var p2 p weight 2
var z z weight 2
var beta3 param weight 3
var beta5 param weight 5
ham H degree 4 = p1 - p2^2 - 2*p1*q1*q2 - p2*q2^2 + 2*beta3*q2 + 2*beta5*q1 + p2*z
end
)"},
    {"P1xP1", R"(system P1xP1
note direct product of two autonomous first Painleve systems
var q1 q weight 2
var q2 q weight 2
var p1 p weight 3
var p2 p weight 3
ham H1 degree 6 = 1/2*p1^2 - 2*q1^3 + 1/2*p2^2 - 2*q2^3
ham H2 degree 6 = 1/2*p1^2 - 2*q1^3
end
)"},
    {"P2xP2", R"(system P2xP2
note direct product of two autonomous second Painleve systems
var q1 q weight 1
var q2 q weight 1
var p1 p weight 2
var p2 p weight 2
ham H1 degree 4 = 1/2*p1^2 - 1/2*q1^4 + 1/2*p2^2 - 1/2*q2^4
ham H2 degree 4 = 1/2*p1^2 - 1/2*q1^4
end
)"},
    {"P4xP4", R"(system P4xP4
note direct product of two autonomous fourth Painleve systems
var q1 q weight 1
var q2 q weight 1
var p1 p weight 1
var p2 p weight 1
ham H1 degree 3 = -p1*q1^2 + p1^2*q1 - p2*q2^2 + p2^2*q2
ham H2 degree 3 = -p1*q1^2 + p1^2*q1
end
)"},
};

const std::map<std::string, const char*>& base_map() {
  static const std::map<std::string, const char*> m = [] {
    std::map<std::string, const char*> r;
    for (const auto& e : kCatalog) r.emplace(e.id, e.text);
    return r;
  }();
  return m;
}

}  // namespace

std::vector<std::string> catalog_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, text] : base_map()) {
    ids.push_back(id);
    ids.push_back(id + "_auto");
  }
  return ids;
}

SystemDef catalog(const std::string& id) {
  const auto& m = base_map();
  auto it = m.find(id);
  if (it != m.end()) return parse_system_text(it->second);
  constexpr std::string_view suffix = "_auto";
  if (id.size() > suffix.size() && id.ends_with(suffix)) {
    auto base = m.find(id.substr(0, id.size() - suffix.size()));
    if (base != m.end()) return autonomous_variant(parse_system_text(base->second));
  }
  std::ostringstream os;
  os << "unknown system '" << id << "'; available:";
  for (const auto& known : catalog_ids()) os << " " << known;
  throw std::invalid_argument(os.str());
}

}  // namespace kova
