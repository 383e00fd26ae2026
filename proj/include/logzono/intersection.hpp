#pragma once

// Four-vehicle intersection crossing protocol. For each vehicle i:
//   p_i(k+1) = up_i & !p_i & !c_i
//   c_i(k+1) = !p_i(k+1) & (uc_i | (!p_i & p_i(k+1)))
// p_i: vehicle i is passing, c_i: vehicle i came first.

#include <string>

#include "logzono/dsl.hpp"

namespace logzono {

/// DSL source of the protocol with its initial and input domains.
inline std::string intersection_source() {
  static const char* const init_p[] = {"1", "{0,1}", "0", "{0,1}"};
  static const char* const init_c[] = {"1", "{0,1}", "0", "{0,1}"};
  static const char* const in_up[] = {"{0,1}", "0", "{0,1}", "0"};
  std::string s = "# four-vehicle intersection crossing protocol\n";
  s += "state p1, p2, p3, p4, c1, c2, c3, c4;\n";
  s += "input up1, up2, up3, up4, uc1, uc2, uc3, uc4;\n\n";
  for (int i = 1; i <= 4; ++i) {
    const std::string n = std::to_string(i);
    s += "p" + n + "' = up" + n + " & !p" + n + " & !c" + n + ";\n";
  }
  for (int i = 1; i <= 4; ++i) {
    const std::string n = std::to_string(i);
    s += "c" + n + "' = !p" + n + "' & (uc" + n + " | (!p" + n + " & p" + n + "'));\n";
  }
  s += "\n";
  for (int i = 0; i < 4; ++i) s += "init p" + std::to_string(i + 1) + " = " + init_p[i] + ";\n";
  for (int i = 0; i < 4; ++i) s += "init c" + std::to_string(i + 1) + " = " + init_c[i] + ";\n";
  for (int i = 0; i < 4; ++i) s += "in up" + std::to_string(i + 1) + " = " + in_up[i] + ";\n";
  for (int i = 1; i <= 4; ++i) s += "in uc" + std::to_string(i) + " = {0,1};\n";
  s += "horizon 10;\n";
  return s;
}

inline dsl::SystemSpec intersection_system() { return dsl::parse_system(intersection_source()); }

/// True when at least two vehicles pass at once.
inline std::string intersection_collision_predicate() {
  return "(p1 & p2) | (p1 & p3) | (p1 & p4) | (p2 & p3) | (p2 & p4) | (p3 & p4)";
}

}  // namespace logzono
