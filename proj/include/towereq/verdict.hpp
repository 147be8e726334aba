#pragma once

#include <string>

namespace towereq {

enum class Outcome { equal, not_equal, unknown };

enum class Method {
  structural,           // canonical forms coincide or differ trivially
  exact_field,          // decided inside Q(B^(1/N))
  monomial_normal_form, // single-monomial comparison with exact rational checks
  transcendence_rule,   // B^d with d irrational algebraic is transcendental
  interval_separation,  // outward-rounded evaluation separated the values
};

constexpr const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::equal:     return "Equal";
    case Outcome::not_equal: return "NotEqual";
    case Outcome::unknown:   return "Unknown";
  }
  return "?";
}

constexpr const char* to_string(Method m) {
  switch (m) {
    case Method::structural:           return "Structural";
    case Method::exact_field:          return "ExactField";
    case Method::monomial_normal_form: return "MonomialNormalForm";
    case Method::transcendence_rule:   return "TranscendenceRule";
    case Method::interval_separation:  return "IntervalSeparation";
  }
  return "?";
}

struct Verdict {
  Outcome outcome;
  Method method;
  std::string detail;
};

}  // namespace towereq
