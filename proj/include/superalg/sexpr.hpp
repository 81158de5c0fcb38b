#pragma once

#include <string>

#include "superalg/scalar.hpp"

namespace superalg {

// textual form with an exact round trip:
//   (scalar (term COEFF ((name exp) ...) (phase (COEFF ((name exp) ...)) ...)
//           (word name ...)) ...)
std::string print_sexpr(const SuperScalar& x);
SuperScalar parse_sexpr(const SymbolContext& ctx, const std::string& text);

}  // namespace superalg
