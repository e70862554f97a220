#pragma once

#include <string_view>

#include "qma/qrat.hpp"

namespace qma {

// Parses the coefficient expression grammar used in matrix files and on the
// command line:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := INT | 'q' | 'q' '^' SINT | '(' expr ')' | '-' factor
//
// SINT is an optionally signed integer; whitespace is insignificant.
// Examples: "q", "q^-1", "(q^2-1)/(q*(q-q^-1))", "-1/2".
QRat parse_coeff(std::string_view text);

} // namespace qma
