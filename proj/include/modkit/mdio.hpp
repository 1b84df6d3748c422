#pragma once

// Line-oriented text format for modular data.
//
//   # comment
//   mdfile v1
//   name "Semion"            (optional)
//   source "where-from"      (optional)
//   rank 2
//   conductor 4
//   label 0 "1"              (optional per index)
//   S 0 0 = 1                (upper triangle required; full matrix accepted)
//   T 0 = 1
//
// Entries are cyclotomic literals in z = zeta_N for the file conductor N.
// Errors carry 1-based line numbers.

#include <string>
#include <string_view>

#include "modkit/modular_data.hpp"

namespace modkit {

enum class Pcode {
  Syntax,
  MissingEntry,
  DuplicateEntry,
  IndexOutOfRange,
  BadConductor,
};
const char* pcode_name(Pcode c);

struct ParseError : Error {
  ParseError(Pcode c, int ln, const std::string& msg)
      : Error(std::string(pcode_name(c)) + " (line " + std::to_string(ln) + "): " + msg),
        code(c),
        line(ln) {}
  Pcode code;
  int line;
};

RawModularData parse_mdfile(std::string_view text);

// deterministic: sorted entries, conductor = the validated file conductor
std::string serialize(const ModularData& md);

}  // namespace modkit
