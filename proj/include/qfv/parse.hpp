#ifndef QFV_PARSE_HPP
#define QFV_PARSE_HPP

#include <stdexcept>
#include <string>

#include "qfv/poly.hpp"

namespace qfv {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
  size_t position;
};

/// Grammar: expr := ['+'|'-'] term {('+'|'-') term}
///          term := factor {'*' factor}
///          factor := base ['^' nat]
///          base := nat ['/' nat] | name | '(' expr ')'
/// Over an extension field the symbol `g` denotes the field generator.
/// The printer (Poly::str) emits this grammar.
Poly parse_poly(const std::string& text, std::shared_ptr<const Ring> ring);

} // namespace qfv

#endif
