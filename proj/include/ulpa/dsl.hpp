#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ulpa/scalar.hpp"
#include "ulpa/ultragraph.hpp"

namespace ulpa {

/*
 * Positioned diagnostic for a malformed document.  `expected` lists the
 * token spellings that would have been accepted at (line, column); `found`
 * is the offending token (or a description of a bad character).  Positions
 * are 1-based.
 */
struct SyntaxError {
  std::size_t line = 1;
  std::size_t column = 1;
  std::string found;
  std::vector<std::string> expected;
  std::string message() const;
};

struct ParsedSpec {
  Ultragraph graph;
  RingDescriptor ring = RingDescriptor::field(FieldDescriptor::rationals());
  bool ring_specified = false;  // false: the Q default was used
};

/*
 * Grammar (one statement per line, '#' comments, blank lines ignored):
 *
 *   vertices: nat | finite(<m>)
 *   edge <id>: <vertex> -> <set>
 *   ring: <factor> (x <factor>)*         factor = Q | F<p>
 *
 *   set = {a, b, ...} | cofinite{a, b, ...} | all | empty
 *       | periodic(N=<t>, p=<q>, r={...}, extra={...})
 *
 * The `vertices:` header comes first; edge enumeration order is file order.
 * Purely syntactic: semantic problems (empty ranges, vertices outside a
 * finite universe, duplicate ids) are left to validate().
 */
std::variant<ParsedSpec, SyntaxError> parse_spec(const std::string& text);

// Same, but throws InvalidInput carrying the positioned message.
ParsedSpec parse_spec_or_throw(const std::string& text);

// Canonical literal for a set; parse_spec inverts it.
std::string render_upset(const UPSet& s);

// Canonical document; reparsing yields an equal graph and ring.
std::string render_spec(const ParsedSpec& spec);

}  // namespace ulpa
