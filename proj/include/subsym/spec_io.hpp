#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "subsym/substitution.hpp"

namespace subsym {

/// Parsed substitution spec file. The file is one JSON object:
///   name      string
///   dim       integer 1..6
///   size      array of dim integers, each >= 2
///   alphabet  array of 2..255 distinct strings
///   rules     object symbol -> dim-nested array of symbol strings; the
///             outermost index runs over coordinate dim, the innermost over
///             coordinate 1, index 0 is the lowest coordinate
/// Unknown keys are rejected.
struct SubstitutionSpec {
  std::string name;
  std::size_t dim = 0;
  std::vector<std::int64_t> size;
  std::vector<std::string> alphabet;
  /// symbol name -> cell names, row-major with coordinate 1 fastest.
  std::map<std::string, std::vector<std::string>> rules;

  friend bool operator==(const SubstitutionSpec &, const SubstitutionSpec &) = default;
};

/// Throws ParseError with a JSON path (and line:column for syntax errors).
SubstitutionSpec parse_spec(const std::string &text);
SubstitutionSpec read_spec_file(const std::string &path);

/// Canonical text: sorted keys, one key per line, rules one symbol per
/// line with compact arrays, trailing newline.
std::string serialize_spec(const SubstitutionSpec &spec);

RectSubstitution to_substitution(const SubstitutionSpec &spec);
SubstitutionSpec from_substitution(const RectSubstitution &theta, const std::string &name);

/// FNV-1a 64 of the canonical serialization, as 16 hex digits.
std::string spec_hash(const SubstitutionSpec &spec);

} // namespace subsym
