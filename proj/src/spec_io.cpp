#include "subsym/spec_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "subsym/error.hpp"

namespace subsym {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string &path, const std::string &why) {
  throw ParseError("spec " + path + ": " + why);
}

std::string line_col(const std::string &text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

// Flattens a dim-nested array into row-major order (coordinate 1 fastest).
void flatten(const json &node, std::size_t level, const SubstitutionSpec &spec,
             const std::set<std::string> &names, const std::string &path,
             std::vector<std::string> &out) {
  if (level == 0) {
    if (!node.is_string())
      fail(path, "expected a symbol string");
    const auto s = node.get<std::string>();
    if (!names.count(s))
      fail(path, "unknown symbol '" + s + "'");
    out.push_back(s);
    return;
  }
  const auto want = static_cast<std::size_t>(spec.size[level - 1]);
  if (!node.is_array())
    fail(path, "expected an array of length " + std::to_string(want) + " (coordinate " +
                   std::to_string(level) + ")");
  if (node.size() != want)
    fail(path, "array has length " + std::to_string(node.size()) + ", size says " +
                   std::to_string(want) + " (coordinate " + std::to_string(level) + ")");
  for (std::size_t i = 0; i < node.size(); ++i)
    flatten(node[i], level - 1, spec, names, path + "[" + std::to_string(i) + "]", out);
}

// Row-major order with coordinate 1 fastest equals nested order with the
// outermost index on coordinate dim, so flatten() output needs no reshuffle.
json nest(const std::vector<std::string> &cells, const std::vector<std::int64_t> &size,
          std::size_t level, std::size_t &pos) {
  json arr = json::array();
  for (std::int64_t i = 0; i < size[level - 1]; ++i)
    arr.push_back(level == 1 ? json(cells[pos++]) : nest(cells, size, level - 1, pos));
  return arr;
}

} // namespace

SubstitutionSpec parse_spec(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ParseError("spec syntax error at " + line_col(text, e.byte) + ": " + e.what());
  }
  if (!doc.is_object())
    fail("$", "top level must be an object");
  static const std::set<std::string> known{"name", "dim", "size", "alphabet", "rules"};
  for (const auto &[key, _] : doc.items())
    if (!known.count(key))
      fail("$." + key, "unknown key");
  for (const auto &key : known)
    if (!doc.contains(key))
      fail("$", "missing key '" + key + "'");

  SubstitutionSpec spec;
  if (!doc["name"].is_string())
    fail("$.name", "expected a string");
  spec.name = doc["name"].get<std::string>();

  if (!doc["dim"].is_number_integer())
    fail("$.dim", "expected an integer");
  const auto dim = doc["dim"].get<std::int64_t>();
  if (dim < 1 || dim > static_cast<std::int64_t>(kMaxDim))
    fail("$.dim", "must be in 1.." + std::to_string(kMaxDim));
  spec.dim = static_cast<std::size_t>(dim);

  const json &size = doc["size"];
  if (!size.is_array() || size.size() != spec.dim)
    fail("$.size", "expected an array of " + std::to_string(dim) + " integers");
  for (std::size_t i = 0; i < size.size(); ++i) {
    const std::string p = "$.size[" + std::to_string(i) + "]";
    if (!size[i].is_number_integer())
      fail(p, "expected an integer");
    const auto s = size[i].get<std::int64_t>();
    if (s < 2)
      fail(p, "must be at least 2");
    if (s > 4096)
      fail(p, "must be at most 4096");
    spec.size.push_back(s);
  }

  const json &alpha = doc["alphabet"];
  if (!alpha.is_array())
    fail("$.alphabet", "expected an array of strings");
  if (alpha.size() < 2 || alpha.size() > 255)
    fail("$.alphabet", "needs 2..255 symbols");
  std::set<std::string> names;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const std::string p = "$.alphabet[" + std::to_string(i) + "]";
    if (!alpha[i].is_string())
      fail(p, "expected a string");
    const auto s = alpha[i].get<std::string>();
    if (s.empty())
      fail(p, "symbol names must be nonempty");
    if (!names.insert(s).second)
      fail(p, "duplicate symbol '" + s + "'");
    spec.alphabet.push_back(s);
  }

  const json &rules = doc["rules"];
  if (!rules.is_object())
    fail("$.rules", "expected an object keyed by symbol");
  for (const auto &[key, value] : rules.items()) {
    if (!names.count(key))
      fail("$.rules." + key, "unknown symbol '" + key + "'");
    std::vector<std::string> cells;
    flatten(value, spec.dim, spec, names, "$.rules." + key, cells);
    spec.rules.emplace(key, std::move(cells));
  }
  for (const auto &s : spec.alphabet)
    if (!spec.rules.count(s))
      fail("$.rules", "no rule for symbol '" + s + "'");
  return spec;
}

SubstitutionSpec read_spec_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot open spec file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_spec(ss.str());
  } catch (const ParseError &e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string serialize_spec(const SubstitutionSpec &spec) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"alphabet\": " << json(spec.alphabet).dump() << ",\n";
  os << "  \"dim\": " << spec.dim << ",\n";
  os << "  \"name\": " << json(spec.name).dump() << ",\n";
  os << "  \"rules\": {\n";
  std::size_t i = 0;
  for (const auto &[sym, cells] : spec.rules) {
    std::size_t pos = 0;
    os << "    " << json(sym).dump() << ": " << nest(cells, spec.size, spec.dim, pos).dump()
       << (++i < spec.rules.size() ? ",\n" : "\n");
  }
  os << "  },\n";
  os << "  \"size\": " << json(spec.size).dump() << "\n";
  os << "}\n";
  return os.str();
}

RectSubstitution to_substitution(const SubstitutionSpec &spec) {
  Alphabet alphabet(spec.alphabet);
  const LatticeVec size(spec.size);
  std::vector<Pattern> rules;
  for (const auto &name : spec.alphabet) {
    const auto &cells = spec.rules.at(name);
    std::vector<Symbol> sym;
    sym.reserve(cells.size());
    for (const auto &c : cells)
      sym.push_back(*alphabet.index_of(c));
    rules.emplace_back(LatticeVec(spec.dim), size, std::move(sym));
  }
  return RectSubstitution(std::move(alphabet), size, std::move(rules));
}

SubstitutionSpec from_substitution(const RectSubstitution &theta, const std::string &name) {
  SubstitutionSpec spec;
  spec.name = name;
  spec.dim = theta.dim();
  spec.size = theta.size().coords();
  spec.alphabet = theta.alphabet().names();
  for (std::size_t a = 0; a < theta.symbols(); ++a) {
    std::vector<std::string> cells;
    for (auto c : theta.rule(static_cast<Symbol>(a)).cells())
      cells.push_back(theta.alphabet().name(c));
    spec.rules.emplace(spec.alphabet[a], std::move(cells));
  }
  return spec;
}

std::string spec_hash(const SubstitutionSpec &spec) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : serialize_spec(spec)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static const char *hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4)
    out[static_cast<std::size_t>(i)] = hex[h & 15];
  return out;
}

} // namespace subsym
