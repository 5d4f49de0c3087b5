#include "subsym/language.hpp"

#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>

#include "subsym/error.hpp"
#include "subsym/parallel.hpp"

namespace subsym {

std::string to_string(LanguageMode mode) {
  return mode == LanguageMode::Minimal ? "minimal" : "full";
}

LanguageMode parse_language_mode(const std::string &text) {
  if (text == "minimal")
    return LanguageMode::Minimal;
  if (text == "full")
    return LanguageMode::Full;
  throw ParseError("unknown language mode '" + text + "' (expected minimal or full)");
}

bool PatchLanguage::contains(const Pattern &p) const {
  if (p.extent() != shape)
    throw PreconditionError("pattern extent " + p.extent().str() + " differs from language shape " +
                            shape.str());
  return patterns.count(p.key()) > 0;
}

std::vector<Pattern> PatchLanguage::materialize() const {
  std::vector<Pattern> out;
  out.reserve(patterns.size());
  for (const auto &k : patterns)
    out.emplace_back(LatticeVec(shape.dim()), shape, std::vector<Symbol>(k.begin(), k.end()));
  return out;
}

bool contains_pattern(const PatchLanguage &lang, const Pattern &p) { return lang.contains(p); }

void collect_subpatterns(const Pattern &p, const LatticeVec &shape, std::set<std::string> &out,
                         unsigned threads) {
  const std::size_t d = p.dim();
  if (shape.dim() != d)
    throw PreconditionError("collect_subpatterns: shape dimension mismatch");
  LatticeVec starts(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (shape[i] < 1)
      throw PreconditionError("collect_subpatterns: shape must be positive");
    starts[i] = p.extent()[i] - shape[i] + 1;
    if (starts[i] < 1)
      return;
  }
  std::vector<std::int64_t> stride(d);
  std::int64_t acc = 1;
  for (std::size_t i = 0; i < d; ++i) {
    stride[i] = acc;
    acc *= p.extent()[i];
  }
  // Offsets of the shape cells relative to the window origin.
  std::vector<std::int64_t> cell_offset;
  Rect::from_extent(shape).for_each([&](const LatticeVec &k) {
    std::int64_t off = 0;
    for (std::size_t i = 0; i < d; ++i)
      off += k[i] * stride[i];
    cell_offset.push_back(off);
  });
  const Rect start_box = Rect::from_extent(starts);
  const auto total = static_cast<std::size_t>(start_box.cell_count());
  const auto &cells = p.cells();
  std::mutex mu;
  parallel_for(total, threads, [&](std::size_t begin, std::size_t end) {
    std::set<std::string> local;
    std::string key(cell_offset.size(), '\0');
    for (std::size_t n = begin; n < end; ++n) {
      const LatticeVec q = start_box.point_at(static_cast<std::int64_t>(n));
      std::int64_t base = 0;
      for (std::size_t i = 0; i < d; ++i)
        base += q[i] * stride[i];
      for (std::size_t c = 0; c < cell_offset.size(); ++c)
        key[c] = static_cast<char>(cells[base + cell_offset[c]]);
      local.insert(key);
    }
    std::lock_guard lock(mu);
    out.merge(local);
  });
}

namespace {

// Level-by-level generation from a list of starting patterns; level k uses
// theta^k applied to each start.
PatchLanguage generate(const RectSubstitution &theta, const LatticeVec &shape,
                       std::vector<Pattern> starts, LanguageMode mode,
                       const LanguageOptions &opts) {
  if (shape.dim() != theta.dim())
    throw PreconditionError("patch_language: shape dimension mismatch");
  if (opts.max_depth < 1)
    throw PreconditionError("patch_language: max_depth must be at least 1");
  checked_cells(shape, opts.cell_cap);

  PatchLanguage lang;
  lang.shape = shape;
  lang.mode = mode;
  std::size_t previous = 0;
  bool have_previous = false;
  for (unsigned k = 1; k <= opts.max_depth; ++k) {
    bool capped = false;
    for (auto &p : starts) {
      try {
        p = apply(theta, p, opts.cell_cap);
      } catch (const SizeError &) {
        capped = true;
        break;
      }
    }
    if (capped)
      break;
    for (const auto &p : starts)
      collect_subpatterns(p, shape, lang.patterns, opts.threads);
    lang.depth_reached = k;
    if (lang.patterns.empty())
      continue;
    if (have_previous && lang.patterns.size() == previous) {
      lang.stabilized = true;
      break;
    }
    previous = lang.patterns.size();
    have_previous = true;
  }
  return lang;
}

} // namespace

PatchLanguage patch_language(const RectSubstitution &theta, const LatticeVec &shape,
                             LanguageMode mode, const LanguageOptions &opts) {
  const std::size_t d = theta.dim();
  std::vector<Pattern> starts;
  if (mode == LanguageMode::Minimal) {
    if (!is_primitive(theta).primitive)
      throw PreconditionError("minimal-mode language requires a primitive substitution");
    starts.emplace_back(LatticeVec(d), LatticeVec(d, 1), Symbol{0});
  } else {
    for (const Seed &s : fixed_seeds(theta).periodic())
      starts.push_back(s.as_pattern());
  }
  return generate(theta, shape, std::move(starts), mode, opts);
}

SeedVerdict seed_admissible_minimal(const PatchLanguage &two_cube, const Seed &seed) {
  if (two_cube.mode != LanguageMode::Minimal)
    throw PreconditionError("seed admissibility needs a minimal-mode language");
  SeedVerdict v;
  v.admissible = two_cube.contains(seed.as_pattern());
  v.depth_used = two_cube.depth_reached;
  v.stabilized = two_cube.stabilized;
  return v;
}

SeedVerdict seed_admissible_minimal(const RectSubstitution &theta, const Seed &seed,
                                    const LanguageOptions &opts) {
  const PatchLanguage lang =
      patch_language(theta, LatticeVec(theta.dim(), 2), LanguageMode::Minimal, opts);
  return seed_admissible_minimal(lang, seed);
}

PeriodicityReport periodicity_scan(const RectSubstitution &theta, unsigned radius,
                                   const LanguageOptions &opts) {
  PeriodicityReport rep;
  rep.radius = radius;
  if (radius == 0)
    return rep;
  const std::size_t d = theta.dim();
  const LatticeVec shape(d, 2 * static_cast<std::int64_t>(radius));
  std::vector<Pattern> starts;
  for (std::size_t a = 0; a < theta.symbols(); ++a)
    starts.emplace_back(LatticeVec(d), LatticeVec(d, 1), static_cast<Symbol>(a));
  const PatchLanguage lang = generate(theta, shape, std::move(starts), LanguageMode::Minimal, opts);
  rep.patterns_scanned = lang.size();
  rep.depth_reached = lang.depth_reached;
  rep.stabilized = lang.stabilized;
  if (lang.patterns.empty())
    return rep;

  const std::vector<Pattern> pats = lang.materialize();
  const Rect box = Rect::from_extent(shape);
  const Rect range(LatticeVec(d, -static_cast<std::int64_t>(radius)),
                   LatticeVec(d, static_cast<std::int64_t>(radius)));
  range.for_each([&](const LatticeVec &p) {
    std::size_t first = 0;
    while (first < d && p[first] == 0)
      ++first;
    if (first == d || p[first] < 0)
      return;
    for (const auto &pat : pats) {
      bool periodic = true;
      box.for_each([&](const LatticeVec &k) {
        if (!periodic)
          return;
        const LatticeVec kp = k + p;
        if (box.contains(kp) && pat.at(k) != pat.at(kp))
          periodic = false;
      });
      if (!periodic)
        return;
    }
    rep.periods.push_back(p);
  });
  return rep;
}

void write_language_dump(std::ostream &os, const PatchLanguage &lang) {
  static const char *hex = "0123456789abcdef";
  std::string ext;
  for (std::size_t i = 0; i < lang.shape.dim(); ++i)
    ext += (i ? "," : "") + std::to_string(lang.shape[i]);
  for (const auto &k : lang.patterns) {
    os << ext << ':';
    for (unsigned char c : k)
      os << hex[c >> 4] << hex[c & 15];
    os << '\n';
  }
}

PatchLanguage read_language_dump(std::istream &is, LanguageMode mode) {
  PatchLanguage lang;
  lang.mode = mode;
  std::string line;
  std::size_t lineno = 0;
  auto nibble = [&](char c) -> int {
    if (c >= '0' && c <= '9')
      return c - '0';
    if (c >= 'a' && c <= 'f')
      return c - 'a' + 10;
    throw ParseError("language dump line " + std::to_string(lineno) + ": bad hex digit");
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty())
      continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError("language dump line " + std::to_string(lineno) + ": missing ':'");
    std::vector<std::int64_t> ext;
    std::stringstream es(line.substr(0, colon));
    std::string tok;
    while (std::getline(es, tok, ','))
      ext.push_back(std::stoll(tok));
    const LatticeVec shape(ext);
    if (lang.shape.dim() == 0)
      lang.shape = shape;
    else if (shape != lang.shape)
      throw ParseError("language dump line " + std::to_string(lineno) + ": mixed shapes");
    const std::string hexpart = line.substr(colon + 1);
    if (hexpart.size() != 2 * static_cast<std::size_t>(shape.product()))
      throw ParseError("language dump line " + std::to_string(lineno) + ": wrong cell count");
    std::string key(hexpart.size() / 2, '\0');
    for (std::size_t i = 0; i < key.size(); ++i)
      key[i] = static_cast<char>(nibble(hexpart[2 * i]) * 16 + nibble(hexpart[2 * i + 1]));
    lang.patterns.insert(std::move(key));
  }
  return lang;
}

} // namespace subsym
