#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "subsym/lattice.hpp"
#include "subsym/pattern.hpp"
#include "subsym/substitution.hpp"

namespace subsym {

enum class LanguageMode {
  /// Subpatterns of theta^k(a) for one fixed letter a (language of X_theta°).
  Minimal,
  /// Subpatterns of theta^k(P) over every periodic seed P (language of X_theta).
  Full,
};

std::string to_string(LanguageMode mode);
LanguageMode parse_language_mode(const std::string &text);

inline constexpr unsigned kDefaultLanguageDepth = 8;

/// Set of all patterns of one shape, generated level by level until two
/// consecutive levels agree (stabilized) or max_depth is reached.
/// Stabilization is a heuristic stopping rule, not a proof of completeness.
struct PatchLanguage {
  LatticeVec shape;
  LanguageMode mode = LanguageMode::Minimal;
  std::set<std::string> patterns; // canonical keys: row-major cell bytes
  unsigned depth_reached = 0;
  bool stabilized = false;

  std::size_t size() const { return patterns.size(); }
  /// Throws PreconditionError on a shape mismatch.
  bool contains(const Pattern &p) const;
  std::vector<Pattern> materialize() const;
};

struct LanguageOptions {
  unsigned max_depth = kDefaultLanguageDepth;
  std::int64_t cell_cap = kDefaultCellCap;
  unsigned threads = 1;
};

PatchLanguage patch_language(const RectSubstitution &theta, const LatticeVec &shape,
                             LanguageMode mode, const LanguageOptions &opts = {});

bool contains_pattern(const PatchLanguage &lang, const Pattern &p);

/// Adds every shape-subpattern of p to out.
void collect_subpatterns(const Pattern &p, const LatticeVec &shape, std::set<std::string> &out,
                         unsigned threads = 1);

struct SeedVerdict {
  bool admissible = false;
  unsigned depth_used = 0;
  bool stabilized = false;
};

/// Does the 2^d-cell seed pattern occur in some theta^k(a)?
SeedVerdict seed_admissible_minimal(const RectSubstitution &theta, const Seed &seed,
                                    const LanguageOptions &opts = {});
/// Same query against a precomputed minimal language of shape (2, ..., 2).
SeedVerdict seed_admissible_minimal(const PatchLanguage &two_cube, const Seed &seed);

struct PeriodicityReport {
  unsigned radius = 0;
  std::vector<LatticeVec> periods; // canonical sign: first nonzero coordinate > 0
  std::size_t patterns_scanned = 0;
  unsigned depth_reached = 0;
  bool stabilized = false;
};

/// Looks for p with |p|_inf <= radius such that every pattern of shape
/// 2 * radius occurring in some theta^k(a) is p-periodic. A hit is evidence
/// of a non-faithful shift action; an empty report is not a proof.
PeriodicityReport periodicity_scan(const RectSubstitution &theta, unsigned radius,
                                   const LanguageOptions &opts = {});

/// One pattern per line as `e1,e2,...:hexbytes`, in key order.
void write_language_dump(std::ostream &os, const PatchLanguage &lang);
/// Reads the dump format back; shape comes from the first line.
PatchLanguage read_language_dump(std::istream &is, LanguageMode mode);

} // namespace subsym
