#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subsym/lattice.hpp"
#include "subsym/pattern.hpp"

namespace subsym {

/// Ordered list of distinct symbol names; 2 <= size <= 255.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string &name(Symbol s) const { return names_.at(s); }
  const std::vector<std::string> &names() const { return names_; }
  std::optional<Symbol> index_of(const std::string &name) const;

  friend bool operator==(const Alphabet &, const Alphabet &) = default;

private:
  std::vector<std::string> names_;
};

/// A symbol permutation stored as an image table.
using SymbolMap = std::vector<Symbol>;

SymbolMap identity_map(std::size_t n);
SymbolMap compose_maps(const SymbolMap &outer, const SymbolMap &inner);
SymbolMap invert_map(const SymbolMap &m);
bool is_permutation(const SymbolMap &m);
/// Order of a permutation (least n >= 1 with m^n = id).
std::uint64_t permutation_order(const SymbolMap &m);

/// Rectangular substitution theta: A -> A^S with S = [0, s - 1], all s_i >= 2.
class RectSubstitution {
public:
  RectSubstitution(Alphabet alphabet, LatticeVec size, std::vector<Pattern> rules);

  std::size_t dim() const { return size_.dim(); }
  const Alphabet &alphabet() const { return alphabet_; }
  std::size_t symbols() const { return alphabet_.size(); }
  const LatticeVec &size() const { return size_; }
  /// Cells per rule patch, |S|.
  std::size_t block_cells() const { return block_cells_; }
  const Pattern &rule(Symbol a) const { return rules_.at(a); }
  const std::vector<Pattern> &rules() const { return rules_; }

  /// theta(a)_k for k given by its row-major index in S.
  Symbol image(Symbol a, std::size_t k_index) const {
    return rules_[a].cells()[k_index];
  }

  friend bool operator==(const RectSubstitution &, const RectSubstitution &) = default;

private:
  Alphabet alphabet_;
  LatticeVec size_;
  std::vector<Pattern> rules_;
  std::size_t block_cells_ = 0;
};

/// Seed pattern on {-1,0}^d. Corner index j stores the cell whose
/// coordinate i is -1 + bit_i(j), so the cells are row-major over the box
/// [-1, 0]^d with coordinate 1 fastest.
class Seed {
public:
  Seed() = default;
  Seed(std::size_t dim, std::vector<Symbol> corners);

  std::size_t dim() const { return dim_; }
  std::size_t corner_count() const { return corners_.size(); }
  Symbol corner(std::size_t j) const { return corners_[j]; }
  Symbol &corner(std::size_t j) { return corners_[j]; }
  const std::vector<Symbol> &corners() const { return corners_; }
  /// Corner index of a sign/offset vector u in {-1,0}^d.
  static std::size_t corner_index(const LatticeVec &u);
  static LatticeVec corner_vector(std::size_t dim, std::size_t j);

  Pattern as_pattern() const;

  friend bool operator==(const Seed &, const Seed &) = default;
  friend auto operator<=>(const Seed &, const Seed &) = default;

private:
  std::size_t dim_ = 0;
  std::vector<Symbol> corners_;
};

/// theta applied cellwise: anchor and extent scale by s.
Pattern apply(const RectSubstitution &theta, const Pattern &p,
              std::int64_t cap = kDefaultCellCap);
/// theta^m as a substitution with patch size s^m (rules materialized).
RectSubstitution power(const RectSubstitution &theta, unsigned m,
                       std::int64_t cap = kDefaultCellCap);

struct PrimitivityReport {
  bool primitive = false;
  /// Least k with M^k all ones (valid when primitive).
  unsigned witness_power = 0;
  /// When not primitive: a pair (a, b) such that b never occurs in
  /// theta^k(a) for k up to the bound checked.
  std::optional<std::pair<Symbol, Symbol>> missing;
  unsigned powers_checked = 0;
};

PrimitivityReport is_primitive(const RectSubstitution &theta);
bool is_bijective(const RectSubstitution &theta);
/// The column map a -> theta(a)_k.
SymbolMap position_map(const RectSubstitution &theta, const LatticeVec &k);
/// Position of corner j of S (0 on axes where the seed corner sits at 0,
/// s_i - 1 where it sits at -1).
LatticeVec seed_corner_position(const RectSubstitution &theta, std::size_t j);
/// lcm of the orders of the 2^d corner permutations; requires bijectivity.
std::uint64_t corner_fixing_power(const RectSubstitution &theta);

Seed seed_step(const RectSubstitution &theta, const Seed &p);

struct SeedCycle {
  std::vector<Seed> seeds; // in cycle order, starting from the least seed
};

struct SeedDynamics {
  std::vector<SeedCycle> cycles;  // sorted by first seed
  std::uint64_t period_lcm = 1;   // lcm of cycle lengths
  std::size_t seeds_scanned = 0;  // |A|^{2^d}
  /// Seeds fixed by seed_step (cycles of length 1).
  std::vector<Seed> fixed() const;
  /// Every seed lying on a cycle.
  std::vector<Seed> periodic() const;
};

/// Cycle structure of seed_step over all |A|^{2^d} seeds.
SeedDynamics fixed_seeds(const RectSubstitution &theta,
                         std::size_t max_seeds = std::size_t{1} << 22);

/// Every seed in lexicographic order.
std::vector<Seed> all_seeds(std::size_t dim, std::size_t symbols,
                            std::size_t max_seeds = std::size_t{1} << 22);

/// The power of theta whose fixed points are the periodic points of theta:
/// corner_fixing_power for bijective theta, otherwise the lcm of seed cycle
/// lengths.
std::uint64_t fixing_power(const RectSubstitution &theta);

} // namespace subsym
