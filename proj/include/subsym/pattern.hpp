#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subsym/lattice.hpp"

namespace subsym {

/// Dense alphabet index. Names only appear at the I/O boundary.
using Symbol = std::uint8_t;

/// Finite rectangular symbol array: cells over [anchor, anchor + extent - 1],
/// stored row-major with coordinate 1 fastest.
class Pattern {
public:
  Pattern() = default;
  Pattern(LatticeVec anchor, LatticeVec extent, Symbol fill = 0);
  Pattern(LatticeVec anchor, LatticeVec extent, std::vector<Symbol> cells);

  std::size_t dim() const { return anchor_.dim(); }
  const LatticeVec &anchor() const { return anchor_; }
  const LatticeVec &extent() const { return extent_; }
  Rect support() const { return Rect::from_anchor(anchor_, extent_); }
  std::size_t size() const { return cells_.size(); }

  const std::vector<Symbol> &cells() const { return cells_; }
  std::vector<Symbol> &cells() { return cells_; }

  Symbol at(const LatticeVec &p) const;
  void set(const LatticeVec &p, Symbol s);
  Symbol operator[](std::size_t i) const { return cells_[i]; }

  /// Subpattern over r (must lie inside the support), keeping absolute
  /// coordinates.
  Pattern crop(const Rect &r) const;
  Pattern translated(const LatticeVec &v) const;
  /// Same cells re-anchored at 0.
  Pattern normalized() const;

  /// Canonical key: the raw cell bytes (anchor and extent are not included).
  std::string key() const { return std::string(cells_.begin(), cells_.end()); }

  friend bool operator==(const Pattern &, const Pattern &) = default;

private:
  std::int64_t offset(const LatticeVec &p) const;

  LatticeVec anchor_;
  LatticeVec extent_;
  std::vector<Symbol> cells_;
};

/// Checked cell count of a box with the given extent against a cap.
std::int64_t checked_cells(const LatticeVec &extent, std::int64_t cap);

/// Default cap for materialized patterns (2^26 cells).
inline constexpr std::int64_t kDefaultCellCap = std::int64_t{1} << 26;

/// Swaps 0 and 1 cellwise; requires a binary pattern.
Pattern complement(const Pattern &p);

} // namespace subsym
