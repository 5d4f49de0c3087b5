#include "subsym/pattern.hpp"

#include "subsym/error.hpp"

namespace subsym {

std::int64_t checked_cells(const LatticeVec &extent, std::int64_t cap) {
  std::int64_t n = 1;
  for (std::size_t i = 0; i < extent.dim(); ++i) {
    if (extent[i] < 1)
      throw PreconditionError("pattern extent must be positive");
    if (__builtin_mul_overflow(n, extent[i], &n) || n > cap)
      throw SizeError("pattern of extent " + extent.str() + " exceeds the cell cap of " +
                      std::to_string(cap));
  }
  return n;
}

Pattern::Pattern(LatticeVec anchor, LatticeVec extent, Symbol fill)
    : anchor_(std::move(anchor)), extent_(std::move(extent)) {
  if (anchor_.dim() != extent_.dim())
    throw PreconditionError("pattern anchor/extent dimension mismatch");
  cells_.assign(static_cast<std::size_t>(checked_cells(extent_, INT64_MAX)), fill);
}

Pattern::Pattern(LatticeVec anchor, LatticeVec extent, std::vector<Symbol> cells)
    : anchor_(std::move(anchor)), extent_(std::move(extent)), cells_(std::move(cells)) {
  if (anchor_.dim() != extent_.dim())
    throw PreconditionError("pattern anchor/extent dimension mismatch");
  if (static_cast<std::int64_t>(cells_.size()) != checked_cells(extent_, INT64_MAX))
    throw PreconditionError("pattern cell count does not match its extent");
}

std::int64_t Pattern::offset(const LatticeVec &p) const {
  std::int64_t idx = 0;
  for (std::size_t i = dim(); i-- > 0;) {
    const std::int64_t local = p[i] - anchor_[i];
    if (local < 0 || local >= extent_[i])
      throw RangeError("position " + p.str() + " outside pattern support");
    idx = idx * extent_[i] + local;
  }
  return idx;
}

Symbol Pattern::at(const LatticeVec &p) const { return cells_[offset(p)]; }

void Pattern::set(const LatticeVec &p, Symbol s) { cells_[offset(p)] = s; }

Pattern Pattern::crop(const Rect &r) const {
  if (!support().contains(r))
    throw RangeError("crop rectangle outside pattern support");
  Pattern out(r.lo(), r.extent());
  std::size_t w = 0;
  r.for_each([&](const LatticeVec &p) { out.cells_[w++] = at(p); });
  return out;
}

Pattern Pattern::translated(const LatticeVec &v) const {
  return Pattern(anchor_ + v, extent_, cells_);
}

Pattern Pattern::normalized() const { return Pattern(LatticeVec(dim()), extent_, cells_); }

Pattern complement(const Pattern &p) {
  Pattern out = p;
  for (auto &c : out.cells()) {
    if (c > 1)
      throw PreconditionError("complement requires a binary pattern");
    c ^= 1;
  }
  return out;
}

} // namespace subsym
