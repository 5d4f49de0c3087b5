#include "subsym/points.hpp"

#include <algorithm>
#include <atomic>

#include "subsym/error.hpp"
#include "subsym/parallel.hpp"

namespace subsym {

SubstitutionRef corner_fixed(const RectSubstitution &theta) {
  const std::uint64_t m = fixing_power(theta);
  if (m == 1)
    return std::make_shared<const RectSubstitution>(theta);
  return std::make_shared<const RectSubstitution>(power(theta, static_cast<unsigned>(m)));
}

bool OdometerCoord::coherent() const {
  for (std::size_t m = 0; m + 1 < residues.size(); ++m) {
    const LatticeVec mod = base.pow(static_cast<unsigned>(m + 1));
    if (residues[m].floor_mod(mod) != residues[m + 1].floor_mod(mod))
      return false;
  }
  for (std::size_t m = 0; m < residues.size(); ++m) {
    const LatticeVec mod = base.pow(static_cast<unsigned>(m + 1));
    if (residues[m].floor_mod(mod) != residues[m])
      return false;
  }
  return true;
}

OdometerCoord OdometerCoord::plus(const LatticeVec &k) const {
  OdometerCoord out{base, {}};
  for (std::size_t m = 0; m < residues.size(); ++m)
    out.residues.push_back((residues[m] + k).floor_mod(base.pow(static_cast<unsigned>(m + 1))));
  return out;
}

AddressablePoint::AddressablePoint(SubstitutionRef theta, Seed seed, LatticeVec shift)
    : theta_(std::move(theta)), seed_(std::move(seed)), shift_(std::move(shift)) {
  if (!theta_)
    throw PreconditionError("addressable point needs a substitution");
  if (seed_.dim() != theta_->dim() || shift_.dim() != theta_->dim())
    throw PreconditionError("addressable point: dimension mismatch");
  if (seed_step(*theta_, seed_) != seed_)
    throw PreconditionError("addressable point: seed is not fixed by the substitution");
  block_stride_.resize(theta_->dim());
  std::int64_t acc = 1;
  for (std::size_t i = 0; i < theta_->dim(); ++i) {
    block_stride_[i] = acc;
    acc *= theta_->size()[i];
  }
}

unsigned AddressablePoint::minimal_depth(const LatticeVec &k) const {
  const LatticeVec w = k - shift_;
  unsigned depth = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    const std::int64_t target = w[i] >= 0 ? 0 : -1;
    std::int64_t q = w[i];
    unsigned m = 0;
    while (q != target) {
      q = floor_div(q, theta_->size()[i]);
      ++m;
    }
    depth = std::max(depth, m);
  }
  return depth;
}

Symbol AddressablePoint::evaluate(const LatticeVec &w, unsigned depth) const {
  const std::size_t d = dim();
  std::size_t corner = 0;
  for (std::size_t i = 0; i < d; ++i)
    if (w[i] >= 0)
      corner |= std::size_t{1} << i;
  // Base-s digits with floor semantics: adding s^depth to a negative
  // coordinate leaves the low `depth` digits unchanged.
  std::vector<std::size_t> block_index(depth, 0);
  for (std::size_t i = 0; i < d; ++i) {
    const std::int64_t s = theta_->size()[i];
    std::int64_t q = w[i];
    for (unsigned t = 0; t < depth; ++t) {
      block_index[t] += static_cast<std::size_t>(floor_mod(q, s) * block_stride_[i]);
      q = floor_div(q, s);
    }
    if (q != (w[i] >= 0 ? 0 : -1))
      throw PreconditionError("symbol_at_depth: depth too small for " + w.str());
  }
  Symbol sym = seed_.corner(corner);
  for (unsigned t = depth; t-- > 0;)
    sym = theta_->image(sym, block_index[t]);
  return sym;
}

Symbol AddressablePoint::symbol_at(const LatticeVec &k) const {
  return evaluate(k - shift_, minimal_depth(k));
}

Symbol AddressablePoint::symbol_at_depth(const LatticeVec &k, unsigned depth) const {
  return evaluate(k - shift_, depth);
}

Pattern AddressablePoint::window(const Rect &r, std::int64_t cap, unsigned threads) const {
  if (r.dim() != dim())
    throw PreconditionError("window: dimension mismatch");
  const std::int64_t n = checked_cells(r.extent(), cap);
  Pattern out(r.lo(), r.extent());
  auto &cells = out.cells();
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      cells[i] = symbol_at(r.point_at(static_cast<std::int64_t>(i)));
  });
  return out;
}

OdometerCoord phi(const AddressablePoint &x, unsigned precision) {
  if (precision == 0)
    throw PreconditionError("phi: precision must be at least 1");
  OdometerCoord out{x.substitution().size(), {}};
  for (unsigned m = 1; m <= precision; ++m)
    out.residues.push_back(x.shift().floor_mod(x.substitution().size().pow(m)));
  return out;
}

AddressablePoint shift_point(const AddressablePoint &x, const LatticeVec &k) {
  return AddressablePoint(x.substitution_ref(), x.seed(), x.shift() + k);
}

Desubstitution desubstitute_point(const AddressablePoint &x) {
  const LatticeVec &s = x.substitution().size();
  LatticeVec k1 = x.shift().floor_mod(s);
  LatticeVec v = (x.shift() - k1).floor_div(s);
  return Desubstitution{std::move(k1), AddressablePoint(x.substitution_ref(), x.seed(), v)};
}

std::vector<PatternDesubstitution> desubstitute_pattern(const RectSubstitution &theta,
                                                        const Pattern &p) {
  if (p.dim() != theta.dim())
    throw PreconditionError("desubstitute_pattern: dimension mismatch");
  if (p.size() == 0)
    throw PreconditionError("desubstitute_pattern: empty pattern");
  const LatticeVec &s = theta.size();
  const Rect block = Rect::from_extent(s);
  const Rect support = p.support();
  const std::size_t n = theta.symbols();

  std::vector<PatternDesubstitution> out;
  block.for_each([&](const LatticeVec &o) {
    // Cells at position k sit in block floor((k - o) / s) at (k - o) mod s.
    const LatticeVec qlo = (support.lo() - o).floor_div(s);
    const LatticeVec qhi = (support.hi() - o).floor_div(s);
    const Rect blocks(qlo, qhi);
    Pattern pre(qlo, blocks.extent());
    std::size_t ambiguous = 0;
    bool consistent = true;
    blocks.for_each([&](const LatticeVec &q) {
      if (!consistent)
        return;
      const LatticeVec corner = q.hadamard(s) + o;
      const auto cell_box = Rect::from_anchor(corner, s).intersect(support);
      std::vector<bool> ok(n, true);
      cell_box->for_each([&](const LatticeVec &k) {
        const auto idx = static_cast<std::size_t>(block.linear_index(k - corner));
        const Symbol want = p.at(k);
        for (std::size_t a = 0; a < n; ++a)
          if (ok[a] && theta.image(static_cast<Symbol>(a), idx) != want)
            ok[a] = false;
      });
      const auto hits = std::count(ok.begin(), ok.end(), true);
      if (hits == 0) {
        consistent = false;
        return;
      }
      if (hits > 1)
        ++ambiguous;
      pre.set(q, static_cast<Symbol>(std::find(ok.begin(), ok.end(), true) - ok.begin()));
    });
    if (consistent)
      out.push_back(PatternDesubstitution{o, std::move(pre), ambiguous});
  });
  return out;
}

PairMasks compare_points(const AddressablePoint &x, const AddressablePoint &y, const Rect &window,
                         const std::function<bool(const LatticeVec &)> &inside, unsigned threads) {
  const auto n = static_cast<std::size_t>(window.cell_count());
  // Per-cell classification, reduced sequentially for a thread-independent result.
  std::vector<std::uint8_t> cls(n);
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const LatticeVec k = window.point_at(static_cast<std::int64_t>(i));
      const bool eq = x.symbol_at(k) == y.symbol_at(k);
      cls[i] = static_cast<std::uint8_t>((inside(k) ? 2 : 0) | (eq ? 1 : 0));
    }
  });
  PairMasks m;
  for (auto c : cls) {
    switch (c) {
    case 3: ++m.inside_equal; break;
    case 2: ++m.inside_differ; break;
    case 1: ++m.outside_equal; break;
    default: ++m.outside_differ; break;
    }
  }
  return m;
}

namespace {

std::size_t corner_of_signs(const std::vector<int> &u) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] != 1 && u[i] != -1)
      throw PreconditionError("quadrant signs must be +1 or -1");
    if (u[i] > 0)
      j |= std::size_t{1} << i;
  }
  return j;
}

ContradictionPair make_contradiction(const SubstitutionRef &theta, const std::vector<int> &u) {
  if (u.size() != theta->dim())
    throw PreconditionError("contradiction_pair: sign vector has the wrong dimension");
  if (!is_bijective(*theta))
    throw PreconditionError("contradiction_pair: substitution must be bijective");
  if (corner_fixing_power(*theta) != 1)
    throw PreconditionError("contradiction_pair: substitution must be corner-fixed");
  const std::size_t j = corner_of_signs(u);
  Seed base(theta->dim(), std::vector<Symbol>(std::size_t{1} << theta->dim(), 0));
  Seed other = base;
  other.corner(j) = static_cast<Symbol>((base.corner(j) + 1) % theta->symbols());
  const LatticeVec zero(theta->dim());
  return ContradictionPair{AddressablePoint(theta, base, zero), AddressablePoint(theta, other, zero),
                           Quadrant::seed_region(u)};
}

} // namespace

ContradictionPair contradiction_pair(const SubstitutionRef &theta, const std::vector<int> &u) {
  if (theta->symbols() != 2)
    throw PreconditionError(
        "contradiction_pair: binary alphabet required (use contradiction_pair_general)");
  return make_contradiction(theta, u);
}

ContradictionPair contradiction_pair_general(const SubstitutionRef &theta,
                                             const std::vector<int> &u) {
  return make_contradiction(theta, u);
}

FracturePair half_space_fracture_pair(const SubstitutionRef &theta, std::size_t axis,
                                      const SeedPredicate &prefer) {
  if (axis >= theta->dim())
    throw RangeError("half_space_fracture_pair: axis out of range");
  if (!is_bijective(*theta))
    throw PreconditionError("half_space_fracture_pair: substitution must be bijective");
  if (!is_primitive(*theta).primitive)
    throw PreconditionError("half_space_fracture_pair: substitution must be primitive");
  const std::vector<Seed> seeds = fixed_seeds(*theta).fixed();
  const std::size_t corners = std::size_t{1} << theta->dim();

  auto qualifies = [&](const Seed &p, const Seed &q) {
    for (std::size_t j = 0; j < corners; ++j) {
      const bool nonneg_side = (j >> axis) & 1u;
      if (nonneg_side != (p.corner(j) == q.corner(j)))
        return false;
    }
    return true;
  };

  std::optional<std::pair<Seed, Seed>> fallback;
  for (const Seed &p : seeds) {
    for (const Seed &q : seeds) {
      if (!qualifies(p, q))
        continue;
      if (!prefer || (prefer(p) && prefer(q))) {
        const LatticeVec zero(theta->dim());
        return FracturePair{AddressablePoint(theta, p, zero), AddressablePoint(theta, q, zero),
                            axis, static_cast<bool>(prefer)};
      }
      if (!fallback)
        fallback = std::make_pair(p, q);
    }
  }
  if (!fallback)
    throw PreconditionError("faithfulness witness not found at seed level");
  const LatticeVec zero(theta->dim());
  return FracturePair{AddressablePoint(theta, fallback->first, zero),
                      AddressablePoint(theta, fallback->second, zero), axis, false};
}

} // namespace subsym
