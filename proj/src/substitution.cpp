#include "subsym/substitution.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "subsym/error.hpp"

namespace subsym {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() < 2 || names_.size() > 255)
    throw PreconditionError("alphabet must have between 2 and 255 symbols");
  std::set<std::string> seen;
  for (const auto &n : names_) {
    if (n.empty())
      throw PreconditionError("alphabet symbol names must be nonempty");
    if (!seen.insert(n).second)
      throw PreconditionError("duplicate alphabet symbol '" + n + "'");
  }
}

std::optional<Symbol> Alphabet::index_of(const std::string &name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name)
      return static_cast<Symbol>(i);
  return std::nullopt;
}

SymbolMap identity_map(std::size_t n) {
  SymbolMap m(n);
  std::iota(m.begin(), m.end(), Symbol{0});
  return m;
}

SymbolMap compose_maps(const SymbolMap &outer, const SymbolMap &inner) {
  SymbolMap r(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i)
    r[i] = outer[inner[i]];
  return r;
}

SymbolMap invert_map(const SymbolMap &m) {
  SymbolMap r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    r[m[i]] = static_cast<Symbol>(i);
  return r;
}

bool is_permutation(const SymbolMap &m) {
  std::vector<bool> hit(m.size(), false);
  for (auto v : m) {
    if (v >= m.size() || hit[v])
      return false;
    hit[v] = true;
  }
  return true;
}

std::uint64_t permutation_order(const SymbolMap &m) {
  std::vector<bool> seen(m.size(), false);
  std::uint64_t order = 1;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (seen[i])
      continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = m[j]) {
      seen[j] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

RectSubstitution::RectSubstitution(Alphabet alphabet, LatticeVec size, std::vector<Pattern> rules)
    : alphabet_(std::move(alphabet)), size_(std::move(size)), rules_(std::move(rules)) {
  if (size_.dim() == 0 || size_.dim() > kMaxDim)
    throw PreconditionError("substitution dimension must be in [1, 6]");
  for (std::size_t i = 0; i < size_.dim(); ++i)
    if (size_[i] < 2)
      throw PreconditionError("substitution sizes must all be at least 2");
  if (rules_.size() != alphabet_.size())
    throw PreconditionError("one rule per alphabet symbol is required");
  const LatticeVec zero(size_.dim());
  for (const auto &r : rules_) {
    if (r.anchor() != zero || r.extent() != size_)
      throw PreconditionError("every rule must have anchor 0 and extent s");
    for (auto c : r.cells())
      if (c >= alphabet_.size())
        throw PreconditionError("rule cell outside the alphabet");
  }
  block_cells_ = rules_.front().size();
}

Seed::Seed(std::size_t dim, std::vector<Symbol> corners) : dim_(dim), corners_(std::move(corners)) {
  if (dim_ == 0 || dim_ > kMaxDim || corners_.size() != (std::size_t{1} << dim_))
    throw PreconditionError("a seed needs exactly 2^d corners");
}

std::size_t Seed::corner_index(const LatticeVec &u) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < u.dim(); ++i) {
    if (u[i] != 0 && u[i] != -1)
      throw RangeError("seed corner coordinates must be -1 or 0");
    if (u[i] == 0)
      j |= std::size_t{1} << i;
  }
  return j;
}

LatticeVec Seed::corner_vector(std::size_t dim, std::size_t j) {
  LatticeVec u(dim);
  for (std::size_t i = 0; i < dim; ++i)
    u[i] = ((j >> i) & 1u) ? 0 : -1;
  return u;
}

Pattern Seed::as_pattern() const {
  return Pattern(LatticeVec(dim_, -1), LatticeVec(dim_, 2), corners_);
}

Pattern apply(const RectSubstitution &theta, const Pattern &p, std::int64_t cap) {
  if (p.dim() != theta.dim())
    throw PreconditionError("apply: pattern dimension differs from the substitution");
  const std::size_t d = theta.dim();
  const LatticeVec &s = theta.size();
  const LatticeVec out_extent = p.extent().hadamard(s);
  checked_cells(out_extent, cap);
  Pattern out(p.anchor().hadamard(s), out_extent);

  std::vector<std::int64_t> stride(d);
  std::int64_t acc = 1;
  for (std::size_t i = 0; i < d; ++i) {
    stride[i] = acc;
    acc *= out_extent[i];
  }
  // Output offsets of every k in S relative to the block corner.
  std::vector<std::int64_t> k_offset(theta.block_cells());
  {
    const Rect block = Rect::from_extent(s);
    std::size_t w = 0;
    block.for_each([&](const LatticeVec &k) {
      std::int64_t off = 0;
      for (std::size_t i = 0; i < d; ++i)
        off += k[i] * stride[i];
      k_offset[w++] = off;
    });
  }
  auto &cells = out.cells();
  const Rect in_box = Rect::from_extent(p.extent());
  std::size_t src = 0;
  in_box.for_each([&](const LatticeVec &m) {
    std::int64_t base = 0;
    for (std::size_t i = 0; i < d; ++i)
      base += m[i] * s[i] * stride[i];
    const auto &rule = theta.rule(p.cells()[src++]).cells();
    for (std::size_t k = 0; k < k_offset.size(); ++k)
      cells[base + k_offset[k]] = rule[k];
  });
  return out;
}

RectSubstitution power(const RectSubstitution &theta, unsigned m, std::int64_t cap) {
  if (m == 0)
    throw PreconditionError("power: m must be at least 1");
  checked_cells(theta.size().pow(m), cap);
  std::vector<Pattern> rules;
  rules.reserve(theta.symbols());
  for (std::size_t a = 0; a < theta.symbols(); ++a) {
    Pattern p(LatticeVec(theta.dim()), LatticeVec(theta.dim(), 1), static_cast<Symbol>(a));
    for (unsigned t = 0; t < m; ++t)
      p = apply(theta, p, cap);
    rules.push_back(std::move(p));
  }
  return RectSubstitution(theta.alphabet(), theta.size().pow(m), std::move(rules));
}

PrimitivityReport is_primitive(const RectSubstitution &theta) {
  const std::size_t n = theta.symbols();
  using Matrix = std::vector<std::vector<bool>>;
  Matrix occ(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (auto c : theta.rule(static_cast<Symbol>(a)).cells())
      occ[a][c] = true;

  auto all_ones = [&](const Matrix &m) {
    for (const auto &row : m)
      for (bool b : row)
        if (!b)
          return false;
    return true;
  };
  auto multiply = [&](const Matrix &x, const Matrix &y) {
    Matrix r(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (x[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (y[k][j])
              r[i][j] = true;
    return r;
  };

  PrimitivityReport rep;
  Matrix cur = occ;
  const unsigned bound = static_cast<unsigned>(n * n);
  for (unsigned k = 1; k <= bound; ++k) {
    rep.powers_checked = k;
    if (all_ones(cur)) {
      rep.primitive = true;
      rep.witness_power = k;
      return rep;
    }
    if (k < bound)
      cur = multiply(cur, occ);
  }
  for (std::size_t a = 0; a < n && !rep.missing; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (!cur[a][b]) {
        rep.missing = std::make_pair(static_cast<Symbol>(a), static_cast<Symbol>(b));
        break;
      }
  return rep;
}

bool is_bijective(const RectSubstitution &theta) {
  const std::size_t n = theta.symbols();
  for (std::size_t k = 0; k < theta.block_cells(); ++k) {
    std::vector<bool> hit(n, false);
    for (std::size_t a = 0; a < n; ++a) {
      const Symbol b = theta.image(static_cast<Symbol>(a), k);
      if (hit[b])
        return false;
      hit[b] = true;
    }
  }
  return true;
}

SymbolMap position_map(const RectSubstitution &theta, const LatticeVec &k) {
  const Rect block = Rect::from_extent(theta.size());
  if (!block.contains(k))
    throw RangeError("position_map: " + k.str() + " outside the substitution support");
  const auto idx = static_cast<std::size_t>(block.linear_index(k));
  SymbolMap m(theta.symbols());
  for (std::size_t a = 0; a < m.size(); ++a)
    m[a] = theta.image(static_cast<Symbol>(a), idx);
  return m;
}

LatticeVec seed_corner_position(const RectSubstitution &theta, std::size_t j) {
  LatticeVec c(theta.dim());
  for (std::size_t i = 0; i < theta.dim(); ++i)
    c[i] = ((j >> i) & 1u) ? 0 : theta.size()[i] - 1;
  return c;
}

std::uint64_t corner_fixing_power(const RectSubstitution &theta) {
  if (!is_bijective(theta))
    throw PreconditionError("corner_fixing_power requires a bijective substitution");
  std::uint64_t m = 1;
  for (std::size_t j = 0; j < (std::size_t{1} << theta.dim()); ++j)
    m = std::lcm(m, permutation_order(position_map(theta, seed_corner_position(theta, j))));
  return m;
}

Seed seed_step(const RectSubstitution &theta, const Seed &p) {
  if (p.dim() != theta.dim())
    throw PreconditionError("seed_step: seed dimension differs from the substitution");
  const Rect block = Rect::from_extent(theta.size());
  std::vector<Symbol> out(p.corner_count());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const auto idx = static_cast<std::size_t>(block.linear_index(seed_corner_position(theta, j)));
    out[j] = theta.image(p.corner(j), idx);
  }
  return Seed(p.dim(), std::move(out));
}

std::vector<Seed> all_seeds(std::size_t dim, std::size_t symbols, std::size_t max_seeds) {
  const std::size_t corners = std::size_t{1} << dim;
  std::size_t total = 1;
  for (std::size_t i = 0; i < corners; ++i) {
    if (__builtin_mul_overflow(total, symbols, &total) || total > max_seeds)
      throw SizeError("too many seeds to enumerate");
  }
  std::vector<Seed> out;
  out.reserve(total);
  std::vector<Symbol> cur(corners, 0);
  for (std::size_t n = 0; n < total; ++n) {
    out.emplace_back(dim, cur);
    // Last corner varies fastest so the list is lexicographically sorted.
    for (std::size_t j = corners; j-- > 0;) {
      if (++cur[j] < symbols)
        break;
      cur[j] = 0;
    }
  }
  return out;
}

std::vector<Seed> SeedDynamics::fixed() const {
  std::vector<Seed> out;
  for (const auto &c : cycles)
    if (c.seeds.size() == 1)
      out.push_back(c.seeds.front());
  return out;
}

std::vector<Seed> SeedDynamics::periodic() const {
  std::vector<Seed> out;
  for (const auto &c : cycles)
    out.insert(out.end(), c.seeds.begin(), c.seeds.end());
  std::sort(out.begin(), out.end());
  return out;
}

SeedDynamics fixed_seeds(const RectSubstitution &theta, std::size_t max_seeds) {
  const std::vector<Seed> seeds = all_seeds(theta.dim(), theta.symbols(), max_seeds);
  SeedDynamics dyn;
  dyn.seeds_scanned = seeds.size();
  std::set<Seed> on_cycle;
  // Iterating |A|^{2^d} + 1 times from any start must revisit a seed.
  const std::size_t limit = seeds.size() + 1;
  for (const Seed &start : seeds) {
    if (on_cycle.count(start))
      continue;
    std::map<Seed, std::size_t> visited;
    Seed cur = start;
    std::size_t step = 0;
    while (!visited.count(cur)) {
      if (step > limit || on_cycle.count(cur))
        break;
      visited.emplace(cur, step++);
      cur = seed_step(theta, cur);
    }
    if (on_cycle.count(cur) || !visited.count(cur))
      continue;
    SeedCycle cycle;
    Seed walk = cur;
    do {
      cycle.seeds.push_back(walk);
      on_cycle.insert(walk);
      walk = seed_step(theta, walk);
    } while (walk != cur);
    std::rotate(cycle.seeds.begin(),
                std::min_element(cycle.seeds.begin(), cycle.seeds.end()), cycle.seeds.end());
    dyn.period_lcm = std::lcm(dyn.period_lcm, static_cast<std::uint64_t>(cycle.seeds.size()));
    dyn.cycles.push_back(std::move(cycle));
  }
  std::sort(dyn.cycles.begin(), dyn.cycles.end(),
            [](const SeedCycle &a, const SeedCycle &b) { return a.seeds.front() < b.seeds.front(); });
  return dyn;
}

std::uint64_t fixing_power(const RectSubstitution &theta) {
  if (is_bijective(theta))
    return corner_fixing_power(theta);
  return fixed_seeds(theta).period_lcm;
}

} // namespace subsym
