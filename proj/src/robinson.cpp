#include "subsym/robinson.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "subsym/error.hpp"
#include "subsym/parallel.hpp"
#include "subsym_embedded_data.hpp"

namespace subsym::robinson {

namespace {

void sort_sides(Decoration &d) {
  for (auto &s : d.side)
    std::sort(s.begin(), s.end());
}

std::vector<Marker> flipped(const std::vector<Marker> &ms) {
  std::vector<Marker> out = ms;
  for (auto &m : out)
    m.pos = 4 - m.pos;
  return out;
}

} // namespace

Decoration rotate_ccw(const Decoration &d) {
  Decoration r;
  r.side[W] = d.side[N];
  r.side[S] = flipped(d.side[W]);
  r.side[E] = d.side[S];
  r.side[N] = flipped(d.side[E]);
  sort_sides(r);
  return r;
}

Decoration mirror(const Decoration &d) {
  Decoration r;
  r.side[N] = flipped(d.side[N]);
  r.side[S] = flipped(d.side[S]);
  r.side[W] = d.side[E];
  r.side[E] = d.side[W];
  sort_sides(r);
  return r;
}

std::array<Decoration, 5> parse_decoration_table(const std::string &text) {
  std::array<Decoration, 5> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    int kind = 0, pos = 0;
    std::string side, color, sense;
    if (!(ls >> kind))
      continue;
    auto fail = [&](const std::string &why) {
      throw ParseError("decoration table line " + std::to_string(lineno) + ": " + why);
    };
    if (!(ls >> side >> pos >> color >> sense))
      fail("expected: kind side pos color sense");
    if (kind < 1 || kind > 5)
      fail("kind must be 1..5");
    if (pos < 1 || pos > 3)
      fail("pos must be 1..3");
    static const std::map<std::string, Side> sides{{"N", N}, {"E", E}, {"S", S}, {"W", W}};
    if (!sides.count(side))
      fail("side must be N, E, S or W");
    if (color != "b" && color != "r")
      fail("color must be b or r");
    if (sense != "head" && sense != "tail")
      fail("sense must be head or tail");
    out[kind - 1].side[sides.at(side)].push_back(Marker{pos, color == "r", sense == "head"});
  }
  for (auto &d : out)
    sort_sides(d);
  return out;
}

namespace {

struct TileSet {
  std::vector<Tile> tiles;
  std::map<std::tuple<int, int, bool>, int> by_orientation;
  std::vector<int> rot, mir;
  std::vector<std::array<std::uint32_t, 2>> compat_fwd; // [East, North]: b allowed after a
  std::vector<std::array<std::uint32_t, 2>> compat_bwd; // a allowed before b
};

bool edge_pairs(const std::vector<Marker> &a, const std::vector<Marker> &b) {
  if (a.size() != b.size())
    return false;
  for (const auto &m : a) {
    const auto it = std::find_if(b.begin(), b.end(), [&](const Marker &o) {
      return o.pos == m.pos && o.red == m.red;
    });
    if (it == b.end() || it->head == m.head)
      return false;
  }
  return true;
}

TileSet build_tiles() {
  TileSet ts;
  const auto base = parse_decoration_table(embedded::robinson_tiles);
  std::map<Decoration, int> seen;
  for (int k = 1; k <= 5; ++k)
    for (int mirrored = 0; mirrored < 2; ++mirrored) {
      Decoration d = mirrored ? mirror(base[k - 1]) : base[k - 1];
      for (int r = 0; r < 4; ++r, d = rotate_ccw(d)) {
        auto [it, fresh] = seen.emplace(d, static_cast<int>(ts.tiles.size()));
        if (fresh)
          ts.tiles.push_back(Tile{it->second, Orientation{k, r, mirrored != 0}, d});
        ts.by_orientation[{k, r, mirrored != 0}] = it->second;
      }
    }
  if (static_cast<int>(ts.tiles.size()) != kTileCount)
    throw std::logic_error("Robinson decoration table yields " + std::to_string(ts.tiles.size()) +
                           " tiles instead of 28");
  for (const auto &t : ts.tiles) {
    ts.rot.push_back(seen.at(rotate_ccw(t.deco)));
    ts.mir.push_back(seen.at(mirror(t.deco)));
  }
  ts.compat_fwd.assign(kTileCount, {0, 0});
  ts.compat_bwd.assign(kTileCount, {0, 0});
  for (int a = 0; a < kTileCount; ++a)
    for (int b = 0; b < kTileCount; ++b) {
      const auto &da = ts.tiles[a].deco, &db = ts.tiles[b].deco;
      if (edge_pairs(da.side[E], db.side[W])) {
        ts.compat_fwd[a][0] |= 1u << b;
        ts.compat_bwd[b][0] |= 1u << a;
      }
      if (edge_pairs(da.side[N], db.side[S])) {
        ts.compat_fwd[a][1] |= 1u << b;
        ts.compat_bwd[b][1] |= 1u << a;
      }
    }
  return ts;
}

const TileSet &tile_set() {
  static const TileSet ts = build_tiles();
  return ts;
}

void check_id(int id) {
  if (id < 0 || id >= kTileCount)
    throw RangeError("tile id " + std::to_string(id) + " out of range");
}

} // namespace

const std::vector<Tile> &tiles() { return tile_set().tiles; }

int tile_id(const Orientation &o) {
  const auto &m = tile_set().by_orientation;
  const auto it = m.find({o.kind, ((o.rot % 4) + 4) % 4, o.mirror});
  if (it == m.end())
    throw RangeError("no Robinson tile of kind " + std::to_string(o.kind));
  return it->second;
}

int cross_id(int rot) { return tile_id(Orientation{3, rot, false}); }

std::string token(int id) {
  check_id(id);
  const auto &o = tiles()[id].orient;
  return std::to_string(o.kind) + "." + std::to_string(o.rot) + (o.mirror ? "M" : "");
}

int parse_token(const std::string &tok) {
  const bool ok = (tok.size() == 3 || (tok.size() == 4 && tok[3] == 'M')) && tok[1] == '.' &&
                  tok[0] >= '1' && tok[0] <= '5' && tok[2] >= '0' && tok[2] <= '3';
  if (!ok)
    throw ParseError("bad tile token '" + tok + "' (expected k.r or k.rM)");
  return tile_id(Orientation{tok[0] - '0', tok[2] - '0', tok.size() == 4});
}

const std::vector<int> &rotation_table() { return tile_set().rot; }
const std::vector<int> &mirror_table() { return tile_set().mir; }

bool matches(int a, int b, Dir dir) {
  check_id(a);
  check_id(b);
  return (tile_set().compat_fwd[a][dir == Dir::East ? 0 : 1] >> b) & 1u;
}

Patch::Patch(LatticeVec lo_, std::int64_t w, std::int64_t h, int fill)
    : lo(std::move(lo_)), width(w), height(h) {
  if (lo.dim() != 2 || w < 0 || h < 0)
    throw PreconditionError("patch: bad geometry");
  cells.assign(static_cast<std::size_t>(checked_mul(w, h)), fill);
}

bool Patch::contains(const LatticeVec &p) const {
  return p[0] >= lo[0] && p[0] < lo[0] + width && p[1] >= lo[1] && p[1] < lo[1] + height;
}

int Patch::at(const LatticeVec &p) const {
  if (!contains(p))
    throw RangeError("patch: " + p.str() + " outside the support");
  return cells[static_cast<std::size_t>((p[1] - lo[1]) * width + (p[0] - lo[0]))];
}

void Patch::set(const LatticeVec &p, int id) {
  if (!contains(p))
    throw RangeError("patch: " + p.str() + " outside the support");
  if (id != kEmpty)
    check_id(id);
  cells[static_cast<std::size_t>((p[1] - lo[1]) * width + (p[0] - lo[0]))] = id;
}

std::optional<Rect> Patch::support() const {
  if (empty())
    return std::nullopt;
  return Rect(lo, LatticeVec{lo[0] + width - 1, lo[1] + height - 1});
}

Patch Patch::normalized() const {
  Patch out = *this;
  out.lo = LatticeVec{0, 0};
  return out;
}

Patch Patch::crop(const Rect &r) const {
  const auto sup = support();
  if (!sup || !sup->contains(r))
    throw RangeError("patch crop outside the support");
  Patch out(r.lo(), r.extent()[0], r.extent()[1]);
  r.for_each([&](const LatticeVec &p) { out.set(p, at(p)); });
  for (int i = 0; i < 2; ++i)
    out.parity[i] = static_cast<int>(floor_mod(lo[i] + parity[i] - r.lo()[i], 2));
  return out;
}

std::string to_string(ViolationKind k) {
  switch (k) {
  case ViolationKind::Edge:
    return "edge";
  case ViolationKind::CosetNotCross:
    return "coset-not-cross";
  case ViolationKind::OffCosetCross:
    return "off-coset-cross";
  default:
    return "empty-cell";
  }
}

std::size_t VerifyReport::count(ViolationKind k) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [k](const Violation &v) { return v.kind == k; }));
}

VerifyReport verify_patch(const Patch &p, unsigned threads) {
  VerifyReport rep;
  if (p.empty())
    return rep;
  std::vector<std::vector<Violation>> rows(static_cast<std::size_t>(p.height));
  parallel_for(rows.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t row = begin; row < end; ++row) {
      auto &out = rows[row];
      const std::int64_t y = p.lo[1] + static_cast<std::int64_t>(row);
      for (std::int64_t x = p.lo[0]; x < p.lo[0] + p.width; ++x) {
        const LatticeVec here{x, y};
        const int a = p.at(here);
        if (a == kEmpty) {
          out.push_back({ViolationKind::EmptyCell, here, "no tile"});
          continue;
        }
        const LatticeVec east{x + 1, y}, north{x, y + 1};
        if (p.contains(east) && p.at(east) != kEmpty && !matches(a, p.at(east), Dir::East))
          out.push_back({ViolationKind::Edge, here,
                         token(a) + " | " + token(p.at(east)) + " on the east edge"});
        if (p.contains(north) && p.at(north) != kEmpty && !matches(a, p.at(north), Dir::North))
          out.push_back({ViolationKind::Edge, here,
                         token(a) + " / " + token(p.at(north)) + " on the north edge"});
        const bool ox = floor_mod(x - p.lo[0] - p.parity[0], 2) == 1;
        const bool oy = floor_mod(y - p.lo[1] - p.parity[1], 2) == 1;
        const bool cross = tiles()[a].is_cross();
        if (!ox && !oy && !cross)
          out.push_back({ViolationKind::CosetNotCross, here, token(a) + " on a cross site"});
        if (cross && ox != oy)
          out.push_back({ViolationKind::OffCosetCross, here, "cross off the allowed cosets"});
      }
    }
  });
  for (auto &r : rows)
    for (auto &v : r)
      rep.violations.push_back(std::move(v));
  return rep;
}

namespace {

LatticeVec rho(const LatticeVec &p) { return LatticeVec{-p[1], p[0]}; }
LatticeVec rho_inv(const LatticeVec &p) { return LatticeVec{p[1], -p[0]}; }

Patch rotated_supertile(int n, int rot);

// Order-n supertile with center rotation 0, any n >= 1, memoized.
const Patch &base_supertile(int n) {
  static std::mutex mu;
  static std::map<int, Patch> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end())
      return it->second;
  }
  const std::int64_t side = (std::int64_t{1} << n) - 1;
  Patch p(LatticeVec{0, 0}, side, side);
  if (n == 1) {
    p.set(LatticeVec{0, 0}, cross_id(0));
  } else {
    const std::int64_t c = (std::int64_t{1} << (n - 1)) - 1;
    // Corner supertiles point at the center: BL, BR, TR, TL.
    const std::array<LatticeVec, 4> corner{LatticeVec{0, 0}, LatticeVec{c + 1, 0},
                                           LatticeVec{c + 1, c + 1}, LatticeVec{0, c + 1}};
    for (int r = 0; r < 4; ++r) {
      const Patch sub = rotated_supertile(n - 1, r);
      for (std::int64_t y = 0; y < sub.height; ++y)
        for (std::int64_t x = 0; x < sub.width; ++x)
          p.set(LatticeVec{corner[r][0] + x, corner[r][1] + y}, sub.at(LatticeVec{x, y}));
    }
    p.set(LatticeVec{c, c}, cross_id(0));
    // Arms, filled outward from the center with the least compatible tile.
    const std::array<LatticeVec, 4> step{LatticeVec{0, 1}, LatticeVec{1, 0}, LatticeVec{0, -1},
                                         LatticeVec{-1, 0}};
    for (const auto &dv : step) {
      for (LatticeVec q = LatticeVec{c, c} + dv; p.contains(q); q += dv) {
        int chosen = kEmpty;
        for (int t = 0; t < kTileCount && chosen == kEmpty; ++t) {
          if (tiles()[t].is_cross())
            continue;
          bool ok = true;
          const LatticeVec e{q[0] + 1, q[1]}, w{q[0] - 1, q[1]}, nn{q[0], q[1] + 1},
              s{q[0], q[1] - 1};
          if (p.contains(e) && p.at(e) != kEmpty)
            ok &= matches(t, p.at(e), Dir::East);
          if (p.contains(w) && p.at(w) != kEmpty)
            ok &= matches(p.at(w), t, Dir::East);
          if (p.contains(nn) && p.at(nn) != kEmpty)
            ok &= matches(t, p.at(nn), Dir::North);
          if (p.contains(s) && p.at(s) != kEmpty)
            ok &= matches(p.at(s), t, Dir::North);
          if (ok)
            chosen = t;
        }
        if (chosen == kEmpty)
          throw std::logic_error("supertile arm cell " + q.str() + " has no compatible tile");
        p.set(q, chosen);
      }
    }
  }
  std::lock_guard lock(mu);
  return cache.emplace(n, std::move(p)).first->second;
}

Patch rotated_supertile(int n, int rot) {
  Patch p = base_supertile(n);
  for (int i = 0; i < ((rot % 4) + 4) % 4; ++i)
    p = apply_symmetry(Symmetry::Rho, p);
  return p.normalized();
}

int order_for(std::int64_t m) {
  int n = 1;
  while ((std::int64_t{1} << n) - 1 < m)
    ++n;
  return n;
}

// [-m, m]^2 with the quadrant supertiles and the separating strips.
Patch window_core(std::int64_t m, ArmConfig cfg) {
  const Patch &q1 = base_supertile(order_for(m));
  const auto &rt = rotation_table();
  Patch p(LatticeVec{-m, -m}, 2 * m + 1, 2 * m + 1);
  for (std::int64_t y = -m; y <= m; ++y)
    for (std::int64_t x = -m; x <= m; ++x) {
      if (x == 0 || y == 0)
        continue;
      LatticeVec q{x, y};
      int turns = 0;
      while (q[0] < 0 || q[1] < 0) {
        q = rho_inv(q);
        ++turns;
      }
      int id = q1.at(LatticeVec{q[0] - 1, q[1] - 1});
      for (int i = 0; i < turns; ++i)
        id = rt[id];
      p.set(LatticeVec{x, y}, id);
    }
  // Strip cells, center first, then outward; kind-1 tiles only.
  std::vector<LatticeVec> strip{LatticeVec{0, 0}};
  for (std::int64_t t = 1; t <= m; ++t)
    for (const auto &q : {LatticeVec{0, t}, LatticeVec{0, -t}, LatticeVec{t, 0}, LatticeVec{-t, 0}})
      strip.push_back(q);
  std::vector<int> kind1;
  for (const auto &t : tiles())
    if (t.orient.kind == 1)
      kind1.push_back(t.id);
  const bool vertical = cfg == ArmConfig::VerticalUniform;
  auto fits = [&](const LatticeVec &q, int t) {
    if ((vertical ? q[0] == 0 : q[1] == 0) && !(q[0] == 0 && q[1] == 0) &&
        t != p.at(LatticeVec{0, 0}))
      return false;
    const LatticeVec e{q[0] + 1, q[1]}, w{q[0] - 1, q[1]}, nn{q[0], q[1] + 1}, s{q[0], q[1] - 1};
    if (p.contains(e) && p.at(e) != kEmpty && !matches(t, p.at(e), Dir::East))
      return false;
    if (p.contains(w) && p.at(w) != kEmpty && !matches(p.at(w), t, Dir::East))
      return false;
    if (p.contains(nn) && p.at(nn) != kEmpty && !matches(t, p.at(nn), Dir::North))
      return false;
    if (p.contains(s) && p.at(s) != kEmpty && !matches(p.at(s), t, Dir::North))
      return false;
    return true;
  };
  std::function<bool(std::size_t)> fill = [&](std::size_t i) {
    if (i == strip.size())
      return true;
    for (int t : kind1) {
      if (!fits(strip[i], t))
        continue;
      p.set(strip[i], t);
      if (fill(i + 1))
        return true;
    }
    p.set(strip[i], kEmpty);
    return false;
  };
  if (!fill(0))
    throw std::logic_error("no kind-1 filling of the separating strips");
  // Crosses of the quadrants sit on odd-odd sites.
  p.parity = {static_cast<int>(floor_mod(1 + m, 2)), static_cast<int>(floor_mod(1 + m, 2))};
  return p;
}

void check_window(std::int64_t n) {
  if (n < 1 || n > kMaxWindow)
    throw RangeError("window half-size must be in 1.." + std::to_string(kMaxWindow));
}

} // namespace

Patch supertile(int n, int rot) {
  if (n < 1 || n > kMaxSupertileOrder)
    throw RangeError("supertile order must be in 1.." + std::to_string(kMaxSupertileOrder));
  return rotated_supertile(n, rot);
}

Patch four_quadrant_window(std::int64_t n, ArmConfig cfg) {
  check_window(n);
  return window_core(n, cfg);
}

Patch shifted_half_window(std::int64_t n, std::int64_t shift) {
  check_window(n);
  if (shift < -kMaxWindow || shift > kMaxWindow)
    throw RangeError("shift too large");
  const std::int64_t m = n + (shift < 0 ? -shift : shift);
  const Patch core = window_core(m, ArmConfig::VerticalUniform);
  Patch p(LatticeVec{-n, -n}, 2 * n + 1, 2 * n + 1);
  for (std::int64_t y = -n; y <= n; ++y)
    for (std::int64_t x = -n; x <= n; ++x)
      p.set(LatticeVec{x, y}, core.at(LatticeVec{x, x > 0 ? y + shift : y}));
  p.parity = {static_cast<int>(floor_mod(1 + n, 2)), static_cast<int>(floor_mod(1 + n, 2))};
  return p;
}

Patch fracture_shift_demo(std::int64_t n, std::int64_t k) {
  return shifted_half_window(n, checked_mul(2, k));
}

Patch apply_symmetry(Symmetry g, const Patch &p) {
  if (p.empty())
    return p;
  const auto &table = g == Symmetry::Rho ? rotation_table() : mirror_table();
  auto move = [g](const LatticeVec &q) {
    return g == Symmetry::Rho ? rho(q) : LatticeVec{-q[0], q[1]};
  };
  LatticeVec lo;
  std::int64_t w = p.width, h = p.height;
  if (g == Symmetry::Rho) {
    lo = LatticeVec{-(p.lo[1] + p.height - 1), p.lo[0]};
    std::swap(w, h);
  } else {
    lo = LatticeVec{-(p.lo[0] + p.width - 1), p.lo[1]};
  }
  Patch out(lo, w, h);
  for (std::int64_t y = p.lo[1]; y < p.lo[1] + p.height; ++y)
    for (std::int64_t x = p.lo[0]; x < p.lo[0] + p.width; ++x) {
      const int id = p.at(LatticeVec{x, y});
      out.set(move(LatticeVec{x, y}), id == kEmpty ? kEmpty : table[id]);
    }
  const LatticeVec coset = move(LatticeVec{p.lo[0] + p.parity[0], p.lo[1] + p.parity[1]});
  for (int i = 0; i < 2; ++i)
    out.parity[i] = static_cast<int>(floor_mod(coset[i] - lo[i], 2));
  return out;
}

Patch apply_word(const std::string &word, const Patch &p) {
  Patch out = p;
  for (char c : word) {
    if (c == 'r')
      out = apply_symmetry(Symmetry::Rho, out);
    else if (c == 'm')
      out = apply_symmetry(Symmetry::Mu, out);
    else
      throw PreconditionError(std::string("symmetry word letter must be r or m, got '") + c + "'");
  }
  return out;
}

std::string to_string(SearchStatus s) {
  switch (s) {
  case SearchStatus::Sat:
    return "SAT";
  case SearchStatus::Unsat:
    return "UNSAT";
  default:
    return "inconclusive(timeout)";
  }
}

TorusResult torus_tiling_search(std::int64_t w, std::int64_t h, std::array<int, 2> parity,
                                std::chrono::milliseconds timeout) {
  if (w < 2 || h < 2 || w % 2 || h % 2)
    throw PreconditionError("torus sides must be even and at least 2");
  if (checked_mul(w, h) > kMaxTorusCells)
    throw RangeError("torus larger than " + std::to_string(kMaxTorusCells) + " cells");
  const auto &ts = tile_set();
  const auto start = std::chrono::steady_clock::now();
  const auto n = static_cast<std::size_t>(w * h);
  std::uint32_t cross_mask = 0;
  for (const auto &t : tiles())
    if (t.is_cross())
      cross_mask |= 1u << t.id;
  const std::uint32_t all_mask = (1u << kTileCount) - 1;

  using Domains = std::vector<std::uint32_t>;
  Domains dom(n);
  for (std::int64_t y = 0; y < h; ++y)
    for (std::int64_t x = 0; x < w; ++x) {
      const bool ox = floor_mod(x - parity[0], 2) == 1, oy = floor_mod(y - parity[1], 2) == 1;
      dom[y * w + x] = (!ox && !oy) ? cross_mask : (ox && oy) ? all_mask : all_mask & ~cross_mask;
    }
  auto idx = [&](std::int64_t x, std::int64_t y) {
    return static_cast<std::size_t>(floor_mod(y, h) * w + floor_mod(x, w));
  };
  auto support = [&](std::uint32_t mask, int table_dir, bool forward) {
    std::uint32_t s = 0;
    for (; mask; mask &= mask - 1) {
      const int t = std::countr_zero(mask);
      s |= forward ? ts.compat_fwd[t][table_dir] : ts.compat_bwd[t][table_dir];
    }
    return s;
  };
  // Arc consistency; false on a wipeout.
  auto propagate = [&](Domains &d, std::vector<std::size_t> queue) {
    std::vector<bool> queued(n, false);
    for (auto c : queue)
      queued[c] = true;
    while (!queue.empty()) {
      const std::size_t c = queue.back();
      queue.pop_back();
      queued[c] = false;
      const std::int64_t x = static_cast<std::int64_t>(c) % w, y = static_cast<std::int64_t>(c) / w;
      // Neighbors and what c allows for them.
      const std::array<std::pair<std::size_t, std::uint32_t>, 4> nb{
          std::pair{idx(x + 1, y), support(d[c], 0, true)},
          std::pair{idx(x - 1, y), support(d[c], 0, false)},
          std::pair{idx(x, y + 1), support(d[c], 1, true)},
          std::pair{idx(x, y - 1), support(d[c], 1, false)}};
      for (const auto &[m, allowed] : nb) {
        const std::uint32_t nd = d[m] & allowed;
        if (nd == d[m])
          continue;
        if (!nd)
          return false;
        d[m] = nd;
        if (!queued[m]) {
          queued[m] = true;
          queue.push_back(m);
        }
      }
    }
    return true;
  };

  TorusResult res;
  bool timed_out = false;
  std::function<bool(Domains &)> search = [&](Domains &d) {
    if (++res.nodes % 256 == 0 && std::chrono::steady_clock::now() - start > timeout) {
      timed_out = true;
      return false;
    }
    std::size_t best = n;
    int best_count = kTileCount + 1;
    for (std::size_t c = 0; c < n; ++c) {
      const int k = std::popcount(d[c]);
      if (k > 1 && k < best_count) {
        best = c;
        best_count = k;
      }
    }
    if (best == n) {
      Patch sol(LatticeVec{0, 0}, w, h);
      for (std::size_t c = 0; c < n; ++c)
        sol.cells[c] = std::countr_zero(d[c]);
      sol.parity = {static_cast<int>(floor_mod(parity[0], 2)),
                    static_cast<int>(floor_mod(parity[1], 2))};
      res.solution = std::move(sol);
      return true;
    }
    for (std::uint32_t mask = d[best]; mask && !timed_out; mask &= mask - 1) {
      Domains next = d;
      next[best] = 1u << std::countr_zero(mask);
      if (propagate(next, {best}) && search(next))
        return true;
    }
    return false;
  };

  std::vector<std::size_t> all(n);
  for (std::size_t c = 0; c < n; ++c)
    all[c] = c;
  const bool found = propagate(dom, all) && search(dom);
  res.status = found ? SearchStatus::Sat : timed_out ? SearchStatus::Timeout : SearchStatus::Unsat;
  res.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return res;
}

void write_patch(std::ostream &os, const Patch &p) {
  os << "parity=" << p.parity[0] << ',' << p.parity[1] << '\n';
  for (std::int64_t y = p.lo[1] + p.height - 1; y >= p.lo[1]; --y) {
    for (std::int64_t x = p.lo[0]; x < p.lo[0] + p.width; ++x) {
      const int id = p.at(LatticeVec{x, y});
      os << (x == p.lo[0] ? "" : " ") << (id == kEmpty ? std::string(".") : token(id));
    }
    os << '\n';
  }
}

Patch read_patch(std::istream &is) {
  std::string line;
  int lineno = 0;
  std::optional<std::array<int, 2>> parity;
  std::vector<std::vector<int>> rows;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty() || line[0] == '#')
      continue;
    auto fail = [&](const std::string &why) {
      throw ParseError("patch line " + std::to_string(lineno) + ": " + why);
    };
    if (!parity) {
      int a = -1, b = -1;
      char comma = 0;
      std::istringstream ls(line.rfind("parity=", 0) == 0 ? line.substr(7) : std::string());
      if (!(ls >> a >> comma >> b) || comma != ',' || a < 0 || a > 1 || b < 0 || b > 1)
        fail("expected header parity=p1,p2 with p1, p2 in {0, 1}");
      parity = std::array<int, 2>{a, b};
      continue;
    }
    std::istringstream ls(line);
    std::vector<int> row;
    std::string tok;
    while (ls >> tok) {
      try {
        row.push_back(tok == "." ? kEmpty : parse_token(tok));
      } catch (const ParseError &e) {
        fail(e.what());
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      fail("row has " + std::to_string(row.size()) + " tiles, expected " +
           std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (!parity)
    throw ParseError("patch: missing parity header");
  const auto h = static_cast<std::int64_t>(rows.size());
  const auto w = rows.empty() ? std::int64_t{0} : static_cast<std::int64_t>(rows.front().size());
  Patch p(LatticeVec{0, 0}, w, h);
  p.parity = *parity;
  for (std::int64_t r = 0; r < h; ++r)
    for (std::int64_t x = 0; x < w; ++x)
      p.set(LatticeVec{x, h - 1 - r}, rows[r][x]);
  return p;
}

namespace {

std::vector<std::array<int, 3>> parse_palette(const char *text) {
  std::vector<std::array<int, 3>> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#')
      continue;
    std::istringstream ls(line);
    std::array<int, 3> c{};
    if (ls >> c[0] >> c[1] >> c[2])
      out.push_back(c);
  }
  return out;
}

} // namespace

std::string render_ppm(const Patch &p, int scale) {
  if (scale < 1)
    throw PreconditionError("render scale must be positive");
  static const auto palette = parse_palette(embedded::robinson_palette);
  const std::int64_t img_w = p.width * scale, img_h = p.height * scale;
  std::string out = "P6\n" + std::to_string(img_w) + " " + std::to_string(img_h) + "\n255\n";
  for (std::int64_t py = 0; py < img_h; ++py) {
    const std::int64_t y = p.lo[1] + p.height - 1 - py / scale;
    for (std::int64_t px = 0; px < img_w; ++px) {
      const int id = p.at(LatticeVec{p.lo[0] + px / scale, y});
      const std::array<int, 3> c = id == kEmpty ? std::array<int, 3>{128, 128, 128}
                                                : palette.at(static_cast<std::size_t>(id));
      for (int v : c)
        out.push_back(static_cast<char>(v));
    }
  }
  return out;
}

std::string render_svg(const Patch &p, int cell) {
  std::ostringstream os;
  const std::int64_t img_w = p.width * cell, img_h = p.height * cell;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << img_w
     << "\" height=\"" << img_h << "\" viewBox=\"0 0 " << img_w << ' ' << img_h << "\">\n"
     << "<defs>\n";
  for (const char *color : {"black", "red"})
    os << "<marker id=\"a-" << color
       << "\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"4\" markerHeight=\"4\" "
          "orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\""
       << color << "\"/></marker>\n";
  os << "</defs>\n";
  const double c = cell;
  for (std::int64_t row = 0; row < p.height; ++row)
    for (std::int64_t col = 0; col < p.width; ++col) {
      const int id = p.at(LatticeVec{p.lo[0] + col, p.lo[1] + p.height - 1 - row});
      const double x0 = static_cast<double>(col) * c, y0 = static_cast<double>(row) * c;
      const bool cross = id != kEmpty && tiles()[id].is_cross();
      os << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << c << "\" height=\"" << c
         << "\" fill=\"" << (id == kEmpty ? "#999999" : cross ? "#fff3c4" : "#ffffff")
         << "\" stroke=\"#bbbbbb\" stroke-width=\"0.5\"/>\n";
      if (id == kEmpty)
        continue;
      const auto &deco = tiles()[id].deco;
      for (int s = 0; s < 4; ++s)
        for (const auto &m : deco.side[s]) {
          const double f = m.pos / 4.0;
          // Edge point in SVG coordinates (y grows downward) and inward step.
          double ex = 0, ey = 0, dx = 0, dy = 0;
          switch (s) {
          case N: ex = x0 + f * c; ey = y0; dy = 1; break;
          case S: ex = x0 + f * c; ey = y0 + c; dy = -1; break;
          case W: ex = x0; ey = y0 + (1 - f) * c; dx = 1; break;
          default: ex = x0 + c; ey = y0 + (1 - f) * c; dx = -1; break;
          }
          const double ix = ex + dx * 0.3 * c, iy = ey + dy * 0.3 * c;
          const char *color = m.red ? "red" : "black";
          const auto [sx, sy, tx, ty] = m.head ? std::array<double, 4>{ix, iy, ex, ey}
                                               : std::array<double, 4>{ex, ey, ix, iy};
          os << "<line x1=\"" << sx << "\" y1=\"" << sy << "\" x2=\"" << tx << "\" y2=\"" << ty
             << "\" stroke=\"" << color << "\" stroke-width=\"1.2\" marker-end=\"url(#a-" << color
             << ")\"/>\n";
        }
    }
  os << "</svg>\n";
  return os.str();
}

} // namespace subsym::robinson
