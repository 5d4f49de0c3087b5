#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "subsym/lattice.hpp"

namespace subsym::robinson {

enum Side : int { N = 0, E = 1, S = 2, W = 3 };
enum class Dir { East, North };

/// One arrow end on a tile edge.
struct Marker {
  int pos = 2; // quarter point along the edge, 1..3
  bool red = false;
  bool head = false;
  friend auto operator<=>(const Marker &, const Marker &) = default;
};

/// Edge markers per side, each list sorted.
struct Decoration {
  std::array<std::vector<Marker>, 4> side;
  friend auto operator<=>(const Decoration &, const Decoration &) = default;
};

Decoration rotate_ccw(const Decoration &d);
Decoration mirror(const Decoration &d); // x -> 1 - x

struct Orientation {
  int kind = 1;       // 1..5
  int rot = 0;        // counterclockwise quarter turns
  bool mirror = false; // applied before the rotation
};

struct Tile {
  int id = 0;
  Orientation orient; // canonical representative
  Decoration deco;
  bool is_cross() const { return orient.kind == 3; }
};

inline constexpr int kTileCount = 28;
inline constexpr int kRuleSetVersion = 1;

/// Parses the shipped decoration table format.
std::array<Decoration, 5> parse_decoration_table(const std::string &text);

/// The 28 canonical tiles, ordered by kind, then mirror flag, then rotation
/// (first orientation producing a new decoration wins). Built once from
/// the embedded table; a wrong count fails loudly.
const std::vector<Tile> &tiles();
int tile_id(const Orientation &o);
int cross_id(int rot);
/// Token `k.r` or `k.rM` of the canonical representative.
std::string token(int id);
int parse_token(const std::string &tok);

/// Quarter turn and mirror as permutations of tile ids.
const std::vector<int> &rotation_table(); // R
const std::vector<int> &mirror_table();   // M

/// b east of a (Dir::East) or b north of a (Dir::North). Markers on the
/// shared edge must pair up head-to-tail at equal position and color.
bool matches(int a, int b, Dir dir);

inline constexpr int kEmpty = -1;

/// Rectangular patch of tile ids. `parity` is the cross coset relative to
/// `lo`: sites lo + parity + 2Z^2 carry crosses.
struct Patch {
  LatticeVec lo{0, 0};
  std::int64_t width = 0;
  std::int64_t height = 0;
  std::vector<int> cells; // row-major, x fastest; kEmpty allowed
  std::array<int, 2> parity{0, 0};

  Patch() = default;
  Patch(LatticeVec lo, std::int64_t width, std::int64_t height, int fill = kEmpty);
  bool empty() const { return width == 0 || height == 0; }
  bool contains(const LatticeVec &p) const;
  int at(const LatticeVec &p) const;
  void set(const LatticeVec &p, int id);
  std::optional<Rect> support() const;
  /// Same tiles; lo moved to (0, 0).
  Patch normalized() const;
  Patch crop(const Rect &r) const;
  friend bool operator==(const Patch &, const Patch &) = default;
};

enum class ViolationKind { Edge, CosetNotCross, OffCosetCross, EmptyCell };
std::string to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  LatticeVec at;
  std::string detail;
};

struct VerifyReport {
  int rule_set_version = kRuleSetVersion;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::size_t count(ViolationKind k) const;
};

VerifyReport verify_patch(const Patch &p, unsigned threads = 1);

inline constexpr int kMaxSupertileOrder = 8;
inline constexpr std::int64_t kMaxWindow = 1023;

/// Order-n supertile of side 2^n - 1, lo at (0, 0), center cross rotated
/// `rot` quarter turns (rot 0: red L pointing up and right).
Patch supertile(int n, int rot = 0);

enum class ArmConfig { VerticalUniform, HorizontalUniform };

/// [-N, N]^2 around the meeting point of four infinite-order supertiles,
/// separated by a row and a column of kind-1 tiles.
Patch four_quadrant_window(std::int64_t n, ArmConfig cfg = ArmConfig::VerticalUniform);

/// The window with columns x > 0 replaced by the same columns of the
/// point shifted by (0, shift): cell (x, y) takes the tile at (x, y + shift).
Patch shifted_half_window(std::int64_t n, std::int64_t shift);
/// shifted_half_window(n, 2k); valid for every k.
Patch fracture_shift_demo(std::int64_t n, std::int64_t k);

enum class Symmetry { Rho, Mu };
/// rho: p -> [[0,-1],[1,0]] p with R cellwise; mu: p -> (-p1, p2) with M.
Patch apply_symmetry(Symmetry g, const Patch &p);
/// Applies a word of 'r' / 'm' letters left to right.
Patch apply_word(const std::string &word, const Patch &p);

enum class SearchStatus { Sat, Unsat, Timeout };
std::string to_string(SearchStatus s);

struct TorusResult {
  SearchStatus status = SearchStatus::Unsat;
  std::uint64_t nodes = 0;
  std::chrono::milliseconds elapsed{0};
  std::optional<Patch> solution; // certificate when Sat
};

inline constexpr std::int64_t kMaxTorusCells = 4096;

/// Periodic tiling of the w x h torus under all three rules with the given
/// cross coset, by arc consistency and backtracking (smallest domain first,
/// row-major ties, ids ascending).
TorusResult torus_tiling_search(std::int64_t w, std::int64_t h, std::array<int, 2> parity = {0, 0},
                                std::chrono::milliseconds timeout = std::chrono::seconds(60));

/// Text format: `parity=p1,p2`, then one row per line, top row first,
/// tokens separated by spaces (`.` for an empty cell).
void write_patch(std::ostream &os, const Patch &p);
Patch read_patch(std::istream &is);

/// PPM P6, `scale` pixels per cell, colors from the shipped palette.
std::string render_ppm(const Patch &p, int scale = 8);
/// SVG 1.1 with one arrow glyph per edge marker.
std::string render_svg(const Patch &p, int cell = 24);

} // namespace subsym::robinson
