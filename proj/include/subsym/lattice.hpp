#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace subsym {

/// Largest dimension supported anywhere in the library (Q_d is enumerated
/// exhaustively, 2^6 * 6! = 46080 elements).
inline constexpr std::size_t kMaxDim = 6;

/// A vector of Z^d. All arithmetic is exact; the dimension is fixed at
/// construction.
class LatticeVec {
public:
  LatticeVec() = default;
  explicit LatticeVec(std::size_t dim, std::int64_t fill = 0) : c_(dim, fill) {}
  LatticeVec(std::initializer_list<std::int64_t> coords) : c_(coords) {}
  explicit LatticeVec(std::vector<std::int64_t> coords) : c_(std::move(coords)) {}

  static LatticeVec unit(std::size_t dim, std::size_t axis);

  std::size_t dim() const { return c_.size(); }
  std::int64_t operator[](std::size_t i) const { return c_[i]; }
  std::int64_t &operator[](std::size_t i) { return c_[i]; }
  const std::vector<std::int64_t> &coords() const { return c_; }

  LatticeVec &operator+=(const LatticeVec &o);
  LatticeVec &operator-=(const LatticeVec &o);
  friend LatticeVec operator+(LatticeVec a, const LatticeVec &b) { return a += b; }
  friend LatticeVec operator-(LatticeVec a, const LatticeVec &b) { return a -= b; }
  LatticeVec operator-() const;

  /// Componentwise product, used for block positions.
  LatticeVec hadamard(const LatticeVec &o) const;
  /// Componentwise floor division and nonnegative remainder.
  LatticeVec floor_div(const LatticeVec &o) const;
  LatticeVec floor_mod(const LatticeVec &o) const;
  /// Componentwise power s_i^m; throws RangeError on int64 overflow.
  LatticeVec pow(unsigned m) const;

  std::int64_t dot(const LatticeVec &o) const;
  std::int64_t product() const;
  bool all_nonneg() const;

  friend bool operator==(const LatticeVec &, const LatticeVec &) = default;
  friend auto operator<=>(const LatticeVec &, const LatticeVec &) = default;

  std::string str() const;

private:
  std::vector<std::int64_t> c_;
};

std::ostream &operator<<(std::ostream &os, const LatticeVec &v);

/// Floor division / nonnegative modulus for a positive divisor.
std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t floor_mod(std::int64_t a, std::int64_t b);
/// Checked multiply; throws RangeError on overflow.
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// Nonempty box [lo, hi] with inclusive bounds. Emptiness is represented by
/// std::optional<Rect> at the call sites that can produce it.
class Rect {
public:
  Rect(LatticeVec lo, LatticeVec hi);
  /// The box [0, extent - 1].
  static Rect from_extent(const LatticeVec &extent);
  static Rect from_anchor(const LatticeVec &anchor, const LatticeVec &extent);

  std::size_t dim() const { return lo_.dim(); }
  const LatticeVec &lo() const { return lo_; }
  const LatticeVec &hi() const { return hi_; }
  LatticeVec extent() const;
  /// Number of cells; throws RangeError if it does not fit in int64.
  std::int64_t cell_count() const;

  bool contains(const LatticeVec &p) const;
  bool contains(const Rect &r) const;
  Rect translated(const LatticeVec &v) const;
  std::optional<Rect> intersect(const Rect &o) const;

  /// Row-major index with coordinate 1 fastest.
  std::int64_t linear_index(const LatticeVec &p) const;
  LatticeVec point_at(std::int64_t index) const;

  /// Visits every point in row-major order (coordinate 1 fastest).
  void for_each(const std::function<void(const LatticeVec &)> &fn) const;

  friend bool operator==(const Rect &, const Rect &) = default;

private:
  LatticeVec lo_, hi_;
};

std::ostream &operator<<(std::ostream &os, const Rect &r);

/// R^{o m}: the points of r whose m-neighbourhood box stays inside r.
std::optional<Rect> interior(const Rect &r, std::int64_t m);

/// Translate of a product of half-lines sign_i * N_0, with the given vertex.
struct Quadrant {
  std::vector<int> sign; // entries -1 / +1
  LatticeVec vertex;

  static Quadrant canonical(std::vector<int> sign);
  /// The quadrant read from seed corner u: vertex_i = 0 for sign +1 and
  /// -1 for sign -1. These 2^d quadrants partition Z^d.
  static Quadrant seed_region(std::vector<int> sign);

  bool contains(const LatticeVec &p) const;
};

/// Base-s digits of j in [0, s^m - 1]: j = sum_t d_t * s^t componentwise.
std::vector<LatticeVec> digits(const LatticeVec &j, const LatticeVec &s, unsigned m);
LatticeVec undigits(const std::vector<LatticeVec> &ds, const LatticeVec &s);

class IntMatrix;

/// Element of the hyperoctahedral group Q_d. Column i of the associated
/// matrix is (-1)^{signs[i]} e_{perm[i]} (0-based axes).
class SignedPerm {
public:
  SignedPerm() = default;
  SignedPerm(std::vector<int> perm, std::vector<std::uint8_t> signs);
  static SignedPerm identity(std::size_t d);

  std::size_t dim() const { return perm_.size(); }
  const std::vector<int> &perm() const { return perm_; }
  const std::vector<std::uint8_t> &signs() const { return signs_; }

  LatticeVec apply(const LatticeVec &v) const;
  /// (this * o)(v) = this(o(v)).
  SignedPerm compose(const SignedPerm &o) const;
  SignedPerm inverse() const;
  IntMatrix matrix() const;
  bool is_identity() const;
  /// True when permuting coordinates by this element leaves s unchanged.
  bool preserves_extent(const LatticeVec &s) const;

  /// Report label "signs;perm", e.g. "+-;21" (perm is 1-based images).
  std::string label() const;

  friend bool operator==(const SignedPerm &, const SignedPerm &) = default;
  friend auto operator<=>(const SignedPerm &, const SignedPerm &) = default;

private:
  std::vector<int> perm_;
  std::vector<std::uint8_t> signs_;
};

/// All 2^d d! elements of Q_d, identity first, permutations in
/// lexicographic order and sign vectors in binary order within each.
std::vector<SignedPerm> signed_perm_group(std::size_t d);

/// Dense d x d integer matrix.
class IntMatrix {
public:
  explicit IntMatrix(std::size_t d) : d_(d), a_(d * d, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static IntMatrix identity(std::size_t d);
  /// Elementary matrix I + factor * E_{row,col}, row != col.
  static IntMatrix elementary(std::size_t d, std::size_t row, std::size_t col,
                              std::int64_t factor);

  std::size_t dim() const { return d_; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return a_[r * d_ + c]; }
  std::int64_t &operator()(std::size_t r, std::size_t c) { return a_[r * d_ + c]; }

  IntMatrix operator*(const IntMatrix &o) const;
  LatticeVec operator*(const LatticeVec &v) const;
  std::int64_t det() const;
  /// Exact inverse; requires |det| = 1.
  IntMatrix unimodular_inverse() const;

  friend bool operator==(const IntMatrix &, const IntMatrix &) = default;

private:
  std::size_t d_;
  std::vector<std::int64_t> a_;
};

std::ostream &operator<<(std::ostream &os, const IntMatrix &m);

/// Does A * Q_1 contain the canonical quadrant q (vertex 0)? Decided by the
/// sign of A^{-1} applied to each generator u_j e_j of q.
bool cone_contains_quadrant(const IntMatrix &a, const Quadrant &q);

/// Is (p + Z e_axis) ∩ A Q_1 finite? Requires p in A Q_1.
bool line_intersection_finite(const IntMatrix &a, const LatticeVec &p, std::size_t axis);

/// Membership in A Q_1 for unimodular A.
bool in_image_cone(const IntMatrix &a, const LatticeVec &p);

} // namespace subsym

template <> struct std::hash<subsym::LatticeVec> {
  std::size_t operator()(const subsym::LatticeVec &v) const noexcept;
};
