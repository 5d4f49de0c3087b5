#include "subsym/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "subsym/error.hpp"

namespace subsym {

namespace {

void require_same_dim(const LatticeVec &a, const LatticeVec &b) {
  if (a.dim() != b.dim())
    throw PreconditionError("lattice vectors of different dimension");
}

} // namespace

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) { return a - floor_div(a, b) * b; }

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw RangeError("integer overflow in lattice arithmetic");
  return r;
}

LatticeVec LatticeVec::unit(std::size_t dim, std::size_t axis) {
  LatticeVec v(dim);
  v[axis] = 1;
  return v;
}

LatticeVec &LatticeVec::operator+=(const LatticeVec &o) {
  require_same_dim(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i)
    c_[i] += o.c_[i];
  return *this;
}

LatticeVec &LatticeVec::operator-=(const LatticeVec &o) {
  require_same_dim(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i)
    c_[i] -= o.c_[i];
  return *this;
}

LatticeVec LatticeVec::operator-() const {
  LatticeVec r(*this);
  for (auto &x : r.c_)
    x = -x;
  return r;
}

LatticeVec LatticeVec::hadamard(const LatticeVec &o) const {
  require_same_dim(*this, o);
  LatticeVec r(dim());
  for (std::size_t i = 0; i < c_.size(); ++i)
    r[i] = checked_mul(c_[i], o.c_[i]);
  return r;
}

LatticeVec LatticeVec::floor_div(const LatticeVec &o) const {
  require_same_dim(*this, o);
  LatticeVec r(dim());
  for (std::size_t i = 0; i < c_.size(); ++i)
    r[i] = subsym::floor_div(c_[i], o.c_[i]);
  return r;
}

LatticeVec LatticeVec::floor_mod(const LatticeVec &o) const {
  require_same_dim(*this, o);
  LatticeVec r(dim());
  for (std::size_t i = 0; i < c_.size(); ++i)
    r[i] = subsym::floor_mod(c_[i], o.c_[i]);
  return r;
}

LatticeVec LatticeVec::pow(unsigned m) const {
  LatticeVec r(dim(), 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (unsigned t = 0; t < m; ++t)
      r[i] = checked_mul(r[i], c_[i]);
  return r;
}

std::int64_t LatticeVec::dot(const LatticeVec &o) const {
  require_same_dim(*this, o);
  std::int64_t s = 0;
  for (std::size_t i = 0; i < c_.size(); ++i)
    s += c_[i] * o.c_[i];
  return s;
}

std::int64_t LatticeVec::product() const {
  std::int64_t p = 1;
  for (auto x : c_)
    p = checked_mul(p, x);
  return p;
}

bool LatticeVec::all_nonneg() const {
  return std::all_of(c_.begin(), c_.end(), [](std::int64_t x) { return x >= 0; });
}

std::string LatticeVec::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream &operator<<(std::ostream &os, const LatticeVec &v) {
  os << '(';
  for (std::size_t i = 0; i < v.dim(); ++i)
    os << (i ? "," : "") << v[i];
  return os << ')';
}

Rect::Rect(LatticeVec lo, LatticeVec hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  require_same_dim(lo_, hi_);
  if (lo_.dim() == 0)
    throw PreconditionError("rect of dimension 0");
  for (std::size_t i = 0; i < lo_.dim(); ++i)
    if (lo_[i] > hi_[i])
      throw PreconditionError("rect with lo > hi; use an empty optional instead");
}

Rect Rect::from_extent(const LatticeVec &extent) {
  return from_anchor(LatticeVec(extent.dim()), extent);
}

Rect Rect::from_anchor(const LatticeVec &anchor, const LatticeVec &extent) {
  LatticeVec hi = anchor + extent;
  for (std::size_t i = 0; i < hi.dim(); ++i)
    hi[i] -= 1;
  return Rect(anchor, hi);
}

LatticeVec Rect::extent() const {
  LatticeVec e = hi_ - lo_;
  for (std::size_t i = 0; i < e.dim(); ++i)
    e[i] += 1;
  return e;
}

std::int64_t Rect::cell_count() const { return extent().product(); }

bool Rect::contains(const LatticeVec &p) const {
  if (p.dim() != dim())
    return false;
  for (std::size_t i = 0; i < dim(); ++i)
    if (p[i] < lo_[i] || p[i] > hi_[i])
      return false;
  return true;
}

bool Rect::contains(const Rect &r) const { return contains(r.lo_) && contains(r.hi_); }

Rect Rect::translated(const LatticeVec &v) const { return Rect(lo_ + v, hi_ + v); }

std::optional<Rect> Rect::intersect(const Rect &o) const {
  require_same_dim(lo_, o.lo_);
  LatticeVec lo(dim()), hi(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    lo[i] = std::max(lo_[i], o.lo_[i]);
    hi[i] = std::min(hi_[i], o.hi_[i]);
    if (lo[i] > hi[i])
      return std::nullopt;
  }
  return Rect(lo, hi);
}

std::int64_t Rect::linear_index(const LatticeVec &p) const {
  std::int64_t idx = 0;
  for (std::size_t i = dim(); i-- > 0;)
    idx = idx * (hi_[i] - lo_[i] + 1) + (p[i] - lo_[i]);
  return idx;
}

LatticeVec Rect::point_at(std::int64_t index) const {
  LatticeVec p(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    const std::int64_t len = hi_[i] - lo_[i] + 1;
    p[i] = lo_[i] + index % len;
    index /= len;
  }
  return p;
}

void Rect::for_each(const std::function<void(const LatticeVec &)> &fn) const {
  LatticeVec p = lo_;
  while (true) {
    fn(p);
    std::size_t i = 0;
    for (; i < dim(); ++i) {
      if (p[i] < hi_[i]) {
        ++p[i];
        break;
      }
      p[i] = lo_[i];
    }
    if (i == dim())
      return;
  }
}

std::ostream &operator<<(std::ostream &os, const Rect &r) {
  return os << '[' << r.lo() << ',' << r.hi() << ']';
}

std::optional<Rect> interior(const Rect &r, std::int64_t m) {
  if (m < 0)
    throw PreconditionError("interior: m must be nonnegative");
  LatticeVec lo = r.lo(), hi = r.hi();
  for (std::size_t i = 0; i < r.dim(); ++i) {
    lo[i] += m;
    hi[i] -= m;
    if (lo[i] > hi[i])
      return std::nullopt;
  }
  return Rect(lo, hi);
}

Quadrant Quadrant::canonical(std::vector<int> sign) {
  LatticeVec vertex(sign.size());
  return Quadrant{std::move(sign), vertex};
}

Quadrant Quadrant::seed_region(std::vector<int> sign) {
  LatticeVec vertex(sign.size());
  for (std::size_t i = 0; i < sign.size(); ++i)
    vertex[i] = sign[i] > 0 ? 0 : -1;
  return Quadrant{std::move(sign), vertex};
}

bool Quadrant::contains(const LatticeVec &p) const {
  for (std::size_t i = 0; i < sign.size(); ++i)
    if (sign[i] * (p[i] - vertex[i]) < 0)
      return false;
  return true;
}

std::vector<LatticeVec> digits(const LatticeVec &j, const LatticeVec &s, unsigned m) {
  require_same_dim(j, s);
  for (std::size_t i = 0; i < s.dim(); ++i)
    if (s[i] < 2)
      throw PreconditionError("digits: base must be at least 2");
  const LatticeVec top = s.pow(m);
  for (std::size_t i = 0; i < j.dim(); ++i)
    if (j[i] < 0 || j[i] >= top[i])
      throw RangeError("digits: value " + j.str() + " outside [0, s^m - 1]");
  std::vector<LatticeVec> out;
  out.reserve(m);
  LatticeVec rest = j;
  for (unsigned t = 0; t < m; ++t) {
    out.push_back(rest.floor_mod(s));
    rest = rest.floor_div(s);
  }
  return out;
}

LatticeVec undigits(const std::vector<LatticeVec> &ds, const LatticeVec &s) {
  LatticeVec acc(s.dim());
  for (std::size_t t = ds.size(); t-- > 0;)
    acc = acc.hadamard(s) + ds[t];
  return acc;
}

SignedPerm::SignedPerm(std::vector<int> perm, std::vector<std::uint8_t> signs)
    : perm_(std::move(perm)), signs_(std::move(signs)) {
  if (perm_.size() != signs_.size() || perm_.empty() || perm_.size() > kMaxDim)
    throw PreconditionError("signed permutation: bad dimension");
  std::vector<int> sorted = perm_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != static_cast<int>(i))
      throw PreconditionError("signed permutation: not a permutation");
  for (auto b : signs_)
    if (b > 1)
      throw PreconditionError("signed permutation: sign bits must be 0/1");
}

SignedPerm SignedPerm::identity(std::size_t d) {
  std::vector<int> p(d);
  std::iota(p.begin(), p.end(), 0);
  return SignedPerm(p, std::vector<std::uint8_t>(d, 0));
}

LatticeVec SignedPerm::apply(const LatticeVec &v) const {
  LatticeVec r(dim());
  for (std::size_t i = 0; i < dim(); ++i)
    r[perm_[i]] = signs_[i] ? -v[i] : v[i];
  return r;
}

SignedPerm SignedPerm::compose(const SignedPerm &o) const {
  // e_i -> o: (-1)^{o.t_i} e_{o.s(i)} -> this: (-1)^{o.t_i + t_{o.s(i)}} e_{s(o.s(i))}
  std::vector<int> p(dim());
  std::vector<std::uint8_t> t(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    const int mid = o.perm_[i];
    p[i] = perm_[mid];
    t[i] = o.signs_[i] ^ signs_[mid];
  }
  return SignedPerm(p, t);
}

SignedPerm SignedPerm::inverse() const {
  std::vector<int> p(dim());
  std::vector<std::uint8_t> t(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    p[perm_[i]] = static_cast<int>(i);
    t[perm_[i]] = signs_[i];
  }
  return SignedPerm(p, t);
}

IntMatrix SignedPerm::matrix() const {
  IntMatrix m(dim());
  for (std::size_t i = 0; i < dim(); ++i)
    m(perm_[i], i) = signs_[i] ? -1 : 1;
  return m;
}

bool SignedPerm::is_identity() const { return *this == identity(dim()); }

bool SignedPerm::preserves_extent(const LatticeVec &s) const {
  for (std::size_t i = 0; i < dim(); ++i)
    if (s[perm_[i]] != s[i])
      return false;
  return true;
}

std::string SignedPerm::label() const {
  std::string out;
  for (auto b : signs_)
    out += b ? '-' : '+';
  out += ';';
  for (int p : perm_)
    out += static_cast<char>('1' + p);
  return out;
}

std::vector<SignedPerm> signed_perm_group(std::size_t d) {
  if (d == 0 || d > kMaxDim)
    throw PreconditionError("signed_perm_group: dimension must be in [1, 6]");
  std::vector<SignedPerm> out;
  std::vector<int> p(d);
  std::iota(p.begin(), p.end(), 0);
  do {
    for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
      std::vector<std::uint8_t> t(d);
      for (std::size_t i = 0; i < d; ++i)
        t[i] = (mask >> i) & 1u;
      out.emplace_back(p, t);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : d_(rows.size()), a_() {
  a_.reserve(d_ * d_);
  for (const auto &row : rows) {
    if (row.size() != d_)
      throw PreconditionError("IntMatrix: rows must be square");
    a_.insert(a_.end(), row.begin(), row.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t d) {
  IntMatrix m(d);
  for (std::size_t i = 0; i < d; ++i)
    m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::elementary(std::size_t d, std::size_t row, std::size_t col,
                                std::int64_t factor) {
  if (row == col)
    throw PreconditionError("elementary matrix needs row != col");
  IntMatrix m = identity(d);
  m(row, col) = factor;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix &o) const {
  if (o.d_ != d_)
    throw PreconditionError("matrix dimension mismatch");
  IntMatrix r(d_);
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t k = 0; k < d_; ++k)
      for (std::size_t j = 0; j < d_; ++j)
        r(i, j) += checked_mul((*this)(i, k), o(k, j));
  return r;
}

LatticeVec IntMatrix::operator*(const LatticeVec &v) const {
  if (v.dim() != d_)
    throw PreconditionError("matrix/vector dimension mismatch");
  LatticeVec r(d_);
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j)
      r[i] += checked_mul((*this)(i, j), v[j]);
  return r;
}

namespace {

// Fraction-free Gaussian elimination (Bareiss); exact for integer input.
std::int64_t bareiss_det(std::vector<std::int64_t> a, std::size_t n) {
  if (n == 0)
    return 1;
  std::int64_t sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap * n + k] == 0)
        ++swap;
      if (swap == n)
        return 0;
      for (std::size_t j = 0; j < n; ++j)
        std::swap(a[k * n + j], a[swap * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i * n + j] = (checked_mul(a[i * n + j], a[k * n + k]) -
                        checked_mul(a[i * n + k], a[k * n + j])) /
                       prev;
    prev = a[k * n + k];
  }
  return sign * a[(n - 1) * n + (n - 1)];
}

} // namespace

std::int64_t IntMatrix::det() const { return bareiss_det(a_, d_); }

IntMatrix IntMatrix::unimodular_inverse() const {
  const std::int64_t dt = det();
  if (dt != 1 && dt != -1)
    throw PreconditionError("matrix is not unimodular (|det| != 1)");
  IntMatrix inv(d_);
  if (d_ == 1) {
    inv(0, 0) = dt;
    return inv;
  }
  std::vector<std::int64_t> minor((d_ - 1) * (d_ - 1));
  for (std::size_t r = 0; r < d_; ++r) {
    for (std::size_t c = 0; c < d_; ++c) {
      std::size_t w = 0;
      for (std::size_t i = 0; i < d_; ++i) {
        if (i == r)
          continue;
        for (std::size_t j = 0; j < d_; ++j)
          if (j != c)
            minor[w++] = (*this)(i, j);
      }
      const std::int64_t cof = ((r + c) % 2 ? -1 : 1) * bareiss_det(minor, d_ - 1);
      inv(c, r) = cof * dt; // adj / det with det = +-1
    }
  }
  return inv;
}

std::ostream &operator<<(std::ostream &os, const IntMatrix &m) {
  os << '[';
  for (std::size_t i = 0; i < m.dim(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.dim(); ++j)
      os << (j ? "," : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

bool in_image_cone(const IntMatrix &a, const LatticeVec &p) {
  return (a.unimodular_inverse() * p).all_nonneg();
}

bool cone_contains_quadrant(const IntMatrix &a, const Quadrant &q) {
  const IntMatrix inv = a.unimodular_inverse();
  if (q.vertex != LatticeVec(a.dim()))
    throw PreconditionError("cone_contains_quadrant: quadrant vertex must be 0");
  for (std::size_t j = 0; j < a.dim(); ++j) {
    LatticeVec gen(a.dim());
    gen[j] = q.sign[j];
    if (!(inv * gen).all_nonneg())
      return false;
  }
  return true;
}

bool line_intersection_finite(const IntMatrix &a, const LatticeVec &p, std::size_t axis) {
  const IntMatrix inv = a.unimodular_inverse();
  if (axis >= a.dim())
    throw RangeError("line_intersection_finite: axis out of range");
  if (!(inv * p).all_nonneg())
    throw PreconditionError("line_intersection_finite: p is not in A Q_1");
  const LatticeVec e = LatticeVec::unit(a.dim(), axis);
  const bool forward = (inv * e).all_nonneg();
  const bool backward = (inv * (-e)).all_nonneg();
  return !(forward || backward);
}

} // namespace subsym

std::size_t std::hash<subsym::LatticeVec>::operator()(const subsym::LatticeVec &v) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto x : v.coords()) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}
