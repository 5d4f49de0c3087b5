#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "subsym/lattice.hpp"
#include "subsym/pattern.hpp"
#include "subsym/spec_io.hpp"
#include "subsym/substitution.hpp"

namespace subsym::oracle {

inline std::string corpus_path(const std::string &name) {
  return std::string(SUBSYM_CORPUS_DIR) + "/" + name + ".spec";
}

inline RectSubstitution corpus(const std::string &name) {
  return to_substitution(read_spec_file(corpus_path(name)));
}

inline const std::vector<std::string> &corpus_names() {
  static const std::vector<std::string> names{"tm1d", "tm2d", "tm3d",       "tm2x3",
                                              "cyc3", "vartheta", "degenerate", "nonbijective"};
  return names;
}

/// Word of length <= 12 in elementary matrices I +- E_{rc}.
inline IntMatrix random_unimodular(std::mt19937_64 &rng, std::size_t d) {
  std::uniform_int_distribution<int> len(0, 12), axis(0, static_cast<int>(d) - 1), sign(0, 1);
  IntMatrix m = IntMatrix::identity(d);
  for (int n = len(rng); n > 0; --n) {
    const auto r = static_cast<std::size_t>(axis(rng));
    auto c = static_cast<std::size_t>(axis(rng));
    if (c == r)
      c = (c + 1) % d;
    m = m * IntMatrix::elementary(d, r, c, sign(rng) ? 1 : -1);
  }
  return m;
}

/// Adjugate-based inverse for d <= 3, independent of the library's.
inline std::vector<std::vector<std::int64_t>> adjugate_inverse(const IntMatrix &a) {
  const std::size_t d = a.dim();
  std::vector<std::vector<std::int64_t>> inv(d, std::vector<std::int64_t>(d));
  if (d == 1) {
    inv[0][0] = a(0, 0);
  } else if (d == 2) {
    const std::int64_t det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    inv = {{a(1, 1) * det, -a(0, 1) * det}, {-a(1, 0) * det, a(0, 0) * det}};
  } else {
    auto cof = [&](std::size_t r, std::size_t c) {
      std::size_t r0 = r == 0 ? 1 : 0, r1 = r == 2 ? 1 : 2;
      std::size_t c0 = c == 0 ? 1 : 0, c1 = c == 2 ? 1 : 2;
      const std::int64_t m = a(r0, c0) * a(r1, c1) - a(r0, c1) * a(r1, c0);
      return ((r + c) % 2 ? -m : m);
    };
    std::int64_t det = 0;
    for (std::size_t c = 0; c < 3; ++c)
      det += a(0, c) * cof(0, c);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c)
        inv[c][r] = cof(r, c) * det; // det is +-1
  }
  return inv;
}

inline bool brute_in_cone(const std::vector<std::vector<std::int64_t>> &inv, const LatticeVec &p) {
  for (const auto &row : inv) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < row.size(); ++j)
      s += row[j] * p[j];
    if (s < 0)
      return false;
  }
  return true;
}

/// theta^m(a) by repeated cellwise expansion written out directly.
inline Pattern brute_power(const RectSubstitution &theta, Symbol a, unsigned m) {
  const std::size_t d = theta.dim();
  LatticeVec extent(d, 1);
  std::vector<Symbol> cells{a};
  for (unsigned it = 0; it < m; ++it) {
    LatticeVec next = extent.hadamard(theta.size());
    std::vector<Symbol> out(static_cast<std::size_t>(next.product()));
    for (std::size_t i = 0; i < out.size(); ++i) {
      std::size_t rest = i, src = 0, src_stride = 1, k = 0, k_stride = 1;
      for (std::size_t c = 0; c < d; ++c) {
        const auto x = static_cast<std::int64_t>(rest % static_cast<std::size_t>(next[c]));
        rest /= static_cast<std::size_t>(next[c]);
        src += static_cast<std::size_t>(x / theta.size()[c]) * src_stride;
        k += static_cast<std::size_t>(x % theta.size()[c]) * k_stride;
        src_stride *= static_cast<std::size_t>(extent[c]);
        k_stride *= static_cast<std::size_t>(theta.size()[c]);
      }
      out[i] = theta.image(cells[src], k);
    }
    extent = next;
    cells = std::move(out);
  }
  return Pattern(LatticeVec(d), extent, std::move(cells));
}

} // namespace subsym::oracle
