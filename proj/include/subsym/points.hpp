#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "subsym/lattice.hpp"
#include "subsym/pattern.hpp"
#include "subsym/substitution.hpp"

namespace subsym {

using SubstitutionRef = std::shared_ptr<const RectSubstitution>;

/// theta replaced by the power that fixes every periodic seed
/// (see fixing_power).
SubstitutionRef corner_fixed(const RectSubstitution &theta);

/// Finite-precision element of the odometer Z_s: residue m (1-based) is
/// taken mod s^m componentwise.
struct OdometerCoord {
  LatticeVec base;
  std::vector<LatticeVec> residues;

  std::size_t precision() const { return residues.size(); }
  /// r_m == r_{m+1} (mod s^m) for every stored level.
  bool coherent() const;
  OdometerCoord plus(const LatticeVec &k) const;

  friend bool operator==(const OdometerCoord &, const OdometerCoord &) = default;
};

/// The point sigma_v(x_P), where x_P is the fixed point of a corner-fixed
/// substitution with seed P. Symbol queries cost O(log |k - v|).
class AddressablePoint {
public:
  /// Throws PreconditionError unless seed_step(theta, seed) == seed.
  AddressablePoint(SubstitutionRef theta, Seed seed, LatticeVec shift);

  const RectSubstitution &substitution() const { return *theta_; }
  const SubstitutionRef &substitution_ref() const { return theta_; }
  const Seed &seed() const { return seed_; }
  const LatticeVec &shift() const { return shift_; }
  std::size_t dim() const { return shift_.dim(); }

  Symbol symbol_at(const LatticeVec &k) const;
  /// Same query evaluated through exactly `depth` levels of inflation;
  /// depth must be at least the minimal depth for k.
  Symbol symbol_at_depth(const LatticeVec &k, unsigned depth) const;
  /// Least depth at which k - v falls inside the inflated seed cell.
  unsigned minimal_depth(const LatticeVec &k) const;

  Pattern window(const Rect &r, std::int64_t cap = kDefaultCellCap,
                 unsigned threads = 1) const;

  friend bool operator==(const AddressablePoint &a, const AddressablePoint &b) {
    return *a.theta_ == *b.theta_ && a.seed_ == b.seed_ && a.shift_ == b.shift_;
  }

private:
  Symbol evaluate(const LatticeVec &w, unsigned depth) const;

  SubstitutionRef theta_;
  Seed seed_;
  LatticeVec shift_;
  std::vector<std::int64_t> block_stride_; // row-major strides inside S
};

OdometerCoord phi(const AddressablePoint &x, unsigned precision);
AddressablePoint shift_point(const AddressablePoint &x, const LatticeVec &k);

struct Desubstitution {
  LatticeVec offset; // k_1 in S
  AddressablePoint preimage;
};

/// x = sigma_{k_1}(theta(y)) with k_1 in S.
Desubstitution desubstitute_point(const AddressablePoint &x);

struct PatternDesubstitution {
  LatticeVec offset;
  /// One consistent preimage (the least symbol per block); blocks whose
  /// cells admit several preimage symbols are counted in `ambiguous_blocks`.
  Pattern preimage;
  std::size_t ambiguous_blocks = 0;
};

/// All offsets o in S such that p is a subpattern of sigma_o(theta(Q)) for
/// some Q, in row-major order of o.
std::vector<PatternDesubstitution> desubstitute_pattern(const RectSubstitution &theta,
                                                        const Pattern &p);

/// Cellwise comparison of two points over a window, split by a region.
struct PairMasks {
  std::int64_t inside_equal = 0;
  std::int64_t inside_differ = 0;
  std::int64_t outside_equal = 0;
  std::int64_t outside_differ = 0;
  /// Every inside cell differs and every outside cell agrees.
  bool separates() const { return inside_equal == 0 && outside_differ == 0; }
};

PairMasks compare_points(const AddressablePoint &x, const AddressablePoint &y, const Rect &window,
                         const std::function<bool(const LatticeVec &)> &inside,
                         unsigned threads = 1);

/// Two points agreeing off the seed quadrant of corner u and differing on
/// every cell of it.
struct ContradictionPair {
  AddressablePoint x;
  AddressablePoint y;
  Quadrant region;
};

/// Binary alphabet: the two points are bitwise complements on the region.
ContradictionPair contradiction_pair(const SubstitutionRef &theta, const std::vector<int> &u);
/// Any alphabet size: seeds differ at corner u by a cyclic relabel.
ContradictionPair contradiction_pair_general(const SubstitutionRef &theta,
                                             const std::vector<int> &u);

/// Two points agreeing on {k_axis >= 0} and differing on every cell of
/// {k_axis < 0}.
struct FracturePair {
  AddressablePoint x;
  AddressablePoint y;
  std::size_t axis;
  /// Both seeds passed the admissibility predicate (when one was given).
  bool admissible = false;
};

using SeedPredicate = std::function<bool(const Seed &)>;

/// Searches fixed seeds in lexicographic order for a pair sharing every
/// corner with coordinate `axis` equal to 0 and differing on the others.
/// Pairs accepted by `prefer` are tried first.
FracturePair half_space_fracture_pair(const SubstitutionRef &theta, std::size_t axis,
                                      const SeedPredicate &prefer = {});

} // namespace subsym
