#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subsym/language.hpp"
#include "subsym/lattice.hpp"
#include "subsym/points.hpp"
#include "subsym/substitution.hpp"

namespace subsym {

/// A symbol bijection acting cellwise (radius-0 sliding block code).
using Relabeling = SymbolMap;

/// Every tau with tau(theta(a)_k) = theta(tau(a))_k, in lexicographic order
/// of the image table. The result is checked to be a group.
std::vector<Relabeling> relabel_automorphisms(const RectSubstitution &theta);

struct AutDescription {
  bool in_scope = false;
  std::string scope_note; // why the criterion does not apply, when it doesn't
  std::vector<Relabeling> relabelings;
  std::vector<Relabeling> generators;
  bool cyclic = false;
  std::string text; // e.g. "Z^2 x Z/2Z"
};

/// Aut(X_theta, Z^d) = Z^d x R with R the relabeling group; only claimed
/// for primitive bijective theta.
AutDescription aut_group_description(const RectSubstitution &theta);

/// Cellwise image of a pattern under A, re-anchored at 0.
Pattern transform_pattern(const Pattern &p, const SignedPerm &a);

/// theta' with theta'(tau(a)) = tau(A theta(a)) re-anchored to [0, s-1];
/// nullopt (size mismatch) when the permutation part of A moves s.
std::optional<RectSubstitution> transformed_substitution(const RectSubstitution &theta,
                                                         const SignedPerm &a,
                                                         const Relabeling &tau);

/// All tau with tau(lhs(a)_k) = rhs(tau(a))_k for every a and k, in
/// lexicographic order. lhs and rhs must share alphabet size and patch size.
std::vector<Relabeling> conjugating_relabelings(const std::vector<Pattern> &lhs,
                                                const std::vector<Pattern> &rhs);

enum class Verdict { ExactYes, VerifiedUpTo, RefutedAt, SizeMismatch };

struct SymmetryCandidate {
  SignedPerm a;
  Verdict verdict = Verdict::SizeMismatch;
  std::optional<Relabeling> tau;
  std::vector<Relabeling> all_taus; // every exact tau at the found power
  unsigned power = 0;               // alignment power m for ExactYes
  unsigned depth = 0;               // n for VerifiedUpTo / RefutedAt
  std::optional<Pattern> witness;   // RefutedAt: tau(A P) absent from the language
  unsigned powers_tried = 0;
};

struct SymmetryOptions {
  unsigned depth = 3;        // largest cube side compared on the language path
  unsigned max_power = 24;   // hard cap on alignment powers
  LanguageMode mode = LanguageMode::Minimal;
  LanguageOptions language{};
  std::int64_t cell_cap = kDefaultCellCap;
  std::size_t max_symbols = 8; // language path enumerates all |A|! relabelings
  unsigned threads = 1;
};

SymmetryCandidate extended_symmetry_check(const RectSubstitution &theta, const SignedPerm &a,
                                          const SymmetryOptions &opts = {});

/// "ExactYes(m=1),tau=[1,0]" and similar.
std::string format_verdict(const SymmetryCandidate &c, const Alphabet &alphabet,
                           bool all_taus = false);

enum class Split { Yes, No, Unknown };
std::string to_string(Split s);

struct SymReport {
  std::vector<SymmetryCandidate> entries; // Q_d order from signed_perm_group
  bool closed = false;                    // ExactYes set is a subgroup
  std::size_t psi_image_order = 0;        // number of ExactYes elements
  Split split = Split::Unknown;
  /// tau_A per ExactYes A forming a homomorphism, when split = yes.
  std::vector<std::optional<Relabeling>> section;
  std::string summary;
};

SymReport sym_group_report(const RectSubstitution &theta, const SymmetryOptions &opts = {});
/// Canonical text: one line per A, then the summary line.
std::string format_sym_report(const SymReport &r, const Alphabet &alphabet, bool verbose = false);

/// Language-path audit for an arbitrary unimodular A (outside Q_d allowed):
/// every tau(A P), P a cube pattern of side <= depth, must extend to a
/// pattern of the language on the bounding box of A[cube].
struct AuditResult {
  Verdict verdict = Verdict::VerifiedUpTo; // VerifiedUpTo or RefutedAt
  unsigned depth = 0;
  std::optional<Relabeling> tau;
  std::optional<Pattern> source; // RefutedAt: P whose image occurs nowhere
};
AuditResult audit_unimodular(const RectSubstitution &theta, const IntMatrix &a,
                             const SymmetryOptions &opts = {});

struct FractureWitness {
  FracturePair pair;
  Rect window;
  PairMasks masks;
  bool verified = false; // masks separate {k_axis < 0} from {k_axis >= 0}
};

/// Axis fracture pair with window masks; window side must be even.
FractureWitness fracture_normal_witness(const RectSubstitution &theta, std::size_t axis,
                                        std::int64_t window = 128, unsigned threads = 1);

struct HalfSpace {
  LatticeVec normal;
  std::int64_t threshold = 0;
  int side = 1; // +1: <k,v> >= N, -1: -<k,v> >= N
  bool contains(const LatticeVec &k) const { return side * k.dot(normal) >= threshold; }
};

struct RefuterReport {
  bool conclusive = false;
  unsigned m = 0;
  std::optional<Rect> block;
  LatticeVec plus_point;  // in block and S+
  LatticeVec minus_point; // in block and S-
  std::size_t pairs_checked = 0;
  std::size_t pairs_touching = 0; // pairs agreeing somewhere on block ∩ S+
  bool propagation_holds = false;
  std::int64_t required_window = 0; // filled when inconclusive
};

/// Least m with a grid-aligned level-m block inside [-W/2, W/2 - 1]^d
/// meeting both {<k,v> >= N} and {<k,v> <= -N}, plus a check over the
/// fixed-seed points that agreement at one block cell forces agreement on
/// the whole block.
RefuterReport non_axis_fracture_refuter(const RectSubstitution &theta, const LatticeVec &v,
                                        std::int64_t n, std::int64_t window = 128);

} // namespace subsym
