#include "subsym/symmetry.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "subsym/error.hpp"
#include "subsym/parallel.hpp"

namespace subsym {

namespace {

bool is_group(const std::vector<Relabeling> &g) {
  if (g.empty())
    return false;
  const std::set<Relabeling> s(g.begin(), g.end());
  if (!s.count(identity_map(g.front().size())))
    return false;
  for (const auto &x : g) {
    if (!s.count(invert_map(x)))
      return false;
    for (const auto &y : g)
      if (!s.count(compose_maps(x, y)))
        return false;
  }
  return true;
}

std::string dim_text(std::size_t d) { return d == 1 ? "Z" : "Z^" + std::to_string(d); }

std::string tau_text(const Relabeling &tau, const Alphabet &alphabet) {
  std::string out = "tau=[";
  for (std::size_t i = 0; i < tau.size(); ++i)
    out += (i ? "," : "") + alphabet.name(tau[i]);
  return out + "]";
}

Pattern relabel(const Pattern &p, const Relabeling &tau) {
  Pattern out = p;
  for (auto &c : out.cells())
    c = tau[c];
  return out;
}

std::vector<Relabeling> all_permutations(std::size_t n) {
  std::vector<Relabeling> out;
  Relabeling p = identity_map(n);
  do
    out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

void require_bijective_primitive(const RectSubstitution &theta, const char *what) {
  if (!is_bijective(theta))
    throw PreconditionError(std::string(what) + ": substitution must be bijective");
  if (!is_primitive(theta).primitive)
    throw PreconditionError(std::string(what) + ": substitution must be primitive");
}

} // namespace

std::vector<Relabeling> conjugating_relabelings(const std::vector<Pattern> &lhs,
                                                const std::vector<Pattern> &rhs) {
  const std::size_t n = lhs.size();
  if (rhs.size() != n)
    throw PreconditionError("conjugating_relabelings: alphabet size mismatch");
  for (std::size_t a = 0; a < n; ++a)
    if (lhs[a].size() != rhs[a].size())
      throw PreconditionError("conjugating_relabelings: patch size mismatch");

  constexpr int kFree = -1;
  std::vector<Relabeling> out;
  // tau[a] = b forces tau(lhs(a)_k) = rhs(b)_k for every k.
  std::function<void(std::vector<int>, std::vector<bool>)> search =
      [&](std::vector<int> tau, std::vector<bool> used) {
        const auto next = std::find(tau.begin(), tau.end(), kFree);
        if (next == tau.end()) {
          out.emplace_back(tau.begin(), tau.end());
          return;
        }
        const auto a0 = static_cast<std::size_t>(next - tau.begin());
        for (std::size_t b0 = 0; b0 < n; ++b0) {
          if (used[b0])
            continue;
          auto t = tau;
          auto u = used;
          t[a0] = static_cast<int>(b0);
          u[b0] = true;
          std::vector<std::size_t> queue{a0};
          bool ok = true;
          while (ok && !queue.empty()) {
            const std::size_t a = queue.back();
            queue.pop_back();
            const auto &la = lhs[a].cells();
            const auto &rb = rhs[static_cast<std::size_t>(t[a])].cells();
            for (std::size_t k = 0; k < la.size(); ++k) {
              const std::size_t x = la[k];
              const int y = rb[k];
              if (t[x] == kFree) {
                if (u[static_cast<std::size_t>(y)]) {
                  ok = false;
                  break;
                }
                t[x] = y;
                u[static_cast<std::size_t>(y)] = true;
                queue.push_back(x);
              } else if (t[x] != y) {
                ok = false;
                break;
              }
            }
          }
          if (ok)
            search(std::move(t), std::move(u));
        }
      };
  search(std::vector<int>(n, kFree), std::vector<bool>(n, false));
  return out;
}

std::vector<Relabeling> relabel_automorphisms(const RectSubstitution &theta) {
  auto group = conjugating_relabelings(theta.rules(), theta.rules());
  if (!is_group(group))
    throw std::logic_error("relabel_automorphisms: result is not a group");
  return group;
}

AutDescription aut_group_description(const RectSubstitution &theta) {
  AutDescription out;
  if (!is_bijective(theta)) {
    out.scope_note = "substitution is not bijective; the relabeling criterion does not apply";
    return out;
  }
  if (!is_primitive(theta).primitive) {
    out.scope_note = "substitution is not primitive; the relabeling criterion does not apply";
    return out;
  }
  out.in_scope = true;
  out.relabelings = relabel_automorphisms(theta);
  const std::size_t order = out.relabelings.size();
  // Greedy generating set: add elements not yet generated.
  std::set<Relabeling> generated{identity_map(theta.symbols())};
  for (const auto &g : out.relabelings) {
    if (generated.count(g))
      continue;
    out.generators.push_back(g);
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto &x : std::vector<Relabeling>(generated.begin(), generated.end()))
        for (const auto &y : out.generators)
          grew |= generated.insert(compose_maps(x, y)).second;
    }
  }
  for (const auto &g : out.relabelings)
    if (permutation_order(g) == order)
      out.cyclic = true;
  if (theta.symbols() == 2 && order > 2)
    throw std::logic_error("binary alphabet with more than two relabelings");
  std::string r;
  if (order == 1)
    r = "{id}";
  else if (out.cyclic)
    r = "Z/" + std::to_string(order) + "Z";
  else
    r = "R (non-cyclic, order " + std::to_string(order) + ")";
  out.text = dim_text(theta.dim()) + " x " + r;
  return out;
}

Pattern transform_pattern(const Pattern &p, const SignedPerm &a) {
  const std::size_t d = p.dim();
  if (a.dim() != d)
    throw PreconditionError("transform_pattern: dimension mismatch");
  const LatticeVec &e = p.extent();
  LatticeVec ext(d);
  for (std::size_t i = 0; i < d; ++i)
    ext[static_cast<std::size_t>(a.perm()[i])] = e[i];
  Pattern out(LatticeVec(d), ext);
  const Rect src = Rect::from_extent(e);
  LatticeVec k2(d);
  std::int64_t idx = 0;
  src.for_each([&](const LatticeVec &k) {
    for (std::size_t i = 0; i < d; ++i)
      k2[static_cast<std::size_t>(a.perm()[i])] = a.signs()[i] ? e[i] - 1 - k[i] : k[i];
    out.set(k2, p.cells()[static_cast<std::size_t>(idx++)]);
  });
  return out;
}

std::optional<RectSubstitution> transformed_substitution(const RectSubstitution &theta,
                                                         const SignedPerm &a,
                                                         const Relabeling &tau) {
  if (a.dim() != theta.dim())
    throw PreconditionError("transformed_substitution: dimension mismatch");
  if (tau.size() != theta.symbols() || !is_permutation(tau))
    throw PreconditionError("transformed_substitution: tau is not a permutation of the alphabet");
  if (!a.preserves_extent(theta.size()))
    return std::nullopt;
  std::vector<Pattern> rules(theta.symbols());
  for (std::size_t s = 0; s < theta.symbols(); ++s)
    rules[tau[s]] = relabel(transform_pattern(theta.rule(static_cast<Symbol>(s)), a), tau);
  return RectSubstitution(theta.alphabet(), theta.size(), std::move(rules));
}

SymmetryCandidate extended_symmetry_check(const RectSubstitution &theta, const SignedPerm &a,
                                          const SymmetryOptions &opts) {
  require_bijective_primitive(theta, "extended_symmetry_check");
  if (a.dim() != theta.dim())
    throw PreconditionError("extended_symmetry_check: dimension mismatch");
  SymmetryCandidate c;
  c.a = a;
  if (!a.preserves_extent(theta.size())) {
    c.verdict = Verdict::SizeMismatch;
    return c;
  }

  // Exact path: theta^m conjugated by (A, tau) equals theta^m.
  const std::uint64_t cap_power =
      std::min<std::uint64_t>(corner_fixing_power(theta), opts.max_power);
  for (unsigned m = 1; m <= cap_power; ++m) {
    std::optional<RectSubstitution> tm;
    try {
      tm = power(theta, m, opts.cell_cap);
    } catch (const SizeError &) {
      break;
    } catch (const RangeError &) {
      break;
    }
    c.powers_tried = m;
    std::vector<Pattern> lhs;
    lhs.reserve(tm->symbols());
    for (const auto &r : tm->rules())
      lhs.push_back(transform_pattern(r, a));
    auto taus = conjugating_relabelings(lhs, tm->rules());
    if (!taus.empty()) {
      c.verdict = Verdict::ExactYes;
      c.power = m;
      c.tau = taus.front();
      c.all_taus = std::move(taus);
      return c;
    }
  }

  // Language path: cube patterns of growing side.
  if (theta.symbols() > opts.max_symbols)
    throw PreconditionError("extended_symmetry_check: language path limited to " +
                            std::to_string(opts.max_symbols) + " symbols");
  std::vector<Relabeling> alive = all_permutations(theta.symbols());
  LanguageOptions lopts = opts.language;
  lopts.cell_cap = opts.cell_cap;
  lopts.threads = opts.threads;
  for (unsigned side = 1; side <= opts.depth; ++side) {
    const LatticeVec shape(theta.dim(), side);
    const PatchLanguage lang = patch_language(theta, shape, opts.mode, lopts);
    std::vector<Pattern> images;
    for (const auto &p : lang.materialize())
      images.push_back(transform_pattern(p, a));
    std::vector<Relabeling> next;
    std::optional<Pattern> first_witness;
    for (const auto &tau : alive) {
      std::optional<Pattern> miss;
      for (const auto &img : images) {
        Pattern q = relabel(img, tau);
        if (!lang.patterns.count(q.key())) {
          miss = std::move(q);
          break;
        }
      }
      if (miss) {
        if (!first_witness)
          first_witness = std::move(miss);
      } else {
        next.push_back(tau);
      }
    }
    alive = std::move(next);
    c.depth = side;
    if (alive.empty()) {
      c.verdict = Verdict::RefutedAt;
      c.witness = std::move(first_witness);
      return c;
    }
  }
  c.verdict = Verdict::VerifiedUpTo;
  c.tau = alive.front();
  c.all_taus = alive;
  return c;
}

std::string format_verdict(const SymmetryCandidate &c, const Alphabet &alphabet, bool all_taus) {
  std::ostringstream os;
  switch (c.verdict) {
  case Verdict::ExactYes:
    os << "ExactYes(m=" << c.power << ")," << tau_text(*c.tau, alphabet);
    break;
  case Verdict::VerifiedUpTo:
    os << "VerifiedUpTo(" << c.depth << ")," << tau_text(*c.tau, alphabet)
       << " (consistent to depth " << c.depth << ")";
    break;
  case Verdict::RefutedAt:
    os << "RefutedAt(" << c.depth << ")";
    break;
  case Verdict::SizeMismatch:
    os << "SizeMismatch";
    break;
  }
  if (all_taus && c.all_taus.size() > 1) {
    os << " all:";
    for (const auto &t : c.all_taus)
      os << ' ' << tau_text(t, alphabet);
  }
  return os.str();
}

std::string to_string(Split s) {
  switch (s) {
  case Split::Yes:
    return "yes";
  case Split::No:
    return "no";
  default:
    return "unknown";
  }
}

namespace {

// Assign tau_A from the allowed sets so that tau_{AB} = tau_A tau_B.
bool find_section(const std::vector<SignedPerm> &group,
                  const std::vector<std::vector<Relabeling>> &allowed,
                  std::vector<std::optional<Relabeling>> &chosen) {
  const std::size_t n = group.size();
  std::vector<std::vector<std::size_t>> product(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto it = std::find(group.begin(), group.end(), group[i].compose(group[j]));
      product[i][j] = static_cast<std::size_t>(it - group.begin());
    }
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < n; ++i)
    if (!allowed[i].empty())
      members.push_back(i);

  auto consistent = [&]() {
    for (std::size_t i : members) {
      if (!chosen[i])
        continue;
      for (std::size_t j : members) {
        if (!chosen[j])
          continue;
        const std::size_t k = product[i][j];
        if (chosen[k] && *chosen[k] != compose_maps(*chosen[i], *chosen[j]))
          return false;
      }
    }
    return true;
  };
  std::function<bool(std::size_t)> assign = [&](std::size_t pos) {
    if (pos == members.size())
      return true;
    const std::size_t i = members[pos];
    for (const auto &t : allowed[i]) {
      chosen[i] = t;
      if (consistent() && assign(pos + 1))
        return true;
    }
    chosen[i].reset();
    return false;
  };
  return assign(0);
}

} // namespace

SymReport sym_group_report(const RectSubstitution &theta, const SymmetryOptions &opts) {
  require_bijective_primitive(theta, "sym_group_report");
  const std::vector<SignedPerm> group = signed_perm_group(theta.dim());
  SymReport rep;
  rep.entries.resize(group.size());
  SymmetryOptions inner = opts;
  inner.threads = 1;
  parallel_for(group.size(), opts.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      rep.entries[i] = extended_symmetry_check(theta, group[i], inner);
  });

  std::set<SignedPerm> exact;
  bool any_open = false;
  std::uint64_t common = 1;
  for (const auto &e : rep.entries) {
    if (e.verdict == Verdict::ExactYes) {
      exact.insert(e.a);
      common = std::lcm(common, std::uint64_t{e.power});
    } else if (e.verdict == Verdict::VerifiedUpTo) {
      any_open = true;
    }
  }
  rep.psi_image_order = exact.size();
  rep.closed = !exact.empty();
  for (const auto &x : exact) {
    if (!exact.count(x.inverse()))
      rep.closed = false;
    for (const auto &y : exact)
      if (!exact.count(x.compose(y)))
        rep.closed = false;
  }

  rep.section.assign(group.size(), std::nullopt);
  if (!rep.closed || any_open || common > opts.max_power) {
    rep.split = Split::Unknown;
  } else {
    // Allowed relabelings for each A at one common alignment power.
    const RectSubstitution tm = power(theta, static_cast<unsigned>(common), opts.cell_cap);
    std::vector<std::vector<Relabeling>> allowed(group.size());
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (!exact.count(group[i]))
        continue;
      std::vector<Pattern> lhs;
      for (const auto &r : tm.rules())
        lhs.push_back(transform_pattern(r, group[i]));
      allowed[i] = conjugating_relabelings(lhs, tm.rules());
    }
    rep.split = find_section(group, allowed, rep.section) ? Split::Yes : Split::No;
  }

  const AutDescription aut = aut_group_description(theta);
  std::ostringstream os;
  os << "psi[Sym] <= Q_" << theta.dim() << " has " << rep.psi_image_order << " exact elements of "
     << group.size();
  if (!rep.closed)
    os << "; exact set is not a subgroup";
  if (rep.split == Split::Yes)
    os << "; Sym = (" << aut.text << ") x| psi[Sym]";
  else if (any_open)
    os << "; some elements only consistent to depth " << opts.depth;
  rep.summary = os.str();
  return rep;
}

std::string format_sym_report(const SymReport &r, const Alphabet &alphabet, bool verbose) {
  std::ostringstream os;
  for (const auto &e : r.entries)
    os << e.a.label() << " -> " << format_verdict(e, alphabet, verbose) << '\n';
  os << "psi_image_order=" << r.psi_image_order << " split=" << to_string(r.split) << '\n';
  if (verbose)
    os << r.summary << '\n';
  return os.str();
}

AuditResult audit_unimodular(const RectSubstitution &theta, const IntMatrix &a,
                             const SymmetryOptions &opts) {
  require_bijective_primitive(theta, "audit_unimodular");
  const std::size_t d = theta.dim();
  if (a.dim() != d)
    throw PreconditionError("audit_unimodular: dimension mismatch");
  const std::int64_t det = a.det();
  if (det != 1 && det != -1)
    throw PreconditionError("audit_unimodular: matrix is not unimodular");
  if (theta.symbols() > opts.max_symbols)
    throw PreconditionError("audit_unimodular: too many symbols");
  LanguageOptions lopts = opts.language;
  lopts.cell_cap = opts.cell_cap;
  lopts.threads = opts.threads;

  AuditResult res;
  std::vector<Relabeling> alive = all_permutations(theta.symbols());
  for (unsigned side = 1; side <= opts.depth; ++side) {
    const Rect cube = Rect::from_extent(LatticeVec(d, side));
    std::vector<LatticeVec> img;
    LatticeVec lo(d, INT64_MAX), hi(d, INT64_MIN);
    cube.for_each([&](const LatticeVec &k) {
      img.push_back(a * k);
      for (std::size_t i = 0; i < d; ++i) {
        lo[i] = std::min(lo[i], img.back()[i]);
        hi[i] = std::max(hi[i], img.back()[i]);
      }
    });
    const Rect box(lo, hi);
    const PatchLanguage src = patch_language(theta, cube.extent(), opts.mode, lopts);
    const PatchLanguage dst = patch_language(theta, box.extent(), opts.mode, lopts);
    // Restrictions of destination patterns to A[cube], in cube order.
    std::set<std::string> restricted;
    for (const auto &q : dst.materialize()) {
      std::string key;
      for (const auto &p : img)
        key.push_back(static_cast<char>(q.at(p - lo)));
      restricted.insert(std::move(key));
    }
    std::vector<Relabeling> next;
    std::optional<Pattern> miss_src;
    const auto sources = src.materialize();
    for (const auto &tau : alive) {
      bool ok = true;
      for (const auto &p : sources) {
        std::string key;
        for (auto c : p.cells())
          key.push_back(static_cast<char>(tau[c]));
        if (!restricted.count(key)) {
          ok = false;
          if (!miss_src)
            miss_src = p;
          break;
        }
      }
      if (ok)
        next.push_back(tau);
    }
    alive = std::move(next);
    res.depth = side;
    if (alive.empty()) {
      res.verdict = Verdict::RefutedAt;
      res.source = std::move(miss_src);
      return res;
    }
  }
  res.verdict = Verdict::VerifiedUpTo;
  res.tau = alive.front();
  return res;
}

FractureWitness fracture_normal_witness(const RectSubstitution &theta, std::size_t axis,
                                        std::int64_t window, unsigned threads) {
  if (window < 2 || window % 2 != 0)
    throw PreconditionError("fracture_normal_witness: window side must be even and >= 2");
  require_bijective_primitive(theta, "fracture_normal_witness");
  const SubstitutionRef fixed = corner_fixed(theta);
  const PatchLanguage two_cube =
      patch_language(theta, LatticeVec(theta.dim(), 2), LanguageMode::Minimal);
  const SeedPredicate admissible = [&](const Seed &s) {
    return seed_admissible_minimal(two_cube, s).admissible;
  };
  FracturePair pair = half_space_fracture_pair(fixed, axis, admissible);
  const std::size_t d = theta.dim();
  const Rect win(LatticeVec(d, -window / 2), LatticeVec(d, window / 2 - 1));
  const PairMasks masks = compare_points(
      pair.x, pair.y, win, [axis](const LatticeVec &k) { return k[axis] < 0; }, threads);
  return FractureWitness{std::move(pair), win, masks, masks.separates()};
}

namespace {

std::pair<std::int64_t, std::int64_t> dot_range(const Rect &r, const LatticeVec &v) {
  std::int64_t lo = 0, hi = 0;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    const std::int64_t a = v[i] * r.lo()[i];
    const std::int64_t b = v[i] * r.hi()[i];
    lo += std::min(a, b);
    hi += std::max(a, b);
  }
  return {lo, hi};
}

// First grid block of side `side` inside `area` (row-major over block
// indices) meeting both half-spaces.
std::optional<Rect> straddling_block(const Rect &area, const LatticeVec &side,
                                     const LatticeVec &v, std::int64_t n) {
  const std::size_t d = v.dim();
  LatticeVec qlo(d), qhi(d);
  for (std::size_t i = 0; i < d; ++i) {
    qlo[i] = -floor_div(-area.lo()[i], side[i]);
    qhi[i] = floor_div(area.hi()[i] + 1, side[i]) - 1;
    if (qlo[i] > qhi[i])
      return std::nullopt;
  }
  std::optional<Rect> found;
  Rect(qlo, qhi).for_each([&](const LatticeVec &q) {
    if (found)
      return;
    const Rect r = Rect::from_anchor(q.hadamard(side), side);
    const auto [lo, hi] = dot_range(r, v);
    if (hi >= n && lo <= -n)
      found = r;
  });
  return found;
}

} // namespace

RefuterReport non_axis_fracture_refuter(const RectSubstitution &theta, const LatticeVec &v,
                                        std::int64_t n, std::int64_t window) {
  const std::size_t d = theta.dim();
  if (v.dim() != d)
    throw PreconditionError("non_axis_fracture_refuter: dimension mismatch");
  const auto nonzero = std::count_if(v.coords().begin(), v.coords().end(),
                                     [](std::int64_t c) { return c != 0; });
  if (nonzero == 0)
    throw PreconditionError("non_axis_fracture_refuter: v must be nonzero");
  if (nonzero == 1)
    throw PreconditionError("non_axis_fracture_refuter: v is an axis direction");
  if (!is_bijective(theta))
    throw PreconditionError("non_axis_fracture_refuter: substitution must be bijective");
  if (n < 1 || window < 2)
    throw PreconditionError("non_axis_fracture_refuter: need N >= 1 and window >= 2");

  RefuterReport rep;
  const Rect area(LatticeVec(d, -window / 2), LatticeVec(d, window / 2 - 1));
  LatticeVec side = theta.size();
  for (unsigned m = 1;; ++m) {
    bool fits = true;
    for (std::size_t i = 0; i < d; ++i)
      fits &= side[i] <= window;
    if (!fits)
      break;
    if (auto r = straddling_block(area, side, v, n)) {
      rep.conclusive = true;
      rep.m = m;
      rep.block = r;
      break;
    }
    side = side.hadamard(theta.size());
  }
  if (!rep.conclusive) {
    // Same search without the window constraint, for the bound to report.
    side = theta.size();
    for (unsigned m = 1; m < 40; ++m) {
      const Rect wide(-side.hadamard(LatticeVec(d, 4)), side.hadamard(LatticeVec(d, 4)));
      if (auto r = straddling_block(wide, side, v, n)) {
        std::int64_t need = 0;
        for (std::size_t i = 0; i < d; ++i)
          need = std::max({need, -r->lo()[i], r->hi()[i] + 1});
        rep.required_window = 2 * need;
        rep.m = m;
        break;
      }
      side = side.hadamard(theta.size());
    }
    return rep;
  }

  const HalfSpace plus{v, n, 1}, minus{v, n, -1};
  std::vector<LatticeVec> plus_cells;
  bool have_minus = false;
  rep.block->for_each([&](const LatticeVec &k) {
    if (plus.contains(k)) {
      if (plus_cells.empty())
        rep.plus_point = k;
      plus_cells.push_back(k);
    }
    if (minus.contains(k) && !have_minus) {
      rep.minus_point = k;
      have_minus = true;
    }
  });

  // Agreement on one block cell forces agreement on the whole block.
  const SubstitutionRef fixed = corner_fixed(theta);
  const std::vector<Seed> seeds = fixed_seeds(*fixed).fixed();
  const std::size_t limit = std::min<std::size_t>(seeds.size(), 16);
  const LatticeVec zero(d);
  std::vector<Pattern> blocks;
  for (std::size_t i = 0; i < limit; ++i)
    blocks.push_back(AddressablePoint(fixed, seeds[i], zero).window(*rep.block));
  rep.propagation_holds = true;
  for (std::size_t i = 0; i < limit; ++i)
    for (std::size_t j = 0; j < limit; ++j) {
      ++rep.pairs_checked;
      const bool touch = std::any_of(plus_cells.begin(), plus_cells.end(), [&](const auto &k) {
        return blocks[i].at(k) == blocks[j].at(k);
      });
      if (!touch)
        continue;
      ++rep.pairs_touching;
      if (blocks[i] != blocks[j])
        rep.propagation_holds = false;
    }
  return rep;
}

} // namespace subsym
