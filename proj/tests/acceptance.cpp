// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "subsym/cli.hpp"
#include "subsym/language.hpp"
#include "subsym/points.hpp"
#include "subsym/robinson.hpp"
#include "subsym/symmetry.hpp"
#include "support.hpp"

using namespace subsym;
using namespace std::chrono;
using oracle::brute_power;
using oracle::corpus;
using oracle::corpus_names;

namespace {

int failures = 0;

void criterion(int n, const std::string &title, const std::function<bool(std::ostream &)> &body) {
  std::ostringstream detail;
  bool ok = false;
  const auto start = steady_clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception &e) {
    detail << "exception: " << e.what();
  }
  const auto ms = duration_cast<milliseconds>(steady_clock::now() - start).count();
  failures += ok ? 0 : 1;
  std::cout << (ok ? "PASS" : "FAIL") << " " << n << " " << title << " (" << ms << " ms)";
  if (!detail.str().empty())
    std::cout << ": " << detail.str();
  std::cout << std::endl;
}

template <class F> double seconds_of(F &&f) {
  const auto start = steady_clock::now();
  f();
  return duration<double>(steady_clock::now() - start).count();
}

bool crit1(std::ostream &d) {
  const std::vector<std::pair<std::string, std::size_t>> want{
      {"tm2d", 2}, {"tm3d", 2}, {"cyc3", 3}, {"vartheta", 1}};
  bool ok = true;
  for (const auto &[name, order] : want) {
    std::size_t got = 0;
    const double s = seconds_of([&] { got = relabel_automorphisms(corpus(name)).size(); });
    d << name << "=" << got << " ";
    ok = ok && got == order && s < 1.0;
  }
  return ok;
}

bool crit2(std::ostream &d) {
  const SymReport r2 = sym_group_report(corpus("tm2d"));
  bool ok = r2.entries.size() == 8 && r2.psi_image_order == 8 && r2.closed && r2.split == Split::Yes;
  SymReport r3;
  const double s = seconds_of([&] { r3 = sym_group_report(corpus("tm3d")); });
  ok = ok && r3.entries.size() == 48 && r3.psi_image_order == 48 && s < 30.0;
  d << "tm2d exact=" << r2.psi_image_order << " split=" << to_string(r2.split)
    << ", tm3d exact=" << r3.psi_image_order << " in " << s << " s";
  return ok;
}

bool crit3(std::ostream &d) {
  bool ok = true;
  for (const auto &name : corpus_names()) {
    const auto theta = corpus(name);
    if (theta.symbols() != 2 || !is_bijective(theta))
      continue;
    const std::size_t n = fixed_seeds(*corner_fixed(theta)).fixed().size();
    const std::size_t want = std::size_t{1} << (std::size_t{1} << theta.dim());
    d << name << "=" << n << " ";
    ok = ok && n == want;
  }
  return ok;
}

bool crit4(std::ostream &d) {
  std::size_t blocks = 0;
  for (const auto &name : corpus_names()) {
    const auto theta = corpus(name);
    const auto fixed = corner_fixed(theta);
    const unsigned p = static_cast<unsigned>(fixing_power(theta));
    const auto seeds = fixed_seeds(*fixed).fixed();
    for (unsigned m = p; m <= 6; m += p) {
      const LatticeVec side = theta.size().pow(m);
      const std::size_t stride = side.product() > 4096 ? std::max<std::size_t>(1, seeds.size() - 1) : 1;
      for (std::size_t si = 0; si < seeds.size(); si += stride) {
        const AddressablePoint x(fixed, seeds[si], LatticeVec(theta.dim()));
        for (std::size_t j = 0; j < seeds[si].corner_count(); ++j) {
          const LatticeVec lo = Seed::corner_vector(theta.dim(), j).hadamard(side);
          if (x.window(Rect::from_anchor(lo, side), kDefaultCellCap, 4).cells() !=
              brute_power(theta, seeds[si].corner(j), m).cells()) {
            d << name << " m=" << m << " differs";
            return false;
          }
          ++blocks;
        }
      }
    }
  }
  const AddressablePoint tm(corner_fixed(corpus("tm1d")), Seed(1, {1, 0}), {0});
  std::string w;
  const Pattern around = tm.window(Rect({-8}, {7}));
  for (auto c : around.cells())
    w += static_cast<char>('0' + c);
  d << blocks << " blocks, tm1d [-8,7]=" << w;
  return w == "0110100101101001";
}

bool crit5(std::ostream &d) {
  std::mt19937_64 rng(5);
  std::size_t checked = 0;
  for (const auto &name : corpus_names()) {
    const auto theta = corner_fixed(corpus(name));
    const std::size_t dim = theta->dim();
    const Seed seed = fixed_seeds(*theta).fixed().front();
    for (int t = 0; t < 100; ++t) {
      LatticeVec v(dim), k(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        v[i] = static_cast<std::int64_t>(rng() % 100001) - 50000;
        k[i] = static_cast<std::int64_t>(rng() % 100001) - 50000;
      }
      const AddressablePoint x(theta, seed, v);
      const OdometerCoord c = phi(x, 8);
      if (!c.coherent() || phi(shift_point(x, k), 8) != c.plus(k))
        return false;
      // Residues against iterated desubstitution digits.
      AddressablePoint cur = x;
      LatticeVec acc(dim), scale(dim, 1);
      for (unsigned m = 0; m < 8; ++m) {
        const Desubstitution ds = desubstitute_point(cur);
        acc += ds.offset.hadamard(scale);
        scale = scale.hadamard(theta->size());
        if (c.residues[m] != acc)
          return false;
        cur = ds.preimage;
      }
      ++checked;
    }
  }
  d << checked << " shifts";
  return true;
}

bool crit6(std::ostream &d) {
  const auto pair = contradiction_pair(corner_fixed(corpus("tm2d")), {1, 1});
  const Rect win({-64, -64}, {63, 63});
  const Pattern wx = pair.x.window(win), wy = pair.y.window(win);
  std::int64_t equal_off = 0, complement_on = 0, bad = 0;
  win.for_each([&](const LatticeVec &k) {
    const bool same = wx.at(k) == wy.at(k);
    if (pair.region.contains(k))
      (same ? bad : complement_on)++;
    else
      (same ? equal_off : bad)++;
  });
  d << "complement on Q=" << complement_on << " equal off Q=" << equal_off << " bad=" << bad;
  return bad == 0 && complement_on == 64 * 64 && equal_off == 128 * 128 - 64 * 64;
}

bool crit7(std::ostream &d) {
  const auto tm = corpus("tm2d");
  bool ok = true;
  for (std::size_t axis = 0; axis < 2; ++axis) {
    const FractureWitness w = fracture_normal_witness(tm, axis, 128);
    ok = ok && w.verified && w.masks.inside_differ == 64 * 128 && w.masks.outside_equal == 64 * 128;
  }
  std::size_t runs = 0;
  for (const LatticeVec &v : {LatticeVec{1, 1}, LatticeVec{2, 1}, LatticeVec{1, -1}})
    for (std::int64_t n = 4; n <= 8; ++n) {
      const RefuterReport r = non_axis_fracture_refuter(tm, v, n, 128);
      const bool good = r.conclusive && r.block && r.block->contains(r.plus_point) &&
                        r.block->contains(r.minus_point) && r.plus_point.dot(v) >= n &&
                        r.minus_point.dot(v) <= -n && r.propagation_holds;
      if (!good)
        d << "v=" << v << " N=" << n << " failed ";
      ok = ok && good;
      ++runs;
    }
  d << "axis witnesses j=1,2; " << runs << " refuter runs";
  return ok;
}

bool crit8(std::ostream &d) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 200; ++t) {
    const IntMatrix a = oracle::random_unimodular(rng, 2);
    const auto inv = oracle::adjugate_inverse(a);
    int contained = 0;
    for (int u : {-1, 1})
      for (int v : {-1, 1})
        contained += cone_contains_quadrant(a, Quadrant::canonical({u, v})) ? 1 : 0;
    if (contained > 1)
      return false;
    const LatticeVec q{static_cast<std::int64_t>(rng() % 4), static_cast<std::int64_t>(rng() % 4)};
    const LatticeVec p = a * q;
    const std::size_t axis = rng() % 2;
    bool far = false;
    for (std::int64_t s = -1000; s <= 1000; ++s) {
      LatticeVec x = p;
      x[axis] += s;
      far = far || (std::abs(s) > 900 && oracle::brute_in_cone(inv, x));
    }
    if (line_intersection_finite(a, p, axis) == far)
      return false;
  }
  d << "200 matrices";
  return true;
}

bool crit9(std::ostream &d) {
  const auto tm = corpus("tm2d");
  const PatchLanguage minimal = patch_language(tm, {2, 2}, LanguageMode::Minimal);
  const PatchLanguage full = patch_language(tm, {2, 2}, LanguageMode::Full);
  std::size_t rejected = 0;
  bool golden = true;
  for (const auto &seed : all_seeds(2, 2)) {
    int ones = 0;
    for (auto c : seed.corners())
      ones += c;
    const bool adm = seed_admissible_minimal(minimal, seed).admissible;
    rejected += adm ? 0 : 1;
    golden = golden && adm == (ones % 2 == 0);
  }
  const bool superset = std::includes(full.patterns.begin(), full.patterns.end(),
                                      minimal.patterns.begin(), minimal.patterns.end());
  d << "inadmissible seeds=" << rejected << " minimal=" << minimal.size()
    << " full=" << full.size();
  return rejected >= 1 && golden && superset && full.size() > minimal.size() &&
         minimal.stabilized && full.stabilized && minimal.depth_reached <= 8 &&
         full.depth_reached <= 8;
}

bool crit10(std::ostream &d) {
  namespace rb = robinson;
  const auto start = steady_clock::now();
  bool ok = rb::tiles().size() == 28;
  for (int n = 2; n <= 6; ++n) {
    const rb::Patch p = rb::supertile(n);
    ok = ok && p.width == (1 << n) - 1 && p.height == (1 << n) - 1 && rb::verify_patch(p).ok();
  }
  const rb::Patch base = rb::four_quadrant_window(31);
  ok = ok && rb::verify_patch(base).ok();
  auto rho = [](const rb::Patch &x) { return rb::apply_symmetry(rb::Symmetry::Rho, x); };
  auto mu = [](const rb::Patch &x) { return rb::apply_symmetry(rb::Symmetry::Mu, x); };
  ok = ok && rho(rho(rho(rho(base)))) == base && mu(mu(base)) == base &&
       mu(rho(mu(base))) == rho(rho(rho(base)));
  for (const char *w : {"r", "rr", "rrr", "m", "rm", "rrm", "rrrm"})
    ok = ok && rb::verify_patch(rb::apply_word(w, rb::supertile(4))).ok();
  for (std::int64_t k : {1, 2, 4})
    ok = ok && rb::verify_patch(rb::fracture_shift_demo(31, k)).ok();
  const rb::VerifyReport odd = rb::verify_patch(rb::shifted_half_window(31, 3));
  const std::size_t rule2 = odd.count(rb::ViolationKind::CosetNotCross);
  ok = ok && rule2 > 0;
  const double s = duration<double>(steady_clock::now() - start).count();
  d << "odd shift cross-lattice violations=" << rule2 << " total " << s << " s";
  return ok && s < 10.0;
}

bool crit11(std::ostream &d) {
  namespace rb = robinson;
  bool ok = true;
  for (std::int64_t n : {2, 4}) {
    const rb::TorusResult r = rb::torus_tiling_search(n, n);
    d << n << "x" << n << "=" << rb::to_string(r.status) << " ";
    ok = ok && r.status == rb::SearchStatus::Unsat;
  }
  const auto start = steady_clock::now();
  const rb::TorusResult r6 = rb::torus_tiling_search(6, 6, {0, 0}, seconds(60));
  const double s = duration<double>(steady_clock::now() - start).count();
  d << "6x6=" << rb::to_string(r6.status) << " (" << r6.nodes << " nodes)";
  return ok && r6.status != rb::SearchStatus::Sat && s <= 60.5;
}

bool crit12(std::ostream &d) {
  const std::vector<std::vector<std::string>> commands{
      {"analyze", oracle::corpus_path("tm3d")},
      {"sym", oracle::corpus_path("tm3d"), "--verbose"},
      {"sym", oracle::corpus_path("vartheta"), "--verbose"},
      {"lang", oracle::corpus_path("tm2d"), "--shape", "3,3", "--mode", "full", "--dump"},
      {"point", oracle::corpus_path("tm2d"), "--seed", "1,0,0,1", "--window", "-40:40"},
      {"fracture", oracle::corpus_path("tm2d"), "--axis", "1"},
      {"fracture", oracle::corpus_path("tm2d"), "--refute", "2,1", "--n", "6"},
      {"robinson", "window", "63"},
      {"robinson", "fracture", "31", "2", "--odd"},
  };
  for (const auto &args : commands) {
    std::string outs[2];
    for (int i = 0; i < 2; ++i) {
      auto full = args;
      full.insert(full.begin(), {"--threads", i == 0 ? "1" : "8"});
      std::ostringstream out, err;
      run_cli(full, out, err);
      outs[i] = out.str();
    }
    if (outs[0] != outs[1] || outs[0].empty()) {
      d << args[0] << " differs";
      return false;
    }
  }
  d << commands.size() << " reports identical at 1 and 8 threads";
  return true;
}

} // namespace

int main() {
  criterion(1, "relabeling group orders", crit1);
  criterion(2, "extended symmetry reports", crit2);
  criterion(3, "fixed seeds after corner fixing", crit3);
  criterion(4, "lazy points agree with brute materialization", crit4);
  criterion(5, "odometer additivity and coherence", crit5);
  criterion(6, "contradiction pair masks", crit6);
  criterion(7, "fracture directions", crit7);
  criterion(8, "image cone and quadrant properties", crit8);
  criterion(9, "minimality gap", crit9);
  criterion(10, "Robinson supertiles, windows and symmetries", crit10);
  criterion(11, "torus search", crit11);
  criterion(12, "thread determinism", crit12);
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " failing")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
