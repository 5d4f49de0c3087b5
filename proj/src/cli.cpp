#include "subsym/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "subsym/error.hpp"
#include "subsym/language.hpp"
#include "subsym/parallel.hpp"
#include "subsym/points.hpp"
#include "subsym/render.hpp"
#include "subsym/robinson.hpp"
#include "subsym/spec_io.hpp"
#include "subsym/symmetry.hpp"

namespace subsym {

void RunConfig::validate() const {
  if (threads < 1 || max_depth < 1 || cell_cap < 1)
    throw PreconditionError("threads, depth and cell caps must be positive");
  if (render != "txt" && render != "ppm" && render != "svg")
    throw PreconditionError("render format must be txt, ppm or svg");
}

namespace {

namespace rb = robinson;

std::vector<std::int64_t> parse_ints(const std::string &text, const std::string &what) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size())
        throw std::invalid_argument(tok);
    } catch (const std::exception &) {
      throw PreconditionError(what + ": '" + tok + "' is not an integer");
    }
  }
  if (out.empty())
    throw PreconditionError(what + ": empty list");
  return out;
}

LatticeVec parse_vec(const std::string &text, std::size_t dim, const std::string &what) {
  auto v = parse_ints(text, what);
  if (v.size() != dim)
    throw PreconditionError(what + ": expected " + std::to_string(dim) + " coordinates");
  return LatticeVec(std::move(v));
}

// "lo:hi" for every axis, or "lo:hi,lo:hi,..." per axis.
Rect parse_window(const std::string &text, std::size_t dim) {
  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos)
      throw PreconditionError("window: expected lo:hi, got '" + tok + "'");
    const auto lo = parse_ints(tok.substr(0, colon), "window");
    const auto hi = parse_ints(tok.substr(colon + 1), "window");
    ranges.emplace_back(lo.at(0), hi.at(0));
  }
  if (ranges.size() == 1)
    ranges.resize(dim, ranges.front());
  if (ranges.size() != dim)
    throw PreconditionError("window: expected 1 or " + std::to_string(dim) + " ranges");
  LatticeVec lo(dim), hi(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    lo[i] = ranges[i].first;
    hi[i] = ranges[i].second;
    if (lo[i] > hi[i])
      throw PreconditionError("window: empty range on axis " + std::to_string(i + 1));
  }
  return Rect(lo, hi);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string tau_names(const Relabeling &tau, const Alphabet &a) {
  std::string out = "[";
  for (std::size_t i = 0; i < tau.size(); ++i)
    out += (i ? "," : "") + a.name(tau[i]);
  return out + "]";
}

std::string seed_names(const Seed &s, const Alphabet &a) {
  std::string out;
  for (std::size_t j = 0; j < s.corner_count(); ++j)
    out += (j ? "," : "") + a.name(s.corner(j));
  return out;
}

class Emitter {
public:
  Emitter(const RunConfig &cfg, std::ostream &out) : cfg_(cfg), out_(out) {}

  // Writes a render to --out or stdout; report lines go after it.
  void render(const std::string &body) {
    if (cfg_.out_path.empty()) {
      out_ << body;
      to_stdout_ = true;
      return;
    }
    std::ofstream f(cfg_.out_path, std::ios::binary);
    if (!f)
      throw PreconditionError("cannot write '" + cfg_.out_path + "'");
    f << body;
  }
  // Report line; commented when it follows a text render on stdout, and
  // sent to stderr after a binary render on stdout.
  void report(const std::string &line, std::ostream &err) {
    if (to_stdout_ && cfg_.render != "txt")
      err << line << '\n';
    else if (to_stdout_)
      out_ << "# " << line << '\n';
    else
      out_ << line << '\n';
  }

private:
  const RunConfig &cfg_;
  std::ostream &out_;
  bool to_stdout_ = false;
};

std::string render_pattern(const Pattern &p, const RectSubstitution &theta, const RunConfig &cfg) {
  if (cfg.render == "ppm")
    return render_ppm(p);
  if (cfg.render == "svg")
    return render_svg(p);
  return render_text(p, theta.symbols());
}

std::string render_patch(const rb::Patch &p, const RunConfig &cfg) {
  if (cfg.render == "ppm")
    return rb::render_ppm(p);
  if (cfg.render == "svg")
    return rb::render_svg(p);
  std::ostringstream os;
  rb::write_patch(os, p);
  return os.str();
}

int report_patch(const rb::Patch &p, const RunConfig &cfg, std::ostream &out, std::ostream &err,
                 bool expect_valid = true) {
  Emitter em(cfg, out);
  em.render(render_patch(p, cfg));
  const rb::VerifyReport rep = rb::verify_patch(p, cfg.threads);
  for (const auto &v : rep.violations)
    em.report(rb::to_string(v.kind) + " at " + v.at.str() + ": " + v.detail, err);
  em.report("size=" + std::to_string(p.width) + "x" + std::to_string(p.height) + " violations=" +
                std::to_string(rep.violations.size()),
            err);
  return rep.ok() == expect_valid ? 0 : 1;
}

struct Args {
  RunConfig cfg;
  std::optional<unsigned> threads;
  std::string spec_path;
  // sym
  unsigned sym_depth = 3;
  unsigned max_power = 24;
  bool verbose = false;
  std::string mode = "minimal";
  std::string audit;
  // patch
  unsigned power = 1;
  std::string symbol;
  // point
  std::string seed, shift, window = "-8:7";
  unsigned phi_precision = 0;
  // lang
  std::string shape, cache_dir;
  bool dump = false;
  // fracture
  unsigned axis = 0;
  std::string refute;
  std::int64_t threshold = 4, frac_window = 128;
  // robinson
  int order = 2, rot = 0;
  std::int64_t half = 31, k = 1, tw = 4, th = 4;
  bool odd = false;
  std::string arm = "vertical", parity = "0,0", patch_file, word;
  double timeout_s = 60;
};

int cmd_analyze(const Args &a, std::ostream &out) {
  const SubstitutionSpec spec = read_spec_file(a.spec_path);
  const RectSubstitution theta = to_substitution(spec);
  out << "name=" << spec.name << '\n';
  out << "dim=" << theta.dim() << " size=" << theta.size().str()
      << " symbols=" << theta.symbols() << '\n';
  const PrimitivityReport pr = is_primitive(theta);
  out << "primitive=" << yes_no(pr.primitive);
  if (pr.primitive)
    out << " witness_power=" << pr.witness_power;
  else if (pr.missing)
    out << " missing=" << theta.alphabet().name(pr.missing->first) << "->"
        << theta.alphabet().name(pr.missing->second);
  out << '\n';
  const bool bij = is_bijective(theta);
  out << "bijective=" << yes_no(bij) << '\n';
  if (bij)
    out << "corner_fixing_power=" << corner_fixing_power(theta) << '\n';
  const SeedDynamics dyn = fixed_seeds(theta);
  out << "seeds=" << dyn.seeds_scanned << " seed_cycles=" << dyn.cycles.size()
      << " period_lcm=" << dyn.period_lcm << '\n';
  const SubstitutionRef fixed = corner_fixed(theta);
  out << "fixing_power=" << fixing_power(theta)
      << " fixed_seeds_after_fixing=" << fixed_seeds(*fixed).fixed().size() << '\n';
  return 0;
}

int cmd_aut(const Args &a, std::ostream &out) {
  const RectSubstitution theta = to_substitution(read_spec_file(a.spec_path));
  const AutDescription d = aut_group_description(theta);
  if (!d.in_scope) {
    out << "scope: " << d.scope_note << '\n';
    return 1;
  }
  out << "relabel_group_order=" << d.relabelings.size() << '\n';
  for (const auto &g : d.generators)
    out << "generator tau=" << tau_names(g, theta.alphabet()) << '\n';
  out << "Aut(X, Z^" << theta.dim() << ") = " << d.text << '\n';
  return 0;
}

int cmd_sym(const Args &a, std::ostream &out) {
  const RectSubstitution theta = to_substitution(read_spec_file(a.spec_path));
  SymmetryOptions opts;
  opts.depth = a.sym_depth;
  opts.max_power = a.max_power;
  opts.mode = parse_language_mode(a.mode);
  opts.language.max_depth = a.cfg.max_depth;
  opts.cell_cap = a.cfg.cell_cap;
  opts.threads = a.cfg.threads;
  if (!a.audit.empty()) {
    std::vector<std::vector<std::int64_t>> rows;
    std::stringstream ss(a.audit);
    std::string row;
    while (std::getline(ss, row, ';'))
      rows.push_back(parse_ints(row, "audit matrix"));
    IntMatrix m(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != rows.size())
        throw PreconditionError("audit matrix must be square");
      for (std::size_t c = 0; c < rows.size(); ++c)
        m(r, c) = rows[r][c];
    }
    const AuditResult res = audit_unimodular(theta, m, opts);
    if (res.verdict == Verdict::RefutedAt) {
      out << "audit -> RefutedAt(" << res.depth << ")\n";
      return 1;
    }
    out << "audit -> VerifiedUpTo(" << res.depth << ")," << "tau=" << tau_names(*res.tau, theta.alphabet())
        << " (consistent to depth " << res.depth << ")\n";
    return 0;
  }
  const SymReport rep = sym_group_report(theta, opts);
  out << format_sym_report(rep, theta.alphabet(), a.verbose);
  return rep.closed ? 0 : 1;
}

int cmd_patch(const Args &a, std::ostream &out, std::ostream &err) {
  const RectSubstitution theta = to_substitution(read_spec_file(a.spec_path));
  const auto sym = theta.alphabet().index_of(a.symbol);
  if (!sym)
    throw PreconditionError("unknown symbol '" + a.symbol + "'");
  Pattern p(LatticeVec(theta.dim()), LatticeVec(theta.dim(), 1), *sym);
  for (unsigned i = 0; i < a.power; ++i)
    p = apply(theta, p, a.cfg.cell_cap);
  Emitter em(a.cfg, out);
  em.render(render_pattern(p, theta, a.cfg));
  em.report("patch theta^" + std::to_string(a.power) + "(" + a.symbol + ") extent=" +
                p.extent().str(),
            err);
  return 0;
}

int cmd_point(const Args &a, std::ostream &out, std::ostream &err) {
  const RectSubstitution theta = to_substitution(read_spec_file(a.spec_path));
  const SubstitutionRef fixed = corner_fixed(theta);
  std::vector<Symbol> corners;
  std::stringstream ss(a.seed);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto s = theta.alphabet().index_of(tok);
    if (!s)
      throw PreconditionError("seed: unknown symbol '" + tok + "'");
    corners.push_back(*s);
  }
  if (corners.size() != (std::size_t{1} << theta.dim()))
    throw PreconditionError("seed: expected " + std::to_string(std::size_t{1} << theta.dim()) +
                            " symbols");
  const LatticeVec shift =
      a.shift.empty() ? LatticeVec(theta.dim()) : parse_vec(a.shift, theta.dim(), "shift");
  const AddressablePoint x(fixed, Seed(theta.dim(), corners), shift);
  const Rect win = parse_window(a.window, theta.dim());
  Emitter em(a.cfg, out);
  em.render(render_pattern(x.window(win, a.cfg.cell_cap, a.cfg.threads), theta, a.cfg));
  em.report("window=" + win.lo().str() + ".." + win.hi().str() + " power=" +
                std::to_string(fixing_power(theta)),
            err);
  if (a.phi_precision > 0) {
    const OdometerCoord c = phi(x, a.phi_precision);
    for (std::size_t m = 0; m < c.residues.size(); ++m)
      em.report("phi_" + std::to_string(m + 1) + "=" + c.residues[m].str(), err);
  }
  return 0;
}

int cmd_lang(const Args &a, std::ostream &out, std::ostream &err) {
  const SubstitutionSpec spec = read_spec_file(a.spec_path);
  const RectSubstitution theta = to_substitution(spec);
  const LatticeVec shape = parse_vec(a.shape, theta.dim(), "shape");
  const LanguageMode mode = parse_language_mode(a.mode);
  LanguageOptions lo;
  lo.max_depth = a.cfg.max_depth;
  lo.cell_cap = a.cfg.cell_cap;
  lo.threads = a.cfg.threads;

  std::optional<PatchLanguage> lang;
  std::filesystem::path dump_path, meta_path;
  if (!a.cache_dir.empty()) {
    std::string key = spec_hash(spec) + "-";
    for (std::size_t i = 0; i < shape.dim(); ++i)
      key += (i ? "x" : "") + std::to_string(shape[i]);
    key += "-" + to_string(mode) + "-d" + std::to_string(lo.max_depth);
    dump_path = std::filesystem::path(a.cache_dir) / (key + ".lang");
    meta_path = std::filesystem::path(a.cache_dir) / (key + ".meta");
    std::ifstream d(dump_path), m(meta_path);
    if (d && m) {
      PatchLanguage l = read_language_dump(d, mode);
      l.shape = shape;
      int stab = 0;
      if (m >> l.depth_reached >> stab) {
        l.stabilized = stab != 0;
        lang = std::move(l);
        err << "cache hit " << dump_path.string() << '\n';
      }
    }
  }
  if (!lang) {
    lang = patch_language(theta, shape, mode, lo);
    if (!a.cache_dir.empty()) {
      std::filesystem::create_directories(a.cache_dir);
      std::ofstream d(dump_path), m(meta_path);
      write_language_dump(d, *lang);
      m << lang->depth_reached << ' ' << (lang->stabilized ? 1 : 0) << '\n';
    }
  }
  std::ostringstream dump;
  write_language_dump(dump, *lang);
  if (!a.cfg.out_path.empty()) {
    std::ofstream f(a.cfg.out_path);
    if (!f)
      throw PreconditionError("cannot write '" + a.cfg.out_path + "'");
    f << dump.str();
  } else if (a.dump) {
    out << dump.str();
  }
  out << "shape=" << shape.str() << " mode=" << to_string(mode) << " patterns=" << lang->size()
      << " depth_reached=" << lang->depth_reached << " stabilized=" << yes_no(lang->stabilized)
      << '\n';
  return 0;
}

int cmd_fracture(const Args &a, std::ostream &out) {
  const RectSubstitution theta = to_substitution(read_spec_file(a.spec_path));
  if (!a.refute.empty()) {
    const LatticeVec v = parse_vec(a.refute, theta.dim(), "refute");
    const RefuterReport r = non_axis_fracture_refuter(theta, v, a.threshold, a.frac_window);
    out << "v=" << v.str() << " N=" << a.threshold << " window=" << a.frac_window << '\n';
    if (!r.conclusive) {
      out << "inconclusive: no straddling block fits; window >= " << r.required_window
          << " needed (m=" << r.m << ")\n";
      return 1;
    }
    out << "m=" << r.m << " block=" << r.block->lo().str() << ".." << r.block->hi().str()
        << " plus=" << r.plus_point.str() << " minus=" << r.minus_point.str() << '\n';
    out << "pairs_checked=" << r.pairs_checked << " pairs_touching=" << r.pairs_touching
        << " propagation=" << (r.propagation_holds ? "holds" : "fails") << '\n';
    out << "verdict=" << (r.propagation_holds ? "not a fracture normal" : "undecided") << '\n';
    return r.propagation_holds ? 0 : 1;
  }
  if (a.axis < 1 || a.axis > theta.dim())
    throw PreconditionError("--axis must be in 1.." + std::to_string(theta.dim()));
  const FractureWitness w = fracture_normal_witness(theta, a.axis - 1, a.frac_window, a.cfg.threads);
  const Alphabet &alpha = theta.alphabet();
  out << "axis=" << a.axis << " window=" << w.window.lo().str() << ".." << w.window.hi().str()
      << '\n';
  out << "seed_x=" << seed_names(w.pair.x.seed(), alpha) << " seed_y=" << seed_names(w.pair.y.seed(), alpha)
      << " admissible=" << yes_no(w.pair.admissible) << '\n';
  out << "inside_equal=" << w.masks.inside_equal << " inside_differ=" << w.masks.inside_differ
      << " outside_equal=" << w.masks.outside_equal << " outside_differ=" << w.masks.outside_differ
      << '\n';
  out << "verified=" << yes_no(w.verified) << '\n';
  return w.verified ? 0 : 1;
}

int cmd_torus(const Args &a, std::ostream &out) {
  const auto par = parse_ints(a.parity, "parity");
  if (par.size() != 2)
    throw PreconditionError("parity: expected p1,p2");
  const auto timeout =
      std::chrono::milliseconds(static_cast<std::int64_t>(a.timeout_s * 1000.0));
  const rb::TorusResult r = rb::torus_tiling_search(
      a.tw, a.th, {static_cast<int>(par[0]), static_cast<int>(par[1])}, timeout);
  out << "torus=" << a.tw << "x" << a.th << " status=" << rb::to_string(r.status) << '\n';
  if (r.solution) {
    out << "# certificate\n";
    rb::write_patch(out, *r.solution);
  }
  return r.status == rb::SearchStatus::Unsat ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Rectangular substitution subshifts and the Robinson tiling", "subsym"};
  app.require_subcommand(1);
  Args a;
  app.add_option("--threads", a.threads, "worker threads (default: SUBSYM_THREADS or 1)");
  app.add_option("--max-depth", a.cfg.max_depth, "language generation depth cap")
      ->check(CLI::PositiveNumber);
  app.add_option("--cell-cap", a.cfg.cell_cap, "largest materialized pattern, in cells")
      ->check(CLI::PositiveNumber);

  auto add_spec = [&](CLI::App *sub) {
    sub->add_option("spec", a.spec_path, "substitution spec file")->required();
  };
  auto add_render = [&](CLI::App *sub) {
    sub->add_option("--render", a.cfg.render, "txt, ppm or svg")
        ->check(CLI::IsMember({"txt", "ppm", "svg"}));
    sub->add_option("--out", a.cfg.out_path, "write the render to this file");
  };

  auto *analyze = app.add_subcommand("analyze", "primitivity, bijectivity, seed dynamics");
  add_spec(analyze);
  auto *aut = app.add_subcommand("aut", "relabeling automorphisms");
  add_spec(aut);
  auto *sym = app.add_subcommand("sym", "extended symmetries over the hyperoctahedral group");
  add_spec(sym);
  sym->add_option("--depth", a.sym_depth, "largest cube side on the language path")
      ->check(CLI::PositiveNumber);
  sym->add_option("--max-power", a.max_power, "alignment power cap")->check(CLI::PositiveNumber);
  sym->add_option("--mode", a.mode, "language mode for comparisons")
      ->check(CLI::IsMember({"minimal", "full"}));
  sym->add_flag("--verbose", a.verbose, "list every exact relabeling and the summary");
  sym->add_option("--audit", a.audit, "check one unimodular matrix, rows split by ';'");
  auto *patch = app.add_subcommand("patch", "materialize theta^m(a)");
  add_spec(patch);
  patch->add_option("-m", a.power, "power")->check(CLI::NonNegativeNumber);
  patch->add_option("-a", a.symbol, "symbol")->required();
  add_render(patch);
  auto *point = app.add_subcommand("point", "window of a fixed point of the corner-fixed power");
  add_spec(point);
  point->add_option("--seed", a.seed, "corner symbols, row-major over [-1,0]^d")->required();
  point->add_option("--shift", a.shift, "shift v, comma separated");
  point->add_option("--window", a.window, "lo:hi or lo:hi,lo:hi,...");
  point->add_option("--phi", a.phi_precision, "print odometer residues to this precision");
  add_render(point);
  auto *lang = app.add_subcommand("lang", "pattern language of one shape");
  add_spec(lang);
  lang->add_option("--shape", a.shape, "extents, comma separated")->required();
  lang->add_option("--mode", a.mode, "minimal or full")->check(CLI::IsMember({"minimal", "full"}));
  lang->add_option("--cache", a.cache_dir, "language cache directory");
  lang->add_flag("--dump", a.dump, "print the dump to stdout");
  lang->add_option("--out", a.cfg.out_path, "write the dump to this file");
  auto *frac = app.add_subcommand("fracture", "axis fracture witness or non-axis refuter");
  add_spec(frac);
  auto *axis_opt = frac->add_option("--axis", a.axis, "axis j, 1-based");
  auto *refute_opt = frac->add_option("--refute", a.refute, "non-axis normal v, comma separated");
  axis_opt->excludes(refute_opt);
  frac->add_option("--n", a.threshold, "half-space threshold N")->check(CLI::PositiveNumber);
  frac->add_option("--window", a.frac_window, "window side")->check(CLI::PositiveNumber);

  auto *rob = app.add_subcommand("robinson", "Robinson tiles");
  rob->require_subcommand(1);
  auto *st = rob->add_subcommand("supertile", "order-n supertile");
  st->add_option("n", a.order, "order")->required();
  st->add_option("--rot", a.rot, "center cross rotation, quarter turns");
  add_render(st);
  auto *win = rob->add_subcommand("window", "four infinite supertiles around the origin");
  win->add_option("N", a.half, "half size")->required();
  win->add_option("--arm", a.arm, "uniform strip")->check(CLI::IsMember({"vertical", "horizontal"}));
  add_render(win);
  auto *rfr = rob->add_subcommand("fracture", "right half shifted by (0, 2k)");
  rfr->add_option("N", a.half, "half size")->required();
  rfr->add_option("k", a.k, "shift parameter")->required();
  rfr->add_flag("--odd", a.odd, "shift by (0, 2k + 1) instead");
  add_render(rfr);
  auto *tor = rob->add_subcommand("torus", "search for a periodic tiling");
  tor->add_option("width", a.tw, "columns")->required();
  tor->add_option("height", a.th, "rows")->required();
  tor->add_option("--timeout", a.timeout_s, "seconds")->check(CLI::PositiveNumber);
  tor->add_option("--parity", a.parity, "cross coset p1,p2");
  auto *ver = rob->add_subcommand("verify", "check a patch file");
  ver->add_option("file", a.patch_file, "patch file")->required();
  auto *app_sym = rob->add_subcommand("apply", "apply a word in r (rotation) and m (mirror)");
  app_sym->add_option("word", a.word, "letters r and m, applied left to right")->required();
  app_sym->add_option("file", a.patch_file, "patch file")->required();
  add_render(app_sym);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    a.cfg.threads = resolve_threads(a.threads);
    a.cfg.validate();
    if (*analyze)
      return cmd_analyze(a, out);
    if (*aut)
      return cmd_aut(a, out);
    if (*sym)
      return cmd_sym(a, out);
    if (*patch)
      return cmd_patch(a, out, err);
    if (*point)
      return cmd_point(a, out, err);
    if (*lang)
      return cmd_lang(a, out, err);
    if (*frac) {
      if (!*axis_opt && !*refute_opt)
        throw PreconditionError("fracture needs --axis or --refute");
      return cmd_fracture(a, out);
    }
    if (*st)
      return report_patch(rb::supertile(a.order, a.rot), a.cfg, out, err);
    if (*win)
      return report_patch(rb::four_quadrant_window(a.half, a.arm == "vertical"
                                                               ? rb::ArmConfig::VerticalUniform
                                                               : rb::ArmConfig::HorizontalUniform),
                          a.cfg, out, err);
    if (*rfr)
      return report_patch(a.odd ? rb::shifted_half_window(a.half, 2 * a.k + 1)
                                : rb::fracture_shift_demo(a.half, a.k),
                          a.cfg, out, err);
    if (*tor)
      return cmd_torus(a, out);
    if (*ver || *app_sym) {
      std::ifstream f(a.patch_file);
      if (!f)
        throw PreconditionError("cannot open patch file '" + a.patch_file + "'");
      rb::Patch p = rb::read_patch(f);
      if (*app_sym)
        p = rb::apply_word(a.word, p);
      return report_patch(p, a.cfg, out, err);
    }
  } catch (const PreconditionError &e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError &e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const RangeError &e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const SizeError &e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  err << app.help();
  return 2;
}

} // namespace subsym
