#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "biiso/bcl.hpp"
#include "biiso/io.hpp"
#include "biiso/lattice.hpp"
#include "biiso/model.hpp"
#include "biiso/suite.hpp"
#include "biiso/wold.hpp"

using namespace biiso;

namespace {

struct Config {
  std::string command;
  int n = 16;
  int k = 64;
  double eq_tol = 1e-9;
  double rank_tol = 1e-10;
  std::string out;
  std::vector<std::string> inputs;
  json extra = json::object();

  Tolerance tol() const { return {eq_tol, rank_tol}; }
};

// Outcome of one subcommand: results plus whether a check failed.
struct Outcome {
  json results = json::object();
  bool failed = false;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      failed = true;
      failures.push_back(what);
    }
  }
};

json config_json(const Config& c) {
  json j = {{"command", c.command}, {"n", c.n}, {"k", c.k}, {"eq_tol", c.eq_tol}, {"rank_tol", c.rank_tol},
            {"inputs", c.inputs}};
  for (auto it = c.extra.begin(); it != c.extra.end(); ++it) j[it.key()] = it.value();
  return j;
}

void emit(const Config& c, const Outcome& o) {
  json report = {{"tool", "biiso"}, {"version", kVersion}, {"config", config_json(c)}};
  if (!o.results.empty()) report["results"] = o.results;
  report["status"] = o.failed ? "verification_failed" : "ok";
  if (o.failed) report["failures"] = o.failures;
  const std::string text = dump_report(report);
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out);
    if (!f) throw InputError("cannot write " + c.out);
    f << text;
  }
}

json dims_json(const BiIsometry& w) { return {{"window", w.space().size()}, {"interior", w.interior.size()}}; }

json residuals_json(const BiIsometry& w, double tol, Outcome& o) {
  const BiIsometryResiduals r = validate(w);
  o.require(r.isometry0 <= tol && r.isometry1 <= tol && r.commutation <= tol, "bi-isometry residual above tolerance");
  return {{"isometry0", r.isometry0}, {"isometry1", r.isometry1}, {"commutation", r.commutation}};
}

json pair_summary(const BCLPair& b) {
  return {{"dim", b.dim()}, {"dim_e", b.dim_e}, {"dim_f", b.dim_f}, {"truncated", b.truncated},
          {"unitarity_defect", b.unitarity_defect}};
}

json equivalence_json(const EquivalenceResult& e) {
  json j = {{"verdict", to_string(e.verdict)}, {"residual", e.residual}};
  if (!e.reason.empty()) j["reason"] = e.reason;
  return j;
}

std::string only_input(const Config& c, const char* what) {
  if (c.inputs.size() != 1) throw InputError(std::string("expected exactly one ") + what + " file");
  return c.inputs[0];
}

// --- model layer ---

Outcome run_wold(const Config& c, int depth) {
  Outcome o;
  Window interior;
  const WindowedOp v = operator_from_json(read_json_file(only_input(c, "operator")), &interior);
  const WoldResult wr = wold_single(v, interior, depth, c.tol());
  const CMat inner = v.domain.embedding(interior);
  CMat both(v.domain.size(), wr.shift_part.cols() + wr.unitary_part.cols());
  both << wr.shift_part, wr.unitary_part;
  const double overlap = wr.shift_part.cols() && wr.unitary_part.cols() ? op_norm(wr.shift_part.adjoint() * wr.unitary_part) : 0.0;
  const double cover = op_norm(projector(inner) - projector(both));
  o.require(overlap <= 1e-8, "shift and unitary parts are not orthogonal");
  o.results = {{"dims",
                {{"window", v.domain.size()},
                 {"interior", interior.size()},
                 {"wandering", wr.wandering.cols()},
                 {"shift", wr.shift_part.cols()},
                 {"unitary", wr.unitary_part.cols()}}},
               {"depth", wr.depth_used},
               {"residuals", {{"isometry", isometry_defect(v, interior)}, {"overlap", overlap}, {"cover", cover}}}};
  return o;
}

Outcome run_model(const Config& c, int kmax) {
  Outcome o;
  const OpSymbol theta = symbol_from_json(read_json_file(only_input(c, "symbol")));
  const Model m = build_model_biisometry(theta, c.n, c.k, c.tol());
  const int kk = std::min(kmax, c.n - 2);
  const auto cf = characteristic_function(m.w, kk, c.tol());
  const auto ex = theta.series(kk);
  double rt = 0.0;
  for (int i = 0; i <= kk; ++i) rt = std::max(rt, op_norm(cf[static_cast<size_t>(i)] - ex[static_cast<size_t>(i)]));
  o.require(rt <= 1e-8, "characteristic function round trip above 1e-8");

  const Verdict w1u = w1_unitary_test(m.w);
  const bool const_unitary = is_constant_unitary(theta);
  const bool w1_pure = w1_unitary_part(m.w, c.tol()).cols() == 0;
  const bool cnu0 = cnu_part_of_contraction(theta.series(0)[0], c.tol()).unitary.cols() == 0;
  const Verdict dc = doubly_commuting_test(m.w);
  o.require(w1u.holds == const_unitary, "W1 unitarity disagrees with constant unitary symbol");
  o.require(w1_pure == cnu0, "{1}-purity disagrees with cnu Theta(0)");

  json dims = dims_json(m.w);
  dims["fiber"] = m.spaces.fiber;
  dims["defect"] = m.spaces.defect_dim;
  dims["samples"] = m.spaces.samples;
  dims["hardy_top"] = m.spaces.hardy_top;
  o.results = {{"dims", dims},
               {"residuals", residuals_json(m.w, c.eq_tol, o)},
               {"roundtrip_error", rt},
               {"roundtrip_kmax", kk},
               {"verdicts",
                {{"w1_unitary", w1u.holds},
                 {"constant_unitary", const_unitary},
                 {"w1_pure", w1_pure},
                 {"theta0_cnu", cnu0},
                 {"doubly_commuting", dc.holds},
                 {"constant_isometry", is_constant_isometry(theta)}}}};
  return o;
}

Outcome run_charfn(const Config& c, int kmax) {
  Outcome o;
  const BiIsometry w = biisometry_from_json(read_json_file(only_input(c, "bi-isometry")));
  const int span = w.interior.max_grade() - w.interior.min_grade();
  const int kk = std::min(kmax, span - 2);
  const auto cf = characteristic_function(w, kk, c.tol());
  json coeffs = json::array();
  for (const CMat& t : cf) coeffs.push_back(matrix_to_json(t));
  json dims = dims_json(w);
  dims["wandering"] = cf.empty() ? 0 : cf[0].rows();
  o.results = {{"dims", dims}, {"residuals", residuals_json(w, c.eq_tol, o)}, {"theta", coeffs}, {"kmax", kk}};
  return o;
}

Outcome run_bishift(const Config& c, int steps, const std::string& csv) {
  Outcome o;
  const OpSymbol theta = symbol_from_json(read_json_file(only_input(c, "symbol")));
  const Model m = build_model_biisometry(theta, c.n, c.k, c.tol());
  const BishiftReport r = bishift_test(m.w, theta, steps, c.k, c.tol());
  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) throw InputError("cannot write " + csv);
    f << "step,decay0,decay1\n";
    char buf[96];
    for (size_t i = 0; i < r.decay0.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g\n", i + 1, r.decay0[i], r.decay1[i]);
      f << buf;
    }
  }
  if (r.certificate) o.require(r.certificate_residual <= 1e-8, "constant Omega certificate residual above 1e-8");
  o.results = {{"decay0_last", r.decay0.empty() ? 0.0 : r.decay0.back()},
               {"decay1_last", r.decay1.empty() ? 0.0 : r.decay1.back()},
               {"steps", r.decay0.size()},
               {"decayed", r.decayed},
               {"inner", r.inner.inner},
               {"inner_defect", r.inner.max_defect},
               {"certificate", r.certificate},
               {"certificate_dim", r.omega.cols()},
               {"certificate_residual", r.certificate_residual},
               {"bishift", r.bishift}};
  return o;
}

Outcome run_double(const Config& c) {
  Outcome o;
  const OpSymbol theta = symbol_from_json(read_json_file(only_input(c, "symbol")));
  const Model m = build_model_biisometry(theta, c.n, c.k, c.tol());
  const Verdict dc = doubly_commuting_test(m.w);
  const bool ci = is_constant_isometry(theta);
  const CMat t0 = characteristic_function(m.w, 0, c.tol())[0];
  const double d4 = op_norm(t0.adjoint() * t0 - identity(t0.cols()));
  const CMat f = pivotal_space(m.w, c.tol());
  double d5 = 0.0;
  if (f.cols()) {
    const CMat piv = pivotal_operator(m.w, c.tol());
    d5 = op_norm(piv.adjoint() * piv - identity(piv.cols()));
  }
  const bool v4 = d4 <= 1e-8, v5 = d5 <= 1e-8;
  const bool agree = dc.holds == ci && ci == v4 && v4 == v5;
  o.require(agree, "doubly commuting equivalences disagree");
  o.results = {{"verdicts",
                {{"doubly_commuting", dc.holds},
                 {"constant_isometry", ci},
                 {"swapped_pivotal_isometry", v4},
                 {"pivotal_isometry", v5},
                 {"agree", agree}}},
               {"residuals", {{"doubly_commuting", dc.residual}, {"swapped_pivotal", d4}, {"pivotal", d5}}},
               {"dims", {{"pivotal", f.cols()}}}};
  return o;
}

// --- pairs ---

Outcome run_bcl_extract(const Config& c, bool from_symbol_file) {
  Outcome o;
  const std::string path = only_input(c, from_symbol_file ? "symbol" : "bi-isometry");
  const json doc = read_json_file(path);
  BiIsometry w;
  if (from_symbol_file) w = build_model_biisometry(symbol_from_json(doc), c.n, c.k, c.tol()).w;
  else w = biisometry_from_json(doc);
  DecompositionCheck dc;
  BCLPair b;
  try {
    b = bcl_from_biisometry(w, c.tol(), &dc);
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    o.require(false, e.what());
  }
  o.results = {{"decomposition", {{"e_w0f", dc.e_w0f}, {"w1e_f", dc.w1e_f}, {"full", dc.full}}}};
  if (!o.failed) {
    o.results["pair"] = bcl_to_json(b);
    o.results["summary"] = pair_summary(b);
  }
  return o;
}

Outcome run_bcl_build(const Config& c, bool emit_matrices) {
  Outcome o;
  const BCLPair b = bcl_from_json(read_json_file(only_input(c, "pair")));
  const BiIsometry w = biisometry_from_bcl(b, c.n);
  // W0 W1 is multiplication by z.
  const WindowedOp s = shift_operator(static_cast<int>(b.dim()), c.n);
  const double prod = restricted_norm(w.w0.matrix * w.w1.matrix - s.matrix, w.space(), w.interior);
  o.require(prod <= 1e-10, "W0 W1 differs from the grade shift");
  o.results = {{"dims", dims_json(w)}, {"residuals", residuals_json(w, c.eq_tol, o)}, {"product_shift", prod}};
  if (emit_matrices) o.results["biisometry"] = biisometry_to_json(w);
  return o;
}

Outcome run_bcl_from_symbol(const Config& c, int words) {
  Outcome o;
  const OpSymbol theta = symbol_from_json(read_json_file(only_input(c, "symbol")));
  const Model m = build_model_biisometry(theta, c.n, c.k, c.tol());
  const BCLPair direct = bcl_from_symbol(m, c.tol());
  const BCLPair extracted = bcl_from_biisometry(m.w, c.tol());
  const EquivalenceResult eq = pair_equivalence(direct, extracted, words, c.tol());
  o.require(eq.verdict == Equivalence::equivalent && eq.residual <= 1e-8, "symbol route and extraction route disagree");
  o.results = {{"pair", bcl_to_json(direct)}, {"summary", pair_summary(direct)}, {"consistency", equivalence_json(eq)}};
  return o;
}

Outcome run_bcl_roundtrip(const Config& c, int words) {
  Outcome o;
  BCLPair b = bcl_from_json(read_json_file(only_input(c, "pair")));
  b.interior_mask.clear();
  const BCLPair back = bcl_from_biisometry(biisometry_from_bcl(b, c.n), c.tol());
  const EquivalenceResult eq = pair_equivalence(b, back, words, c.tol());
  o.require(eq.verdict == Equivalence::equivalent && eq.residual <= 1e-8, "round trip is not certified");
  o.results = {{"roundtrip", equivalence_json(eq)}, {"summary", pair_summary(back)}};
  return o;
}

Outcome run_bcl_equiv(const Config& c, int words) {
  Outcome o;
  if (c.inputs.size() != 2) throw InputError("bcl equiv needs two --pair files");
  const BCLPair a = bcl_from_json(read_json_file(c.inputs[0]));
  const BCLPair b = bcl_from_json(read_json_file(c.inputs[1]));
  const EquivalenceResult eq = pair_equivalence(a, b, words, c.tol());
  o.results = {{"equivalence", equivalence_json(eq)}};
  if (eq.verdict == Equivalence::equivalent) o.results["witness"] = matrix_to_json(eq.witness);
  return o;
}

// --- lattice ---

ZSet load_zset(const std::string& path) { return zset_from_json(read_json_file(path)); }

Outcome run_lattice_period(const Config& c) {
  Outcome o;
  const ZSet a = load_zset(only_input(c, "ZSet"));
  const auto p = minimal_period(a);
  o.results = {{"minimal_period", p ? json(*p) : json(nullptr)}, {"irreducible", !p.has_value()},
               {"normalized", zset_to_json(normalize(a))}};
  return o;
}

Outcome run_lattice_classify(const Config& c) {
  Outcome o;
  if (c.inputs.size() != 2) throw InputError("lattice classify needs two --zset files");
  const ZSet a = normalize(load_zset(c.inputs[0]));
  const ZSet b = normalize(load_zset(c.inputs[1]));
  const auto n = translate_equivalent(a, b);
  o.results = {{"equivalent", n.has_value()}, {"shift", n ? json(*n) : json(nullptr)}};
  if (n) {
    // Matched windows: B on the window of A moved by n. The witness relabels e_m as e_{m+n}.
    const long pad = 2 * std::max(a.tail_period(), b.tail_period()) + 4;
    const long lo = a.core_lo - pad, hi = a.core_hi + pad;
    const BCLPair pa = zset_to_bcl(a, lo, hi), pb = zset_to_bcl(b, lo + *n, hi + *n);
    const std::vector<std::pair<CMat, CMat>> rel{{pa.u, pb.u}, {pa.p, pb.p}};
    const double r = intertwining_residual(identity(pa.dim()), rel);
    o.require(r <= 1e-8, "translated pairs are not intertwined by the shift");
    o.results["pair_witness_residual"] = r;
    o.results["window"] = {lo, hi};
  }
  return o;
}

Outcome run_lattice_staircase(const Config& c, bool from_staircase, long pad) {
  Outcome o;
  if (from_staircase) {
    const Staircase s = staircase_from_json(read_json_file(only_input(c, "staircase")));
    o.results = {{"zset", zset_to_json(staircase_to_zset(s))}};
    return o;
  }
  const ZSet a = normalize(load_zset(only_input(c, "ZSet")));
  const Staircase s = zset_to_staircase(a);
  const long lo = std::min(a.core_lo, 0L) - pad, hi = std::max(a.core_hi, 0L) + pad;
  json pts = json::array();
  for (long n = lo; n <= hi + 1; ++n) {
    const auto p = s.point(n);
    pts.push_back({n, p.first, p.second});
  }
  const bool back = same_set(staircase_to_zset(s), a);
  o.require(back, "staircase does not reproduce the set");
  o.results = {{"staircase", staircase_to_json(s, lo, hi)}, {"points", pts}, {"roundtrip", back}};
  return o;
}

Outcome run_lattice_restrict(const Config& c, bool from_staircase, int count, int words) {
  Outcome o;
  const json doc = read_json_file(only_input(c, from_staircase ? "staircase" : "ZSet"));
  const Staircase s = from_staircase ? staircase_from_json(doc) : zset_to_staircase(zset_from_json(doc));
  const StaircaseWindow sw = staircase_restriction_biisometry(s, count);
  const long width = sw.n_hi - sw.n_lo + 1;
  BiIsometry away = sw.w;
  away.interior = sw.w.interior.filter([width](const Label& l) { return l.fiber >= 2 && l.fiber <= width - 3; });
  const Verdict dc = doubly_commuting_test(away);
  const BCLPair from_window = bcl_from_biisometry(sw.w, c.tol());
  const BCLPair from_set = zset_to_bcl(staircase_to_zset(s), sw.n_lo, sw.n_hi);
  const EquivalenceResult eq = pair_equivalence(from_window, from_set, words, c.tol());
  o.require(eq.verdict == Equivalence::equivalent && eq.residual <= 1e-8, "staircase window and (U, Q_A) pair disagree");
  json dims = dims_json(sw.w);
  dims["n_lo"] = sw.n_lo;
  dims["n_hi"] = sw.n_hi;
  dims["t_top"] = sw.t_top;
  o.results = {{"dims", dims},
               {"residuals", residuals_json(sw.w, c.eq_tol, o)},
               {"doubly_commuting", {{"holds", dc.holds}, {"residual", dc.residual}}},
               {"pair_check", equivalence_json(eq)}};
  return o;
}

Outcome run_lattice_fiber(const Config& c, double angle) {
  Outcome o;
  const ZSet a = load_zset(only_input(c, "ZSet"));
  const cd zeta = std::polar(1.0, angle);
  const FiberPair f = direct_integral_factor(a, zeta);
  const double unit = op_norm(f.u.adjoint() * f.u - identity(f.period));
  o.require(unit <= 1e-12, "U0 is not unitary");
  const int comm = commutant_dimension(f.u, f.p);
  o.results = {{"period", f.period},
               {"U0", matrix_to_json(f.u)},
               {"P0", matrix_to_json(f.p)},
               {"unitarity_defect", unit},
               {"commutant_dimension", comm},
               {"irreducible", comm == 1}};
  if (f.period == 2) {
    WindowedOp s0 = shift_operator(1, c.n), s1 = s0;
    s0.matrix *= zeta;
    const BiIsometry rot{s0, s1, s0.domain.filter([&](const Label& l) { return l.grade <= c.n - 2; })};
    const EquivalenceResult eq =
        pair_equivalence(bcl_from_biisometry(biisometry_from_bcl(make_bcl(f.u, f.p), c.n), c.tol()),
                         bcl_from_biisometry(rot, c.tol()), 8, c.tol());
    o.require(eq.verdict == Equivalence::equivalent && eq.residual <= 1e-8, "fiber is not equivalent to (zeta S, S)");
    o.results["rotated_shift"] = equivalence_json(eq);
  }
  return o;
}

Outcome run_lattice_commutant(const Config& c) {
  Outcome o;
  const BCLPair b = bcl_from_json(read_json_file(only_input(c, "pair")));
  const int d = commutant_dimension(b.u, b.p);
  o.results = {{"commutant_dimension", d}, {"irreducible", d == 1}};
  return o;
}

Outcome run_paper_examples(const Config& c) {
  (void)c;
  Outcome o;
  json list = json::array();
  auto add = [&](const char* group, const std::vector<Check>& checks) {
    for (const Check& k : checks) {
      list.push_back({{"group", group}, {"name", k.name}, {"pass", k.pass}, {"value", k.value}, {"tol", k.tol},
                      {"detail", k.detail}});
      o.require(k.pass, std::string(group) + "/" + k.name);
    }
  };
  add("l2_example", section6_checks());
  add("lattice", section8_checks(suite_seed()));
  o.results = {{"checks", list}, {"seed", suite_seed()}};
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bi-isometry models, invariants and lattice classification", "biiso"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Config cfg;
  std::vector<std::string> symbol, pair, zset, staircase, biiso, op;
  int depth = 0, kmax = 8, steps = 400, words = 8, count = 6;
  long pad = 4;
  double angle = 0.0;
  std::string csv;
  bool emit_matrices = false;

  auto common = [&](CLI::App* s) {
    s->add_option("--n", cfg.n, "truncation N (grades)")->check(CLI::Range(4, 512));
    s->add_option("--k", cfg.k, "boundary samples K")->check(CLI::Range(8, 4096));
    s->add_option("--eq-tol", cfg.eq_tol, "equality tolerance")->check(CLI::PositiveNumber);
    s->add_option("--rank-tol", cfg.rank_tol, "rank tolerance")->check(CLI::PositiveNumber);
    s->add_option("--out", cfg.out, "write the report here instead of stdout");
  };
  auto file_opt = [](CLI::App* s, const char* name, std::vector<std::string>& dst, const char* help, bool required = true) {
    auto* o = s->add_option(name, dst, help)->check(CLI::ExistingFile);
    if (required) o->required();
    return o;
  };

  auto* wold = app.add_subcommand("wold", "Wold decomposition of one isometry");
  common(wold);
  file_opt(wold, "--op", op, "operator file");
  wold->add_option("--depth", depth, "orbit depth (0: interior grades)")->check(CLI::NonNegativeNumber);

  auto* model = app.add_subcommand("model", "build W(Theta), recover Theta, purity report");
  common(model);
  file_opt(model, "--symbol", symbol, "symbol file");
  model->add_option("--kmax", kmax, "largest recovered coefficient")->check(CLI::Range(0, 64));

  auto* charfn = app.add_subcommand("charfn", "characteristic function of a bi-isometry");
  common(charfn);
  file_opt(charfn, "--biiso", biiso, "bi-isometry file");
  charfn->add_option("--kmax", kmax, "largest coefficient")->check(CLI::Range(0, 64));

  auto* bcl = app.add_subcommand("bcl", "(U, P) pairs");
  bcl->require_subcommand(1);
  auto* extract = bcl->add_subcommand("extract", "pair of a bi-isometry or of a model");
  common(extract);
  file_opt(extract, "--biiso", biiso, "bi-isometry file", false);
  file_opt(extract, "--symbol", symbol, "symbol file", false);
  auto* build = bcl->add_subcommand("build", "bi-isometry of a pair");
  common(build);
  file_opt(build, "--pair", pair, "pair file");
  build->add_flag("--emit", emit_matrices, "include W0 and W1 in the report");
  auto* fsym = bcl->add_subcommand("from-symbol", "pair computed from the symbol");
  common(fsym);
  file_opt(fsym, "--symbol", symbol, "symbol file");
  fsym->add_option("--words", words, "trace word length")->check(CLI::Range(0, 12));
  auto* rt = bcl->add_subcommand("roundtrip", "pair -> bi-isometry -> pair");
  common(rt);
  file_opt(rt, "--pair", pair, "pair file");
  rt->add_option("--words", words, "trace word length")->check(CLI::Range(0, 12));
  auto* eqv = bcl->add_subcommand("equiv", "unitary equivalence of two pairs");
  common(eqv);
  file_opt(eqv, "--pair", pair, "pair file (twice)");
  eqv->add_option("--words", words, "trace word length")->check(CLI::Range(0, 12));

  auto* bish = app.add_subcommand("bishift", "bi-shift report");
  common(bish);
  file_opt(bish, "--symbol", symbol, "symbol file");
  bish->add_option("--steps", steps, "powers of W0*, W1*")->check(CLI::Range(1, 100000));
  bish->add_option("--csv", csv, "write the decay sequences as CSV");

  auto* dbl = app.add_subcommand("double", "doubly commuting report");
  common(dbl);
  file_opt(dbl, "--symbol", symbol, "symbol file");

  auto* lat = app.add_subcommand("lattice", "integer sets, staircases and their pairs");
  lat->require_subcommand(1);
  auto* period = lat->add_subcommand("period", "minimal period and irreducibility");
  common(period);
  file_opt(period, "--zset", zset, "set file");
  auto* classify = lat->add_subcommand("classify", "translation equivalence of two sets");
  common(classify);
  file_opt(classify, "--zset", zset, "set file (twice)");
  auto* stair = lat->add_subcommand("staircase", "set <-> staircase");
  common(stair);
  file_opt(stair, "--zset", zset, "set file", false);
  file_opt(stair, "--staircase", staircase, "staircase file", false);
  stair->add_option("--pad", pad, "extra steps on each side")->check(CLI::Range(0, 1000));
  auto* restrict_ = lat->add_subcommand("restrict", "restriction of the two multiplications to a staircase set");
  common(restrict_);
  file_opt(restrict_, "--zset", zset, "set file", false);
  file_opt(restrict_, "--staircase", staircase, "staircase file", false);
  restrict_->add_option("--count", count, "window half-width")->check(CLI::Range(4, 64));
  restrict_->add_option("--words", words, "trace word length")->check(CLI::Range(0, 12));
  auto* fiber = lat->add_subcommand("fiber", "direct-integral factor at zeta = exp(i angle)");
  common(fiber);
  file_opt(fiber, "--zset", zset, "set file");
  fiber->add_option("--angle", angle, "argument of zeta");
  auto* comm = lat->add_subcommand("commutant", "commutant dimension of a pair");
  common(comm);
  file_opt(comm, "--pair", pair, "pair file");

  auto* paper = app.add_subcommand("paper-examples", "golden checks for the l2 example and lattice sets");
  common(paper);

  if (argc <= 1) {
    std::cerr << app.help();
    return 1;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cerr << app.help();
    return 1;
  }

  auto pick = [](std::initializer_list<std::vector<std::string>*> lists) {
    std::vector<std::string> out;
    for (auto* l : lists) out.insert(out.end(), l->begin(), l->end());
    return out;
  };
  cfg.inputs = pick({&symbol, &pair, &zset, &staircase, &biiso, &op});

  try {
    Outcome o;
    if (wold->parsed()) {
      cfg.command = "wold";
      cfg.extra["depth"] = depth;
      o = run_wold(cfg, depth);
    } else if (model->parsed()) {
      cfg.command = "model";
      cfg.extra["kmax"] = kmax;
      o = run_model(cfg, kmax);
    } else if (charfn->parsed()) {
      cfg.command = "charfn";
      cfg.extra["kmax"] = kmax;
      o = run_charfn(cfg, kmax);
    } else if (extract->parsed()) {
      cfg.command = "bcl extract";
      if (biiso.size() + symbol.size() != 1) throw InputError("bcl extract needs one of --biiso or --symbol");
      o = run_bcl_extract(cfg, !symbol.empty());
    } else if (build->parsed()) {
      cfg.command = "bcl build";
      o = run_bcl_build(cfg, emit_matrices);
    } else if (fsym->parsed()) {
      cfg.command = "bcl from-symbol";
      cfg.extra["words"] = words;
      o = run_bcl_from_symbol(cfg, words);
    } else if (rt->parsed()) {
      cfg.command = "bcl roundtrip";
      cfg.extra["words"] = words;
      o = run_bcl_roundtrip(cfg, words);
    } else if (eqv->parsed()) {
      cfg.command = "bcl equiv";
      cfg.extra["words"] = words;
      o = run_bcl_equiv(cfg, words);
    } else if (bish->parsed()) {
      cfg.command = "bishift";
      cfg.extra["steps"] = steps;
      if (!csv.empty()) cfg.extra["csv"] = csv;
      o = run_bishift(cfg, steps, csv);
    } else if (dbl->parsed()) {
      cfg.command = "double";
      o = run_double(cfg);
    } else if (period->parsed()) {
      cfg.command = "lattice period";
      o = run_lattice_period(cfg);
    } else if (classify->parsed()) {
      cfg.command = "lattice classify";
      o = run_lattice_classify(cfg);
    } else if (stair->parsed()) {
      cfg.command = "lattice staircase";
      if (zset.size() + staircase.size() != 1) throw InputError("lattice staircase needs one of --zset or --staircase");
      cfg.extra["pad"] = pad;
      o = run_lattice_staircase(cfg, !staircase.empty(), pad);
    } else if (restrict_->parsed()) {
      cfg.command = "lattice restrict";
      if (zset.size() + staircase.size() != 1) throw InputError("lattice restrict needs one of --zset or --staircase");
      cfg.extra["count"] = count;
      cfg.extra["words"] = words;
      o = run_lattice_restrict(cfg, !staircase.empty(), count, words);
    } else if (fiber->parsed()) {
      cfg.command = "lattice fiber";
      cfg.extra["angle"] = angle;
      o = run_lattice_fiber(cfg, angle);
    } else if (comm->parsed()) {
      cfg.command = "lattice commutant";
      o = run_lattice_commutant(cfg);
    } else if (paper->parsed()) {
      cfg.command = "paper-examples";
      cfg.extra["seed"] = suite_seed();
      o = run_paper_examples(cfg);
    }
    emit(cfg, o);
    return o.failed ? 2 : 0;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
