#include "kinterp/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

#include "kinterp/corpus.hpp"
#include "kinterp/extrapolate.hpp"
#include "kinterp/grand.hpp"
#include "kinterp/interpnorm.hpp"
#include "kinterp/kfunctional.hpp"
#include "kinterp/lattice.hpp"
#include "kinterp/schatten.hpp"
#include "parallel.hpp"

#ifndef KINTERP_DEFAULT_BASELINE
#define KINTERP_DEFAULT_BASELINE "data/baselines.json"
#endif

namespace kinterp {

namespace {

using Clock = std::chrono::steady_clock;

Assertion check_le(std::string name, double value, double bound, std::string repro = {}) {
  return {std::move(name), value, bound, value <= bound, std::move(repro)};
}

Assertion check_true(std::string name, bool ok, std::string repro = {}) {
  return {std::move(name), ok ? 1.0 : 0.0, 1.0, ok, std::move(repro)};
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

WindowStat window_stat(const std::string& name, const RatioWindow& w, double drift) {
  return {name, w.min, w.median, w.max, w.count, drift};
}

std::string repro(const SuiteConfig& cfg, const std::string& suite, const std::string& id) {
  return "kinterp suite " + suite + " --seed " + std::to_string(cfg.seed) + " --grid-ppo " + std::to_string(cfg.ppo) +
         " --tmin " + fmt6(cfg.t_min) + " # case " + id;
}

LogGrid base_grid(const SuiteConfig& c) { return LogGrid(c.t_min, c.ppo); }
LogGrid fine_grid(const SuiteConfig& c) { return LogGrid(c.t_min, 2 * c.ppo); }

// ---------------------------------------------------------------- wtilde
void suite_wtilde(VerificationReport& r, const SuiteConfig& cfg) {
  LogGrid g = base_grid(cfg);
  auto one = SampledFunction::from(g, [](double) { return 1.0; }, Measure::ds_over_s);
  TildeResult w = tilde_weight(one);
  double worst = 0.0;
  int arg = 0;
  for (int k = 0; k <= g.last(); ++k) {
    double exact = 1.0 - std::log(g.node(k));
    double e = rel(w.value.at(k), exact);
    if (e > worst) worst = e, arg = k;
  }
  r.assertions.push_back(check_le("w=1: max rel. error vs 1+log(1/t)", worst, 1e-6, repro(cfg, "wtilde", "k=" + std::to_string(arg))));

  auto wa = SampledFunction::from(g, [](double t) { return 1.0 - std::log(t); }, Measure::ds_over_s);
  TildeResult t1 = tilde_weight(wa);
  double lo = kInf, hi = 0.0;
  bool monotone = true;
  for (int k = 0; k <= g.last(); ++k) {
    double L = 1.0 - std::log(g.node(k));
    double q = t1.value.at(k) / (L * L);
    lo = std::min(lo, q);
    hi = std::max(hi, q);
    if (k > 0 && t1.value.at(k) < t1.value.at(k - 1)) monotone = false;
  }
  r.windows.push_back({"w_1~ / log(e/t)^2", lo, 0.5 * (lo + hi), hi, static_cast<std::size_t>(g.last() + 1), 0.0});
  r.assertions.push_back(check_le("w_1: ratio window upper end", hi, 4.0));
  r.assertions.push_back(check_le("w_1: ratio window lower end (reciprocal)", 1.0 / lo, 4.0));
  r.assertions.push_back(check_true("w_1~ nonincreasing in t", monotone));
}

// ---------------------------------------------------------------- calib
void suite_calib(VerificationReport& r, const SuiteConfig&) {
  QuasiConcaveProfile K({1.0}, {1.0});
  double worst = 0.0;
  std::string where;
  for (int i = 1; i <= 9; ++i)
    for (double q : {1.0, 2.0, 5.0, kInf}) {
      double th = 0.1 * i;
      double v = lp_norm_K(K, {th, q}, true, false);
      double e = std::abs(v - 1.0);
      r.cases.push_back({"theta=" + fmt6(th) + ",q=" + fmt6(q), {{"norm", v}}});
      if (e > worst) worst = e, where = r.cases.back().id;
    }
  r.assertions.push_back(check_le("normalized full norm of min(t,1): max |v-1|", worst, 1e-6, where));
}

// ---------------------------------------------------------------- equivK
void suite_equivK(VerificationReport& r, const SuiteConfig& cfg) {
  auto canon = conv0_canonical();
  std::size_t n_rand = canon.size() < 200 ? 200 - canon.size() : 0;
  auto profs = conv0_corpus(n_rand, cfg.seed);
  LogGrid g = base_grid(cfg);
  std::vector<ThetaQ> cells;
  for (int i = 1; i <= 9; ++i)
    for (double q : {1.0, 2.0, kInf}) cells.push_back({0.1 * i, q});
  struct Row {
    std::size_t violations = 0;
    double worst = 0.0;  // largest ratio / bound
    std::string first;
  };
  std::vector<Row> rows(profs.size());
  detail::parallel_for(profs.size(), cfg.workers, [&](std::size_t i) {
    ProfileNorm pn(profs[i].make(g));
    for (const auto& c : cells) {
      EquivKReport e = check_equivK(pn, c);
      rows[i].worst = std::max(rows[i].worst, e.ratio / e.bound);
      if (!e.pass) {
        if (rows[i].violations++ == 0) rows[i].first = "theta=" + fmt6(c.theta) + ",q=" + fmt6(c.q);
      }
    }
  });
  std::size_t total = 0;
  double worst = 0.0;
  std::string first;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    total += rows[i].violations;
    worst = std::max(worst, rows[i].worst);
    if (first.empty() && rows[i].violations) first = profs[i].id + " " + rows[i].first;
    r.cases.push_back({profs[i].id, {{"max_ratio_over_bound", rows[i].worst}, {"violations", double(rows[i].violations)}}});
  }
  r.notes.push_back(std::to_string(profs.size()) + " profiles x " + std::to_string(cells.size()) + " (theta,q) cells");
  r.assertions.push_back(check_le("violations of the equivK chain", double(total), 0.0, first.empty() ? "" : repro(cfg, "equivK", first)));
  r.assertions.push_back(check_le("max full/restricted over bound", worst, 1.0 + 1e-3));
}

// ---------------------------------------------------------------- basaux
std::vector<NamedProfile> baseq_corpus(const SuiteConfig& cfg) { return conv0_corpus(100, cfg.seed); }

void suite_basaux(VerificationReport& r, const SuiteConfig& cfg) {
  auto profs = baseq_corpus(cfg);
  auto steep = steep_family(20);
  profs.insert(profs.end(), steep.begin(), steep.end());
  LogGrid g = base_grid(cfg);
  for (double q : {1.0, kInf}) {
    std::vector<double> worst(profs.size(), kInf);
    std::vector<int> argk(profs.size(), 0);
    detail::parallel_for(profs.size(), cfg.workers, [&](std::size_t i) {
      QuasiConcaveProfile K = profs[i].make(g);
      SampledFunction lhs = extrap_inner(ProfileNorm(K), g, q);
      for (int k = 0; k <= g.last(); ++k) {
        double gap = lhs.at(k) - kBasauxFloor * K(g.node(k));
        if (gap < worst[i]) worst[i] = gap, argk[i] = k;
      }
    });
    double w = kInf;
    std::string where;
    for (std::size_t i = 0; i < profs.size(); ++i)
      if (worst[i] < w) w = worst[i], where = profs[i].id + " k=" + std::to_string(argk[i]);
    r.assertions.push_back(
        check_le("q=" + fmt6(q) + ": max over nodes of floor*K(t) - t|a|", -w, 1e-9, repro(cfg, "basaux", where)));
  }
  r.notes.push_back(std::to_string(profs.size()) + " profiles, floor 1/(2 sqrt e) = " + fmt6(kBasauxFloor));
}

// ---------------------------------------------------------------- baseq
void suite_baseq(VerificationReport& r, const SuiteConfig& cfg) {
  std::vector<LatticeParam> lat;
  bool with_control = cfg.lattices.empty();
  if (with_control) {
    lat = {LatticeParam::F(1.0, 1.0), LatticeParam::fk(2.0), LatticeParam::l1_ds_over_s(), LatticeParam::linf()};
  } else {
    for (const auto& s : cfg.lattices) lat.push_back(LatticeParam::parse(s));
  }
  auto corpus = baseq_corpus(cfg);
  auto ext = steep_family(20);
  LogGrid g = base_grid(cfg);
  std::map<double, std::vector<BaseqReport>> by_q;
  for (double q : {1.0, kInf}) {
    BaseqOptions opt;
    opt.q = q;
    opt.workers = cfg.workers;
    by_q[q] = verify_baseq(corpus, ext, lat, g, opt);
  }
  // empirical T-norm on each lattice, the precondition of the equivalence
  auto lc = lattice_corpus(g, 100, cfg.seed);
  for (std::size_t f = 0; f < lat.size(); ++f) {
    std::string F = lat[f].to_string();
    bool control = with_control && f + 1 == lat.size();
    OpEstimate tn = estimate_op_norm(apply_T, lat[f], lc);
    r.notes.push_back(F + ": empirical |T| >= " + fmt6(tn.value) + " over " + std::to_string(tn.used) + " functions");
    bool all_pass = true;
    for (double q : {1.0, kInf}) {
      const BaseqReport& b = by_q[q][f];
      std::string tag = F + " q=" + fmt6(q);
      r.windows.push_back(window_stat(tag + " base", b.window, b.refine_drift));
      r.windows.push_back(window_stat(tag + " extended", b.window_extended, b.corpus_drift));
      all_pass = all_pass && b.pass;
      if (!control) {
        r.assertions.push_back(check_true(tag + ": window finite", b.window.finite()));
        r.assertions.push_back(check_true(tag + ": floor 1/(2 sqrt e) respected", b.floor_ok));
        r.assertions.push_back(check_le(tag + ": refinement drift", b.refine_drift, 0.05, repro(cfg, "baseq", b.window.argmax)));
        r.assertions.push_back(
            check_le(tag + ": corpus extension drift", b.corpus_drift, 0.05, repro(cfg, "baseq", b.window_extended.argmax)));
      }
      std::size_t excl = 0;
      for (const auto& c : b.cases) excl += c.excluded;
      if (excl) r.notes.push_back(tag + ": " + std::to_string(excl) + " profiles excluded (divergent on one side only)");
    }
    if (control) {
      r.assertions.push_back(check_true(F + ": negative control fails", !all_pass));
      continue;
    }
    const RatioWindow& w1 = by_q[1.0][f].window;
    const RatioWindow& wi = by_q[kInf][f].window;
    double spread = 0.0;
    if (w1.finite() && wi.finite())
      spread = std::max({w1.min / wi.min, wi.min / w1.min, w1.max / wi.max, wi.max / w1.max});
    else
      spread = kInf;
    r.assertions.push_back(check_le(F + ": q=1 vs q=inf window endpoints", spread, 8.0));
    // splitting bound with the measured embedding constants
    double C1 = lattice_norm(SampledFunction::from(g, [](double t) { return t; }, Measure::ds_over_s), lat[f]).value;
    double C2 = 0.0;
    for (const auto& fn : lc) {
      NormResult n = lattice_norm(fn, lat[f]);
      if (!n.divergent && n.value > 0.0) C2 = std::max(C2, sup_norm(fn, {0.0, 0.0}) / n.value);
    }
    if (std::isfinite(C1) && C1 > 0.0 && C2 > 0.0) {
      double worst = 0.0;
      for (const auto& p : corpus) {
        SampledFunction gt = extrap_inner(ProfileNorm(p.make(g)), g, 1.0);
        SplitReport s = splitting_bound(gt, lat[f], C1, C2);
        if (s.head > 0.0) worst = std::max(worst, s.whole / s.head);
      }
      r.assertions.push_back(check_le(F + ": splitting |g|/|g chi(0,1/e)|", worst, 1.0 + (4.0 / 3.0) * C1 * C2 * std::exp(1.0)));
    }
  }
}

// ---------------------------------------------------------------- tnorm
void suite_tnorm(VerificationReport& r, const SuiteConfig& cfg) {
  LogGrid g = base_grid(cfg);
  auto lc = lattice_corpus(g, 100, cfg.seed);
  OpEstimate e = estimate_op_norm(apply_T, LatticeParam::linf_over_t(), lc);
  r.cases.push_back({"Linf(1/t)", {{"estimate", e.value}, {"used", double(e.used)}}});
  r.assertions.push_back(check_le("|T| on Linf(1/t): |est - 1|", std::abs(e.value - 1.0), 1e-9));
  for (double b : {1.0, 2.0})
    for (double q : {1.0, 2.0}) {
      LatticeParam F = LatticeParam::F(b, q);
      OpEstimate t = estimate_op_norm(apply_T, F, lc);
      double bound = std::pow(2.0, (b - 1.0) / q);
      // substituting u = s^2 in the norm integral gives 2^{b - 1/q}
      double derived = std::pow(2.0, b - 1.0 / q);
      r.cases.push_back({F.to_string(),
                         {{"estimate", t.value}, {"bound", bound}, {"derived_bound", derived}, {"used", double(t.used)}, {"argmax", double(t.argmax)}}});
      r.notes.push_back(F.to_string() + ": estimate " + fmt6(t.value) + ", stated bound " + fmt6(bound) +
                        ", bound from the substitution " + fmt6(derived));
      r.assertions.push_back(check_le("|T| on F_{" + fmt6(b) + "," + fmt6(q) + "}", t.value, bound + 1e-6,
                                      repro(cfg, "tnorm", "corpus member " + std::to_string(t.argmax))));
    }
}

// ---------------------------------------------------------------- fk
void suite_fk(VerificationReport& r, const SuiteConfig& cfg) {
  GrandParams gp(2.0, 1.0);
  StepRearrangement one({0.0, 1.0}, {1.0});
  double d = grand_norm_def(one, gp);
  double f = grand_norm_fk(one, gp);
  // dense scan of the closed form for f = 1
  double ref = 0.0;
  for (int i = 1; i < 200000; ++i) {
    double t = i / 200000.0;
    ref = std::max(ref, (1.0 - t) / (1.0 - std::log(t)));
  }
  ref = std::sqrt(ref);
  r.assertions.push_back(check_le("f=1: |def - 1|", std::abs(d - 1.0), 2e-3));
  r.assertions.push_back(check_le("f=1: |fk - scan|", std::abs(f - ref), 1e-3));
  auto corpus = rearrangement_corpus(0.51, 10, cfg.seed);
  auto ratios = [&](const LogGrid& g) {
    std::vector<double> v(corpus.size());
    detail::parallel_for(corpus.size(), cfg.workers, [&](std::size_t i) {
      StepRearrangement s = corpus[i].make(g);
      v[i] = grand_norm_def(s, gp) / grand_norm_fk(s, gp);
    });
    return v;
  };
  std::vector<std::string> ids;
  for (const auto& c : corpus) ids.push_back(c.id);
  auto r0 = ratios(base_grid(cfg));
  auto r1 = ratios(fine_grid(cfg));
  RatioWindow w0 = make_window(r0, ids), w1 = make_window(r1, ids);
  double drift = window_drift(w0, w1);
  for (std::size_t i = 0; i < ids.size(); ++i) r.cases.push_back({ids[i], {{"def/fk", r0[i]}, {"def/fk refined", r1[i]}}});
  r.windows.push_back(window_stat("def/fk", w0, drift));
  r.assertions.push_back(check_true("def/fk window finite", w0.finite()));
  r.assertions.push_back(check_le("def/fk refinement drift", drift, 0.05, repro(cfg, "fk", w0.argmax)));
}

// ---------------------------------------------------------------- pisier
void suite_pisier(VerificationReport& r, const SuiteConfig& cfg) {
  auto inst = pisier_corpus(100, cfg.seed);
  double worst = 0.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    double mass = 0.0;
    for (const auto& a : inst[i].atoms)
      for (double l : a.lengths) mass += a.mu * l;
    double e = 0.0;
    for (int j = 0; j <= 64; ++j) {
      double t = mass * std::pow(10.0, -3.0 + 3.3 * j / 64.0);
      double w = pisier_k(t, inst[i]), p = pisier_product_k(t, inst[i]);
      e = std::max(e, rel(w, p));
    }
    r.cases.push_back({"instance:" + std::to_string(i), {{"max_rel_diff", e}, {"atoms", double(inst[i].atoms.size())}}});
    if (e > worst) worst = e, arg = i;
  }
  r.assertions.push_back(check_le("water-filling vs product rearrangement", worst, 1e-6,
                                  repro(cfg, "pisier", "instance " + std::to_string(arg))));
  // single atom and identical pair
  Atom a{1.0, {3.0, 1.0, 0.5}, {0.2, 0.3, 0.5}};
  VectorValuedInstance single{{a}};
  double e1 = 0.0;
  for (double t : {0.05, 0.2, 0.4, 0.9, 1.0, 2.0}) e1 = std::max(e1, rel(pisier_k(t, single), a.k(t)));
  VectorValuedInstance pair{{Atom{0.5, {1.0}, {1.0}}, Atom{0.5, {1.0}, {1.0}}}};
  double e2 = 0.0;
  for (double t : {0.1, 0.25, 0.5, 0.75, 1.0}) {
    e2 = std::max(e2, rel(pisier_k(t, pair), t));
    e2 = std::max(e2, rel(pisier_product_k(t, pair), t));
  }
  r.assertions.push_back(check_le("single atom equals its own K", e1, 1e-12));
  r.assertions.push_back(check_le("identical pair gives K(t) = t", e2, 1e-12));
}

// ---------------------------------------------------------------- hardy
void suite_hardy(VerificationReport& r, const SuiteConfig& cfg) {
  auto seqs = sequence_corpus(100, cfg.seed);
  std::size_t bad = 0;
  std::string first;
  double lo = kInf, hi = 0.0;
  for (const auto& s : seqs)
    for (double p : {1.5, 2.0, 4.0}) {
      HardyReport h = hardy_chain(s.a, p);
      double q = h.knorm / h.lp;
      lo = std::min(lo, q);
      hi = std::max(hi, q);
      if (!(h.lower_ok && h.upper_ok)) {
        if (bad++ == 0) first = s.id + " p=" + fmt6(p);
      }
    }
  r.windows.push_back({"K-norm / l^p norm", lo, 0.5 * (lo + hi), hi, seqs.size() * 3, 0.0});
  r.assertions.push_back(check_le("Hardy chain violations", double(bad), 0.0, first.empty() ? "" : repro(cfg, "hardy", first)));
  r.assertions.push_back(check_le("min ratio >= 1 (reciprocal)", 1.0 / lo, 1.0 + 1e-3));
  r.assertions.push_back(check_le("max ratio <= e", hi, std::exp(1.0) * (1.0 + 1e-3)));
}

// ---------------------------------------------------------------- matsaev
void suite_matsaev(VerificationReport& r, const SuiteConfig& cfg) {
  for (std::size_t n : {64, 128}) {
    CompactOperator V = volterra(n);
    auto [R, J] = components(V);
    std::string tag = "n=" + std::to_string(n);
    r.assertions.push_back(check_le(tag + ": |s1(V_R) - 1/2|", std::abs(R.s()[0] - 0.5), 1e-10));
    r.assertions.push_back(check_le(tag + ": s2(V_R)", R.s()[1], 1e-10));
    for (double p : {1.1, 1.5, 2.0, 3.0}) {
      MatsaevIneqReport m = matsaev_inequality(V, p);
      r.cases.push_back({tag + " p=" + fmt6(p), {{"real", m.real_part}, {"imag", m.imag_part}, {"bound", m.bound}}});
      r.assertions.push_back(check_le(tag + " p=" + fmt6(p) + ": |V_R|_p <= max(p',p)|V_J|_p", m.real_part, m.bound));
    }
    // realized constant of the Matsaev-ideal chain
    SequenceLattice Fd = SequenceLattice::matsaev(1.0);
    double cc = xlog_norm(R.s(), Fd) / ideal_extrap(J.s(), Fd);
    r.notes.push_back(tag + ": realized C' = xlog(V_R)/ideal_extrap(V_J) = " + fmt6(cc));
  }
  // extrapolation description of the Matsaev norm on random diagonal operators
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> beta(0.5, 2.5);
  std::vector<double> ratios;
  std::vector<std::string> ids;
  for (int i = 0; i < 20; ++i) {
    double b = beta(rng);
    std::vector<double> s(256);
    for (std::size_t j = 0; j < s.size(); ++j) s[j] = std::pow(double(j + 1), -b);
    ratios.push_back(matsaev_extrap(s, 1.0, 2.0) / matsaev_norm(s, 1.0));
    ids.push_back("diag:beta=" + fmt6(b));
  }
  RatioWindow w = make_window(ratios, ids);
  r.windows.push_back(window_stat("matsaev_extrap / matsaev_norm", w, 0.0));
  r.assertions.push_back(check_true("matsaev extrapolation window finite", w.finite()));
}

// ---------------------------------------------------------------- ideals
void suite_ideals(VerificationReport& r, const SuiteConfig&) {
  SequenceLattice Fd = SequenceLattice::matsaev(1.0);
  const std::size_t N = 100000;
  std::vector<double> full, half;
  std::vector<std::string> ids;
  double worst = 0.0;
  for (double b : {0.5, 1.0, 2.0}) {
    std::vector<double> s(N);
    for (std::size_t j = 0; j < N; ++j) s[j] = std::pow(double(j + 1), -b);
    std::span<const double> all(s), head(s.data(), N / 2);
    double r1 = ideal_norm_via_F(all, Fd) / ideal_extrap(all, Fd);
    double r2 = ideal_norm_via_F(head, Fd) / ideal_extrap(head, Fd);
    full.push_back(r1);
    half.push_back(r2);
    ids.push_back("beta=" + fmt6(b));
    worst = std::max(worst, std::abs(r2 / r1 - 1.0));
    r.cases.push_back({ids.back(), {{"ratio N", r1}, {"ratio N/2", r2}, {"sd transfer", sd_transfer_ratio(all, Fd)}}});
  }
  RatioWindow w = make_window(full, ids);
  RatioWindow wh = make_window(half, ids);
  r.windows.push_back(window_stat("K-side / l^{p(n)} side, N=1e5", w, window_drift(wh, w)));
  r.assertions.push_back(check_true("window finite", w.finite()));
  r.assertions.push_back(check_le("per-case drift N -> N/2", worst, 0.05));
  r.assertions.push_back(check_le("window drift N -> N/2", window_drift(wh, w), 0.05));
}

// ---------------------------------------------------------------- limits
void suite_limits(VerificationReport& r, const SuiteConfig& cfg) {
  auto profs = baseq_corpus(cfg);
  LogGrid g = base_grid(cfg);
  for (double q : {1.0, 2.0}) {
    std::vector<LimitReport> out(profs.size());
    detail::parallel_for(profs.size(), cfg.workers, [&](std::size_t i) { out[i] = limit_theta0(profs[i].make(g), q); });
    double worst = 0.0;
    std::size_t bad = 0;
    std::string where;
    for (std::size_t i = 0; i < profs.size(); ++i) {
      if (out[i].final_rel_error > worst) worst = out[i].final_rel_error, where = profs[i].id;
      bad += !out[i].eventually_decreasing;
    }
    r.assertions.push_back(check_le("q=" + fmt6(q) + ": rel. error at theta=2^-14", worst, 0.01, repro(cfg, "limits", where)));
    r.notes.push_back("q=" + fmt6(q) + ": " + std::to_string(bad) + " profiles without a monotone tail in the last 5 steps");
  }
}

// ---------------------------------------------------------------- llogl
void suite_llogl(VerificationReport& r, const SuiteConfig& cfg) {
  LogGrid g = base_grid(cfg);
  StepRearrangement one({0.0, 1.0}, {1.0});
  SumIdentityReport id1 = verify_sum_identity(one, g);
  r.assertions.push_back(check_le("f=1: |K side - 1|", std::abs(id1.k_side.value - 1.0), 1e-3));
  r.assertions.push_back(check_le("f=1: |LLogL side - 2|", std::abs(id1.llogl_side.value - 2.0), 1e-3));

  auto corpus = rearrangement_corpus(0.6, 10, cfg.seed);
  for (double alpha : {0.5, 1.0, 2.0})
    for (LogConvention conv : {LogConvention::shifted, LogConvention::plain}) {
      std::string tag = std::string(conv == LogConvention::shifted ? "log(e/s)" : "log(1/s)") + " alpha=" + fmt6(alpha);
      auto run = [&](const LogGrid& gg, std::size_t& flagged) {
        std::vector<double> v(corpus.size());
        std::vector<int> fl(corpus.size(), 0);
        detail::parallel_for(corpus.size(), cfg.workers, [&](std::size_t i) {
          StepRearrangement f = corpus[i].make(gg);
          SideValue k = k_side_llogl(f, alpha, gg, conv);
          SideValue l = llogl_alpha_norm(f, alpha);
          fl[i] = k.divergent || l.divergent;
          v[i] = k.value / l.value;
        });
        flagged = static_cast<std::size_t>(std::count(fl.begin(), fl.end(), 1));
        return v;
      };
      std::vector<std::string> ids;
      for (const auto& c : corpus) ids.push_back(c.id);
      std::size_t f0 = 0, f1 = 0;
      RatioWindow w0 = make_window(run(g, f0), ids);
      RatioWindow w1 = make_window(run(fine_grid(cfg), f1), ids);
      double drift = window_drift(w0, w1);
      r.windows.push_back(window_stat(tag, w0, drift));
      if (conv == LogConvention::shifted) {
        r.assertions.push_back(check_true(tag + ": window finite", w0.finite()));
        r.assertions.push_back(check_le(tag + ": refinement drift", drift, 0.05, repro(cfg, "llogl", w0.argmax)));
        r.assertions.push_back(check_le(tag + ": corpus members flagged divergent", double(f0 + f1), 0.0));
      } else {
        r.notes.push_back(tag + ": window [" + fmt6(w0.min) + ", " + fmt6(w0.max) + "], drift " + fmt6(drift));
      }
    }
  // non-integrable f* log(1/s): both sides must flag together
  std::size_t agree = 0, both = 0;
  for (int ppo : {cfg.ppo, 2 * cfg.ppo}) {
    LogGrid gg(cfg.t_min, ppo);
    auto f = SampledFunction::from(gg, [](double s) { double L = 1.0 - std::log(s); return 1.0 / (s * L * L); }, Measure::ds);
    StepRearrangement fs = rearrange(f, 1.0 / (1.0 - std::log(gg.node(gg.last()))));
    SumIdentityReport d = verify_sum_identity(fs, gg);
    agree += d.flags_agree;
    both += d.k_side.divergent && d.llogl_side.divergent;
  }
  r.assertions.push_back(check_true("1/(s log^2(e/s)): both sides flagged divergent", agree == 2 && both == 2));
}

// ---------------------------------------------------------------- reiter
void suite_reiter(VerificationReport& r, const SuiteConfig& cfg) {
  auto corpus = rearrangement_corpus(0.25, 10, cfg.seed);
  std::vector<std::string> ids;
  for (const auto& c : corpus) ids.push_back(c.id);
  LatticeParam F11 = LatticeParam::F(1.0, 1.0);
  LatticeParam G = LatticeParam::l1_ds_over_s();
  struct Out {
    std::vector<double> th2, lim, holm;
  };
  auto run = [&](const LogGrid& g) {
    Out o;
    o.th2.resize(corpus.size());
    o.lim.resize(corpus.size());
    o.holm.resize(corpus.size());
    detail::parallel_for(corpus.size(), cfg.workers, [&](std::size_t i) {
      StepRearrangement f = corpus[i].make(g);
      // F_{1,1} norms of nonzero K-functionals diverge at 0; both sides are
      // compared on the grid span.
      double n4 = lattice_norm(k_Lp_profile(f, 4.0, g), F11).truncated_value;
      double n2 = lattice_norm(k_Lp_profile(f, 2.0, g), F11).truncated_value;
      o.th2[i] = n4 / n2;
      SampledFunction K = k_Lp_profile(f, 1.0, g);
      QuasiConcaveProfile Kp = QuasiConcaveProfile::from_samples(K);
      double lhs = lattice_norm(limiting_surrogate(Kp, g, 0.5), G).value;
      double rhs = lattice_norm(apply_S(K, 2.0), G).value;
      o.lim[i] = lhs / rhs;
      double h = lattice_norm(reiteration_surrogate(Kp, g, 0.5), F11).truncated_value;
      o.holm[i] = h / lattice_norm(K, F11).truncated_value;
    });
    return o;
  };
  Out a = run(base_grid(cfg)), b = run(fine_grid(cfg));
  auto add = [&](const std::string& name, const std::vector<double>& x, const std::vector<double>& y, bool assert) {
    RatioWindow w0 = make_window(x, ids), w1 = make_window(y, ids);
    double d = window_drift(w0, w1);
    r.windows.push_back(window_stat(name, w0, d));
    if (!assert) return;
    r.assertions.push_back(check_true(name + ": window finite", w0.finite()));
    r.assertions.push_back(check_le(name + ": refinement drift", d, 0.05, repro(cfg, "reiter", w0.argmax)));
  };
  add("<L4,Linf>_F11 / <L2,Linf>_F11", a.th2, b.th2, true);
  add("limiting reiteration, G = L1(ds/s)", a.lim, b.lim, true);
  add("Holmstedt surrogate theta=1/2, F11", a.holm, b.holm, false);
  for (std::size_t i = 0; i < ids.size(); ++i)
    r.cases.push_back({ids[i], {{"th2", a.th2[i]}, {"limiting", a.lim[i]}, {"holmstedt", a.holm[i]}}});
}

using SuiteFn = std::function<void(VerificationReport&, const SuiteConfig&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"wtilde", suite_wtilde}, {"calib", suite_calib},   {"equivK", suite_equivK},   {"basaux", suite_basaux},
      {"baseq", suite_baseq},   {"tnorm", suite_tnorm},   {"fk", suite_fk},           {"pisier", suite_pisier},
      {"hardy", suite_hardy},   {"matsaev", suite_matsaev}, {"ideals", suite_ideals}, {"limits", suite_limits},
      {"llogl", suite_llogl},   {"reiter", suite_reiter},
  };
  return r;
}

std::string now_utc() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

std::string SuiteConfig::describe() const {
  std::ostringstream os;
  os << "seed=" << seed << " ppo=" << ppo << " tmin=" << fmt6(t_min);
  if (!lattices.empty()) {
    os << " lattices=";
    for (std::size_t i = 0; i < lattices.size(); ++i) os << (i ? "|" : "") << lattices[i];
  }
  return os.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, _] : registry()) n.push_back(k);
    return n;
  }();
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

VerificationReport run_suite(const std::string& name, const SuiteConfig& cfg) {
  auto it = std::find_if(registry().begin(), registry().end(), [&](const auto& e) { return e.first == name; });
  if (it == registry().end()) fail(ErrorCode::usage, "unknown suite '" + name + "'");
  if (cfg.ppo < 1 || !(cfg.t_min > 0.0 && cfg.t_min < 1.0)) fail(ErrorCode::usage, "grid settings out of range");
  VerificationReport r;
  r.suite = name;
  r.spec = cfg.describe();
  if (cfg.timestamp) r.timestamp = now_utc();
  auto t0 = Clock::now();
  it->second(r, cfg);
  r.runtime = std::chrono::duration<double>(Clock::now() - t0).count();
  if (cfg.use_baselines) {
    if (cfg.is_default_grid() && cfg.lattices.empty())
      compare_baselines(r, cfg.baseline_file.empty() ? default_baseline_path() : cfg.baseline_file);
    else
      r.notes.push_back("baselines not compared for non-default settings");
  }
  r.finish();
  return r;
}

int exit_code(const std::vector<VerificationReport>& rs) {
  for (const auto& r : rs)
    if (r.status == Status::fail) return 1;
  return 0;
}

std::string default_baseline_path() { return KINTERP_DEFAULT_BASELINE; }

std::string baseline_json(const std::vector<VerificationReport>& rs) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& r : rs) {
    nlohmann::ordered_json s = nlohmann::ordered_json::object();
    for (const auto& w : r.windows)
      if (std::isfinite(w.min) && std::isfinite(w.max) && w.count > 0) s[w.name] = {{"min", w.min}, {"max", w.max}};
    if (!s.empty()) j[r.suite] = s;
  }
  return j.dump(2) + "\n";
}

void compare_baselines(VerificationReport& r, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    r.notes.push_back("no baseline file at " + path);
    return;
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(ErrorCode::io, "cannot parse baseline file " + path + ": " + e.what());
  }
  if (!j.contains(r.suite)) {
    r.notes.push_back("no baselines for this suite");
    return;
  }
  const auto& s = j[r.suite];
  for (const auto& w : r.windows) {
    if (!s.contains(w.name)) continue;
    double bmin = s[w.name].at("min").get<double>(), bmax = s[w.name].at("max").get<double>();
    double d = std::max(rel(w.min, bmin), rel(w.max, bmax));
    r.assertions.push_back(check_le("baseline " + w.name, d, 0.10));
  }
}

}  // namespace kinterp
