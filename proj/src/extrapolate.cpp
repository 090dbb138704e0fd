#include "kinterp/extrapolate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "parallel.hpp"

namespace kinterp {

double theta_of_t(double t) {
  if (!(t > 0.0 && t <= 1.0)) fail(ErrorCode::argument, "theta(t) is defined on (0,1]");
  return 1.0 - 0.5 / (1.0 - std::log(t));
}

double xi_of_t(double t) {
  if (!(t > 0.0 && t <= 1.0)) fail(ErrorCode::argument, "xi(t) is defined on (0,1]");
  return 0.5 / (1.0 - std::log(t));
}

double eta_of_t(double t) {
  if (!(t >= 1.0) || std::isinf(t)) fail(ErrorCode::argument, "eta(t) is defined on [1,inf)");
  return 0.5 / (1.0 + std::log(t));
}

double q_of_t(double t) {
  if (!(t > 0.0 && t <= 1.0)) fail(ErrorCode::argument, "q(t) is defined on (0,1]");
  return 2.0 * (1.0 - std::log(t));
}

double p_of_n(double n) {
  if (!(n >= 1.0)) fail(ErrorCode::argument, "p(n) is defined for n >= 1");
  double L = 2.0 * (1.0 + std::log(n));
  return L / (L - 1.0);
}

namespace {

LogGrid unit_grid(const LogGrid& g) { return g.ext() == 0 ? g : LogGrid::with_last_index(g.last(), g.ppo()); }

}  // namespace

SampledFunction extrap_inner(const ProfileNorm& K, const LogGrid& g0, double q) {
  LogGrid g = unit_grid(g0);
  std::vector<double> v(g.size());
  for (int k = 0; k <= g.last(); ++k) {
    double t = g.node(k);
    v[g.pos(k)] = t * K.norm({theta_of_t(t), q}, true, true);
  }
  return SampledFunction(g, std::move(v), Measure::ds_over_s);
}

SampledFunction extrap_inner(const ProfileNorm& K, const LogGrid& g0, const std::function<double(double)>& q_at) {
  LogGrid g = unit_grid(g0);
  std::vector<double> v(g.size());
  for (int k = 0; k <= g.last(); ++k) {
    double t = g.node(k);
    v[g.pos(k)] = t * K.norm({theta_of_t(t), q_at(t)}, true, true);
  }
  return SampledFunction(g, std::move(v), Measure::ds_over_s);
}

NormResult extrap_norm_K(const ProfileNorm& K, const LogGrid& g, const LatticeParam& F, double q) {
  return lattice_norm(extrap_inner(K, g, q), F);
}

bool RatioWindow::finite() const { return count > 0 && min > 0.0 && std::isfinite(max); }

RatioWindow make_window(const std::vector<double>& ratios, const std::vector<std::string>& ids) {
  RatioWindow w;
  w.count = ratios.size();
  if (ratios.empty()) return w;
  std::vector<double> s = ratios;
  std::sort(s.begin(), s.end());
  w.min = s.front();
  w.max = s.back();
  std::size_t n = s.size();
  w.median = n % 2 ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (ratios[i] == w.min && w.argmin.empty()) w.argmin = ids[i];
    if (ratios[i] == w.max && w.argmax.empty()) w.argmax = ids[i];
  }
  return w;
}

double window_drift(const RatioWindow& a, const RatioWindow& b) {
  if (!a.finite() || !b.finite()) return kInf;
  return std::max(std::abs(b.min / a.min - 1.0), std::abs(b.max / a.max - 1.0));
}

namespace {

// cases[F][profile]
std::vector<std::vector<BaseqCase>> baseq_cases(const std::vector<NamedProfile>& profs, const std::vector<LatticeParam>& lattices,
                                                const LogGrid& grid, double q, std::size_t workers) {
  std::vector<std::vector<BaseqCase>> out(lattices.size(), std::vector<BaseqCase>(profs.size()));
  detail::parallel_for(profs.size(), workers, [&](std::size_t i) {
    QuasiConcaveProfile K = profs[i].make(grid);
    ProfileNorm pn(K);
    SampledFunction tg = extrap_inner(pn, grid, q);
    SampledFunction Ks = K.sample(unit_grid(grid));
    for (std::size_t f = 0; f < lattices.size(); ++f) {
      NormResult ne = lattice_norm(tg, lattices[f]);
      NormResult nl = lattice_norm(Ks, lattices[f]);
      BaseqCase c;
      c.id = profs[i].id;
      c.extrap = ne.truncated_value;
      c.lattice = nl.truncated_value;
      c.extrap_divergent = ne.divergent || profs[i].order0 < 1.0;
      c.lattice_divergent = nl.divergent;
      c.excluded = c.extrap_divergent != c.lattice_divergent || !(c.lattice > 0.0);
      c.ratio = c.excluded ? 0.0 : c.extrap / c.lattice;
      out[f][i] = c;
    }
  });
  return out;
}

RatioWindow window_of(const std::vector<BaseqCase>& cases) {
  std::vector<double> r;
  std::vector<std::string> ids;
  for (const auto& c : cases)
    if (!c.excluded) {
      r.push_back(c.ratio);
      ids.push_back(c.id);
    }
  return make_window(r, ids);
}

}  // namespace

std::vector<BaseqReport> verify_baseq(const std::vector<NamedProfile>& corpus, const std::vector<NamedProfile>& extension,
                                      const std::vector<LatticeParam>& lattices, const LogGrid& grid,
                                      const BaseqOptions& opt) {
  std::size_t workers = opt.workers;
  std::size_t half = extension.size() / 2;
  std::vector<NamedProfile> base = corpus;
  base.insert(base.end(), extension.begin(), extension.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<NamedProfile> rest(extension.begin() + static_cast<std::ptrdiff_t>(half), extension.end());

  LogGrid fine(grid.t_min(), 2 * grid.ppo());
  auto c_base = baseq_cases(base, lattices, grid, opt.q, workers);
  auto c_fine = baseq_cases(base, lattices, fine, opt.q, workers);
  auto c_rest = baseq_cases(rest, lattices, grid, opt.q, workers);

  std::vector<BaseqReport> out;
  for (std::size_t f = 0; f < lattices.size(); ++f) {
    BaseqReport r;
    r.F = lattices[f];
    r.q = opt.q;
    r.cases = c_base[f];
    r.window = window_of(c_base[f]);
    r.window_refined = window_of(c_fine[f]);
    std::vector<BaseqCase> ext = c_base[f];
    ext.insert(ext.end(), c_rest[f].begin(), c_rest[f].end());
    r.window_extended = window_of(ext);
    r.cases = ext;
    r.refine_drift = window_drift(r.window, r.window_refined);
    r.corpus_drift = window_drift(r.window, r.window_extended);
    r.floor_ok = true;
    for (const auto& c : ext)
      if (!c.excluded && c.ratio < kBasauxFloor - opt.floor_tol) r.floor_ok = false;
    std::ostringstream why;
    if (!r.window.finite()) why << "window not finite; ";
    if (!r.floor_ok) why << "ratio below 1/(2 sqrt e); ";
    if (!(r.refine_drift < opt.drift_tol)) why << "refinement drift " << r.refine_drift << "; ";
    if (!(r.corpus_drift < opt.drift_tol)) why << "corpus extension drift " << r.corpus_drift << "; ";
    r.reason = why.str();
    r.pass = r.reason.empty();
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<double> lpn_sequence(std::span<const double> a, std::size_t N) {
  std::vector<double> out(N, 0.0);
  if (N == 0 || a.empty()) return out;
  double m = *std::max_element(a.begin(), a.end());
  if (m <= 0.0) return out;
  std::vector<double> la;
  la.reserve(a.size());
  for (double x : a)
    if (x > 0.0) la.push_back(std::log(x / m));
  auto exact = [&](std::size_t n) {
    double p = p_of_n(static_cast<double>(n));
    Accumulator acc;
    for (double l : la) acc.add(std::exp(p * l));
    return m * std::pow(acc.value(), 1.0 / p);
  };
  std::vector<std::size_t> ns;
  for (std::size_t n = 1; n <= N && n <= 64; ++n) ns.push_back(n);
  while (ns.back() < N) {
    auto nx = static_cast<std::size_t>(std::floor(static_cast<double>(ns.back()) * 1.02));
    ns.push_back(std::min(N, std::max(ns.back() + 1, nx)));
  }
  std::vector<double> vs(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) vs[i] = exact(ns[i]);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    out[ns[i] - 1] = vs[i];
    if (i + 1 < ns.size()) {
      double l0 = std::log(static_cast<double>(ns[i])), l1 = std::log(static_cast<double>(ns[i + 1]));
      for (std::size_t n = ns[i] + 1; n < ns[i + 1]; ++n) {
        double w = (std::log(static_cast<double>(n)) - l0) / (l1 - l0);
        out[n - 1] = (1.0 - w) * vs[i] + w * vs[i + 1];
      }
    }
  }
  return out;
}

SeqExtrapReport seq_extrap_norm(const SequenceData& a, const SequenceLattice& Fd, std::size_t N) {
  if (N < 2) fail(ErrorCode::argument, "sequence extrapolation needs N >= 2");
  auto sides = [&](std::size_t n) {
    std::vector<double> k(n);
    for (std::size_t i = 0; i < n; ++i) k[i] = a.partial(i + 1);
    std::vector<double> l = lpn_sequence(a.values(), n);
    return std::pair<double, double>{Fd.norm(k), Fd.norm(l)};
  };
  SeqExtrapReport r;
  auto [k, l] = sides(N);
  auto [kh, lh] = sides(N / 2);
  r.k_side = k;
  r.l_side = l;
  r.ratio = k / l;
  r.tail_drift = std::abs((kh / lh) / r.ratio - 1.0);
  return r;
}

HardyReport hardy_chain(const SequenceData& a, double p, double slack) {
  if (!(p > 1.0) || std::isinf(p)) fail(ErrorCode::argument, "Hardy chain needs 1 < p < inf");
  HardyReport r;
  r.lp = a.lp_norm(p);
  r.knorm = lp_norm_K(discrete_profile(a), {1.0 - 1.0 / p, p}, true, false);
  r.lower_ok = r.lp <= r.knorm * (1.0 + slack);
  r.upper_ok = r.knorm <= std::exp(1.0) * r.lp * (1.0 + slack);
  return r;
}

SampledFunction reiteration_surrogate(const QuasiConcaveProfile& K, const LogGrid& g0, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) fail(ErrorCode::argument, "theta must lie in (0,1)");
  LogGrid g = unit_grid(g0);
  int N = g.last();
  // C[k] = int_0^{t_k} s^-theta K(s) ds/s
  std::vector<double> C(static_cast<std::size_t>(N) + 1), f(static_cast<std::size_t>(N) + 1);
  for (int k = 0; k <= N; ++k) f[static_cast<std::size_t>(k)] = std::pow(g.node(k), -theta) * K(g.node(k));
  double tN = g.node(N);
  double beta = K(tN) / tN;
  auto below = [&](double x) { return beta * std::pow(x, 1.0 - theta) / (1.0 - theta); };
  C[static_cast<std::size_t>(N)] = below(tN);
  for (int k = N - 1; k >= 0; --k)
    C[static_cast<std::size_t>(k)] = C[static_cast<std::size_t>(k) + 1] + 0.5 * g.h() * (f[static_cast<std::size_t>(k)] + f[static_cast<std::size_t>(k) + 1]);
  std::vector<double> v(g.size());
  for (int k = 0; k <= N; ++k) {
    double x = k / (1.0 - theta);
    if (x >= N) {
      v[g.pos(k)] = below(std::pow(g.node(k), 1.0 / (1.0 - theta)));
      continue;
    }
    int j = static_cast<int>(std::floor(x));
    double w = x - j;
    v[g.pos(k)] = w == 0.0 ? C[static_cast<std::size_t>(j)]
                           : (1.0 - w) * C[static_cast<std::size_t>(j)] + w * C[static_cast<std::size_t>(j) + 1];
  }
  return SampledFunction(g, std::move(v), Measure::ds_over_s);
}

SampledFunction limiting_surrogate(const QuasiConcaveProfile& K, const LogGrid& g0, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) fail(ErrorCode::argument, "theta must lie in (0,1)");
  LogGrid g = unit_grid(g0);
  int N = g.last();
  std::vector<double> M(static_cast<std::size_t>(N) + 1);
  double run = 0.0;
  for (int k = 0; k <= N; ++k) {
    run = std::max(run, std::pow(g.node(k), -theta) * K(g.node(k)));
    M[static_cast<std::size_t>(k)] = run;
  }
  std::vector<double> v(g.size());
  for (int k = 0; k <= N; ++k) {
    int j = std::min(N, static_cast<int>(std::floor(k / theta + 1e-9)));
    v[g.pos(k)] = g.node(k) * M[static_cast<std::size_t>(j)];
  }
  return SampledFunction(g, std::move(v), Measure::ds_over_s);
}

SampledFunction k_Lp_profile(const StepRearrangement& fstar, double p, const LogGrid& g0) {
  if (!(p >= 1.0) || std::isinf(p)) fail(ErrorCode::argument, "exponent must lie in [1, inf)");
  LogGrid g = unit_grid(g0);
  const auto& br = fstar.breakpoints();
  const auto& lv = fstar.levels();
  std::vector<double> v(g.size());
  // sweep upward in x = t^p, carrying the integral of f*^p up to br[seg]
  std::size_t seg = 0;
  double acc = 0.0;
  for (int k = g.last(); k >= 0; --k) {
    double x = std::pow(g.node(k), p);
    while (seg < lv.size() && br[seg + 1] <= x) {
      acc += std::pow(lv[seg], p) * (br[seg + 1] - br[seg]);
      ++seg;
    }
    double part = seg < lv.size() && x > br[seg] ? std::pow(lv[seg], p) * (x - br[seg]) : 0.0;
    v[g.pos(k)] = std::pow(acc + part, 1.0 / p);
  }
  return SampledFunction(g, std::move(v), Measure::ds_over_s);
}

SplitReport splitting_bound(const SampledFunction& g, const LatticeParam& F, double C1, double C2) {
  SplitReport r;
  r.whole = lattice_norm(g, F).truncated_value;
  std::vector<double> head = g.values();
  const LogGrid& grid = g.grid();
  double cut = std::exp(-1.0);
  for (std::size_t i = 0; i < head.size(); ++i)
    if (grid.nodes()[i] >= cut) head[i] = 0.0;
  r.head = lattice_norm(SampledFunction(grid, head, g.measure()), F).truncated_value;
  r.bound = 1.0 + (4.0 / 3.0) * C1 * C2 * std::exp(1.0);
  r.pass = r.whole <= r.bound * r.head * (1.0 + 1e-3);
  return r;
}

}  // namespace kinterp
