#include "kinterp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace kinterp {

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

namespace {

// exp(-h k) with the octave part applied by ldexp, so t_{k + ppo} = t_k / 2 exactly.
double node_value(int k, int ppo, double h) {
  int q = k >= 0 ? k / ppo : -((-k + ppo - 1) / ppo);
  int r = k - q * ppo;
  return std::ldexp(std::exp(-h * r), -q);
}

}  // namespace

LogGrid::LogGrid(double t_min, int points_per_octave, int ext) {
  if (!(t_min > 0.0 && t_min < 1.0)) fail(ErrorCode::argument, "t_min must lie in (0,1)");
  if (points_per_octave < 1) fail(ErrorCode::argument, "points_per_octave must be positive");
  if (ext < 0) fail(ErrorCode::argument, "extension length must be nonnegative");
  ppo_ = points_per_octave;
  h_ = std::log(2.0) / ppo_;
  n_ = static_cast<int>(std::ceil(std::log(1.0 / t_min) / h_ - 1e-9));
  if (n_ < 1) n_ = 1;
  while (node_value(n_, ppo_, h_) > t_min) ++n_;
  ext_ = ext;
  t_min_ = t_min;
  nodes_.resize(static_cast<std::size_t>(n_ + ext_ + 1));
  for (int k = -ext_; k <= n_; ++k) nodes_[pos(k)] = node_value(k, ppo_, h_);
}

LogGrid LogGrid::with_last_index(int n, int points_per_octave, int ext) {
  if (n < 1) fail(ErrorCode::argument, "grid needs at least two nodes");
  LogGrid g(0.5, points_per_octave, ext);
  g.n_ = n;
  g.t_min_ = node_value(n, points_per_octave, g.h_);
  g.nodes_.resize(static_cast<std::size_t>(n + ext + 1));
  for (int k = -ext; k <= n; ++k) g.nodes_[g.pos(k)] = node_value(k, points_per_octave, g.h_);
  return g;
}

int LogGrid::locate(double t) const {
  if (!(t > 0.0)) return n_;
  int k = static_cast<int>(std::floor(-std::log(t) / h_));
  k = std::clamp(k, -ext_, n_);
  while (k > -ext_ && node(k) < t) --k;
  while (k < n_ && node(k + 1) >= t) ++k;
  return k;
}

double PowerLogWeight::operator()(double t) const {
  double L = 1.0 + std::abs(std::log(t));
  double w = 1.0;
  if (a != 0.0) w *= std::pow(t, -a);
  if (b != 0.0) w *= std::pow(L, -b);
  return w;
}

SampledFunction::SampledFunction(LogGrid grid, std::vector<double> values, Measure m)
    : grid_(std::move(grid)), values_(std::move(values)), measure_(m) {
  if (values_.size() != grid_.size()) fail(ErrorCode::argument, "value count does not match grid");
  for (double v : values_)
    if (!(v >= 0.0) || !std::isfinite(v)) fail(ErrorCode::domain, "sampled values must be finite and nonnegative");
}

SampledFunction SampledFunction::from(const LogGrid& grid, const std::function<double(double)>& f, Measure m) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.nodes()[i]);
  return SampledFunction(grid, std::move(v), m);
}

double SampledFunction::eval(double t) const {
  if (t >= grid_.node(-grid_.ext())) return values_.front();
  if (t <= grid_.node(grid_.last())) return values_.back();
  int k = grid_.locate(t);
  double t0 = grid_.node(k), t1 = grid_.node(k + 1);
  double w = std::log(t0 / t) / std::log(t0 / t1);
  return (1.0 - w) * at(k) + w * at(k + 1);
}

StepRearrangement::StepRearrangement(std::vector<double> breakpoints, std::vector<double> levels)
    : breaks_(std::move(breakpoints)), levels_(std::move(levels)) {
  if (breaks_.size() != levels_.size() + 1) fail(ErrorCode::argument, "step function needs one more breakpoint than levels");
  if (breaks_.front() != 0.0) fail(ErrorCode::argument, "step function must start at 0");
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (!(breaks_[i + 1] > breaks_[i])) fail(ErrorCode::argument, "breakpoints must increase");
    if (!(levels_[i] >= 0.0) || !std::isfinite(levels_[i])) fail(ErrorCode::domain, "levels must be finite and nonnegative");
    if (i > 0 && levels_[i] > levels_[i - 1]) fail(ErrorCode::domain, "levels must be nonincreasing");
  }
  if (support() > 1.0 + 1e-9) fail(ErrorCode::domain, "support exceeds unit measure");
  prefix_.assign(breaks_.size(), 0.0);
  Accumulator acc;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    acc.add(levels_[i] * (breaks_[i + 1] - breaks_[i]));
    prefix_[i + 1] = acc.value();
  }
}

double StepRearrangement::value(double s) const {
  if (levels_.empty() || s >= support()) return 0.0;
  if (s <= 0.0) return levels_.front();
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
  return levels_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
}

double StepRearrangement::integral(double t) const {
  if (t <= 0.0 || levels_.empty()) return 0.0;
  if (t >= support()) return prefix_.back();
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - breaks_.begin()) - 1;
  return prefix_[i] + levels_[i] * (t - breaks_[i]);
}

double StepRearrangement::power_integral(double p, double a, double b) const {
  if (b <= a || levels_.empty()) return 0.0;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), a);
  std::size_t i = it == breaks_.begin() ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
  Accumulator acc;
  for (; i < levels_.size() && breaks_[i] < b; ++i) {
    double lo = std::max(a, breaks_[i]);
    double hi = std::min(b, breaks_[i + 1]);
    if (hi > lo && levels_[i] > 0.0) acc.add(std::pow(levels_[i], p) * (hi - lo));
  }
  return acc.value();
}

double StepRearrangement::lp_norm(double p) const {
  if (levels_.empty()) return 0.0;
  if (std::isinf(p)) return levels_.front();
  return std::pow(power_integral(p, 0.0, support()), 1.0 / p);
}

StepRearrangement rearrange_cells(const std::vector<double>& values, const std::vector<double>& widths) {
  if (values.size() != widths.size()) fail(ErrorCode::argument, "values and widths differ in length");
  std::vector<std::size_t> idx;
  idx.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0) || !std::isfinite(values[i])) fail(ErrorCode::domain, "rearrangement of a negative or non-finite value");
    if (!(widths[i] >= 0.0)) fail(ErrorCode::argument, "negative cell width");
    if (values[i] > 0.0 && widths[i] > 0.0) idx.push_back(i);
  }
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });
  std::vector<double> br{0.0}, lv;
  Accumulator pos;
  for (std::size_t j = 0; j < idx.size();) {
    double level = values[idx[j]];
    while (j < idx.size() && values[idx[j]] == level) pos.add(widths[idx[j++]]);
    double b = pos.value();
    if (b > br.back()) {
      br.push_back(b);
      lv.push_back(level);
    }
  }
  return StepRearrangement(std::move(br), std::move(lv));
}

StepRearrangement rearrange(const SampledFunction& f) { return rearrange(f, 0.0); }

StepRearrangement rearrange(const SampledFunction& f, double head_mass) {
  if (f.measure() != Measure::ds) fail(ErrorCode::argument, "rearrangement needs the ds measure");
  if (!(head_mass >= 0.0) || std::isinf(head_mass)) fail(ErrorCode::argument, "head mass must be finite and nonnegative");
  const LogGrid& g = f.grid();
  std::vector<double> vals, widths;
  vals.reserve(static_cast<std::size_t>(g.last()) + 1);
  widths.reserve(static_cast<std::size_t>(g.last()) + 1);
  for (int k = 0; k < g.last(); ++k) {
    vals.push_back(0.5 * (f.at(k) + f.at(k + 1)));
    widths.push_back(g.node(k) - g.node(k + 1));
  }
  if (head_mass > 0.0) {
    double tN = g.node(g.last());
    vals.push_back(head_mass / tN);
    widths.push_back(tN);
  }
  return rearrange_cells(vals, widths);
}

StepRearrangement rearrange(const StepRearrangement& f) {
  const auto& lv = f.levels();
  bool canonical = true;
  for (std::size_t i = 0; i < lv.size() && canonical; ++i) {
    if (lv[i] == 0.0) canonical = false;
    if (i > 0 && lv[i] == lv[i - 1]) canonical = false;
  }
  if (canonical) return f;
  std::vector<double> widths(lv.size());
  for (std::size_t i = 0; i < lv.size(); ++i) widths[i] = f.breakpoints()[i + 1] - f.breakpoints()[i];
  return rearrange_cells(lv, widths);
}

namespace {

// Trapezoid on one sub-interval [lo, hi] (lo < hi) with endpoint values.
double piece(Measure m, double lo, double hi, double flo, double fhi) {
  if (m == Measure::ds) return 0.5 * (hi - lo) * (flo + fhi);
  return 0.5 * std::log(hi / lo) * (flo + fhi);
}

}  // namespace

Integral integrate(const SampledFunction& f, double a, double b) {
  if (a > b) fail(ErrorCode::argument, "integration bounds reversed");
  const LogGrid& g = f.grid();
  double top = g.node(-g.ext());
  if (b > top * (1.0 + 1e-15)) fail(ErrorCode::argument, "upper bound beyond grid span");
  b = std::min(b, top);
  Integral out;
  double tN = g.node(g.last());
  if (a < tN) {
    out.truncated = true;
    double fN = f.at(g.last());
    out.truncation = f.measure() == Measure::ds ? fN * tN : fN;
    a = tN;
  }
  if (b <= a) return out;
  // nodes strictly below b, walking down toward a
  Accumulator acc;
  double hi = b, fhi = f.eval(b);
  for (int k = g.locate(b) + 1; k <= g.last() && g.node(k) > a; ++k) {
    double lo = g.node(k), flo = f.at(k);
    acc.add(piece(f.measure(), lo, hi, flo, fhi));
    hi = lo;
    fhi = flo;
  }
  if (a < hi) acc.add(piece(f.measure(), a, hi, f.eval(a), fhi));
  out.value = acc.value();
  return out;
}

Integral integrate(const SampledFunction& f) { return integrate(f, 0.0, 1.0); }

double sup_norm(const SampledFunction& f, const PowerLogWeight& w) {
  double m = 0.0;
  const auto& t = f.grid().nodes();
  for (std::size_t i = 0; i < t.size(); ++i) m = std::max(m, w(t[i]) * f.values()[i]);
  return m;
}

}  // namespace kinterp
