#include "kinterp/kfunctional.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kinterp {

QuasiConcaveProfile::QuasiConcaveProfile(std::vector<double> breakpoints, std::vector<double> values)
    : t_(std::move(breakpoints)), k_(std::move(values)) {
  if (t_.size() != k_.size() || t_.empty()) fail(ErrorCode::argument, "profile needs matching, nonempty breakpoints and values");
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (!(t_[i] > 0.0) || !std::isfinite(t_[i])) fail(ErrorCode::argument, "profile breakpoints must be positive");
    if (i > 0 && !(t_[i] > t_[i - 1])) fail(ErrorCode::argument, "profile breakpoints must increase");
    if (!(k_[i] >= 0.0) || !std::isfinite(k_[i])) fail(ErrorCode::domain, "profile values must be finite and nonnegative");
  }
}

QuasiConcaveProfile QuasiConcaveProfile::from_samples(const SampledFunction& f) {
  const LogGrid& g = f.grid();
  std::vector<double> t, k;
  t.reserve(static_cast<std::size_t>(g.last()) + 1);
  k.reserve(t.capacity());
  for (int i = g.last(); i >= 0; --i) {
    t.push_back(g.node(i));
    k.push_back(f.at(i));
  }
  return QuasiConcaveProfile(std::move(t), std::move(k));
}

double QuasiConcaveProfile::operator()(double t) const {
  if (t <= 0.0) return 0.0;
  if (t <= t_.front()) return k_.front() * (t / t_.front());
  if (t >= t_.back()) return k_.back();
  auto it = std::upper_bound(t_.begin(), t_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - t_.begin()) - 1;
  double w = (t - t_[i]) / (t_[i + 1] - t_[i]);
  return k_[i] + w * (k_[i + 1] - k_[i]);
}

std::string QuasiConcaveProfile::defect(double slack) const {
  double scale = std::max(plateau(), 1e-300);
  double prev = k_.front() / t_.front();
  for (std::size_t i = 0; i + 1 < t_.size(); ++i) {
    double dk = k_[i + 1] - k_[i];
    if (dk < -slack * scale) {
      std::ostringstream os;
      os << "decreasing between t=" << t_[i] << " and t=" << t_[i + 1];
      return os.str();
    }
    double slope = dk / (t_[i + 1] - t_[i]);
    // compare chords through the shared breakpoint with the slack spread over the piece
    if ((slope - prev) * (t_[i + 1] - t_[i]) > slack * scale) {
      std::ostringstream os;
      os << "not concave at t=" << t_[i];
      return os.str();
    }
    prev = std::min(prev, slope);
  }
  return {};
}

SampledFunction QuasiConcaveProfile::sample(const LogGrid& g) const {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (*this)(g.nodes()[i]);
  return SampledFunction(g, std::move(v), Measure::ds_over_s);
}

double k_L1_Linf(double t, const StepRearrangement& fstar) {
  if (!(t > 0.0)) fail(ErrorCode::argument, "K-functional needs t > 0");
  return fstar.integral(t);
}

double k_Lp_Linf(double t, double p, const StepRearrangement& fstar) {
  if (!(p >= 1.0) || std::isinf(p)) fail(ErrorCode::argument, "exponent must lie in [1, inf)");
  if (!(t > 0.0)) fail(ErrorCode::argument, "K-functional needs t > 0");
  if (p == 1.0) return fstar.integral(t);
  return std::pow(fstar.power_integral(p, 0.0, std::pow(t, p)), 1.0 / p);
}

double k_weakL1_Linf(double t, const StepRearrangement& fstar) {
  if (!(t > 0.0)) fail(ErrorCode::argument, "K-functional needs t > 0");
  const auto& b = fstar.breakpoints();
  const auto& l = fstar.levels();
  double m = 0.0;
  for (std::size_t i = 0; i < l.size() && b[i] < t; ++i) m = std::max(m, l[i] * std::min(t, b[i + 1]));
  return m;
}

SequenceData::SequenceData(std::vector<double> astar) : a_(std::move(astar)) {
  prefix_.assign(a_.size() + 1, 0.0);
  Accumulator acc;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (!(a_[i] >= 0.0) || !std::isfinite(a_[i])) fail(ErrorCode::domain, "sequence terms must be finite and nonnegative");
    if (i > 0 && a_[i] > a_[i - 1]) fail(ErrorCode::domain, "sequence must be nonincreasing");
    acc.add(a_[i]);
    prefix_[i + 1] = acc.value();
  }
}

SequenceData SequenceData::rearranged(std::vector<double> a) {
  for (double& x : a) x = std::abs(x);
  std::sort(a.begin(), a.end(), std::greater<>());
  return SequenceData(std::move(a));
}

double SequenceData::lp_norm(double p) const {
  if (a_.empty()) return 0.0;
  if (std::isinf(p)) return a_.front();
  // scale by the largest term to avoid underflow for large p
  double m = a_.front();
  if (m == 0.0) return 0.0;
  Accumulator acc;
  for (double x : a_) acc.add(std::pow(x / m, p));
  return m * std::pow(acc.value(), 1.0 / p);
}

double k_discrete(std::size_t n, const SequenceData& a) {
  if (n < 1) fail(ErrorCode::argument, "discrete K-functional needs n >= 1");
  return a.partial(n);
}

double k_discrete_interp(double t, const SequenceData& a) {
  if (!(t >= 0.0)) fail(ErrorCode::argument, "discrete K-functional needs t >= 0");
  if (a.size() == 0) return 0.0;
  if (t >= static_cast<double>(a.size())) return a.partial(a.size());
  auto n = static_cast<std::size_t>(std::floor(t));
  return a.partial(n) + (t - static_cast<double>(n)) * a.values()[n];
}

QuasiConcaveProfile discrete_profile(const SequenceData& a) {
  if (a.size() == 0) fail(ErrorCode::argument, "empty sequence");
  std::vector<double> t(a.size()), k(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    t[i] = static_cast<double>(i + 1);
    k[i] = a.partial(i + 1);
  }
  return QuasiConcaveProfile(std::move(t), std::move(k));
}

double j_functional(double t, double norm0, double norm1) {
  if (!(t > 0.0)) fail(ErrorCode::argument, "J-functional needs t > 0");
  if (norm0 < 0.0 || norm1 < 0.0) fail(ErrorCode::argument, "norms must be nonnegative");
  return std::max(norm0, t * norm1);
}

StepRearrangement realize_conv0(const QuasiConcaveProfile& target) {
  std::string why = target.defect(1e-12);
  if (!why.empty()) fail(ErrorCode::domain, "target is not a concave nondecreasing profile: " + why);
  const auto& t = target.breakpoints();
  const auto& k = target.values();
  std::vector<double> br{0.0}, lv;
  double prev_t = 0.0, prev_k = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] > 1.0 + 1e-12) {
      if (std::abs(k[i] - prev_k) > 1e-12 * std::max(1.0, prev_k))
        fail(ErrorCode::domain, "target must be constant for t >= 1");
      continue;
    }
    double slope = (k[i] - prev_k) / (t[i] - prev_t);
    if (!lv.empty()) slope = std::min(slope, lv.back());
    if (slope <= 0.0) break;
    br.push_back(std::min(t[i], 1.0));
    lv.push_back(slope);
    prev_t = t[i];
    prev_k = k[i];
  }
  return StepRearrangement(std::move(br), std::move(lv));
}

double Atom::k(double t) const {
  double s = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (t <= s + lengths[i]) return acc + levels[i] * (t - s);
    acc += levels[i] * lengths[i];
    s += lengths[i];
  }
  return acc;
}

void VectorValuedInstance::validate() const {
  if (atoms.empty()) fail(ErrorCode::argument, "instance has no atoms");
  for (const Atom& a : atoms) {
    if (!(a.mu > 0.0)) fail(ErrorCode::argument, "atom weights must be positive");
    if (a.levels.size() != a.lengths.size()) fail(ErrorCode::argument, "atom levels and lengths differ in count");
    for (std::size_t i = 0; i < a.levels.size(); ++i) {
      if (!(a.lengths[i] > 0.0)) fail(ErrorCode::argument, "density segment lengths must be positive");
      if (!(a.levels[i] >= 0.0)) fail(ErrorCode::domain, "density levels must be nonnegative");
      if (i > 0 && a.levels[i] > a.levels[i - 1]) fail(ErrorCode::domain, "density must be nonincreasing");
    }
  }
}

namespace {

// Length of {s : k_w(s) > lambda}.
double phi_at(const Atom& a, double lambda) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.levels.size() && a.levels[i] > lambda; ++i) s += a.lengths[i];
  return s;
}

double budget(const VectorValuedInstance& inst, double lambda) {
  double b = 0.0;
  for (const Atom& a : inst.atoms) b += a.mu * phi_at(a, lambda);
  return b;
}

}  // namespace

double pisier_k(double t, const VectorValuedInstance& inst) {
  if (!(t > 0.0)) fail(ErrorCode::argument, "K-functional needs t > 0");
  inst.validate();
  double top = 0.0;
  for (const Atom& a : inst.atoms)
    if (!a.levels.empty()) top = std::max(top, a.levels.front());
  double total = 0.0;
  for (const Atom& a : inst.atoms) total += a.mu * a.k(phi_at(a, 0.0));
  if (t >= budget(inst, 0.0)) return total;

  // budget(lo) > t >= budget(hi)
  double lo = 0.0, hi = top;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (budget(inst, mid) > t)
      lo = mid;
    else
      hi = mid;
  }
  // Segments with level in (lo, hi] are tied at the water level; fill them to a
  // common fraction of their capacity with the remaining budget.
  std::vector<double> phi(inst.atoms.size()), tied(inst.atoms.size(), 0.0);
  double used = 0.0, cap = 0.0;
  for (std::size_t w = 0; w < inst.atoms.size(); ++w) {
    const Atom& a = inst.atoms[w];
    phi[w] = phi_at(a, hi);
    used += a.mu * phi[w];
    for (std::size_t i = 0; i < a.levels.size(); ++i)
      if (a.levels[i] > lo && a.levels[i] <= hi) tied[w] += a.lengths[i];
    cap += a.mu * tied[w];
  }
  double frac = cap > 0.0 ? std::clamp((t - used) / cap, 0.0, 1.0) : 0.0;
  double value = 0.0;
  for (std::size_t w = 0; w < inst.atoms.size(); ++w) value += inst.atoms[w].mu * inst.atoms[w].k(phi[w] + frac * tied[w]);
  return value;
}

double pisier_product_k(double t, const VectorValuedInstance& inst) {
  if (!(t > 0.0)) fail(ErrorCode::argument, "K-functional needs t > 0");
  inst.validate();
  struct Cell {
    double level, measure;
  };
  std::vector<Cell> cells;
  for (const Atom& a : inst.atoms)
    for (std::size_t i = 0; i < a.levels.size(); ++i)
      if (a.levels[i] > 0.0) cells.push_back({a.levels[i], a.mu * a.lengths[i]});
  std::stable_sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) { return x.level > y.level; });
  double s = 0.0, value = 0.0;
  for (const Cell& c : cells) {
    if (t <= s + c.measure) return value + c.level * (t - s);
    value += c.level * c.measure;
    s += c.measure;
  }
  return value;
}

}  // namespace kinterp
