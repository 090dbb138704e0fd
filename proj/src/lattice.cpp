#include "kinterp/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <regex>

namespace kinterp {

namespace {

double parse_number(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity") return kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(ErrorCode::usage, "not a number: '" + s + "'");
  }
  if (used != s.size()) fail(ErrorCode::usage, "not a number: '" + s + "'");
  return v;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::string fmt(double x) {
  if (std::isinf(x)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

LatticeParam LatticeParam::parse(const std::string& spec) {
  LatticeParam F;
  F.weight = {0.0, 0.0};
  std::size_t start = 0;
  bool first = true;
  while (start <= spec.size()) {
    std::size_t end = spec.find(';', start);
    std::string part = trim(spec.substr(start, end == std::string::npos ? std::string::npos : end - start));
    if (first) {
      static const std::regex tpow(R"(t\s*\^\s*\(?\s*([-+0-9.eE]+)\s*\)?)");
      static const std::regex lpow(R"(\(\s*1\s*-\s*ln\s*t\s*\)\s*\^\s*\(?\s*([-+0-9.eE]+)\s*\)?)");
      std::smatch m;
      std::string rest = std::regex_replace(part, lpow, "");
      if (std::regex_search(part, m, lpow)) F.weight.b = -parse_number(m[1].str());
      if (std::regex_search(rest, m, tpow)) F.weight.a = -parse_number(m[1].str());
      std::string leftover = std::regex_replace(rest, tpow, "");
      leftover.erase(std::remove_if(leftover.begin(), leftover.end(), [](char c) { return c == '*' || c == ' ' || c == '1'; }),
                     leftover.end());
      if (!leftover.empty()) fail(ErrorCode::usage, "cannot parse weight '" + part + "'");
      first = false;
    } else if (!part.empty()) {
      auto eq = part.find('=');
      if (eq == std::string::npos) fail(ErrorCode::usage, "expected key=value in '" + part + "'");
      std::string key = trim(part.substr(0, eq)), val = trim(part.substr(eq + 1));
      if (key == "q") {
        F.q = parse_number(val);
        if (!(F.q >= 1.0)) fail(ErrorCode::usage, "q must lie in [1, inf]");
      } else if (key == "domain") {
        if (val == "(0,1]")
          F.domain = Domain::unit;
        else if (val == "[1,inf)" || val == "[1,∞)")
          F.domain = Domain::above_one;
        else
          fail(ErrorCode::usage, "unknown domain '" + val + "'");
      } else {
        fail(ErrorCode::usage, "unknown lattice key '" + key + "'");
      }
    }
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return F;
}

std::string LatticeParam::to_string() const {
  return "t^" + fmt(-weight.a) + "*(1-ln t)^" + fmt(-weight.b) + "; q=" + fmt(q) +
         "; domain=" + (domain == Domain::unit ? "(0,1]" : "[1,inf)");
}

NormResult lattice_norm(const SampledFunction& f, const LatticeParam& F) {
  const LogGrid& g = f.grid();
  int lo = F.domain == Domain::unit ? 0 : -g.ext();
  int hi = F.domain == Domain::unit ? g.last() : 0;
  if (hi - lo < 2) fail(ErrorCode::argument, "lattice domain not covered by the grid");
  // k runs from the finite end (t = 1) toward the open end
  auto idx = [&](int j) { return F.domain == Domain::unit ? lo + j : hi - j; };
  int n = hi - lo;
  std::vector<double> v(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    int k = idx(j);
    v[static_cast<std::size_t>(j)] = F.weight(g.node(k)) * f.at(k);
  }
  NormResult out;
  if (std::isinf(F.q)) {
    auto it = std::max_element(v.begin(), v.end());
    out.truncated_value = *it;
    out.divergent = (it == v.end() - 1) && v[static_cast<std::size_t>(n)] > v[static_cast<std::size_t>(n) - 1] * (1.0 + 1e-9);
  } else {
    Accumulator total, tail;
    for (int j = 0; j < n; ++j) {
      double a = std::pow(v[static_cast<std::size_t>(j)], F.q), b = std::pow(v[static_cast<std::size_t>(j) + 1], F.q);
      double piece = 0.5 * g.h() * (a + b);
      total.add(piece);
      if (2 * j >= n) tail.add(piece);
    }
    double T = total.value();
    out.truncated_value = std::pow(T, 1.0 / F.q);
    out.divergent = T > 0.0 && tail.value() > 0.15 * T;
  }
  out.value = out.divergent ? kInf : out.truncated_value;
  return out;
}

LatticeParam kothe_dual(const LatticeParam& F) {
  LatticeParam d = F;
  d.weight = {-F.weight.a, -F.weight.b};
  if (F.q == 1.0)
    d.q = kInf;
  else if (std::isinf(F.q))
    d.q = 1.0;
  else
    d.q = F.q / (F.q - 1.0);
  return d;
}

SampledFunction apply_T(const SampledFunction& f) {
  const LogGrid& g = f.grid();
  LogGrid out = LogGrid::with_last_index(g.last() / 2, g.ppo());
  std::vector<double> v(out.size());
  for (int k = 0; k <= out.last(); ++k) v[out.pos(k)] = f.at(2 * k) / out.node(k);
  return SampledFunction(out, std::move(v), f.measure());
}

SampledFunction unapply_T(const SampledFunction& gT, const LogGrid& target) {
  const LogGrid& g = gT.grid();
  int last = std::min(target.last(), 2 * g.last());
  LogGrid out = LogGrid::with_last_index(last, target.ppo());
  std::vector<double> v(out.size());
  for (int k = 0; k <= last; ++k) {
    if (k % 2 == 0) {
      v[out.pos(k)] = g.node(k / 2) * gT.at(k / 2);
    } else {
      double a = g.node(k / 2) * gT.at(k / 2), b = g.node(k / 2 + 1) * gT.at(k / 2 + 1);
      v[out.pos(k)] = 0.5 * (a + b);
    }
  }
  return SampledFunction(out, std::move(v), gT.measure());
}

SampledFunction apply_R(const SampledFunction& f) {
  const LogGrid& g = f.grid();
  std::vector<double> v(g.size());
  for (int k = -g.ext(); k <= g.last(); ++k) {
    int h = k >= 0 ? k / 2 : -((-k) / 2);
    if (k % 2 == 0)
      v[g.pos(k)] = f.at(h);
    else if (k > 0)
      v[g.pos(k)] = 0.5 * (f.at(h) + f.at(h + 1));
    else
      v[g.pos(k)] = 0.5 * (f.at(h) + f.at(h - 1));
  }
  return SampledFunction(g, std::move(v), f.measure());
}

namespace {

// f at the point with (possibly fractional) index x.
double at_index(const SampledFunction& f, double x) {
  double r = std::round(x);
  if (std::abs(x - r) < 1e-9) return f.at(static_cast<int>(r));
  int k = static_cast<int>(std::floor(x));
  double w = x - k;
  return (1.0 - w) * f.at(k) + w * f.at(k + 1);
}

}  // namespace

SampledFunction apply_S(const SampledFunction& f, double r) {
  if (!(r > 0.0)) fail(ErrorCode::argument, "S_r needs r > 0");
  const LogGrid& g = f.grid();
  int last = r > 1.0 ? static_cast<int>(std::floor(g.last() / r + 1e-9)) : g.last();
  int ext = r > 1.0 ? static_cast<int>(std::floor(g.ext() / r + 1e-9)) : g.ext();
  LogGrid out = LogGrid::with_last_index(std::max(last, 1), g.ppo(), ext);
  std::vector<double> v(out.size());
  for (int k = -ext; k <= out.last(); ++k) v[out.pos(k)] = at_index(f, r * k);
  return SampledFunction(out, std::move(v), f.measure());
}

SampledFunction apply_Q(const SampledFunction& f, double r) {
  if (!(r > 1.0)) fail(ErrorCode::argument, "Q_r needs r > 1");
  const LogGrid& g = f.grid();
  std::vector<double> v(g.size());
  for (int k = -g.ext(); k <= g.last(); ++k) {
    double s = g.node(k);
    v[g.pos(k)] = std::pow(s, 1.0 / r - 1.0) * at_index(f, k / r);
  }
  return SampledFunction(g, std::move(v), f.measure());
}

OpEstimate estimate_op_norm(const LatticeOperator& op, const LatticeParam& F, const std::vector<SampledFunction>& corpus) {
  if (corpus.empty()) fail(ErrorCode::argument, "empty corpus");
  OpEstimate est;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    NormResult nf = lattice_norm(corpus[i], F);
    if (nf.divergent || !(nf.value > 0.0)) {
      ++est.skipped;
      continue;
    }
    // The image is compared on the grid span only. Its tail heuristic can
    // fire on a convergent image, since op rescales the log variable.
    NormResult nt = lattice_norm(op(corpus[i]), F);
    double ratio = nt.truncated_value / nf.value;
    ++est.used;
    if (est.used == 1 || ratio > est.value) {
      est.value = ratio;
      est.argmax = i;
    }
  }
  return est;
}

TildeResult tilde_weight(const SampledFunction& w) {
  const LogGrid& g = w.grid();
  int N = g.last();
  std::vector<double> B(static_cast<std::size_t>(N) + 1), A(static_cast<std::size_t>(N) + 1);
  Accumulator b;
  b.add(w.at(N) * g.node(N));
  double base = b.value();
  B[static_cast<std::size_t>(N)] = base;
  for (int k = N - 1; k >= 0; --k) {
    b.add(0.5 * (g.node(k) - g.node(k + 1)) * (w.at(k) + w.at(k + 1)));
    B[static_cast<std::size_t>(k)] = b.value();
  }
  Accumulator a;
  A[0] = 0.0;
  for (int k = 1; k <= N; ++k) {
    a.add(0.5 * std::log(g.node(k - 1) / g.node(k)) * (w.at(k - 1) + w.at(k)));
    A[static_cast<std::size_t>(k)] = a.value();
  }
  std::vector<double> v(g.size(), 0.0);
  for (int k = 0; k <= N; ++k) v[g.pos(k)] = B[static_cast<std::size_t>(k)] / g.node(k) + A[static_cast<std::size_t>(k)];
  for (int k = -g.ext(); k < 0; ++k) v[g.pos(k)] = B[0] / g.node(k);
  TildeResult out{SampledFunction(g, std::move(v), Measure::ds_over_s), false};
  // mass of w ds concentrated at the bottom of the grid signals a non-integrable w
  double low = B[static_cast<std::size_t>(N / 2)];
  out.divergent = B[0] > 0.0 && low > 0.15 * B[0];
  return out;
}

double SequenceLattice::weight(double n) const {
  double w = 1.0;
  if (a != 0.0) w *= std::pow(n, -a);
  if (b != 0.0) w *= std::pow(1.0 + std::log(n), -b);
  return w;
}

double SequenceLattice::norm(std::span<const double> x) const {
  if (std::isinf(q)) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, x[i] * weight(static_cast<double>(i + 1)));
    return m;
  }
  Accumulator acc;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double n = static_cast<double>(i + 1);
    acc.add(std::pow(x[i] * weight(n), q) * std::log1p(1.0 / n));
  }
  return std::pow(acc.value(), 1.0 / q);
}

}  // namespace kinterp
