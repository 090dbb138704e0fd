#include "kinterp/interpnorm.hpp"

#include <algorithm>
#include <cmath>

#include "quadrature.hpp"

namespace kinterp {

double ThetaQ::c() const {
  if (std::isinf(q)) return 1.0;
  return std::pow(q * theta * (1.0 - theta), 1.0 / q);
}

double ThetaQ::cj() const {
  if (q == 1.0) return 1.0;
  double qp = std::isinf(q) ? 1.0 : q / (q - 1.0);
  return std::pow(qp * theta * (1.0 - theta), -1.0 / qp);
}

namespace {

constexpr double kPanel = 0.05;

// (exp(x y) - 1) / x, with the limit y at x = 0
double expm1_over(double x, double y) {
  if (x == 0.0) return y;
  return std::expm1(x * y) / x;
}

// int_0^L e^{-theta u} (e^u - 1) du
double d_integral(double theta, double L) {
  if (L > 0.5) return expm1_over(1.0 - theta, L) - expm1_over(-theta, L);
  auto g = [theta](double u) { return std::exp(-theta * u) * std::expm1(u); };
  return detail::gauss_legendre(g, 0.0, L, 1);
}

int panels(double L) { return std::max(1, static_cast<int>(std::ceil(L / kPanel))); }

}  // namespace

PhiResult phi_theta_q(const SampledFunction& f, ThetaQ p, Span span) {
  const LogGrid& g = f.grid();
  if (span == Span::full && g.ext() == 0) fail(ErrorCode::argument, "full-domain Phi needs grid nodes above 1");
  int lo = span == Span::full ? -g.ext() : 0, hi = g.last();
  PhiResult out;
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int k = lo; k <= hi; ++k) v.push_back(std::pow(g.node(k), -p.theta) * f.at(k));
  if (std::isinf(p.q)) {
    auto it = std::max_element(v.begin(), v.end());
    out.value = *it;
    out.divergent = (it == v.begin() || it == v.end() - 1) && v.size() > 2 &&
                    (it == v.begin() ? v[0] > v[1] * (1 + 1e-9) : v.back() > v[v.size() - 2] * (1 + 1e-9));
    if (lo == 0 && it == v.begin()) out.divergent = false;
    return out;
  }
  Accumulator total, low, high;
  std::size_t n = v.size() - 1;
  for (std::size_t j = 0; j < n; ++j) {
    double piece = 0.5 * g.h() * (std::pow(v[j], p.q) + std::pow(v[j + 1], p.q));
    total.add(piece);
    int k = lo + static_cast<int>(j);
    if (2 * k >= hi) low.add(piece);
    if (lo < 0 && 2 * k < lo) high.add(piece);
  }
  double T = total.value();
  out.truncated = v.front() > 0.0 || v.back() > 0.0;
  out.divergent = T > 0.0 && (low.value() > 0.15 * T || high.value() > 0.15 * T);
  out.value = out.divergent ? kInf : std::pow(T, 1.0 / p.q);
  return out;
}

ProfileNorm::ProfileNorm(const QuasiConcaveProfile& K) {
  std::vector<double> t = K.breakpoints(), k = K.values();
  // make t = 1 a breakpoint whenever the profile still changes past 1
  if (t.back() > 1.0 && std::find(t.begin(), t.end(), 1.0) == t.end()) {
    double k1 = K(1.0);
    auto it = std::upper_bound(t.begin(), t.end(), 1.0);
    auto pos = it - t.begin();
    t.insert(t.begin() + pos, 1.0);
    k.insert(k.begin() + pos, k1);
  }
  K_ = QuasiConcaveProfile(t, k);
  std::size_t m = t.size();
  n_unit_ = 0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    a_.push_back(t[i]);
    log_a_.push_back(std::log(t[i]));
    L_.push_back(std::log(t[i + 1] / t[i]));
    Ka_.push_back(k[i]);
    beta_.push_back((k[i + 1] - k[i]) / (t[i + 1] - t[i]));
    if (t[i + 1] <= 1.0) n_unit_ = i + 1;
  }
  geometric_ = !L_.empty();
  for (double L : L_)
    if (std::abs(L - L_.front()) > 1e-12 * L_.front()) geometric_ = false;
}

double ProfileNorm::pieces_q1(double theta, std::size_t n) const {
  if (n == 0) return 0.0;
  Accumulator acc;
  if (geometric_) {
    double L = L_.front();
    double E = expm1_over(-theta, L);
    double D = d_integral(theta, L);
    double step = std::exp(-theta * L);
    double apow = std::exp(-theta * log_a_.front());
    for (std::size_t i = 0; i < n; ++i) {
      double a = a_[i];
      acc.add(apow * (Ka_[i] * E + beta_[i] * a * D));
      apow *= step;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      double a = a_[i];
      double E = expm1_over(-theta, L_[i]);
      double D = d_integral(theta, L_[i]);
      acc.add(std::exp(-theta * log_a_[i]) * (Ka_[i] * E + beta_[i] * a * D));
    }
  }
  return acc.value();
}

double ProfileNorm::pieces_general(double theta, double q, std::size_t n) const {
  if (n == 0) return 0.0;
  Accumulator acc;
  auto piece = [&](std::size_t i, double apow, const std::vector<double>& eu, const std::vector<double>& em1,
                   const std::vector<double>& w) {
    double a = a_[i];
    double s = 0.0;
    for (std::size_t j = 0; j < eu.size(); ++j) {
      double x = apow * eu[j] * (Ka_[i] + beta_[i] * a * em1[j]);
      if (x > 0.0) s += w[j] * std::exp(q * std::log(x));
    }
    return s;
  };
  auto nodes = [&](double L, std::vector<double>& eu, std::vector<double>& em1, std::vector<double>& w) {
    int np = panels(L);
    double width = L / np;
    eu.clear();
    em1.clear();
    w.clear();
    for (int pnl = 0; pnl < np; ++pnl) {
      double mid = (pnl + 0.5) * width, half = 0.5 * width;
      for (int j = 0; j < 8; ++j) {
        double u = mid + half * detail::kGLNodes[static_cast<std::size_t>(j)];
        eu.push_back(std::exp(-theta * u));
        em1.push_back(std::expm1(u));
        w.push_back(half * detail::kGLWeights[static_cast<std::size_t>(j)]);
      }
    }
  };
  std::vector<double> eu, em1, w;
  if (geometric_) {
    nodes(L_.front(), eu, em1, w);
    double step = std::exp(-theta * L_.front());
    double apow = std::exp(-theta * log_a_.front());
    for (std::size_t i = 0; i < n; ++i) {
      acc.add(piece(i, apow, eu, em1, w));
      apow *= step;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      nodes(L_[i], eu, em1, w);
      acc.add(piece(i, std::exp(-theta * log_a_[i]), eu, em1, w));
    }
  }
  return acc.value();
}

double ProfileNorm::integral(double theta, double q, bool restricted) const {
  const auto& t = K_.breakpoints();
  const auto& k = K_.values();
  double b0 = t.front(), beta0 = k.front() / b0;
  double total = 0.0;
  // first piece (0, b0], K = beta0 s
  if (beta0 > 0.0) {
    if (theta >= 1.0) return kInf;
    total += std::pow(beta0, q) * std::exp((1.0 - theta) * q * std::log(b0)) / ((1.0 - theta) * q);
  }
  std::size_t n = restricted ? n_unit_ : L_.size();
  total += q == 1.0 ? pieces_q1(theta, n) : pieces_general(theta, q, n);
  // plateau past the last breakpoint
  double P = k.back(), bm = t.back();
  if (P > 0.0) {
    if (restricted) {
      if (bm < 1.0) total += std::pow(P, q) * std::exp(-theta * q * std::log(bm)) * expm1_over(theta * q, std::log(bm)) * -1.0;
    } else {
      if (theta <= 0.0) return kInf;
      total += std::pow(P, q) * std::exp(-theta * q * std::log(bm)) / (theta * q);
    }
  }
  return total;
}

double ProfileNorm::sup(double theta, bool restricted) const {
  const auto& t = K_.breakpoints();
  const auto& k = K_.values();
  double m = 0.0;
  if (geometric_) {
    double step = std::exp(-theta * L_.front());
    double tpow = std::exp(-theta * std::log(t.front()));
    for (std::size_t i = 0; i < t.size(); ++i, tpow *= step) {
      if (restricted && t[i] > 1.0) break;
      m = std::max(m, tpow * k[i]);
    }
  } else {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (restricted && t[i] > 1.0) break;
      m = std::max(m, std::exp(-theta * std::log(t[i])) * k[i]);
    }
  }
  if (restricted && t.back() < 1.0) m = std::max(m, k.back());
  return m;
}

double ProfileNorm::norm(ThetaQ p, bool normalized, bool restricted) const {
  if (std::isinf(p.q)) return sup(p.theta, restricted);
  double I = integral(p.theta, p.q, restricted);
  if (std::isinf(I)) return kInf;
  double v = std::pow(I, 1.0 / p.q);
  return normalized ? p.c() * v : v;
}

std::vector<double> ProfileNorm::restricted_norms(const std::vector<double>& theta, const std::vector<double>& q) const {
  std::vector<double> out(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) out[i] = norm({theta[i], q[i]}, true, true);
  return out;
}

double lp_norm_K(const QuasiConcaveProfile& K, ThetaQ p, bool normalized, bool restricted) {
  if (!(p.theta >= 0.0 && p.theta <= 1.0)) fail(ErrorCode::argument, "theta must lie in [0,1]");
  if (!(p.q >= 1.0)) fail(ErrorCode::argument, "q must lie in [1, inf]");
  if (!restricted && std::isfinite(p.q) && (p.theta == 0.0 || p.theta == 1.0)) return kInf;
  return ProfileNorm(K).norm(p, normalized, restricted);
}

EquivKReport check_equivK(const ProfileNorm& K, ThetaQ p, double slack) {
  EquivKReport r;
  r.restricted = K.norm(p, true, true);
  r.full = K.norm(p, true, false);
  r.ratio = r.full / r.restricted;
  r.bound = 1.0 + (std::isinf(p.q) ? 1.0 : std::pow((1.0 - p.theta) / p.theta, 1.0 / p.q));
  r.pass = r.restricted <= r.full * (1.0 + slack) && r.full <= r.bound * r.restricted * (1.0 + slack);
  return r;
}

EquivKReport check_equivK(const QuasiConcaveProfile& K, ThetaQ p, double slack) {
  return check_equivK(ProfileNorm(K), p, slack);
}

double holmstedt_L1_Lp(double t, double p, const StepRearrangement& fstar) {
  if (!(p > 1.0)) fail(ErrorCode::argument, "Holmstedt formula needs p > 1");
  if (!(t > 0.0 && t <= 1.0)) fail(ErrorCode::argument, "Holmstedt formula needs t in (0,1]");
  double pp = std::isinf(p) ? 1.0 : p / (p - 1.0);
  double x = std::pow(t, pp);
  double head = fstar.integral(x);
  if (std::isinf(p)) return head + t * fstar.value(x);
  double tail = x < fstar.support() ? std::pow(fstar.power_integral(p, x, fstar.support()), 1.0 / p) : 0.0;
  return head + t * tail;
}

LimitReport limit_theta0(const QuasiConcaveProfile& K, double q) {
  ProfileNorm pn(K);
  LimitReport r;
  r.plateau = K.plateau();
  for (int k = 1; k <= 14; ++k) {
    double th = std::ldexp(1.0, -k);
    r.theta.push_back(th);
    r.values.push_back(pn.norm({th, q}, true, false));
  }
  std::vector<double> dev;
  // deviations at round-off level count as zero
  double floor = 1e-12 * std::max(r.plateau, 1.0);
  for (double v : r.values) {
    double d = std::abs(v - r.plateau);
    dev.push_back(d <= floor ? 0.0 : d);
  }
  r.final_rel_error = r.plateau > 0.0 ? dev.back() / r.plateau : dev.back();
  r.eventually_decreasing = true;
  for (std::size_t i = dev.size() - 5; i + 1 < dev.size(); ++i)
    if (dev[i + 1] > dev[i] * (1.0 + 1e-12) + 1e-15) r.eventually_decreasing = false;
  r.pass = std::isfinite(r.final_rel_error) && r.final_rel_error <= 0.01 && r.eventually_decreasing;
  return r;
}

}  // namespace kinterp
