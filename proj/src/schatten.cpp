#include "kinterp/schatten.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/SVD>

#include "kinterp/extrapolate.hpp"

namespace kinterp {

std::vector<double> s_numbers(std::size_t n, const std::vector<cplx>& entries) {
  if (entries.size() != n * n) fail(ErrorCode::argument, "operator must be square");
  if (n > 512) fail(ErrorCode::argument, "operator dimension above 512");
  if (n == 0) return {};
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entries[i * n + j];
  // Two-sided Jacobi sweeps on the matrix itself; values come back sorted.
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  std::vector<double> s(sv.data(), sv.data() + sv.size());
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

CompactOperator::CompactOperator(std::size_t n, std::vector<cplx> entries) : n_(n), a_(std::move(entries)) {
  for (const cplx& z : a_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) fail(ErrorCode::domain, "non-finite operator entry");
  s_ = s_numbers(n_, a_);
}

CompactOperator CompactOperator::diagonal(const std::vector<double>& d) {
  std::size_t n = d.size();
  std::vector<cplx> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] = d[i];
  return CompactOperator(n, std::move(a));
}

CompactOperator CompactOperator::random_gaussian(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0 / std::sqrt(2.0 * static_cast<double>(n)));
  std::vector<cplx> a(n * n);
  for (auto& z : a) {
    double re = nd(rng);
    double im = nd(rng);
    z = {re, im};
  }
  return CompactOperator(n, std::move(a));
}

CompactOperator CompactOperator::parse_csv(const std::string& text) {
  std::vector<std::vector<cplx>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<cplx> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ';')) {
      if (cell.find_first_not_of(" \t\r") == std::string::npos) continue;
      double re = 0.0, im = 0.0;
      auto comma = cell.find(',');
      try {
        re = std::stod(cell.substr(0, comma));
        if (comma != std::string::npos) im = std::stod(cell.substr(comma + 1));
      } catch (const std::exception&) {
        fail(ErrorCode::argument, "bad operator entry '" + cell + "'");
      }
      row.emplace_back(re, im);
    }
    rows.push_back(std::move(row));
  }
  std::size_t n = rows.size();
  std::vector<cplx> a;
  a.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) fail(ErrorCode::argument, "operator must be square");
    a.insert(a.end(), r.begin(), r.end());
  }
  return CompactOperator(n, std::move(a));
}

CompactOperator CompactOperator::adjoint() const {
  std::vector<cplx> b(a_.size());
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) b[j * n_ + i] = std::conj(a_[i * n_ + j]);
  return CompactOperator(n_, std::move(b));
}

double CompactOperator::frobenius() const {
  Accumulator acc;
  for (const cplx& z : a_) acc.add(std::norm(z));
  return std::sqrt(acc.value());
}

cplx CompactOperator::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += a_[i * n_ + i];
  return t;
}

CompactOperator operator+(const CompactOperator& x, const CompactOperator& y) {
  if (x.n_ != y.n_) fail(ErrorCode::argument, "dimension mismatch");
  std::vector<cplx> a(x.a_.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = x.a_[i] + y.a_[i];
  return CompactOperator(x.n_, std::move(a));
}

CompactOperator operator-(const CompactOperator& x, const CompactOperator& y) { return x + cplx(-1.0) * y; }

CompactOperator operator*(cplx c, const CompactOperator& x) {
  std::vector<cplx> a(x.a_.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = c * x.a_[i];
  return CompactOperator(x.n_, std::move(a));
}

CompactOperator operator*(const CompactOperator& x, const CompactOperator& y) {
  if (x.n_ != y.n_) fail(ErrorCode::argument, "dimension mismatch");
  std::size_t n = x.n_;
  std::vector<cplx> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      cplx xik = x.a_[i * n + k];
      for (std::size_t j = 0; j < n; ++j) a[i * n + j] += xik * y.a_[k * n + j];
    }
  return CompactOperator(n, std::move(a));
}

double schatten_norm(std::span<const double> s, double p) {
  if (!(p >= 1.0)) fail(ErrorCode::argument, "Schatten exponent must be >= 1");
  double m = 0.0;
  for (double x : s) m = std::max(m, std::abs(x));
  if (std::isinf(p) || m == 0.0) return m;
  Accumulator acc;
  for (double x : s) acc.add(std::pow(std::abs(x) / m, p));
  return m * std::pow(acc.value(), 1.0 / p);
}

double matsaev_norm(std::span<const double> s, double alpha) {
  if (!(alpha > 0.0)) fail(ErrorCode::argument, "alpha must be positive");
  Accumulator acc;
  double best = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    acc.add(s[j]);
    double n = static_cast<double>(j + 1);
    best = std::max(best, acc.value() / std::pow(1.0 + std::log(n), alpha));
  }
  return best;
}

double matsaev_extrap(std::span<const double> s, double alpha, double p0) {
  if (!(p0 > 1.0 + 1e-6)) fail(ErrorCode::argument, "p0 must exceed 1 + 1e-6");
  const int n = 256;
  double lo = std::log(1e-6), hi = std::log(p0 - 1.0);
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    double d = std::exp(lo + (hi - lo) * i / (n - 1));
    if (i == n - 1) d = p0 - 1.0;
    best = std::max(best, std::pow(d, alpha) * schatten_norm(s, 1.0 + d));
  }
  return best;
}

CompactOperator volterra(std::size_t n) {
  if (n < 2) fail(ErrorCode::argument, "Volterra discretization needs n >= 2");
  double h = 1.0 / static_cast<double>(n);
  std::vector<cplx> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) a[i * n + j] = h;
    a[i * n + i] = 0.5 * h;
  }
  return CompactOperator(n, std::move(a));
}

std::pair<CompactOperator, CompactOperator> components(const CompactOperator& M) {
  std::size_t n = M.n();
  std::vector<cplx> re(n * n), im(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx x = M(i, j), y = std::conj(M(j, i));
      re[i * n + j] = 0.5 * (x + y);
      im[i * n + j] = (x - y) / cplx(0.0, 2.0);
    }
  return {CompactOperator(n, std::move(re)), CompactOperator(n, std::move(im))};
}

MatsaevIneqReport matsaev_inequality(const CompactOperator& M, double p) {
  if (!(p > 1.0)) fail(ErrorCode::argument, "the inequality needs p > 1");
  auto [R, J] = components(M);
  MatsaevIneqReport r;
  r.p = p;
  r.real_part = schatten_norm(R, p);
  r.imag_part = schatten_norm(J, p);
  double c = std::isinf(p) ? kInf : std::max(p / (p - 1.0), p);
  r.bound = c * r.imag_part;
  r.pass = r.real_part <= r.bound;
  return r;
}

namespace {

std::vector<double> partial_sums(std::span<const double> s) {
  std::vector<double> out(s.size());
  Accumulator acc;
  for (std::size_t j = 0; j < s.size(); ++j) {
    acc.add(s[j]);
    out[j] = acc.value();
  }
  return out;
}

}  // namespace

double ideal_norm_via_F(std::span<const double> s, const SequenceLattice& Fd) { return Fd.norm(partial_sums(s)); }

double ideal_extrap(std::span<const double> s, const SequenceLattice& Fd) {
  return Fd.norm(lpn_sequence(s, s.size()));
}

double xlog_norm(std::span<const double> s, const SequenceLattice& Fd) {
  std::vector<double> x = partial_sums(s);
  for (std::size_t j = 0; j < x.size(); ++j) x[j] /= 1.0 + std::log(static_cast<double>(j + 1));
  return Fd.norm(x);
}

double sd_transfer_ratio(std::span<const double> a, const SequenceLattice& Fd) {
  std::size_t m = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(a.size()))));
  std::vector<double> sq(m), base(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    double l = 1.0 + std::log(static_cast<double>(i + 1));
    base[i] = a[i] / l;
    if (i < m) sq[i] = a[(i + 1) * (i + 1) - 1] / l;
  }
  double d = Fd.norm(base);
  return d > 0.0 ? Fd.norm(sq) / d : 0.0;
}

}  // namespace kinterp
