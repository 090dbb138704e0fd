#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kinterp/lattice.hpp"

namespace kinterp {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major, with its singular values computed
// once at construction.
class CompactOperator {
 public:
  CompactOperator() = default;
  CompactOperator(std::size_t n, std::vector<cplx> entries);

  static CompactOperator diagonal(const std::vector<double>& d);
  static CompactOperator random_gaussian(std::size_t n, std::uint64_t seed);
  // "re,im;re,im;..." one row per line; a bare "re" is a real entry.
  static CompactOperator parse_csv(const std::string& text);

  std::size_t n() const { return n_; }
  cplx operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<cplx>& entries() const { return a_; }
  const std::vector<double>& s() const { return s_; }

  CompactOperator adjoint() const;
  double frobenius() const;
  cplx trace() const;

  friend CompactOperator operator+(const CompactOperator& x, const CompactOperator& y);
  friend CompactOperator operator-(const CompactOperator& x, const CompactOperator& y);
  friend CompactOperator operator*(cplx c, const CompactOperator& x);
  friend CompactOperator operator*(const CompactOperator& x, const CompactOperator& y);

 private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
  std::vector<double> s_;
};

// Nonincreasing singular values (n <= 512).
std::vector<double> s_numbers(std::size_t n, const std::vector<cplx>& entries);

double schatten_norm(std::span<const double> s, double p);
inline double schatten_norm(const CompactOperator& M, double p) { return schatten_norm(M.s(), p); }

// sup_n (s_1 + ... + s_n) / log(en)^alpha
double matsaev_norm(std::span<const double> s, double alpha);
inline double matsaev_norm(const CompactOperator& M, double alpha) { return matsaev_norm(M.s(), alpha); }

// sup over 256 geometric points p - 1 in [1e-6, p0 - 1] of (p-1)^alpha |s|_p
double matsaev_extrap(std::span<const double> s, double alpha, double p0);
inline double matsaev_extrap(const CompactOperator& M, double alpha, double p0) { return matsaev_extrap(M.s(), alpha, p0); }

// Midpoint discretization of the integration operator on [0,1].
CompactOperator volterra(std::size_t n);
// (M + M*)/2 and (M - M*)/(2i)
std::pair<CompactOperator, CompactOperator> components(const CompactOperator& M);

struct MatsaevIneqReport {
  double p = 0.0;
  double real_part = 0.0;  // |M_R|_p
  double imag_part = 0.0;  // |M_J|_p
  double bound = 0.0;      // max(p/(p-1), p) |M_J|_p
  bool pass = false;
};

MatsaevIneqReport matsaev_inequality(const CompactOperator& M, double p);

// |{s_1 + ... + s_n}_n|_{F_d}
double ideal_norm_via_F(std::span<const double> s, const SequenceLattice& Fd);
// |{|s|_{p(n)}}_n|_{F_d}
double ideal_extrap(std::span<const double> s, const SequenceLattice& Fd);
// |{(s_1 + ... + s_n)/log(en)}_n|_{F_d}
double xlog_norm(std::span<const double> s, const SequenceLattice& Fd);

// |{a_{n^2}/log(en)}_{n^2 <= N}| / |{a_n/log(en)}_{n <= N}|, N the length of a.
double sd_transfer_ratio(std::span<const double> a, const SequenceLattice& Fd);

}  // namespace kinterp
