#pragma once

#include <string>
#include <vector>

#include "kinterp/grid.hpp"
#include "kinterp/kfunctional.hpp"

namespace kinterp {

struct ThetaQ {
  double theta = 0.5;
  double q = 1.0;  // infinity allowed

  // (q theta (1 - theta))^{1/q}, equal to 1 for q = infinity
  double c() const;
  // (q' theta (1 - theta))^{-1/q'}, equal to 1 for q = 1
  double cj() const;
};

enum class Span { full, unit };

struct PhiResult {
  double value = 0.0;
  bool divergent = false;
  bool truncated = false;
};

// Phi_{theta,q}(f) against ds/s; the full span needs mirrored nodes above 1.
PhiResult phi_theta_q(const SampledFunction& f, ThetaQ p, Span span);

// Repeated Phi_{theta,q} evaluation of one piecewise-linear profile. The first
// piece and the plateau are integrated in closed form, q = 1 in closed form on
// every piece, q = infinity by a scan of the breakpoints (interior critical
// points of s^-theta (c + beta s) are minima), and other q by Gauss-Legendre
// in log s.
class ProfileNorm {
 public:
  explicit ProfileNorm(const QuasiConcaveProfile& K);

  // Integral of (s^-theta K(s))^q ds/s over (0,1] (restricted) or (0,inf).
  double integral(double theta, double q, bool restricted) const;
  double sup(double theta, bool restricted) const;
  double norm(ThetaQ p, bool normalized, bool restricted) const;
  // normalized restricted norms at theta_k, q_k for every k
  std::vector<double> restricted_norms(const std::vector<double>& theta, const std::vector<double>& q) const;

  const QuasiConcaveProfile& profile() const { return K_; }

 private:
  double pieces_q1(double theta, std::size_t n) const;
  double pieces_general(double theta, double q, std::size_t n) const;

  QuasiConcaveProfile K_;
  std::vector<double> a_, log_a_;  // left endpoint of piece i and its log
  std::vector<double> L_;  // log-length of piece i
  std::vector<double> Ka_, beta_;
  bool geometric_ = false;
  std::size_t n_unit_ = 0;  // pieces lying inside (0,1]
};

double lp_norm_K(const QuasiConcaveProfile& K, ThetaQ p, bool normalized, bool restricted);

struct EquivKReport {
  double restricted = 0.0;
  double full = 0.0;
  double ratio = 0.0;
  double bound = 0.0;
  bool pass = false;
};

// <.> <= full <= [1 + ((1-theta)/theta)^{1/q}] <.>, relative slack applied to both sides.
EquivKReport check_equivK(const ProfileNorm& K, ThetaQ p, double slack = 1e-3);
EquivKReport check_equivK(const QuasiConcaveProfile& K, ThetaQ p, double slack = 1e-3);

double holmstedt_L1_Lp(double t, double p, const StepRearrangement& fstar);

struct LimitReport {
  std::vector<double> theta;
  std::vector<double> values;
  double plateau = 0.0;
  double final_rel_error = 0.0;
  bool eventually_decreasing = false;
  bool pass = false;
};

// Normalized full-domain norms at theta = 2^-k, k = 1..14.
LimitReport limit_theta0(const QuasiConcaveProfile& K, double q);

}  // namespace kinterp
