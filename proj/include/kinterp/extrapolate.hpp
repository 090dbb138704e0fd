#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kinterp/grid.hpp"
#include "kinterp/interpnorm.hpp"
#include "kinterp/kfunctional.hpp"
#include "kinterp/lattice.hpp"

namespace kinterp {

double theta_of_t(double t);  // 1 + 1/(2 log(t/e)) on (0,1]
double xi_of_t(double t);     // 1/(2 log(e/t)) on (0,1]
double eta_of_t(double t);    // 1/(2 log(et)) on [1,inf)
double q_of_t(double t);      // 2 log(e/t) on (0,1]
double p_of_n(double n);      // 2log(en)/(2log(en)-1), n >= 1

inline constexpr double kBasauxFloor = 0.30326532985631671;  // 1/(2 sqrt(e))

// t * |a|_{theta(t),q} (normalized, restricted) at every node of (0,1].
SampledFunction extrap_inner(const ProfileNorm& K, const LogGrid& g, double q);
SampledFunction extrap_inner(const ProfileNorm& K, const LogGrid& g, const std::function<double(double)>& q_at);

NormResult extrap_norm_K(const ProfileNorm& K, const LogGrid& g, const LatticeParam& F, double q);

struct RatioWindow {
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
  std::size_t count = 0;
  std::string argmin, argmax;
  bool finite() const;
};

RatioWindow make_window(const std::vector<double>& ratios, const std::vector<std::string>& ids);
// max relative change of the two endpoints
double window_drift(const RatioWindow& a, const RatioWindow& b);

struct BaseqCase {
  std::string id;
  double extrap = 0.0;   // truncated-domain values
  double lattice = 0.0;
  double ratio = 0.0;
  bool extrap_divergent = false;
  bool lattice_divergent = false;
  bool excluded = false;
};

struct BaseqReport {
  LatticeParam F;
  double q = 1.0;
  std::vector<BaseqCase> cases;
  RatioWindow window;           // base corpus, base grid
  RatioWindow window_refined;   // base corpus, doubled points per octave
  RatioWindow window_extended;  // base corpus plus the doubled extension family
  double refine_drift = 0.0;
  double corpus_drift = 0.0;
  bool floor_ok = false;
  bool pass = false;
  std::string reason;
};

struct BaseqOptions {
  double q = 1.0;
  double drift_tol = 0.05;
  double floor_tol = 1e-9;
  std::size_t workers = 1;
};

// Ratio |t |a|_{theta(t),q}|_F / |K|_F over a corpus. The extension family is
// split in half: the first half joins the base window, the whole family forms
// the extended window. Inner norms are shared across lattices.
std::vector<BaseqReport> verify_baseq(const std::vector<NamedProfile>& corpus, const std::vector<NamedProfile>& extension,
                                      const std::vector<LatticeParam>& lattices, const LogGrid& grid,
                                      const BaseqOptions& opt);

// n -> |a|_{l^{p(n)}} for n = 1..N: exact up to n = 64, then on a geometric
// sample of ratio 1.02 with interpolation in log n.
std::vector<double> lpn_sequence(std::span<const double> a, std::size_t N);

struct SeqExtrapReport {
  double k_side = 0.0;
  double l_side = 0.0;
  double ratio = 0.0;
  double tail_drift = 0.0;  // relative change of the ratio between N and N/2
};

// |{K(n,a)}|_{F_d} against |{|a|_{p(n)}}|_{F_d}, indices n = 1..N.
SeqExtrapReport seq_extrap_norm(const SequenceData& a, const SequenceLattice& Fd, std::size_t N);

struct HardyReport {
  double lp = 0.0;
  double knorm = 0.0;
  bool lower_ok = false;
  bool upper_ok = false;
};

// |a|_p <= c Phi_{1-1/p,p}(K(., a; l1, linf)) <= e |a|_p
HardyReport hardy_chain(const SequenceData& a, double p, double slack = 1e-3);

// H_theta(t) = int_0^{t^{1/(1-theta)}} s^-theta K(s) ds/s at the nodes of (0,1].
SampledFunction reiteration_surrogate(const QuasiConcaveProfile& K, const LogGrid& g, double theta);
// t sup_{t^{1/theta} <= s <= 1} s^-theta K(s), the K-functional of (A0, A_{theta,inf}).
SampledFunction limiting_surrogate(const QuasiConcaveProfile& K, const LogGrid& g, double theta);

// K(t, f; L^p, L^inf) at the nodes of (0,1].
SampledFunction k_Lp_profile(const StepRearrangement& fstar, double p, const LogGrid& g);

struct SplitReport {
  double whole = 0.0;
  double head = 0.0;  // norm of g restricted to (0, 1/e)
  double bound = 0.0;
  bool pass = false;
};

// |g chi_(0,1)|_F <= (1 + (4/3) C1 C2 e) |g chi_(0,1/e)|_F
SplitReport splitting_bound(const SampledFunction& g, const LatticeParam& F, double C1, double C2);

}  // namespace kinterp
