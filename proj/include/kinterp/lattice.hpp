#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kinterp/grid.hpp"

namespace kinterp {

enum class Domain { unit, above_one };

// Weighted L^q(ds/s) lattice on (0,1] or on [1,inf).
struct LatticeParam {
  PowerLogWeight weight;
  double q = 1.0;  // infinity allowed
  Domain domain = Domain::unit;

  static LatticeParam F(double b, double q) { return {{1.0, b}, q, Domain::unit}; }
  static LatticeParam G(double b, double q) { return {{0.0, b}, q, Domain::unit}; }
  static LatticeParam linf_over_t() { return F(0.0, kInf); }
  static LatticeParam linf() { return G(0.0, kInf); }
  static LatticeParam l1_ds_over_s() { return G(0.0, 1.0); }
  // sup_t K(t) / (t (1 - ln t)^{1/p})
  static LatticeParam fk(double p) { return F(1.0 / p, kInf); }

  // "t^-a*(1-ln t)^-b; q=Q; domain=(0,1]" (q may be "inf", domain "[1,inf)")
  static LatticeParam parse(const std::string& spec);
  std::string to_string() const;
};

struct NormResult {
  double value = 0.0;            // +inf when divergent
  double truncated_value = 0.0;  // value over the grid span only
  bool divergent = false;
};

NormResult lattice_norm(const SampledFunction& f, const LatticeParam& F);

// Dual lattice for the pairing  integral f g ds/s : weight 1/w, exponent q'.
LatticeParam kothe_dual(const LatticeParam& F);

// Tf(t) = f(t^2)/t on the nodes k <= N/2.
SampledFunction apply_T(const SampledFunction& f);
// Inverse relabeling of apply_T: g(t_{2k}) = t_k g_T(t_k) at even indices.
SampledFunction unapply_T(const SampledFunction& g, const LogGrid& target);
// Rf(t) = f(sqrt t).
SampledFunction apply_R(const SampledFunction& f);
// S_r f(t) = f(t^r).
SampledFunction apply_S(const SampledFunction& f, double r);
// Q_r f(s) = s^{1/r - 1} f(s^{1/r}).
SampledFunction apply_Q(const SampledFunction& f, double r);

using LatticeOperator = std::function<SampledFunction(const SampledFunction&)>;

struct OpEstimate {
  double value = 0.0;  // lower bound for the operator norm
  std::size_t argmax = 0;
  std::size_t used = 0;
  std::size_t skipped = 0;
};

// max over the corpus of |op f|_F / |f|_F, skipping zero and divergent members.
// |op f| is taken over the grid span of op f.
OpEstimate estimate_op_norm(const LatticeOperator& op, const LatticeParam& F, const std::vector<SampledFunction>& corpus);

struct TildeResult {
  SampledFunction value;
  bool divergent = false;
};

// w~(t) = int_0^1 min(1, s/t) w(s) ds/s at every node of (0,1].
TildeResult tilde_weight(const SampledFunction& w);

// Lattice of sequences indexed by n >= 1 with weight n^-a log(en)^-b and the
// measure log((n+1)/n), the discrete image of ds/s.
struct SequenceLattice {
  double a = 0.0;
  double b = 0.0;
  double q = kInf;

  static SequenceLattice matsaev(double alpha) { return {0.0, alpha, kInf}; }
  double weight(double n) const;
  double norm(std::span<const double> x) const;
};

}  // namespace kinterp
