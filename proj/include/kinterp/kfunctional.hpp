#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "kinterp/grid.hpp"

namespace kinterp {

// Piecewise-linear candidate K-functional. Linear from the origin up to the
// first breakpoint, linear between breakpoints, constant after the last one.
class QuasiConcaveProfile {
 public:
  QuasiConcaveProfile() = default;
  QuasiConcaveProfile(std::vector<double> breakpoints, std::vector<double> values);

  // Nodes of a sampled function on (0,1], reordered to increasing t.
  static QuasiConcaveProfile from_samples(const SampledFunction& f);

  const std::vector<double>& breakpoints() const { return t_; }
  const std::vector<double>& values() const { return k_; }
  std::size_t size() const { return t_.size(); }
  double plateau() const { return k_.empty() ? 0.0 : k_.back(); }
  double operator()(double t) const;

  // Empty when the profile is nondecreasing and concave to the given relative slack.
  std::string defect(double slack = 1e-10) const;
  bool valid(double slack = 1e-10) const { return defect(slack).empty(); }

  // Values at the nodes of g (measure ds/s).
  SampledFunction sample(const LogGrid& g) const;

 private:
  std::vector<double> t_;
  std::vector<double> k_;
};

// A profile family member that can be rebuilt on any grid.
struct NamedProfile {
  std::string id;
  std::function<QuasiConcaveProfile(const LogGrid&)> make;
  // Power of t in K near 0 for the function the samples stand for. Below 1
  // the norms at theta > order0 are infinite even though the samples are not.
  double order0 = 1.0;
};

double k_L1_Linf(double t, const StepRearrangement& fstar);
double k_Lp_Linf(double t, double p, const StepRearrangement& fstar);
double k_weakL1_Linf(double t, const StepRearrangement& fstar);

// Nonincreasing nonnegative finite sequence.
class SequenceData {
 public:
  SequenceData() = default;
  explicit SequenceData(std::vector<double> astar);
  // Absolute values sorted into nonincreasing order.
  static SequenceData rearranged(std::vector<double> a);

  const std::vector<double>& values() const { return a_; }
  std::size_t size() const { return a_.size(); }
  // Sum of the first n terms (n clamped to the length).
  double partial(std::size_t n) const { return prefix_[std::min(n, a_.size())]; }
  double lp_norm(double p) const;

 private:
  std::vector<double> a_;
  std::vector<double> prefix_{0.0};
};

double k_discrete(std::size_t n, const SequenceData& a);
double k_discrete_interp(double t, const SequenceData& a);
// Breakpoints 1..n with the partial sums; constant past n.
QuasiConcaveProfile discrete_profile(const SequenceData& a);

double j_functional(double t, double norm0, double norm1);

// f* whose primitive reproduces the target at every breakpoint.
StepRearrangement realize_conv0(const QuasiConcaveProfile& target);

// One atom of a finite measure space: weight mu and the density k_w of its
// K-functional, a nonincreasing step function on (0, sum of lengths).
struct Atom {
  double mu = 1.0;
  std::vector<double> levels;
  std::vector<double> lengths;

  double k(double t) const;  // K_w(t)
};

struct VectorValuedInstance {
  std::vector<Atom> atoms;
  void validate() const;
};

// Water-filling solution of max sum mu_w K_w(phi_w) subject to sum mu_w phi_w <= t.
double pisier_k(double t, const VectorValuedInstance& inst);
// Primitive of the rearrangement of Psi(w, s) = k_w(s) on the product space.
double pisier_product_k(double t, const VectorValuedInstance& inst);

}  // namespace kinterp
