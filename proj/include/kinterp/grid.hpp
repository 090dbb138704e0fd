#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace kinterp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ErrorCode { ok = 0, argument = 1, domain = 2, usage = 3, io = 4, internal = 5 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

enum class Measure { ds, ds_over_s };

// Geometric grid t_k = exp(-h k), h = ln2 / points_per_octave.
// Index k runs from -ext (mirrored nodes above 1) to N (t_N <= t_min).
class LogGrid {
 public:
  LogGrid() : LogGrid(1e-12, 64) {}
  LogGrid(double t_min, int points_per_octave, int ext = 0);

  // Grid with exactly n+1 nodes on (0,1] (k = 0..n).
  static LogGrid with_last_index(int n, int points_per_octave, int ext = 0);

  double h() const { return h_; }
  int ppo() const { return ppo_; }
  double t_min() const { return t_min_; }
  int last() const { return n_; }
  int ext() const { return ext_; }
  // Number of stored nodes, ext + N + 1.
  std::size_t size() const { return nodes_.size(); }
  // Storage position of index k.
  std::size_t pos(int k) const { return static_cast<std::size_t>(k + ext_); }
  double node(int k) const { return nodes_[pos(k)]; }
  const std::vector<double>& nodes() const { return nodes_; }

  // Largest index k with t_k >= t (clamped to [-ext, N]).
  int locate(double t) const;

  bool same_as(const LogGrid& o) const { return ppo_ == o.ppo_ && n_ == o.n_ && ext_ == o.ext_; }

 private:
  int ppo_ = 64;
  double h_ = 0.0;
  double t_min_ = 0.0;
  int n_ = 0;
  int ext_ = 0;
  std::vector<double> nodes_;
};

// t^-a (1 - ln t)^-b on (0,1]. For t > 1 the log factor uses 1 + |ln t|.
struct PowerLogWeight {
  double a = 0.0;
  double b = 0.0;
  double operator()(double t) const;
};

class SampledFunction {
 public:
  SampledFunction() = default;
  SampledFunction(LogGrid grid, std::vector<double> values, Measure m);

  static SampledFunction from(const LogGrid& grid, const std::function<double(double)>& f, Measure m);

  const LogGrid& grid() const { return grid_; }
  Measure measure() const { return measure_; }
  const std::vector<double>& values() const { return values_; }
  double at(int k) const { return values_[grid_.pos(k)]; }
  // Piecewise-linear in (log t, value); constant outside the grid span.
  double eval(double t) const;
  SampledFunction with_measure(Measure m) const { return SampledFunction(grid_, values_, m); }

 private:
  LogGrid grid_;
  std::vector<double> values_;
  Measure measure_ = Measure::ds_over_s;
};

// Right-continuous nonincreasing step function on [0, breakpoints.back()].
// Segment i is [breakpoints[i], breakpoints[i+1]) with value levels[i].
class StepRearrangement {
 public:
  StepRearrangement() : breaks_{0.0}, prefix_{0.0} {}
  StepRearrangement(std::vector<double> breakpoints, std::vector<double> levels);

  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::vector<double>& levels() const { return levels_; }
  std::size_t segments() const { return levels_.size(); }
  double support() const { return breaks_.back(); }

  double value(double s) const;
  // Integral of f* over [0, t].
  double integral(double t) const;
  // Integral of f*^p over [a, b].
  double power_integral(double p, double a, double b) const;
  // Lebesgue norm on the support, p = infinity allowed.
  double lp_norm(double p) const;
  double total() const { return integral(support()); }

 private:
  std::vector<double> breaks_;
  std::vector<double> levels_;
  std::vector<double> prefix_;  // integral up to breaks_[i]
};

StepRearrangement rearrange(const SampledFunction& f);
// Same, with the mass of f on (0, t_N) added as one cell of width t_N.
StepRearrangement rearrange(const SampledFunction& f, double head_mass);
StepRearrangement rearrange(const StepRearrangement& f);
// Cell values with cell widths; the cells tile a set of total measure <= 1.
StepRearrangement rearrange_cells(const std::vector<double>& values, const std::vector<double>& widths);

struct Integral {
  double value = 0.0;
  double truncation = 0.0;  // estimate of the dropped piece on (0, t_N)
  bool truncated = false;
};

Integral integrate(const SampledFunction& f, double a, double b);
// Whole grid span on (0,1], truncation estimate attached.
Integral integrate(const SampledFunction& f);

double sup_norm(const SampledFunction& f, const PowerLogWeight& w);

// Compensated summation.
class Accumulator {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace kinterp
