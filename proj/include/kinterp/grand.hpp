#pragma once

#include <string>
#include <vector>

#include "kinterp/grid.hpp"

namespace kinterp {

// Exponent data for L^{p),alpha} on [0,1].
struct GrandParams {
  double p = 2.0;
  double alpha = 1.0;
  std::vector<double> eps;  // increasing, strictly inside (0, p-1)
  std::vector<double> t;    // increasing, strictly inside (0, 1)

  GrandParams(double p, double alpha = 1.0, std::size_t n_eps = 512, std::size_t n_t = 2048);
};

// sup_eps eps^{alpha/(p-eps)} |f|_{p-eps}
double grand_norm_def(const StepRearrangement& fstar, const GrandParams& gp);
// sup_t log(e/t)^{-alpha/p} (int_t^1 f*^p ds)^{1/p}
double grand_norm_fk(const StepRearrangement& fstar, const GrandParams& gp);

struct SideValue {
  double value = 0.0;
  bool divergent = false;
};

// int_0^1 f*(s) (1 + log(1/s))^alpha ds, exact on steps.
SideValue llogl_alpha_norm(const StepRearrangement& fstar, double alpha);

enum class LogConvention { shifted, plain };  // log(e/s) or log(1/s)

// int_0^1 K(s, f; L1, Linf) w(s)^{alpha-1} ds/s with w = log(e/s) or log(1/s).
// K is sampled on the grid and integrated against the weight exactly on each
// cell (K linear in log s), so the singular weight at s = 1 is harmless.
SideValue k_side_llogl(const StepRearrangement& fstar, double alpha, const LogGrid& g,
                       LogConvention conv = LogConvention::shifted);

struct SumIdentityReport {
  SideValue k_side;      // int_0^1 K(s) ds/s
  SideValue llogl_side;  // int_0^1 f*(1 + log(1/s)) ds
  double ratio = 0.0;
  bool flags_agree = false;
};

SumIdentityReport verify_sum_identity(const StepRearrangement& fstar, const LogGrid& g);

}  // namespace kinterp
