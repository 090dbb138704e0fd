#pragma once

#include <array>

namespace kinterp::detail {

// 8-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 8> kGLNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
inline constexpr std::array<double, 8> kGLWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

// Integral of g over [lo, hi].
template <class G>
double gauss_legendre(G&& g, double lo, double hi) {
  double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo), s = 0.0;
  for (int i = 0; i < 8; ++i) s += kGLWeights[i] * g(mid + half * kGLNodes[i]);
  return s * half;
}

// Integral over [lo, hi] split into n equal panels.
template <class G>
double gauss_legendre(G&& g, double lo, double hi, int n) {
  double w = (hi - lo) / n, s = 0.0;
  for (int i = 0; i < n; ++i) s += gauss_legendre(g, lo + i * w, lo + (i + 1) * w);
  return s;
}

}  // namespace kinterp::detail
