#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "kinterp/corpus.hpp"
#include "kinterp/kfunctional.hpp"

using namespace kinterp;

TEST_CASE("profile validation") {
  CHECK(QuasiConcaveProfile({0.5, 1.0}, {0.5, 0.75}).valid());
  CHECK_FALSE(QuasiConcaveProfile({0.5, 1.0}, {0.5, 0.4}).valid());   // decreasing
  CHECK_FALSE(QuasiConcaveProfile({0.5, 1.0}, {0.25, 1.0}).valid());  // convex kink
  QuasiConcaveProfile K({0.5, 1.0}, {0.5, 0.75});
  CHECK(K(0.25) == doctest::Approx(0.25));
  CHECK(K(0.75) == doctest::Approx(0.625));
  CHECK(K(5.0) == doctest::Approx(0.75));
}

TEST_CASE("K-functional of (L1, Linf)") {
  StepRearrangement one({0.0, 1.0}, {1.0});
  for (double t : {0.1, 0.5, 1.0, 3.0}) CHECK(k_L1_Linf(t, one) == doctest::Approx(std::min(t, 1.0)));
  // f*(s) = 1 - s, t = 1/2
  std::vector<double> v(4096), w(4096, 1.0 / 4096);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 - (i + 0.5) / 4096.0;
  CHECK(k_L1_Linf(0.5, rearrange_cells(v, w)) == doctest::Approx(0.375).epsilon(1e-6));
  StepRearrangement ind({0.0, 0.2}, {1.0});
  CHECK(k_L1_Linf(2.0, ind) == doctest::Approx(0.2));
}

TEST_CASE("K-functional of (Lp, Linf)") {
  StepRearrangement one({0.0, 1.0}, {1.0});
  for (double t : {0.1, 0.5, 1.0}) CHECK(k_Lp_Linf(t, 3.0, one) == doctest::Approx(std::min(t, 1.0)));
  // f*(s) = s^{-1/4} through its exact cells on a fine geometric partition
  std::vector<double> v, w;
  double prev = 0.0;
  for (int k = 4000; k >= 0; --k) {
    double b = std::exp(-0.01 * k);
    double a = prev;
    double cell = (std::pow(b, 0.5) - std::pow(a, 0.5)) / (0.5 * (b - a));  // mean of s^-1/2 on the cell
    v.push_back(std::sqrt(cell));
    w.push_back(b - a);
    prev = b;
  }
  StepRearrangement f = rearrange_cells(v, w);
  CHECK(k_Lp_Linf(1.0, 2.0, f) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  for (const auto& r : rearrangement_corpus(0.9, 5, 3)) {
    StepRearrangement s = r.make(LogGrid(1e-8, 16));
    for (double t : {1e-4, 0.01, 0.3, 1.0}) CHECK(k_Lp_Linf(t, 1.0, s) == doctest::Approx(k_L1_Linf(t, s)).epsilon(1e-12));
  }
}

TEST_CASE("K-functional of (weak L1, Linf)") {
  StepRearrangement one({0.0, 1.0}, {1.0});
  for (double t : {0.1, 0.5, 1.0}) CHECK(k_weakL1_Linf(t, one) == doctest::Approx(t));
  StepRearrangement ind({0.0, 0.2}, {1.0});
  CHECK(k_weakL1_Linf(0.1, ind) == doctest::Approx(0.1));
  // f*(s) = 1/s on a geometric partition, capped at the first cell
  std::vector<double> v, w;
  double prev = 0.0;
  for (int k = 3000; k >= 0; --k) {
    double b = std::exp(-0.01 * k);
    v.push_back(1.0 / b);
    w.push_back(b - prev);
    prev = b;
  }
  StepRearrangement f = rearrange_cells(v, w);
  for (double t : {1e-3, 0.1, 0.5}) CHECK(k_weakL1_Linf(t, f) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("discrete K-functional") {
  SequenceData a({3.0, 2.0, 1.0});
  CHECK(k_discrete(2, a) == 5.0);
  SequenceData e1({1.0});
  for (double t : {0.25, 1.0, 4.0}) CHECK(k_discrete_interp(t, e1) == doctest::Approx(std::min(t, 1.0)));
  std::vector<double> h(1000);
  double H = 0.0;
  for (std::size_t j = 0; j < h.size(); ++j) {
    h[j] = 1.0 / (j + 1.0);
    H += h[j];
  }
  CHECK(k_discrete(1000, SequenceData(h)) == doctest::Approx(H));
  CHECK(SequenceData::rearranged({-1.0, 3.0, 2.0}).values() == std::vector<double>{3.0, 2.0, 1.0});
}

TEST_CASE("J-functional") {
  CHECK(j_functional(1.0, 2.0, 3.0) == 3.0);
  CHECK(j_functional(0.5, 2.0, 3.0) == 2.0);
  // J dominates K for elements of (L1, Linf)
  StepRearrangement f({0.0, 0.1, 0.6}, {2.0, 1.0});
  for (double t : {0.01, 0.1, 0.5, 1.0, 2.0}) CHECK(j_functional(t, f.total(), f.lp_norm(kInf)) >= k_L1_Linf(t, f));
}

TEST_CASE("realizing a concave profile") {
  SUBCASE("min(t,1)") {
    StepRearrangement f = realize_conv0(QuasiConcaveProfile({1.0}, {1.0}));
    CHECK(f.value(0.5) == doctest::Approx(1.0));
    CHECK(f.total() == doctest::Approx(1.0));
  }
  SUBCASE("t (1 - log t) gives log(1/s)") {
    LogGrid g(1e-6, 32);
    auto K = QuasiConcaveProfile::from_samples(SampledFunction::from(g, [](double t) { return t * (1.0 - std::log(t)); }, Measure::ds_over_s));
    StepRearrangement f = realize_conv0(K);
    for (double s : {1e-4, 0.01, 0.3}) CHECK(f.value(s) == doctest::Approx(-std::log(s)).epsilon(0.02));
    for (double t : {1e-3, 0.2, 1.0}) CHECK(f.integral(t) == doctest::Approx(K(t)).epsilon(1e-12));
  }
  SUBCASE("sqrt t gives 1/(2 sqrt s)") {
    LogGrid g(1e-6, 32);
    auto K = QuasiConcaveProfile::from_samples(SampledFunction::from(g, [](double t) { return std::sqrt(t); }, Measure::ds_over_s));
    StepRearrangement f = realize_conv0(K);
    for (double s : {1e-4, 0.01, 0.3}) CHECK(f.value(s) == doctest::Approx(0.5 / std::sqrt(s)).epsilon(0.02));
  }
  CHECK_THROWS_AS(realize_conv0(QuasiConcaveProfile({0.5, 1.0}, {0.25, 1.0})), Error);
}

namespace {

// Grid search over the simplex of splittings for two atoms.
double brute_two_atoms(double t, const VectorValuedInstance& inst) {
  const Atom& a = inst.atoms[0];
  const Atom& b = inst.atoms[1];
  double best = 0.0;
  const int n = 20000;
  for (int i = 0; i <= n; ++i) {
    double phi_a = (t / a.mu) * i / n;
    double phi_b = (t - a.mu * phi_a) / b.mu;
    best = std::max(best, a.mu * a.k(phi_a) + b.mu * b.k(phi_b));
  }
  return best;
}

}  // namespace

TEST_CASE("vector-valued K-functional by water filling") {
  Atom a{1.0, {3.0, 1.0, 0.5}, {0.2, 0.3, 0.5}};
  VectorValuedInstance single{{a}};
  for (double t : {0.1, 0.3, 0.7, 1.0}) {
    CHECK(pisier_k(t, single) == doctest::Approx(a.k(t)));
    CHECK(pisier_product_k(t, single) == doctest::Approx(a.k(t)));
  }
  VectorValuedInstance pair{{Atom{0.5, {1.0}, {1.0}}, Atom{0.5, {1.0}, {1.0}}}};
  for (double t : {0.1, 0.5, 1.0}) {
    CHECK(pisier_k(t, pair) == doctest::Approx(t));
    CHECK(pisier_product_k(t, pair) == doctest::Approx(t));
  }
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    VectorValuedInstance inst;
    for (int w = 0; w < 2; ++w) {
      Atom at;
      at.mu = u(rng);
      for (int j = 0; j < 3; ++j) {
        at.levels.push_back(3.0 * u(rng));
        at.lengths.push_back(0.3 * u(rng));
      }
      std::sort(at.levels.begin(), at.levels.end(), std::greater<>());
      inst.atoms.push_back(at);
    }
    for (double t : {0.05, 0.2, 0.5}) CHECK(pisier_k(t, inst) == doctest::Approx(brute_two_atoms(t, inst)).epsilon(1e-3));
  }
}
