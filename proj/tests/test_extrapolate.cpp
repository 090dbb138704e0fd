#include <doctest.h>

#include <cmath>

#include "kinterp/corpus.hpp"
#include "kinterp/extrapolate.hpp"

using namespace kinterp;

TEST_CASE("parameter maps") {
  CHECK(theta_of_t(1.0) == doctest::Approx(0.5));
  CHECK(theta_of_t(std::exp(-1.0)) == doctest::Approx(0.75));
  for (double t : {0.9, 0.5, std::exp(-1.0) + 1e-9}) CHECK(theta_of_t(t) <= 0.75);
  CHECK(p_of_n(1.0) == doctest::Approx(2.0));
  CHECK(p_of_n(1e12) < 1.05);
  CHECK(q_of_t(1.0) == doctest::Approx(2.0));
  CHECK(xi_of_t(1.0) == doctest::Approx(0.5));
  CHECK(eta_of_t(1.0) == doctest::Approx(0.5));
  CHECK(kBasauxFloor == doctest::Approx(0.5 / std::sqrt(std::exp(1.0))));
}

TEST_CASE("inner norms stay above the floor") {
  LogGrid g(1e-12, 64);
  QuasiConcaveProfile m({1.0}, {1.0});
  for (double q : {1.0, kInf}) {
    SampledFunction a = extrap_inner(ProfileNorm(m), g, q);
    for (int k = 0; k <= g.last(); k += 13) CHECK(a.at(k) >= kBasauxFloor * g.node(k) - 1e-9);
  }
  // with F = Linf(1/t) the weight cancels t; the sup is approached at t -> 0,
  // so the grid value is the truncated one
  NormResult r = extrap_norm_K(ProfileNorm(m), g, LatticeParam::linf_over_t(), 1.0);
  CHECK(r.divergent);
  SampledFunction a = extrap_inner(ProfileNorm(m), g, 1.0);
  double sup = 0.0;
  for (int k = 0; k <= g.last(); ++k) sup = std::max(sup, a.at(k) / g.node(k));
  CHECK(r.truncated_value == doctest::Approx(sup));
}

TEST_CASE("ratio windows") {
  RatioWindow w = make_window({2.0, 1.0, 4.0}, {"b", "a", "c"});
  CHECK(w.min == 1.0);
  CHECK(w.max == 4.0);
  CHECK(w.median == 2.0);
  CHECK(w.argmax == "c");
  CHECK(w.finite());
  RatioWindow v = make_window({2.0, 1.1, 4.0}, {"b", "a", "c"});
  CHECK(window_drift(w, v) == doctest::Approx(0.1));
}

TEST_CASE("two-sided equivalence on a small corpus") {
  LogGrid g(1e-10, 32);
  auto corpus = conv0_corpus(10, 3);
  auto ext = steep_family(8);
  BaseqOptions opt;
  auto reps = verify_baseq(corpus, ext, {LatticeParam::fk(2.0), LatticeParam::linf()}, g, opt);
  REQUIRE(reps.size() == 2);
  CHECK(reps[0].pass);
  CHECK(reps[0].floor_ok);
  CHECK(reps[0].window.min >= kBasauxFloor - 1e-9);
  CHECK_FALSE(reps[1].pass);  // L-infinity
}

TEST_CASE("l^{p(n)} sequence and the discrete extrapolation") {
  std::vector<double> e1{1.0};
  auto s = lpn_sequence(e1, 1000);
  for (double v : s) CHECK(v == doctest::Approx(1.0));
  SequenceLattice M = SequenceLattice::matsaev(1.0);
  SeqExtrapReport r = seq_extrap_norm(SequenceData(e1), M, 1000);
  CHECK(r.k_side == doctest::Approx(r.l_side));

  std::vector<double> h(100000);
  for (std::size_t j = 0; j < h.size(); ++j) h[j] = 1.0 / (j + 1.0);
  SeqExtrapReport hr = seq_extrap_norm(SequenceData(h), M, h.size());
  CHECK(hr.k_side >= 1.0);
  CHECK(hr.k_side <= 1.0 + 0.5772156649);
  CHECK(std::isfinite(hr.l_side));
}

TEST_CASE("Hardy chain with constant e") {
  for (const auto& s : sequence_corpus(30, 4))
    for (double p : {1.5, 2.0, 4.0}) {
      HardyReport h = hardy_chain(s.a, p);
      CHECK(h.lower_ok);
      CHECK(h.upper_ok);
    }
}

TEST_CASE("reiteration helpers") {
  LogGrid g(1e-8, 32);
  StepRearrangement one({0.0, 1.0}, {1.0});
  SampledFunction k2 = k_Lp_profile(one, 2.0, g);
  for (int k = 0; k <= g.last(); k += 9) CHECK(k2.at(k) == doctest::Approx(g.node(k)));
  QuasiConcaveProfile m({1.0}, {1.0});
  // sup_{t^2 <= s <= 1} s^{-1/2} s = 1, times t
  SampledFunction lim = limiting_surrogate(m, g, 0.5);
  for (int k = 0; k <= g.last(); k += 9) CHECK(lim.at(k) == doctest::Approx(g.node(k)));
  // H_{1/2}(t) = int_0^{t^2} s^{1/2} ds/s = 2 t
  SampledFunction h = reiteration_surrogate(m, g, 0.5);
  for (int k = 0; k <= g.last(); k += 9) CHECK(h.at(k) == doctest::Approx(2.0 * g.node(k)).epsilon(1e-4));
}

TEST_CASE("splitting bound") {
  LogGrid g(1e-12, 64);
  QuasiConcaveProfile m({1.0}, {1.0});
  SampledFunction a = extrap_inner(ProfileNorm(m), g, 1.0);
  SplitReport s = splitting_bound(a, LatticeParam::fk(2.0), 1.0, 1.0);
  CHECK(s.pass);
  CHECK(s.whole >= s.head);
}
