#include <doctest.h>

#include <cmath>

#include "kinterp/corpus.hpp"
#include "kinterp/interpnorm.hpp"

using namespace kinterp;

TEST_CASE("Phi on sampled functions") {
  LogGrid g(1e-12, 64, 64 * 40);
  auto m = SampledFunction::from(g, [](double s) { return std::min(s, 1.0); }, Measure::ds_over_s);
  for (double th : {0.4, 0.5, 0.6})
    for (double q : {1.0, 2.0}) {
      double exact = std::pow(1.0 / ((1.0 - th) * q) + 1.0 / (th * q), 1.0 / q);
      PhiResult r = phi_theta_q(m, {th, q}, Span::full);
      CHECK_FALSE(r.divergent);
      CHECK(r.value == doctest::Approx(exact).epsilon(1e-4));
    }
  LogGrid u(1e-12, 64);
  auto s = SampledFunction::from(u, [](double x) { return x; }, Measure::ds_over_s);
  CHECK(phi_theta_q(s, {0.5, 2.0}, Span::unit).value == doctest::Approx(1.0).epsilon(1e-4));
  auto sth = SampledFunction::from(u, [](double x) { return std::pow(x, 0.4); }, Measure::ds_over_s);
  CHECK(phi_theta_q(sth, {0.4, kInf}, Span::unit).value == doctest::Approx(1.0));
  CHECK_THROWS_AS(phi_theta_q(s, {0.5, 1.0}, Span::full), Error);
}

TEST_CASE("closed-form norms of piecewise-linear profiles") {
  QuasiConcaveProfile m({1.0}, {1.0});
  for (int i = 1; i <= 9; ++i)
    for (double q : {1.0, 2.0, 5.0, kInf}) CHECK(lp_norm_K(m, {0.1 * i, q}, true, false) == doctest::Approx(1.0).epsilon(1e-12));

  // theta near 0, q = 1, restricted: int_0^1 (1 - log t) dt = 2
  LogGrid g(1e-12, 64);
  auto K = QuasiConcaveProfile::from_samples(SampledFunction::from(g, [](double t) { return t * (1.0 - std::log(t)); }, Measure::ds_over_s));
  ProfileNorm pn(K);
  CHECK(pn.integral(1e-9, 1.0, true) == doctest::Approx(2.0).epsilon(1e-4));

  // restricted <= full on the corpus
  for (const auto& p : conv0_corpus(20, 5)) {
    ProfileNorm n(p.make(g));
    for (double th : {0.2, 0.5, 0.8})
      for (double q : {1.0, 3.0, kInf}) CHECK(n.norm({th, q}, true, true) <= n.norm({th, q}, true, false) * (1.0 + 1e-12));
  }
}

TEST_CASE("Gauss-Legendre path agrees with a fine log-grid sum") {
  LogGrid g(1e-9, 512, 512 * 34);
  QuasiConcaveProfile K({1e-3, 0.05, 0.4, 1.0}, {0.01, 0.06, 0.2, 0.25});
  auto f = K.sample(g);
  for (double q : {1.5, 3.0}) {
    double closed = lp_norm_K(K, {0.6, q}, false, true);
    double sampled = phi_theta_q(f, {0.6, q}, Span::unit).value;
    CHECK(closed == doctest::Approx(sampled).epsilon(1e-4));
  }
}

TEST_CASE("restricted and full norms: constant chain") {
  QuasiConcaveProfile m({1.0}, {1.0});
  EquivKReport r = check_equivK(m, {0.5, 1.0});
  CHECK(r.ratio == doctest::Approx(2.0));
  CHECK(r.bound == doctest::Approx(2.0));
  CHECK(r.pass);
  LogGrid g(1e-12, 32);
  for (const auto& p : conv0_corpus(30, 9)) {
    ProfileNorm n(p.make(g));
    for (double th : {0.5, 0.7, 0.9})
      for (double q : {1.0, 2.0, kInf}) {
        EquivKReport e = check_equivK(n, {th, q});
        CHECK(e.pass);
        CHECK(e.bound <= 2.0);
      }
  }
}

TEST_CASE("Holmstedt formula for (L1, Lp)") {
  StepRearrangement one({0.0, 1.0}, {1.0});
  for (double p : {2.0, 4.0})
    for (double t : {0.1, 0.5, 0.9}) {
      double pp = p / (p - 1.0), x = std::min(std::pow(t, pp), 1.0);
      CHECK(holmstedt_L1_Lp(t, p, one) == doctest::Approx(x + t * std::pow(1.0 - x, 1.0 / p)));
    }
  CHECK(holmstedt_L1_Lp(1.0, 2.0, one) == doctest::Approx(1.0));

  // against the splitting f = (f - l)_+ + min(f, l), minimized over the level l
  for (const auto& r : rearrangement_corpus(0.4, 5, 2)) {
    StepRearrangement f = r.make(LogGrid(1e-8, 16));
    for (double t : {0.05, 0.3, 0.8}) {
      double best = kInf;
      for (std::size_t i = 0; i < f.segments(); ++i) {
        double l = f.levels()[i];
        double a = f.breakpoints()[i];
        double head = f.integral(a) - l * a;
        double tail = std::pow(std::pow(l, 2.0) * a + f.power_integral(2.0, a, f.support()), 0.5);
        best = std::min(best, head + t * tail);
      }
      best = std::min(best, f.total());
      double h = holmstedt_L1_Lp(t, 2.0, f);
      CHECK(h / best >= 0.25);
      CHECK(h / best <= 4.0);
    }
  }
}

TEST_CASE("theta to zero recovers the plateau") {
  QuasiConcaveProfile m({1.0}, {1.0});
  LimitReport r = limit_theta0(m, 1.0);
  for (double v : r.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  LogGrid g(1e-12, 64);
  auto K = QuasiConcaveProfile::from_samples(SampledFunction::from(g, [](double t) { return t * (1.0 - std::log(t)); }, Measure::ds_over_s));
  for (double q : {1.0, 2.0, kInf}) {
    LimitReport l = limit_theta0(K, q);
    CHECK(l.pass);
  }
}
