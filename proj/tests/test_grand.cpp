#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "kinterp/grand.hpp"

using namespace kinterp;

namespace {

double fk_scan_one(double p) {
  double best = 0.0;
  for (int i = 1; i < 100000; ++i) {
    double t = i / 100000.0;
    best = std::max(best, (1.0 - t) / (1.0 - std::log(t)));
  }
  return std::pow(best, 1.0 / p);
}

}  // namespace

TEST_CASE("grand Lebesgue norms of constants") {
  GrandParams gp(2.0);
  StepRearrangement one({0.0, 1.0}, {1.0});
  CHECK(grand_norm_def(one, gp) == doctest::Approx(1.0).epsilon(2e-3));
  CHECK(std::abs(grand_norm_fk(one, gp) - fk_scan_one(2.0)) <= 1e-3);
  CHECK(std::abs(grand_norm_fk(one, gp) - 0.5639) <= 1e-3);
  StepRearrangement three({0.0, 1.0}, {3.0});
  CHECK(grand_norm_def(three, gp) == doctest::Approx(3.0 * grand_norm_def(one, gp)));
  CHECK(grand_norm_fk(three, gp) == doctest::Approx(3.0 * grand_norm_fk(one, gp)));
  StepRearrangement zero({0.0, 1.0}, {0.0});
  CHECK(grand_norm_fk(zero, gp) == 0.0);
}

TEST_CASE("s^{-1/p} lies in the grand space") {
  LogGrid g(1e-12, 64);
  auto f = SampledFunction::from(g, [](double s) { return 1.0 / std::sqrt(s); }, Measure::ds);
  StepRearrangement r = rearrange(f, 2.0 * std::sqrt(g.node(g.last())));
  GrandParams gp(2.0);
  double d = grand_norm_def(r, gp);
  CHECK(std::isfinite(d));
  CHECK(d < 3.0);
  CHECK(std::isfinite(grand_norm_fk(r, gp)));
}

TEST_CASE("L log L norms") {
  StepRearrangement one({0.0, 1.0}, {1.0});
  CHECK(llogl_alpha_norm(one, 1.0).value == doctest::Approx(2.0));
  // indicator of [0, 1/e]: int_0^{1/e} (1 + log(1/s)) ds = 3/e
  StepRearrangement ind({0.0, std::exp(-1.0)}, {1.0});
  CHECK(llogl_alpha_norm(ind, 1.0).value == doctest::Approx(3.0 / std::exp(1.0)));
  // general alpha through the incomplete gamma function
  for (double alpha : {0.5, 2.0}) {
    double exact = std::exp(1.0) * boost::math::tgamma(alpha + 1.0, 1.0);
    CHECK(llogl_alpha_norm(one, alpha).value == doctest::Approx(exact));
  }
}

TEST_CASE("sum identity on constants and powers") {
  LogGrid g(1e-12, 64);
  StepRearrangement one({0.0, 1.0}, {1.0});
  SumIdentityReport r = verify_sum_identity(one, g);
  CHECK(r.k_side.value == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(r.llogl_side.value == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(r.ratio == doctest::Approx(0.5).epsilon(1e-3));

  // homogeneity of both sides
  StepRearrangement two({0.0, 1.0}, {2.0});
  SumIdentityReport r2 = verify_sum_identity(two, g);
  CHECK(r2.k_side.value == doctest::Approx(2.0 * r.k_side.value));
  CHECK(r2.llogl_side.value == doctest::Approx(2.0 * r.llogl_side.value));

  // plain logarithm: f = 1 gives Gamma(alpha + 1) / alpha
  for (double alpha : {0.5, 1.0, 2.0})
    CHECK(k_side_llogl(one, alpha, g, LogConvention::plain).value ==
          doctest::Approx(std::tgamma(alpha + 1.0) / alpha).epsilon(1e-3));

  auto f = SampledFunction::from(g, [](double s) { return 1.0 / std::sqrt(s); }, Measure::ds);
  StepRearrangement h = rearrange(f, 2.0 * std::sqrt(g.node(g.last())));
  SumIdentityReport rh = verify_sum_identity(h, g);
  CHECK_FALSE(rh.k_side.divergent);
  CHECK_FALSE(rh.llogl_side.divergent);
  CHECK(rh.llogl_side.value == doctest::Approx(6.0).epsilon(1e-3));
}

TEST_CASE("non-integrable f* log(1/s) is flagged on both sides") {
  LogGrid g(1e-12, 64);
  auto f = SampledFunction::from(g, [](double s) { double L = 1.0 - std::log(s); return 1.0 / (s * L * L); }, Measure::ds);
  StepRearrangement r = rearrange(f, 1.0 / (1.0 - std::log(g.node(g.last()))));
  SumIdentityReport d = verify_sum_identity(r, g);
  CHECK(d.k_side.divergent);
  CHECK(d.llogl_side.divergent);
  CHECK(d.flags_agree);
}
