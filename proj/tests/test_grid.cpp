#include <doctest.h>

#include <cmath>

#include "kinterp/grid.hpp"

using namespace kinterp;

TEST_CASE("log grid nodes are geometric and close under squaring") {
  LogGrid g(1e-12, 64);
  CHECK(g.node(0) == 1.0);
  CHECK(g.node(g.last()) <= 1e-12);
  for (int k = 1; k <= g.last(); ++k) {
    REQUIRE(g.node(k) < g.node(k - 1));
    CHECK(std::log(g.node(k - 1) / g.node(k)) == doctest::Approx(g.h()).epsilon(1e-12));
  }
  for (int k = 0; 2 * k <= g.last(); k += 37) CHECK(g.node(k) * g.node(k) == doctest::Approx(g.node(2 * k)).epsilon(1e-12));
  CHECK(std::abs(g.locate(0.5) - 64) <= 1);
}

TEST_CASE("grid with mirrored nodes above one") {
  LogGrid g(1e-3, 16, 32);
  CHECK(g.node(-16) == doctest::Approx(2.0));
  CHECK(g.size() == static_cast<std::size_t>(g.last() + 33));
}

TEST_CASE("rearrangement of simple functions") {
  SUBCASE("constant") {
    StepRearrangement f = rearrange_cells({1.0, 1.0, 1.0}, {0.25, 0.5, 0.25});
    CHECK(f.value(0.0) == 1.0);
    CHECK(f.value(0.99) == 1.0);
    CHECK(f.total() == doctest::Approx(1.0));
  }
  SUBCASE("f(x) = x on a uniform grid gives 1 - s up to one cell") {
    const int n = 1024;
    std::vector<double> v(n), w(n, 1.0 / n);
    for (int i = 0; i < n; ++i) v[i] = (i + 0.5) / n;
    StepRearrangement f = rearrange_cells(v, w);
    for (double s : {0.01, 0.2, 0.5, 0.77, 0.99}) CHECK(std::abs(f.value(s) - (1.0 - s)) <= 1.0 / n);
  }
  SUBCASE("indicator of [0.3, 0.5]") {
    StepRearrangement f = rearrange_cells({0.0, 1.0, 0.0}, {0.3, 0.2, 0.5});
    CHECK(f.value(0.1) == 1.0);
    CHECK(f.value(0.25) == 0.0);
    CHECK(f.integral(1.0) == doctest::Approx(0.2));
  }
  SUBCASE("head mass becomes one cell below the grid") {
    LogGrid g(1e-6, 16);
    auto f = SampledFunction::from(g, [](double s) { return 1.0 / std::sqrt(s); }, Measure::ds);
    double tN = g.node(g.last());
    StepRearrangement r = rearrange(f, 2.0 * std::sqrt(tN));
    CHECK(r.integral(tN) == doctest::Approx(2.0 * std::sqrt(tN)));
    CHECK(r.total() == doctest::Approx(2.0).epsilon(1e-3));
  }
}

TEST_CASE("step rearrangement integrals") {
  StepRearrangement f({0.0, 0.5, 1.0}, {2.0, 1.0});
  CHECK(f.integral(0.25) == doctest::Approx(0.5));
  CHECK(f.integral(0.75) == doctest::Approx(1.25));
  CHECK(f.power_integral(2.0, 0.0, 1.0) == doctest::Approx(2.5));
  CHECK(f.lp_norm(kInf) == 2.0);
  CHECK_THROWS_AS(StepRearrangement({0.0, 0.5, 1.0}, {1.0, 2.0}), Error);
}

TEST_CASE("integration on the log grid") {
  LogGrid g(1e-12, 64);
  auto one = SampledFunction::from(g, [](double) { return 1.0; }, Measure::ds);
  CHECK(integrate(one, 0.0, 1.0).value == doctest::Approx(1.0).epsilon(1e-12));
  auto inv = SampledFunction::from(g, [](double) { return 1.0; }, Measure::ds_over_s);
  CHECK(integrate(inv, std::exp(-1.0), 1.0).value == doctest::Approx(1.0).epsilon(1e-9));
  auto rs = SampledFunction::from(g, [](double s) { return 1.0 / std::sqrt(s); }, Measure::ds);
  CHECK(std::abs(integrate(rs).value - 2.0) <= 1e-4);
}

TEST_CASE("weighted sup norms") {
  LogGrid g(1e-12, 64);
  auto t = SampledFunction::from(g, [](double s) { return s; }, Measure::ds_over_s);
  CHECK(sup_norm(t, {1.0, 0.0}) == doctest::Approx(1.0));
  CHECK(sup_norm(SampledFunction::from(g, [](double s) { return std::min(s, 1.0); }, Measure::ds_over_s), {0.0, 0.0}) ==
        doctest::Approx(1.0));
  auto tl = SampledFunction::from(g, [](double s) { return s / (1.0 - std::log(s)); }, Measure::ds_over_s);
  CHECK(sup_norm(tl, {1.0, 0.0}) == doctest::Approx(1.0));
}

TEST_CASE("compensated sum") {
  Accumulator a;
  a.add(1.0);
  for (int i = 0; i < 1000000; ++i) a.add(1e-16);
  CHECK(a.value() == doctest::Approx(1.0 + 1e-10).epsilon(1e-15));
}
